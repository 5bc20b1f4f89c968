#pragma once

#include <string>
#include <string_view>

#include "ectf/graph.hpp"

namespace ectf {

/**
 * graph6 codec, bit-exact per the published format: N(n) length prefix
 * (one byte for n <= 62, '~' plus three bytes otherwise), upper-triangle
 * bits column by column, 6 bits per byte MSB first, zero padding to a byte
 * boundary, every byte offset by 63. No ">>graph6<<" header is accepted or
 * emitted; sparse6 is out of scope.
 */
Graph parse_graph6(std::string_view line);

std::string write_graph6(const Graph& g);

}  // namespace ectf
