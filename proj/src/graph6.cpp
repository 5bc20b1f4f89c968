#include "ectf/graph6.hpp"

#include <stdexcept>

namespace ectf {

namespace {

constexpr int kOffset = 63;

int checked_byte(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 63 || u > 126)
        throw std::invalid_argument("graph6: byte out of range [63,126]");
    return u - kOffset;
}

uint64_t pair_count(int n) {
    return static_cast<uint64_t>(n) * (static_cast<uint64_t>(n) - 1) / 2;
}

}  // namespace

Graph parse_graph6(std::string_view line) {
    if (line.empty()) throw std::invalid_argument("graph6: empty line");

    size_t pos = 0;
    long n;
    int first = checked_byte(line[pos++]);
    if (first < 63) {
        n = first;
    } else {
        // extended form: '~' then three 6-bit groups, big-endian
        if (line.size() < 4) throw std::invalid_argument("graph6: truncated length prefix");
        if (line[1] == '~') throw std::invalid_argument("graph6: 8-byte length prefix unsupported");
        long b1 = checked_byte(line[pos++]);
        long b2 = checked_byte(line[pos++]);
        long b3 = checked_byte(line[pos++]);
        n = (b1 << 12) | (b2 << 6) | b3;
    }
    if (n > Graph::kMaxVertices)
        throw std::invalid_argument("graph6: vertex count above supported maximum");

    const uint64_t bits = pair_count(static_cast<int>(n));
    const uint64_t body = (bits + 5) / 6;
    if (line.size() - pos != body)
        throw std::invalid_argument("graph6: body length does not match vertex count");

    Graph g(static_cast<int>(n));
    uint64_t bit_index = 0;
    int col = 1, row = 0;
    for (uint64_t i = 0; i < body; ++i) {
        int chunk = checked_byte(line[pos + i]);
        for (int b = 5; b >= 0; --b, ++bit_index) {
            int bit = (chunk >> b) & 1;
            if (bit_index < bits) {
                if (bit) g.add_edge(row, col);
                if (++row == col) {
                    row = 0;
                    ++col;
                }
            } else if (bit) {
                throw std::invalid_argument("graph6: nonzero padding bits");
            }
        }
    }
    return g;
}

std::string write_graph6(const Graph& g) {
    const int n = g.vertex_count();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kOffset));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + kOffset));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kOffset));
        out.push_back(static_cast<char>((n & 63) + kOffset));
    }
    int chunk = 0, filled = 0;
    for (int col = 1; col < n; ++col) {
        for (int row = 0; row < col; ++row) {
            chunk = (chunk << 1) | (g.adjacent(row, col) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(chunk + kOffset));
                chunk = 0;
                filled = 0;
            }
        }
    }
    if (filled) {
        chunk <<= (6 - filled);
        out.push_back(static_cast<char>(chunk + kOffset));
    }
    return out;
}

}  // namespace ectf
