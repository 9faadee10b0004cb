#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace latmax {

// Lattice point in Z^d. Lexicographic order is the std::vector default.
using Coord = std::vector<std::int64_t>;

inline std::int64_t linf_norm(const Coord& x) {
    std::int64_t r = 0;
    for (std::int64_t c : x) r = std::max(r, std::abs(c));
    return r;
}

inline Coord zero_coord(int dim) { return Coord(static_cast<std::size_t>(dim), 0); }

inline Coord unit_coord(int dim, int axis, std::int64_t value = 1) {
    Coord e = zero_coord(dim);
    e[static_cast<std::size_t>(axis)] = value;
    return e;
}

inline Coord add(const Coord& a, const Coord& b) {
    Coord r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline Coord sub(const Coord& a, const Coord& b) {
    Coord r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

} // namespace latmax
