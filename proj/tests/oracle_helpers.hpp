#pragma once

// Test-side oracles and generators. The rank oracle deliberately uses a
// different algorithm (fraction-free Bareiss elimination over big integers)
// than the library's Gauss-Jordan over rationals, so the two can check each
// other.

#include <stargraph/linalg.hpp>
#include <stargraph/wave.hpp>

#include <random>
#include <stdexcept>
#include <vector>

namespace testutil {

using stargraph::Int;
using stargraph::Rat;
using stargraph::RatMatrix;

/// Rank by Bareiss elimination: clear denominators row by row, then run the
/// fraction-free pivoting scheme whose intermediate divisions are exact.
inline int bareiss_rank(const RatMatrix& m) {
    const int rows = m.rows, cols = m.cols;
    std::vector<std::vector<Int>> a(static_cast<std::size_t>(rows), std::vector<Int>(static_cast<std::size_t>(cols)));
    for (int r = 0; r < rows; ++r) {
        Int scale = 1;
        for (int c = 0; c < cols; ++c) scale = lcm(scale, denominator(m.at(r, c)));
        for (int c = 0; c < cols; ++c) {
            const Rat v = m.at(r, c) * scale;
            if (denominator(v) != 1) throw std::logic_error("row scaling failed");
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = numerator(v);
        }
    }
    int rank = 0;
    Int prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                Int num = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                              a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)] -
                          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] *
                              a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
                if (prev != 1 && num % prev != 0) throw std::logic_error("Bareiss division not exact");
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = num / prev;
            }
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = 0;
        }
        prev = a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        ++rank;
    }
    return rank;
}

inline Rat random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    return Rat(num(rng)) / Rat(den(rng));
}

inline RatMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
    RatMatrix m(rows, cols);
    std::uniform_int_distribution<int> sparse(0, 3);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (sparse(rng) != 0) m.at(r, c) = random_rational(rng);
    return m;
}

inline stargraph::Wave random_wave(std::mt19937& rng, const stargraph::Params& params) {
    const std::size_t len = static_cast<std::size_t>(8) * params.n * (params.n + 1);
    std::vector<Rat> coords(len, Rat(0));
    std::uniform_int_distribution<int> sparse(0, 3);
    for (auto& q : coords)
        if (sparse(rng) == 0) q = random_rational(rng);
    return stargraph::from_coords(coords, params);
}

}  // namespace testutil
