#pragma once

#include "rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stargraph {

/// Dense matrix over the exact rationals, row-major.
struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> data;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, Rat(0)) {
        if (r < 0 || c < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows_in) {
        const int r = static_cast<int>(rows_in.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows_in[0].size());
        RatMatrix m(r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows_in[static_cast<std::size_t>(i)].size()) != c)
                throw std::invalid_argument("ragged rows");
            for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    static RatMatrix identity(int k) {
        RatMatrix m(k, k);
        for (int i = 0; i < k; ++i) m.at(i, i) = 1;
        return m;
    }

    Rat& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::vector<Rat> row(int r) const {
        return {data.begin() + static_cast<std::ptrdiff_t>(r) * cols,
                data.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols};
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
    }
};

inline RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.cols && a.rows != 0 && b.rows != 0)
        throw std::invalid_argument("vstack: column count mismatch");
    RatMatrix out(a.rows + b.rows, a.rows != 0 ? a.cols : b.cols);
    out.data = a.data;
    out.data.insert(out.data.end(), b.data.begin(), b.data.end());
    return out;
}

inline std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<Rat> out(static_cast<std::size_t>(m.rows), Rat(0));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (m.at(r, c) != 0 && v[static_cast<std::size_t>(c)] != 0)
                out[static_cast<std::size_t>(r)] += m.at(r, c) * v[static_cast<std::size_t>(c)];
    return out;
}

struct RrefResult {
    RatMatrix mat;
    int rank = 0;
    std::vector<int> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination. Pivot choice is the
/// first row with a nonzero entry in the current column, so the result and
/// all downstream orderings are deterministic.
inline RrefResult rref(RatMatrix m) {
    RrefResult out;
    int lead = 0;
    for (int col = 0; col < m.cols && lead < m.rows; ++col) {
        int pivot = -1;
        for (int r = lead; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != lead)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(lead, c));
        const Rat inv = Rat(1) / m.at(lead, col);
        if (inv != 1)
            for (int c = col; c < m.cols; ++c) m.at(lead, c) *= inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == lead || m.at(r, col) == 0) continue;
            const Rat factor = m.at(r, col);
            for (int c = col; c < m.cols; ++c) m.at(r, c) -= factor * m.at(lead, c);
        }
        out.pivot_cols.push_back(col);
        ++lead;
    }
    out.rank = lead;
    out.mat = std::move(m);
    return out;
}

inline int rank(const RatMatrix& m) { return rref(m).rank; }

/// Reduces v against an already-computed RREF; the result is zero exactly
/// when v lies in the row space.
inline std::vector<Rat> reduce_against(const RrefResult& r, std::vector<Rat> v) {
    if (static_cast<int>(v.size()) != r.mat.cols) throw std::invalid_argument("reduce_against: size mismatch");
    for (int p = 0; p < r.rank; ++p) {
        const int col = r.pivot_cols[static_cast<std::size_t>(p)];
        const Rat factor = v[static_cast<std::size_t>(col)];
        if (factor == 0) continue;
        for (int c = col; c < r.mat.cols; ++c) v[static_cast<std::size_t>(c)] -= factor * r.mat.at(p, c);
    }
    return v;
}

inline bool is_zero_vector(const std::vector<Rat>& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

inline bool in_rowspace(const std::vector<Rat>& v, const RrefResult& r) {
    return is_zero_vector(reduce_against(r, v));
}

inline bool in_rowspace(const std::vector<Rat>& v, const RatMatrix& a) { return in_rowspace(v, rref(a)); }

/// Row spaces are equal iff the ranks agree and every row of b reduces to
/// zero against a.
inline bool rowspace_equal(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("rowspace_equal: column count mismatch");
    const RrefResult ra = rref(a);
    if (ra.rank != rank(b)) return false;
    for (int r = 0; r < b.rows; ++r)
        if (!in_rowspace(b.row(r), ra)) return false;
    return true;
}

/// Basis of the right kernel {x : m x = 0}, one row per basis vector. The
/// standard construction from the RREF: one vector per free column, emitted
/// in ascending free-column order; vector for free column f has x_f = 1 and
/// x_p = -R[row(p)][f] for each pivot column p.
inline RatMatrix nullspace(const RatMatrix& m) {
    const RrefResult r = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols), false);
    for (const int p : r.pivot_cols) is_pivot[static_cast<std::size_t>(p)] = true;
    RatMatrix out(m.cols - r.rank, m.cols);
    int row = 0;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        out.at(row, f) = 1;
        for (int p = 0; p < r.rank; ++p) out.at(row, r.pivot_cols[static_cast<std::size_t>(p)]) = -r.mat.at(p, f);
        ++row;
    }
    return out;
}

}  // namespace stargraph
