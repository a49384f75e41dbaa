#pragma once
#include <optional>
#include <vector>

#include "rfi/numfield.hpp"

namespace rfi {

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline Rational inverse(const Rational& x) { return 1 / x; }
inline FieldElement inverse(const FieldElement& x) { return x.inverse(); }

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
struct Echelon {
    Matrix<T> rref;
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

// reduced row echelon form; rows may have any count, all of length cols
template <class T>
Echelon<T> row_reduce(Matrix<T> m, int cols) {
    Echelon<T> out;
    int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!is_zero(m[i][c])) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[piv], m[r]);
        T inv = inverse(m[r][c]);
        for (int j = c; j < cols; ++j)
            m[r][j] = m[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c]))
                continue;
            T f = m[i][c];
            for (int j = c; j < cols; ++j)
                if (!is_zero(m[r][j]))
                    m[i][j] = m[i][j] - f * m[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    out.rref = std::move(m);
    return out;
}

template <class T>
int rank(const Matrix<T>& m, int cols) {
    return row_reduce(m, cols).rank();
}

// basis of {x : m x = 0}, one vector per free column
template <class T>
Matrix<T> nullspace(const Matrix<T>& m, int cols, const T& zero, const T& one) {
    Echelon<T> e = row_reduce(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int p : e.pivots)
        is_pivot[p] = true;
    Matrix<T> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> v(cols, zero);
        v[f] = one;
        for (int i = 0; i < e.rank(); ++i)
            v[e.pivots[i]] = zero - e.rref[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// some solution of a x = b, nullopt if inconsistent
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b, int cols, const T& zero) {
    Matrix<T> aug = a;
    for (size_t i = 0; i < aug.size(); ++i)
        aug[i].push_back(b[i]);
    Echelon<T> e = row_reduce(aug, cols + 1);
    if (!e.pivots.empty() && e.pivots.back() == cols)
        return std::nullopt;
    std::vector<T> x(cols, zero);
    for (int i = 0; i < e.rank(); ++i)
        x[e.pivots[i]] = e.rref[i][cols];
    return x;
}

template <class T>
T determinant(Matrix<T> m, const T& one) {
    int n = static_cast<int>(m.size());
    T det = one;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(m[i][c])) {
                piv = i;
                break;
            }
        if (piv < 0)
            return one - one;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        T inv = inverse(m[c][c]);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(m[i][c]))
                continue;
            T f = m[i][c] * inv;
            for (int j = c; j < n; ++j)
                m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

// fraction-free determinant of an integer matrix
Integer bareiss_determinant(std::vector<std::vector<Integer>> m);

} // namespace rfi
