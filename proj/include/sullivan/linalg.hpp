#ifndef SULLIVAN_LINALG_HPP
#define SULLIVAN_LINALG_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "sullivan/algebra.hpp"

namespace sullivan {

/* Sparse vector over Q, entries sorted by column index. */
struct QVec {
    std::vector<std::pair<int, Q>> e;

    bool is_zero() const { return e.empty(); }
    Q at(int col) const;
    void set(int col, const Q& v);
};

/* Sparse row-major matrix over Q. */
struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<QVec> row;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    void set(int r, int c, const Q& v);
};

/* Exact rank by fraction-free elimination on integer-scaled sparse rows
 * (cross-multiplication updates with gcd content removal; no divisions
 * other than exact ones). Pivot choice favours sparse rows; the result is
 * strategy-independent. */
int exact_rank(const QMatrix& A);

/* Textbook dense fraction-free (Bareiss) rank over scaled integers.
 * Used as an independent cross-check in tests. */
int bareiss_rank_dense(const QMatrix& A);

/* Rank over GF(p), p = 2^61 - 1. Opt-in consistency check for large
 * slices: rank_modp <= exact rank always; equality whp. */
int rank_modp(const QMatrix& A);

/* Deterministic reduced row echelon form: columns are processed left to
 * right and the pivot is the first live row with a nonzero entry. */
struct RrefResult {
    std::vector<QVec> rows;      // reduced rows, sorted by pivot column
    std::vector<int> pivot_col;  // per reduced row
    std::vector<int> row_of_pivot_col;  // cols -> row index or -1
    int rank = 0;
};
RrefResult rref(const QMatrix& A);

/* Minimal-pivot solution of A x = b: free variables are set to zero.
 * Returns nullopt when the system is inconsistent. */
std::optional<std::vector<Q>> solve_minimal(const QMatrix& A, const std::vector<Q>& b);

/* Basis of the right nullspace, one vector per free column, in ascending
 * free-column order. */
std::vector<QVec> nullspace_basis(const QMatrix& A);

/* Reduces v against echelon rows in place; returns the residual. */
QVec reduce_against(const RrefResult& R, QVec v);

}  // namespace sullivan

#endif
