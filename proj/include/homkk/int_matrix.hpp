#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace homkk {

using Int = mpz_class;

/// Dense integer matrix with arbitrary-precision entries, row-major storage.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_)
            throw std::invalid_argument("IntMatrix: entry count mismatch");
    }
    /// Build from rows of long literals, e.g. {{2,4},{6,8}}.
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix operator*(const Int& scalar) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    bool is_identity() const;
    bool is_diagonal() const;

    std::vector<Int> col(std::size_t j) const;
    void set_col(std::size_t j, const std::vector<Int>& v);
    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * vector

    /// Columns [c0, c1) as a new matrix.
    IntMatrix col_range(std::size_t c0, std::size_t c1) const;
    /// Rows [r0, r1) as a new matrix.
    IntMatrix row_range(std::size_t r0, std::size_t r1) const;

    /// [A | B], matching row counts.
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    /// [A; B], matching column counts.
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix block_diag(const std::vector<IntMatrix>& blocks);
    /// Kronecker product A (x) B.
    static IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);  // row dst += q * row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dk >= 0.
struct SmithDecomposition {
    IntMatrix U, D, V;
    std::size_t rank = 0;  // number of nonzero diagonal entries
    std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination; square input.
Int determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Column Hermite normal form: canonical basis of the column lattice.
/// Pivot rows strictly increase, pivots positive, entries left of a pivot in
/// its row reduced into [0, pivot). Zero columns are dropped.
IntMatrix hnf_column_basis(const IntMatrix& m);

/// Basis of { x : M x = 0 } as matrix columns (possibly zero columns -> width 0).
IntMatrix nullspace(const IntMatrix& m);

/// Integral solution of A x = b, if one exists.
std::optional<std::vector<Int>> solve_linear(const IntMatrix& a, const std::vector<Int>& b);

/// Columnwise integral solution of A X = B, if one exists.
std::optional<IntMatrix> solve_linear_matrix(const IntMatrix& a, const IntMatrix& b);

/// Solve A x = b modulo the column lattice of L: finds x with A x + L y = b.
/// Returns the x part only.
std::optional<std::vector<Int>> solve_modulo(const IntMatrix& a, const IntMatrix& lattice,
                                             const std::vector<Int>& b);
std::optional<IntMatrix> solve_modulo_matrix(const IntMatrix& a, const IntMatrix& lattice,
                                             const IntMatrix& b);

/// Membership of v in the column lattice of M.
bool in_column_lattice(const IntMatrix& m, const std::vector<Int>& v);
/// Membership of every column of B in the column lattice of M.
bool cols_in_column_lattice(const IntMatrix& m, const IntMatrix& b);

/// Inverse of a unimodular integer matrix.
IntMatrix unimodular_inverse(const IntMatrix& m);

}  // namespace homkk
