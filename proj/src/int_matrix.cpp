#include "homkk/int_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace homkk {

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = (*this)(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                if (rhs(k, j) != 0) out(i, j) += aik * rhs(k, j);
            }
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix sum: shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("matrix difference: shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
    return out;
}

IntMatrix IntMatrix::operator*(const Int& scalar) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * scalar;
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

std::vector<Int> IntMatrix::col(std::size_t j) const {
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void IntMatrix::set_col(std::size_t j, const std::vector<Int>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::col_range(std::size_t c0, std::size_t c1) const {
    IntMatrix out(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::row_range(std::size_t r0, std::size_t r1) const {
    IntMatrix out(r1 - r0, cols_);
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i - r0, j) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
    }
    return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    IntMatrix out(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) out(a.rows_ + i, j) = b(i, j);
    return out;
}

IntMatrix IntMatrix::block_diag(const std::vector<IntMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) { r += b.rows_; c += b.cols_; }
    IntMatrix out(r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) out(ro + i, co + j) = b(i, j);
        ro += b.rows_;
        co += b.cols_;
    }
    return out;
}

IntMatrix IntMatrix::kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows_; ++k)
                for (std::size_t l = 0; l < b.cols_; ++l)
                    out(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
        }
    return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += q * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += q * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? " [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]" << (i + 1 < rows_ ? "\n" : "");
    }
    os << "]";
    return os.str();
}

namespace {

// Pivot search: nonzero entry of minimal absolute value in the trailing
// submatrix, ties broken by position. Returns false if the submatrix is zero.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int v = abs(d(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
            }
        }
    return found;
}

// Clear row t and column t outside the pivot position (t,t), maintaining
// U*M*V = D. Terminates because |D(t,t)| strictly decreases on each swap.
void clear_cross(IntMatrix& d, IntMatrix& u, IntMatrix& v, std::size_t t) {
    for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
            if (d(i, t) == 0) continue;
            Int q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
            d.add_row_multiple(i, t, -q);
            u.add_row_multiple(i, t, -q);
            if (r != 0) {
                d.swap_rows(i, t);
                u.swap_rows(i, t);
                clean = false;
                break;
            }
        }
        if (!clean) continue;
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
            if (d(t, j) == 0) continue;
            Int q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
            d.add_col_multiple(j, t, -q);
            v.add_col_multiple(j, t, -q);
            if (r != 0) {
                d.swap_cols(j, t);
                v.swap_cols(j, t);
                clean = false;
                break;
            }
        }
        if (clean) break;
    }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SmithDecomposition s;
    s.U = IntMatrix::identity(m.rows());
    s.V = IntMatrix::identity(m.cols());
    s.D = m;
    IntMatrix& d = s.D;
    const std::size_t nmin = std::min(m.rows(), m.cols());

    std::size_t t = 0;
    while (t < nmin) {
        std::size_t pi, pj;
        if (!find_pivot(d, t, pi, pj)) break;
        d.swap_rows(t, pi);
        s.U.swap_rows(t, pi);
        d.swap_cols(t, pj);
        s.V.swap_cols(t, pj);
        clear_cross(d, s.U, s.V, t);
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
        ++t;
    }
    s.rank = t;

    // Enforce the divisibility chain d1 | d2 | ... by folding offenders back.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < s.rank; ++i) {
            if (mpz_divisible_p(d(i + 1, i + 1).get_mpz_t(), d(i, i).get_mpz_t())) continue;
            d.add_row_multiple(i, i + 1, 1);
            s.U.add_row_multiple(i, i + 1, 1);
            clear_cross(d, s.U, s.V, i);
            if (d(i, i) < 0) {
                d.negate_row(i);
                s.U.negate_row(i);
            }
            if (d(i + 1, i + 1) < 0) {
                d.negate_row(i + 1);
                s.U.negate_row(i + 1);
            }
            changed = true;
        }
    }
    return s;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    std::vector<Int> out;
    std::size_t n = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
    return out;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

IntMatrix hnf_column_basis(const IntMatrix& m) {
    IntMatrix h = m;
    const std::size_t rows = h.rows(), cols = h.cols();
    std::size_t placed = 0;
    for (std::size_t r = 0; r < rows && placed < cols; ++r) {
        // Euclid over the active columns until row r has one nonzero there.
        for (;;) {
            std::size_t jmin = cols;
            Int best;
            for (std::size_t j = placed; j < cols; ++j) {
                if (h(r, j) == 0) continue;
                Int v = abs(h(r, j));
                if (jmin == cols || v < best) {
                    jmin = j;
                    best = v;
                }
            }
            if (jmin == cols) break;  // row r clear in active region
            bool reduced_all = true;
            for (std::size_t j = placed; j < cols; ++j) {
                if (j == jmin || h(r, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, jmin).get_mpz_t());
                h.add_col_multiple(j, jmin, -q);
                if (h(r, j) != 0) reduced_all = false;
            }
            if (reduced_all) {
                h.swap_cols(placed, jmin);
                if (h(r, placed) < 0) h.negate_col(placed);
                // Normalize earlier pivot-row entries of this row into [0, pivot).
                for (std::size_t j = 0; j < placed; ++j) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), h(r, j).get_mpz_t(), h(r, placed).get_mpz_t());
                    h.add_col_multiple(j, placed, -q);
                }
                ++placed;
                break;
            }
        }
    }
    return h.col_range(0, placed);
}

IntMatrix nullspace(const IntMatrix& m) {
    if (m.cols() == 0) return IntMatrix(0, 0);
    if (m.rows() == 0) return IntMatrix::identity(m.cols());
    SmithDecomposition s = smith_normal_form(m);
    return s.V.col_range(s.rank, m.cols());
}

namespace {

struct SnfSolver {
    SmithDecomposition s;
    std::size_t rows, cols;
    explicit SnfSolver(const IntMatrix& a) : s(smith_normal_form(a)), rows(a.rows()), cols(a.cols()) {}

    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
        std::vector<Int> c = s.U.apply(b);
        std::vector<Int> y(cols);
        std::size_t nmin = std::min(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i < nmin && s.D(i, i) != 0) {
                if (!mpz_divisible_p(c[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
                mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), s.D(i, i).get_mpz_t());
            } else if (c[i] != 0) {
                return std::nullopt;
            }
        }
        return s.V.apply(y);
    }
};

}  // namespace

std::optional<std::vector<Int>> solve_linear(const IntMatrix& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
    return SnfSolver(a).solve(b);
}

std::optional<IntMatrix> solve_linear_matrix(const IntMatrix& a, const IntMatrix& b) {
    if (b.rows() != a.rows()) throw std::invalid_argument("solve_linear_matrix: dimension mismatch");
    SnfSolver solver(a);
    IntMatrix x(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto xj = solver.solve(b.col(j));
        if (!xj) return std::nullopt;
        x.set_col(j, *xj);
    }
    return x;
}

std::optional<std::vector<Int>> solve_modulo(const IntMatrix& a, const IntMatrix& lattice,
                                             const std::vector<Int>& b) {
    auto full = solve_linear(IntMatrix::hstack(a, lattice), b);
    if (!full) return std::nullopt;
    return std::vector<Int>(full->begin(), full->begin() + static_cast<long>(a.cols()));
}

std::optional<IntMatrix> solve_modulo_matrix(const IntMatrix& a, const IntMatrix& lattice,
                                             const IntMatrix& b) {
    auto full = solve_linear_matrix(IntMatrix::hstack(a, lattice), b);
    if (!full) return std::nullopt;
    return full->row_range(0, a.cols());
}

bool in_column_lattice(const IntMatrix& m, const std::vector<Int>& v) {
    return solve_linear(m, v).has_value();
}

bool cols_in_column_lattice(const IntMatrix& m, const IntMatrix& b) {
    return solve_linear_matrix(m, b).has_value();
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    auto inv = solve_linear_matrix(m, IntMatrix::identity(m.rows()));
    if (!inv) throw std::invalid_argument("unimodular_inverse: matrix not invertible over Z");
    return *inv;
}

}  // namespace homkk
