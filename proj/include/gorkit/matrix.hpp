// Dense exact linear algebra over F_p: Gaussian elimination with delayed
// reduction (64-bit accumulators, no per-entry mod for small primes), kernel
// bases in echelon form, consistent-system solving, deterministic RNG.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gorkit/fp.hpp"

namespace gorkit {

using Vec = std::vector<fp::Scalar>;

/// Deterministic splitmix64 generator; per-sample streams are derived from a
/// master seed so fuzz runs are reproducible regardless of platform stdlib.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 1) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by rejection; exact, not just approximately uniform.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - (~0ull % n + 1) % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return x % n;
  }

  fp::Scalar field_element() { return fp::Scalar(uniform(fp::prime())); }
  fp::Scalar nonzero_field_element() { return fp::Scalar(1 + uniform(fp::prime() - 1)); }

  Rng derive(std::uint64_t stream) const {
    Rng child(state ^ (0xa0761d6478bd642full * (stream + 1)));
    child.next();
    return child;
  }
};

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix random(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(rows, cols);
    for (auto& x : m.a_) x = rng.field_element();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  fp::Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  fp::Scalar operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const fp::Scalar* row_ptr(std::size_t i) const { return a_.data() + i * cols_; }
  fp::Scalar* row_ptr(std::size_t i) { return a_.data() + i * cols_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (auto x : a_)
      if (x) return false;
    return true;
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (auto x : a_)
      if (x) ++n;
    return n;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fp::add(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fp::sub(a_[k], o.a_[k]);
    return r;
  }

  Matrix scaled(fp::Scalar c) const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fp::mul(a_[k], c);
    return r;
  }

  // ikj product with zero-skip; block-sparse operands (projective actions,
  // echelon inclusions) cost what their support costs, not n^3.
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    if (r.empty() || cols_ == 0) return r;
    const std::uint32_t p = fp::prime();
    const bool small_p = p < (1u << 20);
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      const fp::Scalar* arow = row_ptr(i);
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint64_t c = arow[k];
        if (!c) continue;
        const fp::Scalar* brow = o.row_ptr(k);
        if (small_p) {
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += c * brow[j];
        } else {
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] = (acc[j] + c * brow[j]) % p;
        }
      }
      fp::Scalar* rrow = r.row_ptr(i);
      for (std::size_t j = 0; j < o.cols_; ++j) rrow[j] = fp::Scalar(acc[j] % p);
    }
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape mismatch");
    const std::uint32_t p = fp::prime();
    Vec r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      const fp::Scalar* arow = row_ptr(i);
      if (p < (1u << 20)) {
        for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t(arow[j]) * v[j];
      } else {
        for (std::size_t j = 0; j < cols_; ++j) acc = (acc + std::uint64_t(arow[j]) * v[j]) % p;
      }
      r[i] = fp::Scalar(acc % p);
    }
    return r;
  }

  Vec column(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const Vec& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
    }
    return r;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack col mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
    return r;
  }

  static Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, a.cols_ + j) = b(i, j);
    return r;
  }

  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix r(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t i = 0; i < rows_; ++i) r(i, j) = (*this)(i, idx[j]);
    return r;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<fp::Scalar> a_;
};

struct Echelon {
  Matrix reduced;                   // full reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

// Working rows are unreduced uint64 accumulators. For p < 2^20 a row can
// absorb > 2^23 axpys before overflow, far beyond desk-scale sizes; larger
// primes take the always-reduce path.
class Eliminator {
 public:
  Eliminator(const Matrix& m) : rows_(m.rows()), cols_(m.cols()), w_(rows_ * cols_) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) w_[i * cols_ + j] = m(i, j);
    small_p_ = fp::prime() < (1u << 20);
  }

  Echelon run(std::size_t active_cols) {
    const std::uint64_t p = fp::prime();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < active_cols && r < rows_; ++c) {
      std::size_t pr = rows_;
      for (std::size_t i = r; i < rows_; ++i) {
        if (at(i, c) % p != 0) {
          pr = i;
          break;
        }
      }
      if (pr == rows_) continue;
      swap_rows(r, pr);
      reduce_row(r);
      scale_row(r, fp::inv(fp::Scalar(at(r, c))));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        const std::uint64_t e = at(i, c) % p;
        if (!e) continue;
        if (!small_p_) reduce_row(i);
        axpy(i, r, fp::Scalar(p - e), c);
      }
      pivots.push_back(c);
      ++r;
    }
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = fp::Scalar(at(i, j) % p);
    return Echelon{std::move(out), std::move(pivots)};
  }

 private:
  std::uint64_t& at(std::size_t i, std::size_t j) { return w_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  void reduce_row(std::size_t i) {
    const std::uint64_t p = fp::prime();
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) %= p;
  }

  void scale_row(std::size_t i, fp::Scalar c) {
    const std::uint64_t p = fp::prime();
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = (at(i, j) % p) * c % p;
  }

  // w[i] += c * w[src]; src row must be reduced. Skips the zero prefix.
  void axpy(std::size_t i, std::size_t src, fp::Scalar c, std::size_t from_col) {
    std::uint64_t* wi = &at(i, 0);
    const std::uint64_t* ws = &at(src, 0);
    const std::uint64_t cc = c;
    if (small_p_) {
      for (std::size_t j = from_col; j < cols_; ++j) wi[j] += cc * ws[j];
    } else {
      const std::uint64_t p = fp::prime();
      for (std::size_t j = from_col; j < cols_; ++j) wi[j] = (wi[j] + cc * ws[j]) % p;
    }
  }

  std::size_t rows_, cols_;
  std::vector<std::uint64_t> w_;
  bool small_p_;
};

}  // namespace detail

inline Echelon rref(const Matrix& m) { return detail::Eliminator(m).run(m.cols()); }

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

/// Basis of the right null space, one column per free variable. The rows at
/// the free positions form an identity, so span coordinates read off directly.
struct KernelBasis {
  Matrix basis;                        // cols() == nullity
  std::vector<std::size_t> free_cols;  // coordinate positions
};

inline KernelBasis kernel_basis(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const fp::Scalar v = e.reduced(r, free_cols[k]);
      if (v) basis(e.pivots[r], k) = fp::neg(v);
    }
  }
  return KernelBasis{std::move(basis), std::move(free_cols)};
}

/// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = detail::Eliminator(aug).run(a.cols());
  Vec x(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    bool lhs_zero = true;
    if (r < e.pivots.size()) lhs_zero = false;
    if (lhs_zero && e.reduced(r, a.cols()) != 0) return std::nullopt;
  }
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

/// One solution of A X = B, or nullopt when inconsistent.
inline std::optional<Matrix> solve_matrix(const Matrix& a, const Matrix& b) {
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_matrix: shape mismatch");
  Matrix aug = Matrix::hstack(a, b);
  Echelon e = detail::Eliminator(aug).run(a.cols());
  for (std::size_t r = e.pivots.size(); r < a.rows(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (e.reduced(r, a.cols() + j) != 0) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve_matrix(a, Matrix::identity(a.rows()));
  if (!x) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return x;
}

inline bool is_invertible(const Matrix& a) {
  return a.rows() == a.cols() && rank(a) == a.rows();
}

/// Echelon-structured spanning set of a collection of column vectors:
/// cols^T is in RREF, `lead[k]` is the leading position of column k, and the
/// rows at the lead positions form an identity.
struct ColBasis {
  Matrix cols;
  std::vector<std::size_t> lead;
  std::size_t dim() const { return cols.cols(); }

  /// Coordinates of a vector already known to lie in the span.
  Vec coords(const Vec& v) const {
    Vec c(lead.size());
    for (std::size_t k = 0; k < lead.size(); ++k) c[k] = v[lead[k]];
    return c;
  }
};

inline ColBasis column_space(const Matrix& m) {
  Echelon e = rref(m.transpose());
  Matrix cols(m.rows(), e.rank());
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t i = 0; i < m.rows(); ++i) cols(i, r) = e.reduced(r, i);
  return ColBasis{std::move(cols), e.pivots};
}

inline bool in_span(const ColBasis& basis, const Vec& v) {
  Vec r = v;
  for (std::size_t k = 0; k < basis.lead.size(); ++k) {
    const fp::Scalar c = r[basis.lead[k]];
    if (!c) continue;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fp::sub(r[i], fp::mul(c, basis.cols(i, k)));
  }
  for (auto x : r)
    if (x) return false;
  return true;
}

/// Projection onto the quotient by span(sub), with a fixed section. Quotient
/// coordinates are the ambient positions not led by the subspace.
struct QuotientSplit {
  std::vector<std::size_t> kept;
  Matrix proj;     // (n - dim) x n
  Matrix section;  // n x (n - dim)
};

inline QuotientSplit quotient_split(std::size_t ambient_dim, const ColBasis& sub) {
  std::vector<bool> is_lead(ambient_dim, false);
  for (auto i : sub.lead) is_lead[i] = true;
  QuotientSplit q;
  for (std::size_t i = 0; i < ambient_dim; ++i)
    if (!is_lead[i]) q.kept.push_back(i);
  q.proj = Matrix(q.kept.size(), ambient_dim);
  for (std::size_t r = 0; r < q.kept.size(); ++r) {
    q.proj(r, q.kept[r]) = 1;
    for (std::size_t k = 0; k < sub.lead.size(); ++k) {
      const fp::Scalar v = sub.cols(q.kept[r], k);
      if (v) q.proj(r, sub.lead[k]) = fp::neg(v);
    }
  }
  q.section = Matrix(ambient_dim, q.kept.size());
  for (std::size_t r = 0; r < q.kept.size(); ++r) q.section(q.kept[r], r) = 1;
  return q;
}

}  // namespace gorkit
