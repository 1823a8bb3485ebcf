#include "shadowlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shadowlab/error.hpp"

namespace shadowlab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix entry count does not match its shape");
  }
  classify();
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> entries)
    : ComplexMatrix(n, n, std::move(entries)) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  classify();
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, std::vector<cplx>(rows * cols));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = values[i];
  return ComplexMatrix(n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::from_real(std::size_t rows, std::size_t cols,
                                       std::span<const double> entries) {
  return ComplexMatrix(rows, cols, std::vector<cplx>(entries.begin(), entries.end()));
}

std::size_t ComplexMatrix::order() const {
  if (!square()) throw DimensionError("matrix is not square");
  return rows_;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

void ComplexMatrix::classify() {
  const double scale = std::max(max_abs(), std::numeric_limits<double>::min());
  const double tol = kStructureTolerance * scale;
  real_ = std::all_of(data_.begin(), data_.end(),
                      [tol](const cplx& z) { return std::abs(z.imag()) <= tol; });
  hermitian_ = square();
  for (std::size_t i = 0; hermitian_ && i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
        hermitian_ = false;
        break;
      }
    }
  }
}

ComplexMatrix ComplexMatrix::adjoint() const {
  std::vector<cplx> e(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = std::conj((*this)(i, j));
  return ComplexMatrix(cols_, rows_, std::move(e));
}

ComplexMatrix ComplexMatrix::transpose() const {
  std::vector<cplx> e(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = (*this)(i, j);
  return ComplexMatrix(cols_, rows_, std::move(e));
}

ComplexMatrix ComplexMatrix::conj() const {
  std::vector<cplx> e(data_.size());
  std::transform(data_.begin(), data_.end(), e.begin(), [](cplx z) { return std::conj(z); });
  return ComplexMatrix(rows_, cols_, std::move(e));
}

ComplexMatrix ComplexMatrix::real_part() const {
  std::vector<cplx> e(data_.size());
  std::transform(data_.begin(), data_.end(), e.begin(), [](cplx z) { return cplx(z.real()); });
  return ComplexMatrix(rows_, cols_, std::move(e));
}

ComplexMatrix ComplexMatrix::imag_part() const {
  std::vector<cplx> e(data_.size());
  std::transform(data_.begin(), data_.end(), e.begin(), [](cplx z) { return cplx(z.imag()); });
  return ComplexMatrix(rows_, cols_, std::move(e));
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  return cplx(0.5) * (*this + adjoint());
}

ComplexMatrix ComplexMatrix::antihermitian_part() const {
  return cplx(0.0, -0.5) * (*this - adjoint());
}

cplx ComplexMatrix::trace() const {
  const std::size_t n = order();
  cplx t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
  std::vector<cplx> e(a.data_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.data_[i] + b.data_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference shape mismatch");
  std::vector<cplx> e(a.data_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.data_[i] - b.data_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  std::vector<cplx> e(a.rows_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) e[i * b.cols_ + j] += aik * b(k, j);
    }
  return ComplexMatrix(a.rows_, b.cols_, std::move(e));
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  std::vector<cplx> e(a.data_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = s * a.data_[i];
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
  std::vector<cplx> e(r * c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          e[(i * b.rows() + k) * c + (j * b.cols() + l)] = a(i, j) * b(k, l);
  return ComplexMatrix(r, c, std::move(e));
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t r = a.rows() + b.rows(), c = a.cols() + b.cols();
  std::vector<cplx> e(r * c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e[i * c + j] = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      e[(a.rows() + i) * c + (a.cols() + j)] = b(i, j);
  return ComplexMatrix(r, c, std::move(e));
}

ComplexMatrix partial_trace_2(const ComplexMatrix& x, std::size_t n, std::size_t k) {
  if (!x.square() || x.rows() != n * k) {
    throw DimensionError("partial trace: matrix order must equal n * k");
  }
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < k; ++a) s += x(i * k + a, j * k + a);
      e[i * n + j] = s;
    }
  return ComplexMatrix(n, std::move(e));
}

std::vector<cplx> multiply(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> v) {
  if (!a.square() || a.rows() != v.size()) throw DimensionError("quadratic form shape mismatch");
  cplx s = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    cplx row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += a(i, j) * v[j];
    s += std::conj(v[i]) * row;
  }
  return s;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a) {
  if (!a.hermitian()) throw DomainError("eigenvalues_hermitian: matrix is not Hermitian");
  const std::size_t n = a.order();
  const std::size_t m = 2 * n;
  std::vector<double> emb(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = a(i, j);
      emb[i * m + j] = z.real();
      emb[(i + n) * m + (j + n)] = z.real();
      emb[i * m + (j + n)] = -z.imag();
      emb[(i + n) * m + j] = z.imag();
    }
  auto eig = detail::jacobi_eigen(std::move(emb), m);
  // Each eigenvalue of A appears twice in the embedding; sorted order puts the
  // copies next to each other.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (eig.values[2 * i] + eig.values[2 * i + 1]);
  return out;
}

namespace detail {

SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, int max_sweeps) {
  if (a.size() != n * n) throw DimensionError("jacobi_eigen: size mismatch");
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double frob = 0.0;
  for (double x : a) frob += x * x;
  const double target = std::numeric_limits<double>::epsilon() * std::sqrt(frob);

  bool converged = n <= 1 || frob == 0.0;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(2.0 * off) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (std::sqrt(2.0 * off) > 1e3 * target) throw ConvergenceError("Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return at(i, i) < at(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = at(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors[r * n + c] = v[r * n + order[c]];
  }
  return out;
}

std::vector<double> least_squares(std::vector<double> a, std::size_t rows, std::size_t cols,
                                  std::vector<double> b) {
  if (a.size() != rows * cols || b.size() != rows || rows < cols) {
    throw DimensionError("least_squares: bad system shape");
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * cols + j]; };
  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += at(i, k) * at(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw DomainError("least_squares: rank-deficient system");
    const double alpha = at(k, k) > 0 ? -norm : norm;
    std::vector<double> u(rows - k);
    for (std::size_t i = k; i < rows; ++i) u[i - k] = at(i, k);
    u[0] -= alpha;
    double unorm2 = 0.0;
    for (double x : u) unorm2 += x * x;
    if (unorm2 == 0.0) continue;
    for (std::size_t j = k; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += u[i - k] * at(i, j);
      const double f = 2.0 * dot / unorm2;
      for (std::size_t i = k; i < rows; ++i) at(i, j) -= f * u[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += u[i - k] * b[i];
    const double f = 2.0 * dot / unorm2;
    for (std::size_t i = k; i < rows; ++i) b[i] -= f * u[i - k];
  }
  std::vector<double> x(cols);
  for (std::size_t k = cols; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < cols; ++j) s -= at(k, j) * x[j];
    x[k] = s / at(k, k);
  }
  return x;
}

}  // namespace detail

}  // namespace shadowlab
