#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace shadowlab {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Square matrices carry Hermitian and
/// real-entry flags that are computed once at construction; the class has no
/// mutating element access, so the flags stay valid for the object's lifetime.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Square matrix from row-major entries.
  ComplexMatrix(std::size_t n, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  static ComplexMatrix from_real(std::size_t rows, std::size_t cols,
                                 std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Order of a square matrix; throws DimensionError otherwise.
  std::size_t order() const;
  bool square() const noexcept { return rows_ == cols_; }

  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  std::span<const cplx> data() const noexcept { return data_; }

  /// Largest entry modulus.
  double max_abs() const noexcept;

  bool hermitian() const noexcept { return hermitian_; }
  bool real() const noexcept { return real_; }
  bool real_symmetric() const noexcept { return hermitian_ && real_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix real_part() const;
  ComplexMatrix imag_part() const;
  /// (A + A^dagger) / 2.
  ComplexMatrix hermitian_part() const;
  /// (A - A^dagger) / (2i); A = hermitian_part() + i * antihermitian_part().
  ComplexMatrix antihermitian_part() const;
  cplx trace() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void classify();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
  bool hermitian_ = false;
  bool real_ = false;
};

/// Relative tolerance used by the Hermitian / real flags.
inline constexpr double kStructureTolerance = 1e-12;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Block-diagonal direct sum A (+) B.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace over the second factor of C^n (x) C^k; index (i, a) maps to
/// i * k + a.
ComplexMatrix partial_trace_2(const ComplexMatrix& x, std::size_t n, std::size_t k);

/// Full spectrum of a Hermitian matrix, ascending. Uses cyclic Jacobi on the
/// 2n x 2n real symmetric embedding [[Re, -Im], [Im, Re]] and keeps one of each
/// duplicated pair. Throws DomainError when the Hermitian flag is not set and
/// ConvergenceError when the sweep cap is reached.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& a);

/// <v|A|v> for a complex vector v.
cplx quadratic_form(const ComplexMatrix& a, std::span<const cplx> v);

std::vector<cplx> multiply(const ComplexMatrix& a, std::span<const cplx> v);

namespace detail {

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column j is the eigenvector of values[j], row-major n x n
};

/// Cyclic Jacobi rotation for a dense real symmetric matrix (row-major).
SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, int max_sweeps = 100);

/// Least-squares solution of the overdetermined system (row-major rows x cols)
/// by Householder QR.
std::vector<double> least_squares(std::vector<double> a, std::size_t rows,
                                  std::size_t cols, std::vector<double> b);

}  // namespace detail

}  // namespace shadowlab
