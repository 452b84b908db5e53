#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace polydil {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. All operator symbols in the library are
/// carried by this type; vectors are n x 1 matrices.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diag(std::span<const cplx> d);
  static CMatrix diag(std::initializer_list<cplx> d);
  static CMatrix column(std::span<const cplx> v);
  static CMatrix basis_vector(std::size_t n, std::size_t k);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  cplx trace() const;

  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);
  CMatrix col(std::size_t j) const { return block(0, j, rows_, 1); }
  CMatrix cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
  CMatrix rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

/// a* b without materializing the adjoint.
CMatrix adjoint_times(const CMatrix& a, const CMatrix& b);
/// Inner product <x, y> = x* y of two column vectors (conjugate-linear in x).
cplx inner(const CMatrix& x, const CMatrix& y);

CMatrix hstack(std::span<const CMatrix> parts);
CMatrix vstack(std::span<const CMatrix> parts);
CMatrix block_diag(std::span<const CMatrix> parts);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Integer power by repeated squaring; power 0 gives the identity.
CMatrix matrix_power(const CMatrix& a, unsigned power);

}  // namespace polydil
