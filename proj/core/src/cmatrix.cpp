#include "polydil/cmatrix.hpp"

#include <cmath>

#include "polydil/error.hpp"

namespace polydil {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotContractive: return "NotContractive";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotSzego: return "NotSzego";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::GNotPsd: return "GNotPsd";
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::ProductNotPsd: return "ProductNotPsd";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::OutsideDisc: return "OutsideDisc";
    case ErrorKind::PartitionMismatch: return "PartitionMismatch";
    case ErrorKind::IsometryDefect: return "IsometryDefect";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::CertificateRejected: return "CertificateRejected";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match shape");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::diag(std::initializer_list<cplx> d) {
  return diag(std::span<const cplx>(d.begin(), d.size()));
}

CMatrix CMatrix::column(std::span<const cplx> v) {
  return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CMatrix CMatrix::basis_vector(std::size_t n, std::size_t k) {
  CMatrix m(n, 1);
  m(k, 0) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "block out of range");
  }
  CMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
  return m;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
  }
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool CMatrix::all_finite() const {
  for (const auto& x : data_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "operator*");
  CMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

CMatrix adjoint_times(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "adjoint_times");
  CMatrix m(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx aki = std::conj(a(k, i));
      if (aki == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aki * b(k, j);
    }
  }
  return m;
}

cplx inner(const CMatrix& x, const CMatrix& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "inner");
  cplx s = 0.0;
  auto xe = x.entries();
  auto ye = y.entries();
  for (std::size_t i = 0; i < xe.size(); ++i) s += std::conj(xe[i]) * ye[i];
  return s;
}

CMatrix hstack(std::span<const CMatrix> parts) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool first = true;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    if (first) {
      rows = p.rows();
      first = false;
    } else if (p.rows() != rows) {
      throw Error(ErrorKind::DimensionMismatch, "hstack");
    }
    cols += p.cols();
  }
  CMatrix m(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    if (p.cols() == 0) continue;
    m.set_block(0, c0, p);
    c0 += p.cols();
  }
  return m;
}

CMatrix vstack(std::span<const CMatrix> parts) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool first = true;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    if (first) {
      cols = p.cols();
      first = false;
    } else if (p.cols() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "vstack");
    }
    rows += p.rows();
  }
  CMatrix m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    if (p.rows() == 0) continue;
    m.set_block(r0, 0, p);
    r0 += p.rows();
  }
  return m;
}

CMatrix block_diag(std::span<const CMatrix> parts) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& p : parts) {
    rows += p.rows();
    cols += p.cols();
  }
  CMatrix m(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    m.set_block(r0, c0, p);
    r0 += p.rows();
    c0 += p.cols();
  }
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

CMatrix matrix_power(const CMatrix& a, unsigned power) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "matrix_power needs square");
  CMatrix result = CMatrix::identity(a.rows());
  CMatrix base = a;
  while (power > 0) {
    if (power & 1U) result = result * base;
    power >>= 1U;
    if (power > 0) base = base * base;
  }
  return result;
}

}  // namespace polydil
