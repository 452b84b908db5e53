#include "polydil/hardy.hpp"

#include <cmath>
#include <numeric>

#include "polydil/error.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

IndexBox::IndexBox(std::size_t vars, int cap) : vars_(vars), cap_(cap) {
  if (cap < 0) throw Error(ErrorKind::InvalidArgument, "degree cap must be non-negative");
  count_ = 1;
  for (std::size_t i = 0; i < vars; ++i) count_ *= static_cast<std::size_t>(cap + 1);
}

bool IndexBox::contains(std::span<const int> k) const {
  if (k.size() != vars_) return false;
  for (int ki : k)
    if (ki < 0 || ki > cap_) return false;
  return true;
}

std::size_t IndexBox::linear(std::span<const int> k) const {
  if (!contains(k)) throw Error(ErrorKind::IndexOutOfRange, "multi-index outside the box");
  std::size_t idx = 0;
  for (int ki : k) idx = idx * static_cast<std::size_t>(cap_ + 1) + static_cast<std::size_t>(ki);
  return idx;
}

MultiIndex IndexBox::multi(std::size_t linear) const {
  MultiIndex k(vars_, 0);
  const auto radix = static_cast<std::size_t>(cap_ + 1);
  for (std::size_t i = vars_; i-- > 0;) {
    k[i] = static_cast<int>(linear % radix);
    linear /= radix;
  }
  return k;
}

HardyElement::HardyElement(std::size_t vars, int cap, std::size_t coeff_dim)
    : box_(vars, cap), coeff_dim_(coeff_dim), data_(box_.count() * coeff_dim, cplx{}) {}

HardyElement HardyElement::monomial(std::size_t vars, int cap, std::span<const int> k, const CMatrix& xi) {
  HardyElement f(vars, cap, xi.size());
  f.set_coefficient(k, xi);
  return f;
}

HardyElement HardyElement::constant(std::size_t vars, int cap, const CMatrix& xi) {
  const MultiIndex zero(vars, 0);
  return monomial(vars, cap, zero, xi);
}

std::span<cplx> HardyElement::coeff(std::size_t linear) {
  return std::span<cplx>(data_).subspan(linear * coeff_dim_, coeff_dim_);
}

std::span<const cplx> HardyElement::coeff(std::size_t linear) const {
  return std::span<const cplx>(data_).subspan(linear * coeff_dim_, coeff_dim_);
}

CMatrix HardyElement::coefficient(std::span<const int> k) const {
  return CMatrix::column(coeff(box_.linear(k)));
}

void HardyElement::set_coefficient(std::span<const int> k, const CMatrix& v) {
  if (v.size() != coeff_dim_) throw Error(ErrorKind::DimensionMismatch, "coefficient dimension");
  auto dst = coeff(box_.linear(k));
  std::copy(v.entries().begin(), v.entries().end(), dst.begin());
}

double HardyElement::norm_squared() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return s;
}

double HardyElement::norm() const { return std::sqrt(norm_squared()); }

CMatrix HardyElement::evaluate(std::span<const cplx> z) const {
  if (z.size() != vars()) throw Error(ErrorKind::DimensionMismatch, "evaluation point arity");
  CMatrix out(coeff_dim_, 1);
  for (std::size_t l = 0; l < box_.count(); ++l) {
    const auto k = box_.multi(l);
    cplx w = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) w *= std::pow(z[i], k[i]);
    auto c = coeff(l);
    for (std::size_t r = 0; r < coeff_dim_; ++r) out(r, 0) += w * c[r];
  }
  return out;
}

namespace {
void require_same_shape(const HardyElement& a, const HardyElement& b) {
  if (a.vars() != b.vars() || a.cap() != b.cap() || a.coeff_dim() != b.coeff_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Hardy elements have different shapes");
  }
}
}  // namespace

HardyElement& HardyElement::operator+=(const HardyElement& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

HardyElement& HardyElement::operator-=(const HardyElement& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

HardyElement operator+(HardyElement a, const HardyElement& b) { return a += b; }
HardyElement operator-(HardyElement a, const HardyElement& b) { return a -= b; }

cplx hardy_inner(const HardyElement& f, const HardyElement& g) {
  require_same_shape(f, g);
  cplx s = 0.0;
  for (std::size_t l = 0; l < f.box().count(); ++l) {
    auto a = f.coeff(l);
    auto b = g.coeff(l);
    for (std::size_t r = 0; r < a.size(); ++r) s += std::conj(a[r]) * b[r];
  }
  return s;
}

cplx szego_kernel_eval(std::span<const cplx> z, std::span<const cplx> w) {
  if (z.size() != w.size()) throw Error(ErrorKind::DimensionMismatch, "kernel arguments differ in arity");
  cplx out = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) >= 1.0 || std::abs(w[i]) >= 1.0) {
      throw Error(ErrorKind::OutsideDisc, "kernel point outside the open polydisc", 0.0,
                  static_cast<std::ptrdiff_t>(i));
    }
    out /= (1.0 - z[i] * std::conj(w[i]));
  }
  return out;
}

namespace {

// Copies block [offset, offset+len) of each coefficient from k to k + step*e_i.
void shift_block(const HardyElement& f, HardyElement& out, std::size_t i, int step,
                 std::size_t offset, std::size_t len) {
  const auto& box = f.box();
  for (std::size_t l = 0; l < box.count(); ++l) {
    auto k = box.multi(l);
    k[i] += step;
    if (k[i] < 0 || k[i] > box.cap()) continue;
    auto src = f.coeff(l);
    auto dst = out.coeff(box.linear(k));
    for (std::size_t r = offset; r < offset + len; ++r) dst[r] = src[r];
  }
}

}  // namespace

HardyElement mult_z(std::size_t i, const HardyElement& f) {
  if (i >= f.vars()) throw Error(ErrorKind::IndexOutOfRange, "variable index", 0.0, static_cast<std::ptrdiff_t>(i));
  HardyElement out(f.vars(), f.cap(), f.coeff_dim());
  shift_block(f, out, i, +1, 0, f.coeff_dim());
  return out;
}

HardyElement mult_z_adjoint(std::size_t i, const HardyElement& f) {
  if (i >= f.vars()) throw Error(ErrorKind::IndexOutOfRange, "variable index", 0.0, static_cast<std::ptrdiff_t>(i));
  HardyElement out(f.vars(), f.cap(), f.coeff_dim());
  shift_block(f, out, i, -1, 0, f.coeff_dim());
  return out;
}

HardyElement apply_coefficientwise(const CMatrix& m, const HardyElement& f) {
  if (m.cols() != f.coeff_dim()) throw Error(ErrorKind::DimensionMismatch, "coefficientwise map shape");
  HardyElement out(f.vars(), f.cap(), m.rows());
  for (std::size_t l = 0; l < f.box().count(); ++l) {
    auto src = f.coeff(l);
    auto dst = out.coeff(l);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      cplx s = 0.0;
      for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * src[c];
      dst[r] = s;
    }
  }
  return out;
}

AdjointPowerMap::AdjointPowerMap(const OperatorTuple& tuple, CMatrix lead, int cap)
    : box_(tuple.size(), cap), lead_(std::move(lead)) {
  if (lead_.cols() != tuple.dim()) throw Error(ErrorKind::DimensionMismatch, "lead map shape");
  powers_.reserve(box_.count());
  coefficient_maps_.reserve(box_.count());
  for (std::size_t l = 0; l < box_.count(); ++l) {
    auto k = box_.multi(l);
    if (l == 0) {
      powers_.push_back(CMatrix::identity(tuple.dim()));
    } else {
      std::size_t i = 0;
      while (k[i] == 0) ++i;
      k[i] -= 1;
      powers_.push_back(tuple[i] * powers_[box_.linear(k)]);
    }
    coefficient_maps_.push_back(lead_ * powers_.back().adjoint());
  }
}

HardyElement AdjointPowerMap::apply(const CMatrix& h) const {
  if (h.rows() != input_dim() || h.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "input vector");
  HardyElement out(vars(), cap(), coeff_dim());
  for (std::size_t l = 0; l < box_.count(); ++l) {
    const CMatrix c = coefficient_maps_[l] * h;
    auto dst = out.coeff(l);
    std::copy(c.entries().begin(), c.entries().end(), dst.begin());
  }
  return out;
}

CMatrix AdjointPowerMap::adjoint(const HardyElement& f) const {
  if (f.vars() != vars() || f.cap() != cap() || f.coeff_dim() != coeff_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "Hardy element shape for adjoint");
  }
  CMatrix out(input_dim(), 1);
  for (std::size_t l = 0; l < box_.count(); ++l) {
    out += adjoint_times(coefficient_maps_[l], CMatrix::column(f.coeff(l)));
  }
  return out;
}

AdjointPowerMap canonical_isometry(const OperatorTuple& tuple, const CMatrix& defect,
                                   const CMatrix& frame, int cap) {
  if (!is_pure(tuple)) throw Error(ErrorKind::NotPure, "canonical isometry needs a pure tuple");
  return AdjointPowerMap(tuple, adjoint_times(frame, defect), cap);
}

AdjointPowerMap embed_j(const OperatorTuple& tuple, int cap) {
  if (!is_pure(tuple)) throw Error(ErrorKind::NotPure, "J needs a pure tuple");
  return AdjointPowerMap(tuple, CMatrix::identity(tuple.dim()), cap);
}

double isometry_defect(const AdjointPowerMap& pi, const CMatrix& h) {
  return h.frobenius_norm() * h.frobenius_norm() - pi.apply(h).norm_squared();
}

double power_tail(const OperatorTuple& tuple, const CMatrix& h, int cap) {
  double s = 0.0;
  for (const auto& t : tuple.ops()) {
    const CMatrix p = matrix_power(t.adjoint(), static_cast<unsigned>(cap + 1)) * h;
    s += p.frobenius_norm() * p.frobenius_norm();
  }
  return std::sqrt(s);
}

double geom_tail(double rho, int cap, double h_norm, std::size_t dim) {
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  return h_norm * std::sqrt(static_cast<double>(dim)) * std::pow(rho, cap + 1) / (1.0 - rho);
}

FrameMaps iota_and_y(const PnCertificate& cert, const OperatorTuple& tuple) {
  if (cert.f.size() + 1 != tuple.size()) throw Error(ErrorKind::DimensionMismatch, "certificate arity");
  std::vector<CMatrix> iota_blocks;
  std::vector<CMatrix> y_blocks;
  FrameMaps out;
  for (std::size_t i = 0; i < cert.f.size(); ++i) {
    const CMatrix coords = adjoint_times(cert.f_frames[i], cert.f[i]);
    iota_blocks.push_back(coords);
    y_blocks.push_back(coords * tuple[i].adjoint());
    out.partition.push_back(cert.f_frames[i].cols());
  }
  const std::size_t total = std::accumulate(out.partition.begin(), out.partition.end(), std::size_t{0});
  out.iota = total == 0 ? CMatrix(0, tuple.dim()) : vstack(iota_blocks);
  out.y = total == 0 ? CMatrix(0, tuple.dim()) : vstack(y_blocks);
  return out;
}

namespace {
void check_partition(const HardyElement& f, std::span<const std::size_t> partition) {
  const std::size_t total = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  if (total != f.coeff_dim() || partition.size() != f.vars()) {
    throw Error(ErrorKind::PartitionMismatch, "partition does not match the coefficient space");
  }
}

HardyElement z_shift(const HardyElement& f, std::span<const std::size_t> partition, int step) {
  check_partition(f, partition);
  HardyElement out(f.vars(), f.cap(), f.coeff_dim());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    shift_block(f, out, i, step, offset, partition[i]);
    offset += partition[i];
  }
  return out;
}
}  // namespace

HardyElement z_op(const HardyElement& f, std::span<const std::size_t> partition) {
  return z_shift(f, partition, +1);
}

HardyElement z_op_adjoint(const HardyElement& f, std::span<const std::size_t> partition) {
  return z_shift(f, partition, -1);
}

SymbolSeries::SymbolSeries(std::size_t vars, int cap, std::size_t r, std::size_t c)
    : box(vars, cap), rows(r), cols(c), coeffs(box.count(), CMatrix(r, c)) {}

SymbolSeries SymbolSeries::constant(std::size_t vars, int cap, const CMatrix& c) {
  SymbolSeries s(vars, cap, c.rows(), c.cols());
  s.coeffs[0] = c;
  return s;
}

CMatrix SymbolSeries::evaluate(std::span<const cplx> z) const {
  if (z.size() != box.vars()) throw Error(ErrorKind::DimensionMismatch, "evaluation point arity");
  CMatrix out(rows, cols);
  for (std::size_t l = 0; l < box.count(); ++l) {
    const auto k = box.multi(l);
    cplx w = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) w *= std::pow(z[i], k[i]);
    out += w * coeffs[l];
  }
  return out;
}

HardyElement mult_symbol(const SymbolSeries& s, const HardyElement& f) {
  if (s.cols != f.coeff_dim() || s.box.vars() != f.vars()) {
    throw Error(ErrorKind::PartitionMismatch, "symbol and element dimensions differ");
  }
  const auto& box = f.box();
  HardyElement out(f.vars(), f.cap(), s.rows);
  for (std::size_t lf = 0; lf < box.count(); ++lf) {
    const auto kf = box.multi(lf);
    const CMatrix c = CMatrix::column(f.coeff(lf));
    if (c.max_abs() == 0.0) continue;
    for (std::size_t ls = 0; ls < s.box.count(); ++ls) {
      auto k = s.box.multi(ls);
      bool inside = true;
      for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] += kf[i];
        if (k[i] > box.cap()) inside = false;
      }
      if (!inside) continue;
      const CMatrix prod = s.coeffs[ls] * c;
      auto dst = out.coeff(box.linear(k));
      for (std::size_t r = 0; r < s.rows; ++r) dst[r] += prod(r, 0);
    }
  }
  return out;
}

HardyElement mult_symbol_adjoint(const SymbolSeries& s, const HardyElement& f) {
  if (s.rows != f.coeff_dim() || s.box.vars() != f.vars()) {
    throw Error(ErrorKind::PartitionMismatch, "symbol and element dimensions differ");
  }
  const auto& box = f.box();
  HardyElement out(f.vars(), f.cap(), s.cols);
  for (std::size_t lo = 0; lo < box.count(); ++lo) {
    const auto ko = box.multi(lo);
    CMatrix acc(s.cols, 1);
    for (std::size_t ls = 0; ls < s.box.count(); ++ls) {
      auto k = s.box.multi(ls);
      bool inside = true;
      for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] += ko[i];
        if (k[i] > box.cap()) inside = false;
      }
      if (!inside) continue;
      acc += adjoint_times(s.coeffs[ls], CMatrix::column(f.coeff(box.linear(k))));
    }
    auto dst = out.coeff(lo);
    std::copy(acc.entries().begin(), acc.entries().end(), dst.begin());
  }
  return out;
}

}  // namespace polydil
