#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polydil/cmatrix.hpp"
#include "polydil/tuples.hpp"

namespace polydil {

using MultiIndex = std::vector<int>;

/// The multi-index box [0, cap]^vars, linearized in mixed radix with the
/// first variable varying slowest.
class IndexBox {
 public:
  IndexBox() = default;
  IndexBox(std::size_t vars, int cap);

  std::size_t vars() const noexcept { return vars_; }
  int cap() const noexcept { return cap_; }
  std::size_t count() const noexcept { return count_; }

  bool contains(std::span<const int> k) const;
  std::size_t linear(std::span<const int> k) const;
  MultiIndex multi(std::size_t linear) const;

 private:
  std::size_t vars_ = 0;
  int cap_ = 0;
  std::size_t count_ = 1;
};

/// Truncated element of H^2_{C^e}(D^vars): coefficients c_k in C^e for k in
/// [0, cap]^vars, stored densely. Absent coefficients are zero.
class HardyElement {
 public:
  HardyElement() = default;
  HardyElement(std::size_t vars, int cap, std::size_t coeff_dim);

  static HardyElement monomial(std::size_t vars, int cap, std::span<const int> k, const CMatrix& xi);
  static HardyElement constant(std::size_t vars, int cap, const CMatrix& xi);

  std::size_t vars() const noexcept { return box_.vars(); }
  int cap() const noexcept { return box_.cap(); }
  std::size_t coeff_dim() const noexcept { return coeff_dim_; }
  const IndexBox& box() const noexcept { return box_; }

  std::span<cplx> coeff(std::size_t linear);
  std::span<const cplx> coeff(std::size_t linear) const;
  CMatrix coefficient(std::span<const int> k) const;
  void set_coefficient(std::span<const int> k, const CMatrix& v);

  double norm_squared() const;
  double norm() const;
  /// Value at a point of the polydisc: sum_k c_k z^k.
  CMatrix evaluate(std::span<const cplx> z) const;

  HardyElement& operator+=(const HardyElement& o);
  HardyElement& operator-=(const HardyElement& o);

 private:
  IndexBox box_;
  std::size_t coeff_dim_ = 0;
  std::vector<cplx> data_;
};

HardyElement operator+(HardyElement a, const HardyElement& b);
HardyElement operator-(HardyElement a, const HardyElement& b);

/// <f, g> = sum_k <f_k, g_k>.
cplx hardy_inner(const HardyElement& f, const HardyElement& g);

/// prod_i (1 - z_i conj(w_i))^{-1}; OutsideDisc unless every |z_i|, |w_i| < 1.
cplx szego_kernel_eval(std::span<const cplx> z, std::span<const cplx> w);

/// Multiplication by z_i. Coefficients pushed past the cap are dropped.
HardyElement mult_z(std::size_t i, const HardyElement& f);
/// Adjoint shift: coefficient at k becomes the old coefficient at k + e_i.
HardyElement mult_z_adjoint(std::size_t i, const HardyElement& f);

/// (I (x) M) f: M applied to every coefficient.
HardyElement apply_coefficientwise(const CMatrix& m, const HardyElement& f);

/// Maps h -> sum_k z^k (x) L T^{*k} h for a pure tuple T. With L = frame^* D
/// this is the canonical isometry; with L = I it is the embedding J.
class AdjointPowerMap {
 public:
  AdjointPowerMap(const OperatorTuple& tuple, CMatrix lead, int cap);

  int cap() const noexcept { return box_.cap(); }
  std::size_t vars() const noexcept { return box_.vars(); }
  std::size_t coeff_dim() const noexcept { return lead_.rows(); }
  std::size_t input_dim() const noexcept { return lead_.cols(); }
  const IndexBox& box() const noexcept { return box_; }
  const CMatrix& lead() const noexcept { return lead_; }

  HardyElement apply(const CMatrix& h) const;
  /// Adjoint of the truncated map: f -> sum_k T^k L^* f_k.
  CMatrix adjoint(const HardyElement& f) const;
  /// T^k for k in the box.
  const CMatrix& power(std::size_t linear) const { return powers_[linear]; }

 private:
  IndexBox box_;
  CMatrix lead_;
  std::vector<CMatrix> powers_;           // T^k
  std::vector<CMatrix> coefficient_maps_;  // L T^{*k}
};

/// Canonical isometry of a pure Szego tuple, in the coordinates of `frame`
/// (an orthonormal basis of ran D). Throws NotPure.
AdjointPowerMap canonical_isometry(const OperatorTuple& tuple, const CMatrix& defect,
                                   const CMatrix& frame, int cap);

/// (Jh)(z) = sum_k z^k (x) T^{*k} h. Throws NotPure.
AdjointPowerMap embed_j(const OperatorTuple& tuple, int cap);

/// |h|^2 - |Pi_N h|^2.
double isometry_defect(const AdjointPowerMap& pi, const CMatrix& h);

/// sqrt(sum_i |T_i^{*(cap+1)} h|^2): bounds the l2 mass a power map with this
/// cap discards for input h.
double power_tail(const OperatorTuple& tuple, const CMatrix& h, int cap);

/// Crude geometric estimate C rho^{N+1} / (1 - rho), C = |h| sqrt(d).
double geom_tail(double rho, int cap, double h_norm, std::size_t dim);

/// iota(h) = (F_i h)_i and Y(h) = (F_i T_i^* h)_i, each block expressed in
/// the certificate frame of ran F_i.
struct FrameMaps {
  CMatrix iota;
  CMatrix y;
  std::vector<std::size_t> partition;
};
FrameMaps iota_and_y(const PnCertificate& cert, const OperatorTuple& tuple);

/// Z = M_E with E(z) = z_i on partition block i. PartitionMismatch when the
/// coefficient dimension differs from the partition total or the number of
/// blocks differs from the number of variables.
HardyElement z_op(const HardyElement& f, std::span<const std::size_t> partition);
HardyElement z_op_adjoint(const HardyElement& f, std::span<const std::size_t> partition);

/// Taylor coefficients S_k (rows x cols) of an operator-valued analytic
/// symbol, for k in [0, cap]^vars.
struct SymbolSeries {
  IndexBox box;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<CMatrix> coeffs;

  SymbolSeries() = default;
  SymbolSeries(std::size_t vars, int cap, std::size_t rows, std::size_t cols);
  static SymbolSeries constant(std::size_t vars, int cap, const CMatrix& c);
  CMatrix evaluate(std::span<const cplx> z) const;
};

/// (M_S f)_k = sum_{j <= k} S_j f_{k-j}; products past the cap are dropped.
HardyElement mult_symbol(const SymbolSeries& s, const HardyElement& f);
/// (M_S^* f)_k = sum_j S_j^* f_{k+j} over stored indices.
HardyElement mult_symbol_adjoint(const SymbolSeries& s, const HardyElement& f);

}  // namespace polydil
