#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polydil/cmatrix.hpp"
#include "polydil/tolerances.hpp"

namespace polydil {

/// n commuting contractions on C^dim. Construct through make_tuple, which
/// checks both invariants. Indices are 0-based throughout the library.
class OperatorTuple {
 public:
  OperatorTuple() = default;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const CMatrix& operator[](std::size_t i) const { return ops_[i]; }
  std::span<const CMatrix> ops() const noexcept { return ops_; }
  double commute_tol() const noexcept { return commute_tol_; }
  double contract_tol() const noexcept { return contract_tol_; }
  const CMatrix& last() const { return ops_.back(); }

  friend OperatorTuple make_tuple(std::vector<CMatrix> matrices, double commute_tol,
                                  double contract_tol);
  friend OperatorTuple hat(const OperatorTuple& tuple, std::size_t i);

 private:
  std::size_t dim_ = 0;
  std::vector<CMatrix> ops_;
  double commute_tol_ = 1e-10;
  double contract_tol_ = 1e-10;
};

/// Throws DimensionMismatch, NotCommuting(i, j, residual) or
/// NotContractive(i, norm).
OperatorTuple make_tuple(std::vector<CMatrix> matrices, double commute_tol = 1e-10,
                         double contract_tol = 1e-10);

/// The tuple with entry i removed (order preserved).
OperatorTuple hat(const OperatorTuple& tuple, std::size_t i);

/// T^k = T_1^{k_1} ... T_n^{k_n}.
CMatrix tuple_power(std::span<const CMatrix> ops, std::span<const int> k);

/// Alternating sum over k in {0,1}^n of (-1)^{|k|} T^k T^{*k}, evaluated by
/// enumerating subsets.
CMatrix szego_defect(const OperatorTuple& tuple);
CMatrix szego_defect(std::span<const CMatrix> ops);

/// Composition of the maps X -> X - T_j X T_j^* over the given operators.
CMatrix conjugacy_product(std::span<const CMatrix> ops, const CMatrix& x);

struct SzegoReport {
  bool szego = false;
  double min_eigenvalue = 0.0;
};
SzegoReport is_szego(const OperatorTuple& tuple, double tol = 1e-8);

/// Upper estimate of the spectral radius: min over k <= 8 of |T^{2^k}|^{2^{-k}}.
double spectral_radius_estimate(const CMatrix& t);

/// Purity in finite dimension: every coordinate has spectral radius < 1 - tol.
bool is_pure(const OperatorTuple& tuple, double tol = 1e-8);

/// Smallest p with T_i^p = 0 for every i, or 0 if some entry is not nilpotent.
std::size_t nilpotency_order(const OperatorTuple& tuple, double tol = 1e-13);

/// Evidence that T lies in P_n: the supplied positive G_i together with the
/// derived defect root D = (S^{-1}(T_hat_n))^{1/2}, the roots F_i of the
/// alternating products, and orthonormal frames of ran D and ran F_i.
struct PnCertificate {
  std::vector<CMatrix> g;
  std::vector<CMatrix> f_squared;
  std::vector<CMatrix> f;
  CMatrix defect;
  CMatrix defect_frame;
  std::vector<CMatrix> f_frames;

  double sum_residual = 0.0;
  std::vector<double> g_min_eigs;
  std::vector<double> product_min_eigs;
  double hat_szego_min_eig = 0.0;

  std::size_t defect_rank() const { return defect_frame.cols(); }
  std::vector<std::size_t> partition() const;
};

/// Validates supplied G_1..G_{n-1}. Errors: NotSzego, NotPure, GNotPsd(i),
/// SumMismatch(residual), ProductNotPsd(i, min_eig).
PnCertificate verify_pn(const OperatorTuple& tuple, std::span<const CMatrix> g,
                        double tol = 1e-8);

/// Certificate G_1 = I - T_n T_n^*, G_i = 0 otherwise, available when both
/// T_hat_n and T_hat_1 are Szego and T_hat_n is pure (HypothesisFailed otherwise).
PnCertificate bdhs_certificate(const OperatorTuple& tuple, double tol = 1e-8);

}  // namespace polydil
