#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "polydil/cmatrix.hpp"
#include "polydil/config.hpp"
#include "polydil/hardy.hpp"
#include "polydil/realization.hpp"
#include "polydil/tuples.hpp"

namespace polydil {

/// Polynomial in a fixed number of variables, sum_k a_k z^k. Zero
/// coefficients are never stored.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(std::size_t vars) : vars_(vars) {}

  static MultiPoly constant(std::size_t vars, cplx c);
  static MultiPoly variable(std::size_t vars, std::size_t i);

  std::size_t vars() const noexcept { return vars_; }
  const std::map<MultiIndex, cplx>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;
  int degree_in(std::size_t i) const;

  /// Adds c z^k; a coefficient that cancels to exactly zero is removed.
  void add_term(const MultiIndex& k, cplx c);

  cplx operator()(std::span<const cplx> z) const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::size_t vars_ = 0;
  std::map<MultiIndex, cplx> terms_;
};

/// P(T) = sum_k a_k T^k. ArityMismatch unless P has tuple.size() variables.
CMatrix eval_poly_tuple(const MultiPoly& p, const OperatorTuple& tuple);

/// P(zeta_1 I, ..., zeta_{n-1} I, M) for scalars zeta and a square matrix M.
CMatrix eval_poly_last_matrix(const MultiPoly& p, std::span<const cplx> zeta, const CMatrix& m);

/// Coefficients of lambda -> P(zeta, lambda), ascending.
std::vector<cplx> last_variable_coeffs(const MultiPoly& p, std::span<const cplx> zeta);

/// max over |lambda| = 1 of |q(lambda)|: critical points of |q|^2 on the
/// circle plus 256 uniform samples.
double circle_max(std::span<const cplx> q);

/// Phi = W^* (+) Phi_1 in the frame H0 (+) H1 of the canonical decomposition of A^*.
struct PhiSplit {
  CMatrix h0;
  CMatrix h1;
  CMatrix w_adjoint;  // Phi_0, constant
  Colligation phi1;   // realization of Phi_1 = h1^* Phi h1
  std::size_t h0_dim = 0;
  double decomposition_off_diagonal = 0.0;
};
PhiSplit split_phi(const TransferRealization& r, double tol = 1e-8);

/// |h0^* Phi(z) h1| + |h1^* Phi(z) h0|.
double split_block_residual(const PhiSplit& s, const Colligation& r, std::span<const cplx> z);

/// Phi evaluated once on the uniform torus grid; singular points hold no value.
struct TorusGrid {
  std::size_t vars = 0;
  std::size_t grid = 0;
  std::vector<std::vector<cplx>> points;
  std::vector<std::optional<CMatrix>> phi;
  std::size_t singular_points = 0;
};
TorusGrid make_torus_grid(const Colligation& r, std::size_t grid);

/// max over the grid of |P(zeta I, Phi(zeta))|, singular points skipped.
double torus_sup(const MultiPoly& p, const TorusGrid& g);
double torus_sup(const MultiPoly& p, const Colligation& r, std::size_t grid);

/// max over the grid of max_{|lambda|=1} |P(zeta, lambda)|.
double polydisc_sup(const MultiPoly& p, std::size_t vars, std::size_t grid);

enum class VarietyComponent { V0, V1 };

struct VarietyPoint {
  std::vector<cplx> z;
  cplx lambda;
  VarietyComponent component = VarietyComponent::V1;
  bool boundary = false;  // z on the torus grid rather than the interior grid
  double residual = 0.0;  // |det(lambda I - Phi_j(z))|
  double bound = 0.0;     // root_tol (1 + |Phi_j(z)|)^dim
};

struct VarietySample {
  std::vector<VarietyPoint> points;
  std::size_t interior_grid = 0;
  std::size_t torus_grid = 0;
  double radius = 0.0;
  std::size_t h0_dim = 0;
  std::size_t singular_points = 0;
  double max_residual = 0.0;
  bool residuals_ok = true;
  bool interior_inside_disc = true;  // |lambda| < 1 at every interior point
};

/// Interior points: each variable runs over the `grid` x `grid` Cartesian
/// lattice of [-radius, radius]^2 clipped to the closed disc of that radius.
/// Boundary points use the torus grid of size `torus_grid` (none when 0).
VarietySample variety_sample(const TransferRealization& r, std::size_t grid, double radius,
                             std::size_t torus_grid = 0, double root_tol = 1e-7,
                             double split_tol = 1e-8);

struct VNReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double polydisc_rhs = 0.0;
  std::size_t grid = 0;
  std::size_t singular_points = 0;
  std::size_t h0_dim = 0;
  bool passed = false;
  bool sharper_than_polydisc = false;  // rhs <= polydisc_rhs + 1e-9
};

/// Realization, split and torus grid shared across many polynomials.
struct VNContext {
  TransferRealization realization;
  PhiSplit split;
  TorusGrid torus;
};
VNContext make_vn_context(const OperatorTuple& tuple, const PnCertificate& cert,
                          const RunConfig& config);

VNReport vn_check(const MultiPoly& p, const OperatorTuple& tuple, const VNContext& ctx,
                  const RunConfig& config);
VNReport vn_check(const MultiPoly& p, const OperatorTuple& tuple, const PnCertificate& cert,
                  const RunConfig& config);

/// False only when T_n has spectral radius below 1 - tol and yet H0 is nonzero.
bool pure_tn_refinement(const OperatorTuple& tuple, const PhiSplit& split, double tol = 1e-8);
bool pure_tn_refinement(const OperatorTuple& tuple, const TransferRealization& r, double tol = 1e-8);

/// Random polynomial of total degree <= degree: each monomial is kept with
/// probability 1/2 and gets a standard complex Gaussian coefficient.
MultiPoly random_poly(std::mt19937_64& rng, std::size_t vars, int degree);

}  // namespace polydil
