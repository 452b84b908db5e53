#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polydil/cmatrix.hpp"
#include "polydil/hardy.hpp"
#include "polydil/tuples.hpp"

namespace polydil {

/// Blocks of U = [[A, B], [C, D]] on D_T (+) F, where F = (+)_i F_i is split
/// by `partition`; block i of F carries variable z_i. The transfer function
/// evaluated throughout is that of U^*:
///   Phi(z) = A^* + C^* E(z) (I - D^* E(z))^{-1} B^*.
struct Colligation {
  CMatrix a;
  CMatrix b;
  CMatrix c;
  CMatrix d;
  std::vector<std::size_t> partition;

  std::size_t outer_dim() const noexcept { return a.rows(); }
  std::size_t inner_dim() const noexcept { return d.rows(); }
  std::size_t vars() const noexcept { return partition.size(); }
  CMatrix assemble() const;
};

/// Diagonal E(z) = (+)_i z_i I_{F_i}.
CMatrix block_e(std::span<const std::size_t> partition, std::span<const cplx> z);

struct TransferRealization {
  Colligation blocks;
  CMatrix u;
  double generating_residual = 0.0;
  double unitarity_residual = 0.0;
  double isometry_gram_residual = 0.0;
  std::size_t span_rank = 0;  // rank of the spanning set the completion was forced on
};

/// Builds the unitary forced by
///   U (D h, F_1 T_1^* h, ..., F_{n-1} T_{n-1}^* h) = (D T_n^* h, F_1 h, ..., F_{n-1} h)
/// on a basis of C^d and completes it with unitary_completion. Throws
/// IsometryDefect when the two spanning sets have different Gram matrices.
TransferRealization build_generating_unitary(const OperatorTuple& tuple, const PnCertificate& cert,
                                             double tol = 1e-8,
                                             std::span<const std::size_t> basis_order = {});

/// max_h |U x_h - y_h| over the standard basis of C^d.
double generating_identity_residual(const OperatorTuple& tuple, const PnCertificate& cert,
                                    const CMatrix& u);

CMatrix transfer_eval(const Colligation& r, std::span<const cplx> z);

/// |(I - Phi^* Phi) - B (I - E^* D)^{-1} (I - E^* E) (I - D^* E)^{-1} B^*| at z.
double schur_identity_residual(const Colligation& r, std::span<const cplx> z);

/// Torus point with angles 2 pi j_i / grid, j in [0, grid)^vars, linear index l.
std::vector<cplx> torus_point(std::size_t vars, std::size_t grid, std::size_t l);
std::size_t torus_point_count(std::size_t vars, std::size_t grid);

struct InnerReport {
  double max_deviation = 0.0;
  std::size_t singular_points = 0;
  std::size_t total_points = 0;
};
/// max over the torus grid of |Phi^* Phi - I|; singular resolvent points are counted and skipped.
InnerReport inner_check(const Colligation& r, std::size_t grid);

/// A = W (+) E with W unitary on H0 and E completely non-unitary on H1.
struct CnuDecomposition {
  CMatrix h0;  // orthonormal columns
  CMatrix w;   // h0^* A h0
  CMatrix h1;
  CMatrix e;   // h1^* A h1
  double off_diagonal = 0.0;  // |h0^* A h1| + |h1^* A h0|
  double w_unitarity = 0.0;
};
CnuDecomposition cnu_decomposition(const CMatrix& a, double tol = 1e-8);

/// Taylor coefficients of Phi over the box [0, cap]^vars:
/// Phi_0 = A^*, Phi_k = C^* G_k with G = E B^* + E D^* G.
SymbolSeries phi_taylor(const Colligation& r, int cap);

}  // namespace polydil
