#pragma once

#include <string>
#include <vector>

#include "polydil/config.hpp"
#include "polydil/realization.hpp"
#include "polydil/tuples.hpp"

namespace polydil {

/// One verified identity: the measured residual and the bound it must meet.
struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double bound = 0.0;
  double geom_tail = 0.0;  // informational geometric estimate, 0 when not applicable
  bool passed = false;
};

struct VerificationReport {
  int cap = 0;
  std::size_t defect_rank = 0;
  std::vector<std::size_t> partition;
  std::vector<IdentityCheck> checks;
  bool all_passed = false;

  const IdentityCheck* find(const std::string& name) const;
};

/// Cap actually used: config.cap, raised to the nilpotency order of T_hat_n
/// when config.auto_cap is set and T_hat_n is nilpotent.
int effective_cap(const OperatorTuple& tuple, const RunConfig& config);

/// Lifting residual sup_h |Pi (T_n^* h) - M_Phi^* Pi h| at the given cap.
double lifting_residual(const OperatorTuple& tuple, const PnCertificate& cert,
                        const Colligation& blocks, int cap);

/// Runs every dilation identity for a certified tuple and its realization:
/// Pi isometry defect, Pi T_i^* = M_{z_i}^* Pi, M_Phi^* Pi = Pi T_n^*,
/// (I (x) D) J = Pi, the four lemma identities on monomials inside the cap,
/// the generating identity, the Schur identity at random interior points,
/// and innerness on the torus grid.
VerificationReport verify_dilation(const OperatorTuple& tuple, const PnCertificate& cert,
                                   const TransferRealization& realization, const RunConfig& config);

}  // namespace polydil
