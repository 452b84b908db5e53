#pragma once

#include <cstddef>
#include <cstdint>

#include "polydil/cmatrix.hpp"
#include "polydil/tuples.hpp"

namespace polydil {

/// Lower shift on C^d: J e_i = e_{i+1}, J e_{d-1} = 0.
CMatrix shift_matrix(std::size_t d);

/// T_1 = r1 (J_{d1} (x) I), T_2 = r2 (I (x) J_{d2}) on C^{d1 d2}.
OperatorTuple jordan_pair(std::size_t d1, std::size_t d2, double r1, double r2);

struct CertifiedTuple {
  OperatorTuple tuple;
  PnCertificate cert;
};

/// (T_1, T_2, T_1^j T_2^k) with G_1 = I - T_1^j T_1^{*j} and
/// G_2 = T_1^j (I - T_2^k T_2^{*k}) T_1^{*j}. Throws CertificateRejected if
/// verify_pn refuses the pair of G's.
CertifiedTuple product_triple(const OperatorTuple& pair, int j, int k, double tol = 1e-8);

/// The pair extended by tn and certified with G_1 = I - T_n T_n^*.
CertifiedTuple bdhs_tuple(const OperatorTuple& pair, const CMatrix& tn, double tol = 1e-8);

/// n commuting contractions a_i I + b_i N + c_i N^2 in a single random
/// nilpotent N, scaled into the unit ball with spectral radius at most
/// 1 - spectral_margin. Deterministic in seed.
OperatorTuple random_candidate(std::uint64_t seed, std::size_t d, std::size_t n, double spectral_margin);

/// (A (x) I, I (x) B) for random A, B of norm r < 1. Szego and pure but not
/// nilpotent.
OperatorTuple random_szego_pair(std::uint64_t seed, std::size_t d1, std::size_t d2, double r);

}  // namespace polydil
