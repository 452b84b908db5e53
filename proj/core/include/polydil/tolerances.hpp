#pragma once

namespace polydil {

/// Numerical thresholds shared by every module. Rank and psd decisions use
/// the hybrid threshold tol * max(1, |A|).
struct Tolerances {
  double eig = 1e-10;        // Hermitian eigensolver residual
  double psd_clamp = 1e-9;   // negative eigenvalues above -psd_clamp are clamped to 0
  double root = 1e-7;        // polynomial root residual
  double cert = 1e-8;        // certificate psd margins, sums, frame ranks
  double vn = 1e-7;          // one-sided slack of the von Neumann check
  double commute = 1e-10;    // |T_i T_j - T_j T_i|
  double contract = 1e-10;   // |T_i| <= 1 + contract
};

}  // namespace polydil
