#pragma once

#include <cstdint>
#include <string>

#include "polydil/tolerances.hpp"

namespace polydil {

struct RunConfig {
  int cap = 12;               // per-variable Hardy truncation
  bool auto_cap = true;       // raise the cap to the nilpotency order of T_hat_n
  std::size_t grid = 32;      // torus points per variable
  std::size_t variety_grid = 17;
  double radius = 0.95;
  std::size_t schur_samples = 100;
  std::size_t poly_samples = 100;
  int poly_degree = 3;
  std::uint64_t seed = 20240611;
  double exact_tol = 1e-10;   // floor for identities that hold exactly
  Tolerances tol;
  std::string out;

  /// Throws InvalidArgument unless all tolerances are positive, cap >= 1 and grid >= 4.
  void validate() const;
};

}  // namespace polydil
