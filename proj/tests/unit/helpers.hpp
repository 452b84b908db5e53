#pragma once

#include <random>

#include "polydil/cmatrix.hpp"
#include "polydil/linalg.hpp"

namespace polydil::testing {

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const CMatrix a = random_matrix(rng, n, n);
  CMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

inline CMatrix random_contraction(std::mt19937_64& rng, std::size_t n, double norm) {
  CMatrix a = random_matrix(rng, n, n);
  a *= norm / operator_norm(a);
  return a;
}

inline double dist(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

}  // namespace polydil::testing
