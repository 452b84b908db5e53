#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/linalg.hpp"
#include "polydil/realization.hpp"

using namespace polydil;
using polydil::testing::dist;

namespace {

std::vector<cplx> random_point(std::mt19937_64& rng, std::size_t vars, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z(vars);
  for (auto& zi : z) zi = std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
  return z;
}

// A^* + C^* sum_m E (D^* E)^m B^*, summed until the terms vanish.
CMatrix neumann_transfer(const Colligation& r, std::span<const cplx> z) {
  const CMatrix e = block_e(r.partition, z);
  CMatrix term = e * r.b.adjoint();
  CMatrix sum = term;
  for (int m = 0; m < 2000 && term.max_abs() > 1e-18; ++m) {
    term = e * (r.d.adjoint() * term);
    sum += term;
  }
  return r.a.adjoint() + adjoint_times(r.c, sum);
}

std::vector<CertifiedTuple> fixtures() {
  std::vector<CertifiedTuple> out;
  out.push_back(product_triple(jordan_pair(2, 2, 1.0, 1.0), 1, 1));
  out.push_back(product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1));
  out.push_back(product_triple(jordan_pair(3, 2, 1.0, 1.0), 2, 1));
  out.push_back(product_triple(random_szego_pair(4, 2, 2, 0.8), 1, 1));
  return out;
}

}  // namespace

TEST_CASE("block_e") {
  const std::size_t partition[] = {1, 0, 2};
  const cplx z[] = {0.5, 0.7, cplx(0.0, 1.0)};
  CHECK(dist(block_e(partition, z), CMatrix::diag({0.5, cplx(0.0, 1.0), cplx(0.0, 1.0)})) == 0.0);
  const cplx short_z[] = {0.5};
  CHECK_THROWS_AS(block_e(partition, short_z), Error);
}

TEST_CASE("generating unitary for certified triples") {
  for (const auto& ct : fixtures()) {
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    CHECK(r.generating_residual <= 1e-10);
    CHECK(r.unitarity_residual <= 1e-10);
    CHECK(r.blocks.assemble() == r.u);
    CHECK(r.blocks.outer_dim() == ct.cert.defect_rank());
    CHECK(r.blocks.vars() == 2);

    const std::size_t n = r.u.rows();
    std::vector<std::size_t> reversed(n);
    for (std::size_t i = 0; i < n; ++i) reversed[i] = n - 1 - i;
    const auto r2 = build_generating_unitary(ct.tuple, ct.cert, 1e-8, reversed);
    CHECK(r2.generating_residual <= 1e-10);
    CHECK(r2.unitarity_residual <= 1e-10);
  }
}

TEST_CASE("generating unitary rejects a tampered certificate") {
  auto ct = product_triple(jordan_pair(2, 2, 1.0, 1.0), 1, 1);
  ct.cert.f[0] *= std::sqrt(1.1);
  try {
    build_generating_unitary(ct.tuple, ct.cert);
    FAIL("expected IsometryDefect");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IsometryDefect);
    CHECK(e.value() > 1e-3);
  }
}

TEST_CASE("transfer function against its Neumann series") {
  std::mt19937_64 rng(12);
  for (const auto& ct : fixtures()) {
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    for (int s = 0; s < 10; ++s) {
      const auto z = random_point(rng, 2, 0.9);
      CHECK(dist(transfer_eval(r.blocks, z), neumann_transfer(r.blocks, z)) < 1e-10);
    }
    const cplx origin[] = {0.0, 0.0};
    CHECK(dist(transfer_eval(r.blocks, origin), r.blocks.a.adjoint()) == 0.0);
  }
}

TEST_CASE("transfer function is contractive inside and inner on the torus") {
  std::mt19937_64 rng(13);
  for (const auto& ct : fixtures()) {
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    double worst = 0.0;
    double schur = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const auto z = random_point(rng, 2, 0.99);
      worst = std::max(worst, operator_norm(transfer_eval(r.blocks, z)));
      if (s < 100) schur = std::max(schur, schur_identity_residual(r.blocks, z));
    }
    CHECK(worst <= 1.0 + 1e-10);
    CHECK(schur <= 1e-9);
    const auto inner = inner_check(r.blocks, 16);
    CHECK(inner.max_deviation <= 1e-7);
    CHECK(inner.total_points == 256);
  }
}

TEST_CASE("phi_taylor matches transfer_eval") {
  const cplx z[] = {0.2, 0.1};
  for (const auto& ct : fixtures()) {
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    const SymbolSeries s = phi_taylor(r.blocks, 20);
    CHECK(dist(s.evaluate(z), transfer_eval(r.blocks, z)) < 1e-12);
  }
}

TEST_CASE("torus points") {
  CHECK(torus_point_count(3, 4) == 64);
  const auto z = torus_point(2, 4, 1);
  CHECK(std::abs(z[0] - cplx(1.0)) < 1e-15);
  CHECK(std::abs(z[1] - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("cnu_decomposition") {
  const auto d = cnu_decomposition(CMatrix::diag({1.0, 0.5}));
  REQUIRE(d.h0.cols() == 1);
  CHECK(std::abs(std::abs(d.h0(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(d.w(0, 0)) - 1.0) < 1e-12);
  CHECK(d.off_diagonal < 1e-12);
  CHECK(std::abs(d.e(0, 0) - 0.5) < 1e-12);

  // Rotation on C^2 plus half a nilpotent shift on C^2.
  const double c = std::cos(0.7);
  const double s = std::sin(0.7);
  const CMatrix rot{{c, -s}, {s, c}};
  const CMatrix parts[] = {rot, 0.5 * shift_matrix(2)};
  const CMatrix a = block_diag(parts);
  const auto r = cnu_decomposition(a);
  CHECK(r.h0.cols() == 2);
  CHECK(r.h1.cols() == 2);
  CHECK(r.w_unitarity < 1e-10);
  CHECK(r.off_diagonal < 1e-10);
  CHECK(operator_norm(r.h0.block(2, 0, 2, 2)) < 1e-10);

  CHECK(cnu_decomposition(0.5 * shift_matrix(3)).h0.cols() == 0);
  CHECK(cnu_decomposition(CMatrix::identity(3)).h0.cols() == 3);
  try {
    cnu_decomposition(CMatrix::diag({1.5}));
    FAIL("expected NotContraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotContraction);
  }
}
