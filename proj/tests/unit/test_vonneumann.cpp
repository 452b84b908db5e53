#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/linalg.hpp"
#include "polydil/realization.hpp"
#include "polydil/vonneumann.hpp"

using namespace polydil;
using polydil::testing::dist;

namespace {

RunConfig quick_config() {
  RunConfig c;
  c.grid = 16;
  return c;
}

CertifiedTuple zero_triple() {
  CertifiedTuple out;
  out.tuple = make_tuple({CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)});
  const CMatrix g[] = {CMatrix::identity(2), CMatrix(2, 2)};
  out.cert = verify_pn(out.tuple, g);
  return out;
}

MultiPoly monomial(std::size_t vars, MultiIndex k, cplx c = 1.0) {
  MultiPoly p(vars);
  p.add_term(k, c);
  return p;
}

}  // namespace

TEST_CASE("MultiPoly bookkeeping") {
  MultiPoly p(3);
  CHECK(p.is_zero());
  p.add_term({1, 0, 2}, 2.0);
  p.add_term({0, 1, 0}, cplx(0.0, 1.0));
  p.add_term({1, 0, 2}, -2.0);
  CHECK(p.terms().size() == 1);
  CHECK(p.total_degree() == 1);
  CHECK(p.degree_in(1) == 1);
  CHECK(p.degree_in(2) == 0);
  const cplx z[] = {0.5, 2.0, 3.0};
  CHECK(std::abs(p(z) - cplx(0.0, 2.0)) < 1e-15);
  CHECK_THROWS_AS(p.add_term({1, 0}, 1.0), Error);
  CHECK(MultiPoly::variable(3, 2) == monomial(3, {0, 0, 1}));
  CHECK(MultiPoly::constant(3, 2.0) == monomial(3, {0, 0, 0}, 2.0));
}

TEST_CASE("eval_poly_tuple against direct products") {
  const auto ct = product_triple(jordan_pair(2, 2, 0.9, 0.8), 1, 1);
  const auto& t = ct.tuple;
  MultiPoly p(3);
  p.add_term({1, 1, 0}, 2.0);
  p.add_term({0, 0, 1}, cplx(0.0, -1.0));
  p.add_term({0, 0, 0}, 0.5);
  const CMatrix expect = 2.0 * (t[0] * t[1]) - cplx(0.0, 1.0) * t[2] + 0.5 * CMatrix::identity(4);
  CHECK(dist(eval_poly_tuple(p, t), expect) < 1e-14);
  try {
    eval_poly_tuple(MultiPoly(2), t);
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("last variable helpers") {
  MultiPoly p(2);
  p.add_term({1, 2}, 3.0);
  p.add_term({0, 0}, 1.0);
  p.add_term({2, 0}, 1.0);
  const cplx zeta[] = {cplx(0.0, 1.0)};
  const auto q = last_variable_coeffs(p, zeta);
  REQUIRE(q.size() == 3);
  CHECK(std::abs(q[0] - 0.0) < 1e-15);
  CHECK(std::abs(q[1]) < 1e-15);
  CHECK(std::abs(q[2] - cplx(0.0, 3.0)) < 1e-15);

  const CMatrix m{{0.1, 0.2}, {0.3, 0.4}};
  const CMatrix expect = cplx(0.0, 3.0) * (m * m);
  CHECK(dist(eval_poly_last_matrix(p, zeta, m), expect) < 1e-15);
}

TEST_CASE("circle_max against dense sampling") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<cplx> q(5);
    for (auto& c : q) c = cplx(g(rng), g(rng));
    double dense = 0.0;
    for (int s = 0; s < 20000; ++s) {
      const cplx l = std::polar(1.0, 2.0 * std::numbers::pi * s / 20000.0);
      dense = std::max(dense, std::abs(poly_eval(q, l)));
    }
    const double m = circle_max(q);
    CHECK(m >= dense - 1e-12);
    CHECK(m <= dense * (1.0 + 1e-6));
  }
  const cplx constant[] = {cplx(3.0, 4.0)};
  CHECK(circle_max(constant) == doctest::Approx(5.0));
  const cplx sum[] = {1.0, 1.0};
  CHECK(circle_max(sum) == doctest::Approx(2.0));
}

TEST_CASE("von Neumann inequality on small closed-form cases") {
  const RunConfig c = quick_config();
  const auto prod = product_triple(jordan_pair(2, 2, 1.0, 1.0), 1, 1);

  const auto one = vn_check(MultiPoly::constant(3, 1.0), prod.tuple, prod.cert, c);
  CHECK(one.lhs == doctest::Approx(1.0));
  CHECK(one.rhs == doctest::Approx(1.0));
  CHECK(std::abs(one.margin) < 1e-12);
  CHECK(one.passed);

  const auto z3 = vn_check(MultiPoly::variable(3, 2), prod.tuple, prod.cert, c);
  CHECK(z3.lhs == doctest::Approx(operator_norm(prod.tuple[0] * prod.tuple[1])));
  CHECK(z3.passed);

  const auto zero = zero_triple();
  MultiPoly sum = MultiPoly::variable(3, 0);
  sum.add_term({0, 1, 0}, 1.0);
  const auto rep = vn_check(sum, zero.tuple, zero.cert, c);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == doctest::Approx(2.0));
  CHECK(rep.passed);
}

TEST_CASE("random polynomials respect the inequality and the polydisc bound") {
  const RunConfig c = quick_config();
  std::mt19937_64 rng(37);
  for (const auto& ct : {product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1),
                         product_triple(jordan_pair(3, 2, 1.0, 1.0), 2, 1)}) {
    const auto ctx = make_vn_context(ct.tuple, ct.cert, c);
    for (int s = 0; s < 20; ++s) {
      const MultiPoly p = random_poly(rng, 3, 3);
      const auto rep = vn_check(p, ct.tuple, ctx, c);
      CHECK(rep.margin >= -1e-7);
      CHECK(rep.sharper_than_polydisc);
      CHECK(rep.h0_dim == 0);
    }
  }
}

TEST_CASE("torus sup is monotone under grid refinement") {
  const auto ct = product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1);
  const auto r = build_generating_unitary(ct.tuple, ct.cert);
  std::mt19937_64 rng(41);
  const auto coarse = make_torus_grid(r.blocks, 8);
  const auto fine = make_torus_grid(r.blocks, 16);
  for (int s = 0; s < 10; ++s) {
    const MultiPoly p = random_poly(rng, 3, 2);
    CHECK(torus_sup(p, fine) >= torus_sup(p, coarse) - 1e-12);
    CHECK(polydisc_sup(p, 2, 16) >= polydisc_sup(p, 2, 8) - 1e-12);
  }
}

TEST_CASE("phi splits block-diagonally") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& ct : {product_triple(jordan_pair(2, 2, 1.0, 1.0), 1, 1),
                         product_triple(random_szego_pair(5, 2, 2, 0.8), 1, 1)}) {
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    const auto s = split_phi(r);
    CHECK(s.h0_dim == 0);
    CHECK(pure_tn_refinement(ct.tuple, s));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const cplx z[] = {std::polar(0.95 * u(rng), 6.28 * u(rng)), std::polar(0.95 * u(rng), 6.28 * u(rng))};
      worst = std::max(worst, split_block_residual(s, r.blocks, z));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("variety sample") {
  const auto ct = product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1);
  const auto r = build_generating_unitary(ct.tuple, ct.cert);
  const auto v = variety_sample(r, 5, 0.95, 4);
  CHECK(v.residuals_ok);
  CHECK(v.interior_inside_disc);
  CHECK(v.h0_dim == 0);
  CHECK(v.max_residual < 1e-10);
  bool saw_boundary = false;
  for (const auto& pt : v.points) {
    CHECK(pt.residual <= pt.bound);
    CHECK(pt.z.size() == 2);
    saw_boundary = saw_boundary || pt.boundary;
    if (!pt.boundary) {
      for (const cplx zi : pt.z) CHECK(std::abs(zi) <= 0.95 + 1e-12);
      CHECK(std::abs(pt.lambda) < 1.0);
    }
  }
  CHECK(saw_boundary);
  CHECK_THROWS_AS(variety_sample(r, 5, 1.5), Error);
}

TEST_CASE("random_poly is deterministic") {
  std::mt19937_64 a(99);
  std::mt19937_64 b(99);
  for (int s = 0; s < 5; ++s) {
    const MultiPoly p = random_poly(a, 3, 3);
    CHECK(p == random_poly(b, 3, 3));
    CHECK(!p.is_zero());
    CHECK(p.total_degree() <= 3);
  }
}
