#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/hardy.hpp"
#include "polydil/linalg.hpp"

using namespace polydil;
using polydil::testing::dist;
using polydil::testing::random_matrix;

namespace {

HardyElement random_element(std::mt19937_64& rng, std::size_t vars, int cap, std::size_t dim) {
  HardyElement f(vars, cap, dim);
  for (std::size_t l = 0; l < f.box().count(); ++l) {
    const CMatrix v = random_matrix(rng, dim, 1);
    auto c = f.coeff(l);
    for (std::size_t r = 0; r < dim; ++r) c[r] = v(r, 0);
  }
  return f;
}

}  // namespace

TEST_CASE("IndexBox linearization round-trips") {
  const IndexBox box(3, 4);
  CHECK(box.count() == 125);
  for (std::size_t l = 0; l < box.count(); ++l) CHECK(box.linear(box.multi(l)) == l);
  const int first[] = {1, 0, 0};
  CHECK(box.linear(first) == 25);
  const int outside[] = {5, 0, 0};
  CHECK_FALSE(box.contains(outside));
  CHECK_THROWS_AS(box.linear(outside), Error);
}

TEST_CASE("szego kernel matches its geometric series") {
  const cplx z[] = {cplx(0.3, 0.2), cplx(-0.5, 0.1)};
  const cplx w[] = {cplx(0.1, -0.6), cplx(0.4, 0.4)};
  cplx expect = 1.0;
  for (std::size_t i = 0; i < 2; ++i) {
    cplx s = 0.0;
    cplx p = 1.0;
    for (int k = 0; k < 200; ++k) {
      s += p;
      p *= z[i] * std::conj(w[i]);
    }
    expect *= s;
  }
  CHECK(std::abs(szego_kernel_eval(z, w) - expect) < 1e-14);

  const cplx zero[] = {0.0, 0.0};
  CHECK(szego_kernel_eval(zero, w) == cplx(1.0));
  const cplx boundary[] = {1.0, 0.0};
  try {
    szego_kernel_eval(boundary, w);
    FAIL("expected OutsideDisc");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideDisc);
  }

  // The kernel reproduces truncated Hardy elements up to the discarded tail.
  std::mt19937_64 rng(2);
  const HardyElement f = random_element(rng, 2, 6, 1);
  cplx pairing = 0.0;
  for (std::size_t l = 0; l < f.box().count(); ++l) {
    const auto k = f.box().multi(l);
    pairing += f.coeff(l)[0] * std::pow(std::conj(w[0]), k[0]) * std::pow(std::conj(w[1]), k[1]);
  }
  const cplx wbar[] = {std::conj(w[0]), std::conj(w[1])};
  CHECK(std::abs(pairing - f.evaluate(wbar)(0, 0)) < 1e-12);
}

TEST_CASE("shift operators") {
  std::mt19937_64 rng(3);
  const HardyElement f = random_element(rng, 2, 5, 2);
  const HardyElement g = random_element(rng, 2, 5, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::abs(hardy_inner(mult_z(i, f), g) - hardy_inner(f, mult_z_adjoint(i, g))) < 1e-12);
    // M_z^* M_z is the identity whenever nothing is pushed past the cap.
    const int k[] = {1, 2};
    const CMatrix xi{{1.0}, {cplx(0.0, 2.0)}};
    const HardyElement m = HardyElement::monomial(2, 5, k, xi);
    CHECK((mult_z_adjoint(i, mult_z(i, m)) - m).norm() == 0.0);
  }
  const int k[] = {0, 3};
  const CMatrix xi{{1.0}};
  const HardyElement m = HardyElement::monomial(2, 5, k, xi);
  CHECK(mult_z_adjoint(0, m).norm() == 0.0);
  const int k2[] = {0, 2};
  CHECK(mult_z_adjoint(1, m).coefficient(k2)(0, 0) == cplx(1.0));
}

TEST_CASE("hardy element evaluation and norms") {
  const int k[] = {2, 1};
  const CMatrix xi{{3.0}, {4.0}};
  const HardyElement m = HardyElement::monomial(2, 3, k, xi);
  CHECK(m.norm() == doctest::Approx(5.0));
  const cplx z[] = {cplx(0.5, 0.0), cplx(0.0, 1.0)};
  const CMatrix v = m.evaluate(z);
  CHECK(std::abs(v(0, 0) - cplx(0.0, 0.75)) < 1e-15);
  CHECK(std::abs(v(1, 0) - cplx(0.0, 1.0)) < 1e-15);
  const HardyElement other(3, 3, 2);
  CHECK_THROWS_AS(m + other, Error);
}

TEST_CASE("canonical isometry of a nilpotent Szego pair") {
  const auto pair = jordan_pair(2, 3, 1.0, 1.0);
  const CMatrix defect = psd_sqrt(szego_defect(pair));
  const CMatrix frame = range_onb(defect);
  const int cap = 3;
  const auto pi = canonical_isometry(pair, defect, frame, cap);
  const auto pi_next = canonical_isometry(pair, defect, frame, cap + 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const CMatrix h = random_matrix(rng, 6, 1);
    CHECK(std::abs(isometry_defect(pi, h)) < 1e-13);
    CHECK(power_tail(pair, h, cap) == 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
      const HardyElement lhs = pi.apply(pair[i].adjoint() * h);
      const HardyElement rhs = mult_z_adjoint(i, pi_next.apply(h));
      double worst = 0.0;
      for (std::size_t l = 0; l < lhs.box().count(); ++l) {
        const auto k = lhs.box().multi(l);
        worst = std::max(worst, dist(lhs.coefficient(k), rhs.coefficient(k)));
      }
      CHECK(worst < 1e-14);
    }
    // Adjoint pairing <Pi h, f> = <h, Pi^* f>.
    const HardyElement f = random_element(rng, 2, cap, frame.cols());
    CHECK(std::abs(hardy_inner(pi.apply(h), f) - inner(h, pi.adjoint(f))) < 1e-12);
  }
  CHECK_THROWS_AS(canonical_isometry(make_tuple({CMatrix::identity(2)}), CMatrix::identity(2),
                                     CMatrix::identity(2), 2),
                  Error);
}

TEST_CASE("power tail bounds the isometry defect of a contractive pair") {
  const auto pair = random_szego_pair(9, 2, 2, 0.8);
  const CMatrix defect = psd_sqrt(szego_defect(pair));
  const CMatrix frame = range_onb(defect);
  std::mt19937_64 rng(6);
  for (int cap : {2, 6, 12}) {
    const auto pi = canonical_isometry(pair, defect, frame, cap);
    const CMatrix h = random_matrix(rng, 4, 1);
    const double tail = power_tail(pair, h, cap);
    const double d = isometry_defect(pi, h);
    CHECK(d >= -1e-12);
    CHECK(d <= tail * tail + 1e-12);
  }
  CHECK(geom_tail(0.5, 3, 1.0, 4) == doctest::Approx(2.0 * std::pow(0.5, 4) / 0.5));
}

TEST_CASE("z_op and symbol multiplication") {
  std::mt19937_64 rng(8);
  const std::vector<std::size_t> partition{1, 2};
  const HardyElement f = random_element(rng, 2, 4, 3);
  const HardyElement g = random_element(rng, 2, 4, 3);
  CHECK(std::abs(hardy_inner(z_op(f, partition), g) - hardy_inner(f, z_op_adjoint(g, partition))) < 1e-12);
  const std::vector<std::size_t> bad{1, 1};
  try {
    z_op(f, bad);
    FAIL("expected PartitionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PartitionMismatch);
  }

  SymbolSeries s(2, 4, 2, 3);
  for (auto& c : s.coeffs) c = random_matrix(rng, 2, 3);
  const HardyElement u = random_element(rng, 2, 4, 2);
  CHECK(std::abs(hardy_inner(mult_symbol(s, f), u) - hardy_inner(f, mult_symbol_adjoint(s, u))) < 1e-10);

  // Multiplication by a constant symbol is coefficientwise.
  const CMatrix c = random_matrix(rng, 2, 3);
  const auto cs = SymbolSeries::constant(2, 4, c);
  CHECK((mult_symbol(cs, f) - apply_coefficientwise(c, f)).norm() < 1e-13);
}
