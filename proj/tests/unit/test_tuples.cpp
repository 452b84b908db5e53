#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/linalg.hpp"
#include "polydil/tuples.hpp"

using namespace polydil;
using polydil::testing::dist;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("make_tuple validates its input") {
  const CMatrix i2 = CMatrix::identity(2);
  CHECK_NOTHROW(make_tuple({i2, i2}));
  CHECK_NOTHROW(make_tuple({CMatrix(2, 2), CMatrix(2, 2)}));

  try {
    make_tuple({i2, 2.0 * i2});
    FAIL("expected NotContractive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotContractive);
    CHECK(e.index() == 1);
    CHECK(e.value() == doctest::Approx(2.0));
  }

  const CMatrix j = shift_matrix(2);
  try {
    make_tuple({j, j.adjoint()});
    FAIL("expected NotCommuting");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCommuting);
    CHECK(e.index() == 0);
    CHECK(e.index2() == 1);
    CHECK(e.value() > 0.5);
  }

  CHECK(kind_of([&] { make_tuple({i2, CMatrix::identity(3)}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { make_tuple({}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hat removes one entry") {
  const auto t = make_tuple({CMatrix::diag({0.1, 0.2}), CMatrix::diag({0.3, 0.4}), CMatrix::diag({0.5, 0.6})});
  const auto h = hat(t, 1);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == t[0]);
  CHECK(h[1] == t[2]);
  CHECK(kind_of([&] { hat(t, 3); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("szego_defect") {
  const auto zero = make_tuple({CMatrix(3, 3), CMatrix(3, 3)});
  CHECK(dist(szego_defect(zero), CMatrix::identity(3)) < 1e-15);

  const auto unit = make_tuple({CMatrix::identity(2)});
  CHECK(szego_defect(unit).max_abs() < 1e-15);

  // Product of the scalar defects for a pair of scalars.
  const cplx a(0.3, 0.4);
  const cplx b(-0.5, 0.2);
  const auto s = make_tuple({CMatrix::diag({a}), CMatrix::diag({b})});
  const double expected = (1.0 - std::norm(a)) * (1.0 - std::norm(b));
  CHECK(std::abs(szego_defect(s)(0, 0) - expected) < 1e-15);

  // Doubly commuting Jordan pairs factor as a tensor product of one-variable defects.
  for (double r : {1.0, 0.9}) {
    const auto pair = jordan_pair(2, 3, r, r);
    const CMatrix j2 = r * shift_matrix(2);
    const CMatrix j3 = r * shift_matrix(3);
    const CMatrix expect = kron(CMatrix::identity(2) - j2 * j2.adjoint(), CMatrix::identity(3) - j3 * j3.adjoint());
    CHECK(dist(szego_defect(pair), expect) < 1e-14);
  }
}

TEST_CASE("szego_defect agrees with the nested conjugacy product applied to I") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto t = random_candidate(rng(), 4, n, 0.1);
    const CMatrix expect = conjugacy_product(t.ops(), CMatrix::identity(4));
    CHECK(dist(szego_defect(t), expect) < 1e-12);
  }
}

TEST_CASE("is_szego and purity") {
  CHECK(is_szego(make_tuple({CMatrix(2, 2), CMatrix(2, 2)})).szego);
  const auto pair = jordan_pair(2, 2, 1.0, 1.0);
  CHECK(is_szego(pair).szego);
  CHECK(is_pure(pair));
  CHECK(nilpotency_order(pair) == 2);

  const auto unitary = make_tuple({CMatrix::identity(2)});
  CHECK_FALSE(is_pure(unitary));
  CHECK(nilpotency_order(unitary) == 0);

  const CMatrix j3 = shift_matrix(3);
  CHECK(spectral_radius_estimate(j3) == 0.0);
  CHECK(spectral_radius_estimate(CMatrix::diag({0.5, -0.25})) == doctest::Approx(0.5));
  const CMatrix upper{{0.5, 1.0}, {0.0, 0.5}};
  const double rho = spectral_radius_estimate(upper);
  CHECK(rho >= 0.5);
  CHECK(rho < 0.52);
}

TEST_CASE("tuple_power") {
  const auto pair = jordan_pair(2, 2, 1.0, 1.0);
  const int k11[] = {1, 1};
  CHECK(dist(tuple_power(pair.ops(), k11), pair[0] * pair[1]) < 1e-15);
  const int k00[] = {0, 0};
  CHECK(dist(tuple_power(pair.ops(), k00), CMatrix::identity(4)) < 1e-15);
  const int k20[] = {2, 0};
  CHECK(tuple_power(pair.ops(), k20).max_abs() == 0.0);
}

TEST_CASE("verify_pn accepts the zero triple and reports its certificate") {
  const auto t = make_tuple({CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)});
  const std::vector<CMatrix> g{CMatrix::identity(2), CMatrix(2, 2)};
  const auto cert = verify_pn(t, g);
  CHECK(cert.sum_residual < 1e-15);
  CHECK(cert.defect_rank() == 2);
  CHECK(cert.partition() == std::vector<std::size_t>{2, 0});
}

TEST_CASE("verify_pn error ordering") {
  const CMatrix z = CMatrix(2, 2);
  const CMatrix i2 = CMatrix::identity(2);

  // T_hat_n = (I, 0) is not pure but is Szego.
  const auto unit_head = make_tuple({i2, z, z});
  const std::vector<CMatrix> g0{z, z};
  CHECK(kind_of([&] { verify_pn(unit_head, g0); }) == ErrorKind::NotPure);

  // (J, J): I - 2JJ^* + J^2 J^{*2} = diag(1, -1).
  const CMatrix j = shift_matrix(2);
  const auto non_szego = make_tuple({j, j, z});
  CHECK(kind_of([&] { verify_pn(non_szego, g0); }) == ErrorKind::NotSzego);

  const auto zero = make_tuple({z, z, z});
  const std::vector<CMatrix> bad_psd{CMatrix::diag({1.5, 1.0}), CMatrix::diag({-0.5, 0.0})};
  try {
    verify_pn(zero, bad_psd);
    FAIL("expected GNotPsd");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GNotPsd);
    CHECK(e.index() == 1);
  }

  const std::vector<CMatrix> mismatch{1.5 * i2, z};
  try {
    verify_pn(zero, mismatch);
    FAIL("expected SumMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SumMismatch);
    CHECK(e.value() == doctest::Approx(0.5));
  }

  const auto jj = make_tuple({z, j, j});
  const CMatrix g1 = i2 - j * j.adjoint();
  // The product for G_2 runs over T_1 = 0 only.
  const std::vector<CMatrix> pg{z, g1};
  CHECK_NOTHROW(verify_pn(jj, pg));
  const std::vector<CMatrix> pg_bad{g1, z};
  CHECK(kind_of([&] { verify_pn(jj, pg_bad); }) == ErrorKind::ProductNotPsd);

  CHECK(kind_of([&] { verify_pn(zero, std::vector<CMatrix>{i2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("bdhs_certificate hypotheses") {
  const CMatrix z = CMatrix(2, 2);
  const CMatrix j = shift_matrix(2);
  const auto t = make_tuple({z, j, j});
  // T_hat_1 = (J, J) is not Szego.
  CHECK(kind_of([&] { bdhs_certificate(t); }) == ErrorKind::HypothesisFailed);

  const auto pair = jordan_pair(2, 2, 0.5, 0.5);
  const auto triple = make_tuple({pair[0], pair[1], pair[0] * pair[1]});
  const auto cert = bdhs_certificate(triple);
  CHECK(cert.sum_residual < 1e-12);
  CHECK(cert.g[1].max_abs() == 0.0);
}
