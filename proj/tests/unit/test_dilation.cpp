#include <doctest.h>

#include <array>
#include <string>

#include "polydil/dilation.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/realization.hpp"

using namespace polydil;

namespace {

RunConfig quick_config() {
  RunConfig c;
  c.grid = 16;
  c.schur_samples = 30;
  return c;
}

const char* const kChecks[] = {
    "generating_identity", "unitarity", "pi_isometry_defect", "pi_intertwines_z1", "pi_intertwines_z2",
    "lifting", "id4", "lemma_id5", "lemma_id6", "lemma_pi_adjoint_monomial", "lemma_resolvent",
    "lemma_weak_limit", "schur_identity", "inner", "inner_singular_fraction",
};

}  // namespace

TEST_CASE("RunConfig validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol.cert = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.cap = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RunConfig{};
  c.radius = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("effective cap follows the nilpotency order") {
  const auto ct = product_triple(jordan_pair(3, 2, 1.0, 1.0), 2, 1);
  RunConfig c;
  c.cap = 1;
  CHECK(effective_cap(ct.tuple, c) == 3);
  c.auto_cap = false;
  CHECK(effective_cap(ct.tuple, c) == 1);
  c = RunConfig{};
  CHECK(effective_cap(ct.tuple, c) == 12);
  const auto non_nil = product_triple(random_szego_pair(1, 2, 2, 0.7), 1, 1);
  c.cap = 4;
  CHECK(effective_cap(non_nil.tuple, c) == 4);
}

TEST_CASE("every identity holds for the nilpotent product triples") {
  const std::array<std::array<int, 4>, 3> shapes{{{2, 2, 1, 1}, {3, 2, 2, 1}, {3, 3, 1, 2}}};
  for (const auto& [d1, d2, j, k] : shapes) {
    const auto ct = product_triple(jordan_pair(static_cast<std::size_t>(d1), static_cast<std::size_t>(d2), 1.0, 1.0), j, k);
    const auto r = build_generating_unitary(ct.tuple, ct.cert);
    RunConfig c = quick_config();
    c.cap = 1;
    const auto rep = verify_dilation(ct.tuple, ct.cert, r, c);
    CHECK(rep.all_passed);
    CHECK(rep.cap == std::max(d1, d2));
    for (const char* name : kChecks) {
      const auto* check = rep.find(name);
      REQUIRE_MESSAGE(check != nullptr, name);
      CHECK_MESSAGE(check->passed, name);
    }
    CHECK(rep.find("pi_isometry_defect")->residual < 1e-13);
    CHECK(rep.find("lifting")->residual < 1e-13);
    CHECK(lifting_residual(ct.tuple, ct.cert, r.blocks, rep.cap) < 1e-13);
    CHECK(rep.find("no_such_check") == nullptr);
  }
}

TEST_CASE("power tails bound the truncation for a contractive triple") {
  const auto ct = product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1);
  const auto r = build_generating_unitary(ct.tuple, ct.cert);
  for (int cap : {1, 3, 12}) {
    RunConfig c = quick_config();
    c.cap = cap;
    c.auto_cap = false;
    const auto rep = verify_dilation(ct.tuple, ct.cert, r, c);
    CHECK(rep.cap == cap);
    CHECK(rep.all_passed);
  }

  const auto pair = product_triple(random_szego_pair(3, 2, 2, 0.8), 1, 1);
  const auto rp = build_generating_unitary(pair.tuple, pair.cert);
  RunConfig c = quick_config();
  c.cap = 8;
  const auto rep = verify_dilation(pair.tuple, pair.cert, rp, c);
  CHECK(rep.all_passed);
  const auto* iso = rep.find("pi_isometry_defect");
  CHECK(iso->residual > 0.0);
  CHECK(iso->geom_tail > 0.0);
}

TEST_CASE("a tampered realization fails verification") {
  const auto ct = product_triple(jordan_pair(2, 2, 1.0, 1.0), 1, 1);
  auto r = build_generating_unitary(ct.tuple, ct.cert);
  r.blocks.c *= 0.5;
  const auto rep = verify_dilation(ct.tuple, ct.cert, r, quick_config());
  CHECK_FALSE(rep.all_passed);
  CHECK_FALSE(rep.find("lifting")->passed);
}
