#include <doctest.h>

#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "polydil/cli.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/io.hpp"
#include "polydil/polyparse.hpp"
#include "polydil/realization.hpp"

using namespace polydil;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "polydil");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(POLYDIL_FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("polydil_test_" + name)).string();
}

template <class T>
void check_round_trip(const T& value) {
  const json first = value;
  const T back = first.template get<T>();
  const json second = back;
  CHECK(dump_document(first) == dump_document(second));
}

}  // namespace

TEST_CASE("polynomial parser") {
  const MultiPoly p = parse_poly("z1*z2 + z3", 3);
  MultiPoly expect(3);
  expect.add_term({1, 1, 0}, 1.0);
  expect.add_term({0, 0, 1}, 1.0);
  CHECK(p == expect);

  const MultiPoly q = parse_poly("(1+2i)*z3^2 - 0.5*z1*z3 + 2i", 3);
  CHECK(q.terms().at({0, 0, 2}) == cplx(1.0, 2.0));
  CHECK(q.terms().at({1, 0, 1}) == cplx(-0.5, 0.0));
  CHECK(q.terms().at({0, 0, 0}) == cplx(0.0, 2.0));

  CHECK(parse_poly("-i*z1", 2).terms().at({1, 0}) == cplx(0.0, -1.0));
  CHECK(parse_poly("1.5e-3", 1).terms().at({0}) == cplx(1.5e-3, 0.0));
  CHECK(parse_poly("z1 - z1", 2).is_zero());
  CHECK(parse_poly("(z1+1)*(z1-1)", 1) == parse_poly("z1^2 - 1", 1));

  for (const char* bad : {"z4", "z0", "z1 +", "2 ** z1", "(z1", "q", "z1^-1", "(z1 + z2)^2", ""}) {
    try {
      parse_poly(bad, 3);
      FAIL("expected ParseError for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }

  const auto lines = parse_poly_lines("# header\n1\n\nz1*z2 # trailing\n", 2);
  CHECK(lines.size() == 2);
  CHECK_THROWS_AS(parse_poly_lines("# only comments\n", 2), Error);

  for (const auto& text : {"1", "z1*z2 + z3", "(1+2i)*z3^2 - 0.5*z1*z3 + 2i", "z1^3 + z2^3 + z3^3"}) {
    const MultiPoly a = parse_poly(text, 3);
    CHECK(parse_poly(format_poly(a), 3) == a);
  }
}

TEST_CASE("JSON round trips are bit-identical") {
  CHECK(real_to_json(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isnan(real_from_json(json("nan"))));
  CHECK(real_from_json(real_to_json(0.1)) == 0.1);

  const auto ct = product_triple(jordan_pair(2, 2, 0.9, 0.9), 1, 1);
  check_round_trip(make_tuple_document(ct.tuple, &ct.cert.g));
  check_round_trip(make_tuple_document(ct.tuple));
  check_round_trip(make_certificate_document(ct.cert, "supplied"));

  CertificateDocument rejected;
  rejected.source = "bdhs";
  rejected.failure = failure_from(Error(ErrorKind::SumMismatch, "x", 0.5));
  check_round_trip(rejected);

  const auto r = build_generating_unitary(ct.tuple, ct.cert);
  const auto rd = make_realization_document(r);
  check_round_trip(rd);
  const Colligation back = colligation_of(json(rd).get<RealizationDocument>());
  CHECK(back.assemble() == r.u);

  RunConfig c;
  c.grid = 8;
  c.schur_samples = 5;
  check_round_trip(verify_dilation(ct.tuple, ct.cert, r, c));
  check_round_trip(vn_check(parse_poly("z1*z2 + z3", 3), ct.tuple, ct.cert, c));
  check_round_trip(variety_sample(r, 3, 0.9, 4));

  const CMatrix m{{cplx(0.1, -0.2), 1.0 / 3.0}, {std::numeric_limits<double>::infinity(), 0.0}};
  const json jm = m;
  CHECK(jm.get<CMatrix>().entries()[0] == m.entries()[0]);
  CHECK(std::isinf(jm.get<CMatrix>()(1, 0).real()));
}

TEST_CASE("document shape errors") {
  CHECK_THROWS_AS(parse_json_text("{ not json"), Error);
  const json wrong_dim = json::parse(R"({"dim": 3, "n": 1, "operators": [[[0, 0], [0, 0]]]})");
  try {
    (void)wrong_dim.get<TupleDocument>();
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"certify", fixture("product_triple_r09.json")}).code == kExitOk);
  CHECK(run({"certify", fixture("malformed.json")}).code == kExitParse);
  CHECK(run({"certify", fixture("does_not_exist.json")}).code == kExitParse);
  CHECK(run({"certify"}).code == kExitParse);
  CHECK(run({"no-such-command"}).code == kExitParse);

  const Run sum = run({"certify", fixture("sum_mismatch.json")});
  CHECK(sum.code == kExitCertification);
  const json doc = json::parse(sum.out);
  CHECK_FALSE(doc["accepted"].get<bool>());
  CHECK(doc["failure"]["kind"] == "SumMismatch");
  CHECK(doc["failure"]["value"].get<double>() == doctest::Approx(0.5));

  const Run corrupt = run({"dilate", "--tol-cert", "1e-3", fixture("corrupted_certificate.json")});
  CHECK(corrupt.code == kExitDilation);
  CHECK(corrupt.err.find("IsometryDefect") != std::string::npos);

  CHECK(run({"dilate", fixture("zero_triple.json")}).code == kExitOk);
  CHECK(run({"verify", "--grid", "8", "--schur-samples", "5", fixture("product_triple_nilpotent.json")}).code ==
        kExitOk);
  CHECK(run({"vn", "--grid", "8", fixture("product_triple_r09.json"), fixture("polynomials.txt")}).code ==
        kExitOk);
  CHECK(run({"vn", fixture("product_triple_r09.json"), "--expr", "z5"}).code == kExitParse);
  CHECK(run({"vn", fixture("product_triple_r09.json")}).code == kExitParse);
  CHECK(run({"variety", "--variety-grid", "3", "--grid", "4", fixture("product_triple_r09.json")}).code ==
        kExitOk);
  CHECK(run({"generate", "product-triple", "--d1", "2", "--d2", "3"}).code == kExitOk);
  CHECK(run({"generate", "bdhs", "--r1", "0.5", "--r2", "0.5"}).code == kExitOk);
  CHECK(run({"generate", "random", "--dim", "3", "--n", "4"}).code == kExitOk);
  CHECK(run({"--cap", "0", "verify", fixture("zero_triple.json")}).code != kExitOk);
}

TEST_CASE("vn reports carry the polynomial and the margins") {
  const Run r = run({"vn", "--grid", "8", fixture("zero_triple.json"), "--expr", "z1 + z2"});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  REQUIRE(doc["reports"].size() == 1);
  const json& rep = doc["reports"][0];
  CHECK(rep["lhs"].get<double>() == 0.0);
  CHECK(rep["rhs"].get<double>() == doctest::Approx(2.0));
  CHECK(rep["polynomial"].is_string());
}

TEST_CASE("output is deterministic and honours --out and the environment") {
  const std::vector<std::string> args{"verify", "--grid", "8", "--schur-samples", "5",
                                      fixture("product_triple_r09.json")};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);

  const std::string path = temp_path("gen.json");
  const Run g = run({"generate", "random", "--seed", "5", "--out", path});
  CHECK(g.code == kExitOk);
  CHECK(g.out.empty());
  const TupleDocument doc = parse_json_text(read_text_file(path)).get<TupleDocument>();
  CHECK(doc.operators.size() == 3);
  const Run same = run({"generate", "random", "--seed", "5"});
  CHECK(same.out == read_text_file(path));
  std::filesystem::remove(path);

  ::setenv("POLYDIL_SEED", "5", 1);
  const Run env_seed = run({"generate", "random"});
  ::unsetenv("POLYDIL_SEED");
  CHECK(env_seed.out == same.out);

  ::setenv("POLYDIL_GRID", "6", 1);
  const Run env_grid = run({"vn", fixture("zero_triple.json"), "--expr", "z3"});
  ::unsetenv("POLYDIL_GRID");
  REQUIRE(env_grid.code == kExitOk);
  CHECK(json::parse(env_grid.out)["reports"][0]["grid"] == 6);
}
