#include "polydil/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>

#include "polydil/dilation.hpp"
#include "polydil/error.hpp"
#include "polydil/generators.hpp"
#include "polydil/io.hpp"
#include "polydil/polyparse.hpp"
#include "polydil/realization.hpp"
#include "polydil/vonneumann.hpp"

namespace polydil {

namespace {

// A library error tagged with the exit code of the stage that raised it.
struct StageFailure {
  int code;
  Failure failure;
};

template <typename F>
auto staged(int code, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& err) {
    throw StageFailure{err.kind() == ErrorKind::ParseError ? int{kExitParse} : code, failure_from(err)};
  }
}

struct Certified {
  OperatorTuple tuple;
  PnCertificate cert;
  std::string source;
};

struct Session {
  RunConfig config;
  std::ostream& out;
  std::ostream& err;

  void emit(const json& doc) const {
    const std::string text = dump_document(doc);
    if (config.out.empty()) {
      out << text;
    } else {
      write_text_file(config.out, text);
    }
  }

  TupleDocument load(const std::string& path) const {
    return staged(kExitParse, [&] { return parse_json_text(read_text_file(path)).get<TupleDocument>(); });
  }

  OperatorTuple tuple_of(const TupleDocument& doc) const {
    return staged(kExitCertification, [&] {
      return make_tuple(doc.operators, config.tol.commute, config.tol.contract);
    });
  }

  // Supplied G's are verified; without them the BDHS certificate is tried.
  Certified certify(const TupleDocument& doc) const {
    Certified c;
    c.tuple = tuple_of(doc);
    c.source = doc.g ? "supplied" : "bdhs";
    c.cert = staged(kExitCertification, [&] {
      return doc.g ? verify_pn(c.tuple, *doc.g, config.tol.cert) : bdhs_certificate(c.tuple, config.tol.cert);
    });
    return c;
  }

  TransferRealization dilate(const Certified& c) const {
    return staged(kExitDilation, [&] { return build_generating_unitary(c.tuple, c.cert); });
  }
};

int cmd_certify(const Session& s, const std::string& input) {
  const TupleDocument doc = s.load(input);
  try {
    const Certified c = s.certify(doc);
    s.emit(make_certificate_document(c.cert, c.source));
    return kExitOk;
  } catch (const StageFailure& f) {
    if (f.code != kExitCertification) throw;
    CertificateDocument rejected;
    rejected.source = doc.g ? "supplied" : "bdhs";
    if (doc.g) rejected.g = *doc.g;
    rejected.failure = f.failure;
    if (f.failure.kind == to_string(ErrorKind::SumMismatch)) rejected.sum_residual = f.failure.value;
    s.emit(rejected);
    s.err << "certification failed: " << f.failure.message << "\n";
    return kExitCertification;
  }
}

int cmd_dilate(const Session& s, const std::string& input) {
  const Certified c = s.certify(s.load(input));
  const TransferRealization r = s.dilate(c);
  s.emit(make_realization_document(r));
  return kExitOk;
}

int cmd_verify(const Session& s, const std::string& input) {
  const Certified c = s.certify(s.load(input));
  const TransferRealization r = s.dilate(c);
  const VerificationReport rep =
      staged(kExitVerification, [&] { return verify_dilation(c.tuple, c.cert, r, s.config); });
  s.emit(rep);
  if (!rep.all_passed) {
    for (const auto& chk : rep.checks)
      if (!chk.passed) s.err << "check " << chk.name << " failed: " << chk.residual << " > " << chk.bound << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_vn(const Session& s, const std::string& input, const std::string& poly_file, const std::string& expr) {
  const TupleDocument doc = s.load(input);
  const std::size_t n = doc.operators.size();
  const std::vector<MultiPoly> polys = staged(kExitParse, [&] {
    if (!expr.empty()) return std::vector<MultiPoly>{parse_poly(expr, n)};
    if (poly_file.empty()) throw Error(ErrorKind::ParseError, "no polynomial given (file or --expr)");
    return parse_poly_lines(read_text_file(poly_file), n);
  });
  const Certified c = s.certify(doc);
  const VNContext ctx = staged(kExitDilation, [&] { return make_vn_context(c.tuple, c.cert, s.config); });
  json reports = json::array();
  bool ok = true;
  staged(kExitVerification, [&] {
    for (const auto& p : polys) {
      const VNReport rep = vn_check(p, c.tuple, ctx, s.config);
      json j = rep;
      j["polynomial"] = format_poly(p);
      reports.push_back(std::move(j));
      if (!rep.passed) {
        ok = false;
        s.err << "von Neumann margin " << rep.margin << " below -" << s.config.tol.vn << " for " << format_poly(p)
              << "\n";
      }
    }
  });
  s.emit(json{{"reports", std::move(reports)}});
  return ok ? kExitOk : kExitVnMargin;
}

int cmd_variety(const Session& s, const std::string& input, bool with_torus) {
  const Certified c = s.certify(s.load(input));
  const TransferRealization r = s.dilate(c);
  const VarietySample vs = staged(kExitVerification, [&] {
    return variety_sample(r, s.config.variety_grid, s.config.radius, with_torus ? s.config.grid : 0,
                          s.config.tol.root);
  });
  s.emit(vs);
  if (!vs.residuals_ok) {
    s.err << "variety residual " << vs.max_residual << " exceeds its bound\n";
    return kExitVerification;
  }
  return kExitOk;
}

struct GenerateOptions {
  std::string family = "product-triple";
  std::size_t d1 = 2;
  std::size_t d2 = 2;
  double r1 = 1.0;
  double r2 = 1.0;
  int j = 1;
  int k = 1;
  std::size_t dim = 4;
  std::size_t n = 3;
  double margin = 0.1;
  bool random_pair = false;
};

int cmd_generate(const Session& s, const GenerateOptions& g) {
  const TupleDocument doc = staged(kExitCertification, [&] {
    auto pair = [&] {
      return g.random_pair ? random_szego_pair(s.config.seed, g.d1, g.d2, g.r1) : jordan_pair(g.d1, g.d2, g.r1, g.r2);
    };
    if (g.family == "product-triple") {
      const CertifiedTuple ct = product_triple(pair(), g.j, g.k, s.config.tol.cert);
      return make_tuple_document(ct.tuple, &ct.cert.g);
    }
    if (g.family == "bdhs") {
      const OperatorTuple p = pair();
      const CertifiedTuple ct = bdhs_tuple(p, p[0] * p[1], s.config.tol.cert);
      return make_tuple_document(ct.tuple, &ct.cert.g);
    }
    return make_tuple_document(random_candidate(s.config.seed, g.dim, g.n, g.margin));
  });
  s.emit(doc);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical workbench for P_n tuples: certification, isometric dilation, von Neumann checks"};
  app.name("polydil");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  bool no_auto_cap = false;
  app.add_option("--cap", config.cap, "Hardy-space degree cap per variable")->envname("POLYDIL_CAP");
  app.add_flag("--no-auto-cap", no_auto_cap, "Keep --cap even when T_hat_n is nilpotent of higher order")
      ->envname("POLYDIL_NO_AUTO_CAP");
  app.add_option("--grid", config.grid, "Torus grid points per variable")->envname("POLYDIL_GRID");
  app.add_option("--variety-grid", config.variety_grid, "Interior lattice points per axis")
      ->envname("POLYDIL_VARIETY_GRID");
  app.add_option("--radius", config.radius, "Radius of the interior variety lattice")->envname("POLYDIL_RADIUS");
  app.add_option("--tol-cert", config.tol.cert, "Certification tolerance")->envname("POLYDIL_TOL_CERT");
  app.add_option("--tol-vn", config.tol.vn, "Allowed negative von Neumann margin")->envname("POLYDIL_TOL_VN");
  app.add_option("--tol-root", config.tol.root, "Variety residual tolerance")->envname("POLYDIL_TOL_ROOT");
  app.add_option("--schur-samples", config.schur_samples, "Random interior points for the Schur identity")
      ->envname("POLYDIL_SCHUR_SAMPLES");
  app.add_option("--seed", config.seed, "Seed for every random choice")->envname("POLYDIL_SEED");
  app.add_option("--out", config.out, "Write the document here instead of stdout")->envname("POLYDIL_OUT");

  std::string input;
  auto* certify = app.add_subcommand("certify", "Check P_n membership and write the certificate");
  certify->add_option("input", input, "Tuple document")->required();
  auto* dilate = app.add_subcommand("dilate", "Build the generating unitary and write its blocks");
  dilate->add_option("input", input, "Tuple document")->required();
  auto* verify = app.add_subcommand("verify", "Run the dilation identity suite");
  verify->add_option("input", input, "Tuple document")->required();

  std::string poly_file;
  std::string expr;
  auto* vn = app.add_subcommand("vn", "Compare |P(T)| with the sup over the variety");
  vn->add_option("input", input, "Tuple document")->required();
  vn->add_option("polynomials", poly_file, "File with one polynomial per line");
  vn->add_option("--expr", expr, "Polynomial given inline, e.g. 'z1*z2 + (1+2i)*z3'");

  bool no_torus = false;
  auto* variety = app.add_subcommand("variety", "Sample the variety fibres and their residuals");
  variety->add_option("input", input, "Tuple document")->required();
  variety->add_flag("--no-torus", no_torus, "Skip fibres over the torus grid");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a generated tuple document");
  generate->add_option("family", gen.family, "product-triple, bdhs or random")
      ->check(CLI::IsMember({"product-triple", "bdhs", "random"}));
  generate->add_option("--d1", gen.d1, "First shift size");
  generate->add_option("--d2", gen.d2, "Second shift size");
  generate->add_option("--r1", gen.r1, "First weight (or norm of the random pair)");
  generate->add_option("--r2", gen.r2, "Second weight");
  generate->add_option("--j", gen.j, "Exponent of T1 in T3");
  generate->add_option("--k", gen.k, "Exponent of T2 in T3");
  generate->add_option("--dim", gen.dim, "Dimension of a random candidate");
  generate->add_option("--n", gen.n, "Number of operators of a random candidate");
  generate->add_option("--margin", gen.margin, "Spectral margin of a random candidate");
  generate->add_flag("--random-pair", gen.random_pair, "Use a random non-nilpotent Szego pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }
  config.auto_cap = !no_auto_cap;

  Session session{config, out, err};
  try {
    staged(kExitParse, [&] { config.validate(); });
    if (*certify) return cmd_certify(session, input);
    if (*dilate) return cmd_dilate(session, input);
    if (*verify) return cmd_verify(session, input);
    if (*vn) return cmd_vn(session, input, poly_file, expr);
    if (*variety) return cmd_variety(session, input, !no_torus);
    if (*generate) return cmd_generate(session, gen);
  } catch (const StageFailure& f) {
    err << f.failure.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}

}  // namespace polydil
