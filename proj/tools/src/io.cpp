#include "polydil/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "polydil/error.hpp"

namespace polydil {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field '") + what + "' has the wrong type");
  }
}

cplx scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) bad("complex scalar must be [re, im]");
  return {real_from_json(j[0]), real_from_json(j[1])};
}

json reals_to_json(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(real_to_json(x));
  return a;
}

std::vector<double> reals_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of reals");
  std::vector<double> xs;
  for (const auto& e : j) xs.push_back(real_from_json(e));
  return xs;
}

json cplx_to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

json matrices_to_json(const std::vector<CMatrix>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(m);
  return a;
}

std::vector<CMatrix> matrices_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of matrices");
  std::vector<CMatrix> ms;
  for (const auto& e : j) ms.push_back(e.get<CMatrix>());
  return ms;
}

}  // namespace

json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  bad("expected a real number");
}

void to_json(json& j, const CMatrix& m) {
  j = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(cplx_to_json(m(r, c)));
    j.push_back(std::move(row));
  }
}

void from_json(const json& j, CMatrix& m) {
  if (!j.is_array()) bad("matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) bad("matrix row must be an array");
    cols = j[0].size();
  }
  CMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad("matrix rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = scalar_from_json(j[r][c]);
  }
  m = std::move(out);
}

void to_json(json& j, const TupleDocument& d) {
  j = json::object();
  j["dim"] = d.dim;
  j["n"] = d.operators.size();
  j["operators"] = matrices_to_json(d.operators);
  if (d.g) j["certificate"] = json{{"G", matrices_to_json(*d.g)}};
}

void from_json(const json& j, TupleDocument& d) {
  d.dim = get_as<std::size_t>(field(j, "dim"), "dim");
  const auto n = get_as<std::size_t>(field(j, "n"), "n");
  d.operators = matrices_from_json(field(j, "operators"));
  if (d.operators.size() != n) bad("'n' does not match the number of operators");
  for (const auto& m : d.operators)
    if (m.rows() != d.dim || m.cols() != d.dim) bad("operator shape does not match 'dim'");
  d.g.reset();
  if (j.contains("certificate")) {
    auto g = matrices_from_json(field(field(j, "certificate"), "G"));
    for (const auto& m : g)
      if (m.rows() != d.dim || m.cols() != d.dim) bad("G shape does not match 'dim'");
    d.g = std::move(g);
  }
}

TupleDocument make_tuple_document(const OperatorTuple& tuple, const std::vector<CMatrix>* g) {
  TupleDocument d;
  d.dim = tuple.dim();
  d.operators.assign(tuple.ops().begin(), tuple.ops().end());
  if (g) d.g = *g;
  return d;
}

void to_json(json& j, const Failure& f) {
  j = json{{"kind", f.kind}, {"message", f.message}, {"value", real_to_json(f.value)},
           {"index", f.index}, {"index2", f.index2}};
}

void from_json(const json& j, Failure& f) {
  f.kind = get_as<std::string>(field(j, "kind"), "kind");
  f.message = get_as<std::string>(field(j, "message"), "message");
  f.value = real_from_json(field(j, "value"));
  f.index = get_as<long long>(field(j, "index"), "index");
  f.index2 = get_as<long long>(field(j, "index2"), "index2");
}

Failure failure_from(const Error& err) {
  return {to_string(err.kind()), err.what(), err.value(), static_cast<long long>(err.index()),
          static_cast<long long>(err.index2())};
}

void to_json(json& j, const CertificateDocument& d) {
  j = json::object();
  j["accepted"] = d.accepted;
  j["source"] = d.source;
  j["G"] = matrices_to_json(d.g);
  j["defect_rank"] = d.defect_rank;
  j["partition"] = d.partition;
  j["sum_residual"] = real_to_json(d.sum_residual);
  j["g_min_eigs"] = reals_to_json(d.g_min_eigs);
  j["product_min_eigs"] = reals_to_json(d.product_min_eigs);
  j["hat_szego_min_eig"] = real_to_json(d.hat_szego_min_eig);
  if (d.failure) j["failure"] = *d.failure;
}

void from_json(const json& j, CertificateDocument& d) {
  d.accepted = get_as<bool>(field(j, "accepted"), "accepted");
  d.source = get_as<std::string>(field(j, "source"), "source");
  d.g = matrices_from_json(field(j, "G"));
  d.defect_rank = get_as<std::size_t>(field(j, "defect_rank"), "defect_rank");
  d.partition = get_as<std::vector<std::size_t>>(field(j, "partition"), "partition");
  d.sum_residual = real_from_json(field(j, "sum_residual"));
  d.g_min_eigs = reals_from_json(field(j, "g_min_eigs"));
  d.product_min_eigs = reals_from_json(field(j, "product_min_eigs"));
  d.hat_szego_min_eig = real_from_json(field(j, "hat_szego_min_eig"));
  d.failure.reset();
  if (j.contains("failure")) d.failure = field(j, "failure").get<Failure>();
}

CertificateDocument make_certificate_document(const PnCertificate& cert, const std::string& source) {
  CertificateDocument d;
  d.accepted = true;
  d.source = source;
  d.g = cert.g;
  d.defect_rank = cert.defect_rank();
  d.partition = cert.partition();
  d.sum_residual = cert.sum_residual;
  d.g_min_eigs = cert.g_min_eigs;
  d.product_min_eigs = cert.product_min_eigs;
  d.hat_szego_min_eig = cert.hat_szego_min_eig;
  return d;
}

void to_json(json& j, const RealizationDocument& d) {
  j = json::object();
  j["A"] = d.a;
  j["B"] = d.b;
  j["C"] = d.c;
  j["D"] = d.d;
  j["partition"] = d.partition;
  j["defect_rank"] = d.defect_rank;
  j["span_rank"] = d.span_rank;
  j["residuals"] = json{{"generating", real_to_json(d.generating_residual)},
                        {"unitarity", real_to_json(d.unitarity_residual)},
                        {"isometry_gram", real_to_json(d.isometry_gram_residual)}};
}

namespace {

// Empty blocks serialize as [] and lose their other dimension; restore it
// from the partition and the defect rank.
CMatrix reshape_empty(CMatrix m, std::size_t rows, std::size_t cols) {
  if (m.rows() == 0 || m.cols() == 0) return CMatrix(rows, cols);
  if (m.rows() != rows || m.cols() != cols) bad("realization block has the wrong shape");
  return m;
}

}  // namespace

void from_json(const json& j, RealizationDocument& d) {
  d.partition = get_as<std::vector<std::size_t>>(field(j, "partition"), "partition");
  d.defect_rank = get_as<std::size_t>(field(j, "defect_rank"), "defect_rank");
  d.span_rank = get_as<std::size_t>(field(j, "span_rank"), "span_rank");
  std::size_t f = 0;
  for (auto p : d.partition) f += p;
  const std::size_t e = d.defect_rank;
  d.a = reshape_empty(field(j, "A").get<CMatrix>(), e, e);
  d.b = reshape_empty(field(j, "B").get<CMatrix>(), e, f);
  d.c = reshape_empty(field(j, "C").get<CMatrix>(), f, e);
  d.d = reshape_empty(field(j, "D").get<CMatrix>(), f, f);
  const json& res = field(j, "residuals");
  d.generating_residual = real_from_json(field(res, "generating"));
  d.unitarity_residual = real_from_json(field(res, "unitarity"));
  d.isometry_gram_residual = real_from_json(field(res, "isometry_gram"));
}

RealizationDocument make_realization_document(const TransferRealization& r) {
  RealizationDocument d;
  d.a = r.blocks.a;
  d.b = r.blocks.b;
  d.c = r.blocks.c;
  d.d = r.blocks.d;
  d.partition = r.blocks.partition;
  d.generating_residual = r.generating_residual;
  d.unitarity_residual = r.unitarity_residual;
  d.isometry_gram_residual = r.isometry_gram_residual;
  d.span_rank = r.span_rank;
  d.defect_rank = r.blocks.outer_dim();
  return d;
}

Colligation colligation_of(const RealizationDocument& d) { return {d.a, d.b, d.c, d.d, d.partition}; }

void to_json(json& j, const IdentityCheck& c) {
  j = json{{"name", c.name},
           {"residual", real_to_json(c.residual)},
           {"bound", real_to_json(c.bound)},
           {"geom_tail", real_to_json(c.geom_tail)},
           {"passed", c.passed}};
}

void from_json(const json& j, IdentityCheck& c) {
  c.name = get_as<std::string>(field(j, "name"), "name");
  c.residual = real_from_json(field(j, "residual"));
  c.bound = real_from_json(field(j, "bound"));
  c.geom_tail = real_from_json(field(j, "geom_tail"));
  c.passed = get_as<bool>(field(j, "passed"), "passed");
}

void to_json(json& j, const VerificationReport& r) {
  j = json::object();
  j["cap"] = r.cap;
  j["defect_rank"] = r.defect_rank;
  j["partition"] = r.partition;
  j["all_passed"] = r.all_passed;
  j["checks"] = r.checks;
}

void from_json(const json& j, VerificationReport& r) {
  r.cap = get_as<int>(field(j, "cap"), "cap");
  r.defect_rank = get_as<std::size_t>(field(j, "defect_rank"), "defect_rank");
  r.partition = get_as<std::vector<std::size_t>>(field(j, "partition"), "partition");
  r.all_passed = get_as<bool>(field(j, "all_passed"), "all_passed");
  r.checks = field(j, "checks").get<std::vector<IdentityCheck>>();
}

void to_json(json& j, const VNReport& r) {
  j = json{{"lhs", real_to_json(r.lhs)},
           {"rhs", real_to_json(r.rhs)},
           {"margin", real_to_json(r.margin)},
           {"polydisc_rhs", real_to_json(r.polydisc_rhs)},
           {"grid", r.grid},
           {"singular_points", r.singular_points},
           {"h0_dim", r.h0_dim},
           {"passed", r.passed},
           {"sharper_than_polydisc", r.sharper_than_polydisc}};
}

void from_json(const json& j, VNReport& r) {
  r.lhs = real_from_json(field(j, "lhs"));
  r.rhs = real_from_json(field(j, "rhs"));
  r.margin = real_from_json(field(j, "margin"));
  r.polydisc_rhs = real_from_json(field(j, "polydisc_rhs"));
  r.grid = get_as<std::size_t>(field(j, "grid"), "grid");
  r.singular_points = get_as<std::size_t>(field(j, "singular_points"), "singular_points");
  r.h0_dim = get_as<std::size_t>(field(j, "h0_dim"), "h0_dim");
  r.passed = get_as<bool>(field(j, "passed"), "passed");
  r.sharper_than_polydisc = get_as<bool>(field(j, "sharper_than_polydisc"), "sharper_than_polydisc");
}

void to_json(json& j, const VarietyPoint& p) {
  json z = json::array();
  for (const auto& zi : p.z) z.push_back(cplx_to_json(zi));
  j = json{{"z", std::move(z)},
           {"lambda", cplx_to_json(p.lambda)},
           {"component", p.component == VarietyComponent::V0 ? "V0" : "V1"},
           {"boundary", p.boundary},
           {"interior", std::abs(p.lambda) < 1.0},
           {"residual", real_to_json(p.residual)},
           {"bound", real_to_json(p.bound)}};
}

void from_json(const json& j, VarietyPoint& p) {
  p.z.clear();
  const json& z = field(j, "z");
  if (!z.is_array()) bad("'z' must be an array");
  for (const auto& zi : z) p.z.push_back(scalar_from_json(zi));
  p.lambda = scalar_from_json(field(j, "lambda"));
  const auto tag = get_as<std::string>(field(j, "component"), "component");
  if (tag != "V0" && tag != "V1") bad("component must be V0 or V1");
  p.component = tag == "V0" ? VarietyComponent::V0 : VarietyComponent::V1;
  p.boundary = get_as<bool>(field(j, "boundary"), "boundary");
  p.residual = real_from_json(field(j, "residual"));
  p.bound = real_from_json(field(j, "bound"));
}

void to_json(json& j, const VarietySample& s) {
  j = json::object();
  j["interior_grid"] = s.interior_grid;
  j["torus_grid"] = s.torus_grid;
  j["radius"] = real_to_json(s.radius);
  j["h0_dim"] = s.h0_dim;
  j["singular_points"] = s.singular_points;
  j["max_residual"] = real_to_json(s.max_residual);
  j["residuals_ok"] = s.residuals_ok;
  j["interior_inside_disc"] = s.interior_inside_disc;
  j["points"] = s.points;
}

void from_json(const json& j, VarietySample& s) {
  s.interior_grid = get_as<std::size_t>(field(j, "interior_grid"), "interior_grid");
  s.torus_grid = get_as<std::size_t>(field(j, "torus_grid"), "torus_grid");
  s.radius = real_from_json(field(j, "radius"));
  s.h0_dim = get_as<std::size_t>(field(j, "h0_dim"), "h0_dim");
  s.singular_points = get_as<std::size_t>(field(j, "singular_points"), "singular_points");
  s.max_residual = real_from_json(field(j, "max_residual"));
  s.residuals_ok = get_as<bool>(field(j, "residuals_ok"), "residuals_ok");
  s.interior_inside_disc = get_as<bool>(field(j, "interior_inside_disc"), "interior_inside_disc");
  s.points = field(j, "points").get<std::vector<VarietyPoint>>();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

}  // namespace polydil
