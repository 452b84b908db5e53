#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polydil/cmatrix.hpp"
#include "polydil/dilation.hpp"
#include "polydil/error.hpp"
#include "polydil/realization.hpp"
#include "polydil/tuples.hpp"
#include "polydil/vonneumann.hpp"

namespace polydil {

using json = nlohmann::ordered_json;

// Complex scalars are [re, im]; matrices are row-major nested arrays of
// scalars. Non-finite reals are written as the strings "inf", "-inf", "nan".

json real_to_json(double x);
double real_from_json(const json& j);

void to_json(json& j, const CMatrix& m);
void from_json(const json& j, CMatrix& m);

/// Tuple document {dim, n, operators, certificate{G}}; the certificate is optional.
struct TupleDocument {
  std::size_t dim = 0;
  std::vector<CMatrix> operators;
  std::optional<std::vector<CMatrix>> g;
};
void to_json(json& j, const TupleDocument& d);
void from_json(const json& j, TupleDocument& d);

TupleDocument make_tuple_document(const OperatorTuple& tuple, const std::vector<CMatrix>* g = nullptr);

/// Result of a certification run; `failure` is filled when it was rejected.
struct Failure {
  std::string kind;
  std::string message;
  double value = 0.0;
  long long index = -1;
  long long index2 = -1;
};
void to_json(json& j, const Failure& f);
void from_json(const json& j, Failure& f);
Failure failure_from(const Error& err);

struct CertificateDocument {
  bool accepted = false;
  std::string source;  // "supplied" or "bdhs"
  std::vector<CMatrix> g;
  std::size_t defect_rank = 0;
  std::vector<std::size_t> partition;
  double sum_residual = 0.0;
  std::vector<double> g_min_eigs;
  std::vector<double> product_min_eigs;
  double hat_szego_min_eig = 0.0;
  std::optional<Failure> failure;
};
void to_json(json& j, const CertificateDocument& d);
void from_json(const json& j, CertificateDocument& d);
CertificateDocument make_certificate_document(const PnCertificate& cert, const std::string& source);

struct RealizationDocument {
  CMatrix a, b, c, d;
  std::vector<std::size_t> partition;
  double generating_residual = 0.0;
  double unitarity_residual = 0.0;
  double isometry_gram_residual = 0.0;
  std::size_t span_rank = 0;
  std::size_t defect_rank = 0;
};
void to_json(json& j, const RealizationDocument& d);
void from_json(const json& j, RealizationDocument& d);
RealizationDocument make_realization_document(const TransferRealization& r);
Colligation colligation_of(const RealizationDocument& d);

void to_json(json& j, const IdentityCheck& c);
void from_json(const json& j, IdentityCheck& c);
void to_json(json& j, const VerificationReport& r);
void from_json(const json& j, VerificationReport& r);

void to_json(json& j, const VNReport& r);
void from_json(const json& j, VNReport& r);

void to_json(json& j, const VarietyPoint& p);
void from_json(const json& j, VarietyPoint& p);
void to_json(json& j, const VarietySample& s);
void from_json(const json& j, VarietySample& s);

/// Parses JSON text; syntax errors become ParseError.
json parse_json_text(const std::string& text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Serialized form used for every document on disk.
std::string dump_document(const json& j);

}  // namespace polydil
