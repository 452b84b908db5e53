#include "polydil/generators.hpp"

#include <random>
#include <vector>

#include "polydil/error.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

CMatrix shift_matrix(std::size_t d) {
  CMatrix j(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) j(i + 1, i) = 1.0;
  return j;
}

OperatorTuple jordan_pair(std::size_t d1, std::size_t d2, double r1, double r2) {
  if (d1 == 0 || d2 == 0) throw Error(ErrorKind::InvalidArgument, "jordan_pair needs positive sizes");
  if (!(r1 > 0.0 && r1 <= 1.0) || !(r2 > 0.0 && r2 <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "jordan_pair radii must lie in (0, 1]");
  }
  CMatrix t1 = kron(shift_matrix(d1), CMatrix::identity(d2));
  CMatrix t2 = kron(CMatrix::identity(d1), shift_matrix(d2));
  t1 *= r1;
  t2 *= r2;
  return make_tuple({std::move(t1), std::move(t2)});
}

CertifiedTuple product_triple(const OperatorTuple& pair, int j, int k, double tol) {
  if (pair.size() != 2) throw Error(ErrorKind::ArityMismatch, "product_triple needs a pair", 0.0, pair.size());
  if (j < 1 || k < 1) throw Error(ErrorKind::InvalidArgument, "exponents must be at least 1");
  const std::size_t d = pair.dim();
  const CMatrix t1j = matrix_power(pair[0], static_cast<unsigned>(j));
  const CMatrix t2k = matrix_power(pair[1], static_cast<unsigned>(k));
  const CMatrix id = CMatrix::identity(d);

  CertifiedTuple out;
  out.tuple = make_tuple({pair[0], pair[1], t1j * t2k}, pair.commute_tol(), pair.contract_tol());
  const CMatrix g[] = {id - t1j * t1j.adjoint(), t1j * (id - t2k * t2k.adjoint()) * t1j.adjoint()};
  try {
    out.cert = verify_pn(out.tuple, g, tol);
  } catch (const Error& err) {
    throw Error(ErrorKind::CertificateRejected, std::string("product certificate refused: ") + err.what(),
                err.value(), err.index());
  }
  return out;
}

CertifiedTuple bdhs_tuple(const OperatorTuple& pair, const CMatrix& tn, double tol) {
  std::vector<CMatrix> ops(pair.ops().begin(), pair.ops().end());
  ops.push_back(tn);
  CertifiedTuple out;
  out.tuple = make_tuple(std::move(ops), pair.commute_tol(), pair.contract_tol());
  out.cert = bdhs_certificate(out.tuple, tol);
  return out;
}

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

CMatrix gaussian_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

CMatrix scaled_to_norm(CMatrix m, double target) {
  const double n = operator_norm(m);
  if (n > 0.0) m *= target / n;
  return m;
}

}  // namespace

OperatorTuple random_candidate(std::uint64_t seed, std::size_t d, std::size_t n, double spectral_margin) {
  if (d == 0 || n == 0) throw Error(ErrorKind::InvalidArgument, "random_candidate needs d, n >= 1");
  if (!(spectral_margin > 0.0 && spectral_margin < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "spectral margin must lie in (0, 1)");
  }
  auto rng = seeded(seed, 0x72616e64);
  // N = Q L Q^* with L strictly lower triangular and Q unitary.
  CMatrix lower = gaussian_matrix(rng, d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r; c < d; ++c) lower(r, c) = 0.0;
  const CMatrix q = range_onb(gaussian_matrix(rng, d, d));
  CMatrix nil = q * lower * q.adjoint();
  nil = scaled_to_norm(std::move(nil), 0.5);
  const CMatrix nil2 = nil * nil;
  const CMatrix id = CMatrix::identity(d);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CMatrix> ops;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (1.0 - spectral_margin) * unit(rng);
    const cplx a = std::polar(radius, 2.0 * 3.14159265358979323846 * unit(rng));
    const cplx b(gauss(rng), gauss(rng));
    const cplx c(gauss(rng), gauss(rng));
    CMatrix t = id * a + nil * (0.5 * b) + nil2 * (0.25 * c);
    const double norm = operator_norm(t);
    if (norm > 1.0 - 1e-12) t *= (1.0 - 1e-12) / norm;
    ops.push_back(std::move(t));
  }
  return make_tuple(std::move(ops), 1e-9);
}

OperatorTuple random_szego_pair(std::uint64_t seed, std::size_t d1, std::size_t d2, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::InvalidArgument, "norm must lie in (0, 1)");
  auto rng = seeded(seed, 0x737a6567);
  const CMatrix a = scaled_to_norm(gaussian_matrix(rng, d1, d1), r);
  const CMatrix b = scaled_to_norm(gaussian_matrix(rng, d2, d2), r);
  return make_tuple({kron(a, CMatrix::identity(d2)), kron(CMatrix::identity(d1), b)});
}

}  // namespace polydil
