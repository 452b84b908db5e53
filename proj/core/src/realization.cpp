#include "polydil/realization.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "polydil/error.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

CMatrix Colligation::assemble() const {
  const std::size_t e = a.rows();
  const std::size_t f = d.rows();
  CMatrix u(e + f, e + f);
  u.set_block(0, 0, a);
  if (f > 0) {
    u.set_block(0, e, b);
    u.set_block(e, 0, c);
    u.set_block(e, e, d);
  }
  return u;
}

CMatrix block_e(std::span<const std::size_t> partition, std::span<const cplx> z) {
  if (partition.size() != z.size()) {
    throw Error(ErrorKind::PartitionMismatch, "E(z) needs one variable per block");
  }
  const std::size_t total = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
  CMatrix e(total, total);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (std::size_t r = 0; r < partition[i]; ++r) e(offset + r, offset + r) = z[i];
    offset += partition[i];
  }
  return e;
}

namespace {

struct SpanningSets {
  CMatrix domain;  // columns (D h, F_i T_i^* h)
  CMatrix image;   // columns (D T_n^* h, F_i h)
};

SpanningSets spanning_sets(const OperatorTuple& tuple, const PnCertificate& cert) {
  if (cert.f.size() + 1 != tuple.size()) throw Error(ErrorKind::DimensionMismatch, "certificate arity");
  const CMatrix defect_coords = adjoint_times(cert.defect_frame, cert.defect);
  const FrameMaps maps = iota_and_y(cert, tuple);
  const CMatrix top_domain[] = {defect_coords, maps.y};
  const CMatrix top_image[] = {defect_coords * tuple.last().adjoint(), maps.iota};
  return {vstack(top_domain), vstack(top_image)};
}

}  // namespace

double generating_identity_residual(const OperatorTuple& tuple, const PnCertificate& cert,
                                    const CMatrix& u) {
  const auto sets = spanning_sets(tuple, cert);
  const CMatrix diff = u * sets.domain - sets.image;
  double worst = 0.0;
  for (std::size_t j = 0; j < diff.cols(); ++j) worst = std::max(worst, diff.col(j).frobenius_norm());
  return worst;
}

TransferRealization build_generating_unitary(const OperatorTuple& tuple, const PnCertificate& cert,
                                             double tol, std::span<const std::size_t> basis_order) {
  const auto sets = spanning_sets(tuple, cert);
  const std::size_t ambient = sets.domain.rows();
  const std::size_t e = cert.defect_rank();

  TransferRealization out;
  out.isometry_gram_residual =
      (adjoint_times(sets.domain, sets.domain) - adjoint_times(sets.image, sets.image)).frobenius_norm();
  try {
    out.u = unitary_completion(sets.domain, sets.image, ambient, tol, basis_order);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::NotIsometric) {
      throw Error(ErrorKind::IsometryDefect, "generating map is not isometric", out.isometry_gram_residual);
    }
    throw;
  }
  out.span_rank = range_onb(sets.domain, tol).cols();
  out.generating_residual = generating_identity_residual(tuple, cert, out.u);
  out.unitarity_residual = unitarity_defect(out.u);

  const std::size_t f = ambient - e;
  out.blocks.a = out.u.block(0, 0, e, e);
  out.blocks.b = out.u.block(0, e, e, f);
  out.blocks.c = out.u.block(e, 0, f, e);
  out.blocks.d = out.u.block(e, e, f, f);
  out.blocks.partition = cert.partition();
  return out;
}

CMatrix transfer_eval(const Colligation& r, std::span<const cplx> z) {
  const CMatrix a_adj = r.a.adjoint();
  if (r.inner_dim() == 0) return a_adj;
  const CMatrix e = block_e(r.partition, z);
  const CMatrix resolvent = inv_resolvent(r.d.adjoint(), e);
  return a_adj + adjoint_times(r.c, e * resolvent * r.b.adjoint());
}

double schur_identity_residual(const Colligation& r, std::span<const cplx> z) {
  const CMatrix phi = transfer_eval(r, z);
  const CMatrix lhs = CMatrix::identity(phi.cols()) - adjoint_times(phi, phi);
  if (r.inner_dim() == 0) return operator_norm(lhs);
  const CMatrix e = block_e(r.partition, z);
  const CMatrix x = inv_resolvent(r.d.adjoint(), e);
  const CMatrix middle = CMatrix::identity(e.rows()) - adjoint_times(e, e);
  const CMatrix xb = x * r.b.adjoint();
  const CMatrix rhs = adjoint_times(xb, middle * xb);
  return operator_norm(lhs - rhs);
}

std::size_t torus_point_count(std::size_t vars, std::size_t grid) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < vars; ++i) count *= grid;
  return count;
}

std::vector<cplx> torus_point(std::size_t vars, std::size_t grid, std::size_t l) {
  std::vector<cplx> z(vars);
  for (std::size_t i = vars; i-- > 0;) {
    const std::size_t j = l % grid;
    l /= grid;
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
    z[i] = std::polar(1.0, theta);
  }
  return z;
}

InnerReport inner_check(const Colligation& r, std::size_t grid) {
  InnerReport rep;
  rep.total_points = torus_point_count(r.vars(), grid);
  for (std::size_t l = 0; l < rep.total_points; ++l) {
    const auto z = torus_point(r.vars(), grid, l);
    try {
      const CMatrix phi = transfer_eval(r, z);
      rep.max_deviation = std::max(rep.max_deviation, unitarity_defect(phi));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularResolvent) throw;
      ++rep.singular_points;
    }
  }
  return rep;
}

CnuDecomposition cnu_decomposition(const CMatrix& a, double tol) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "cnu_decomposition needs a square matrix");
  const std::size_t n = a.rows();
  CnuDecomposition out;
  if (n == 0) {
    out.h0 = out.h1 = out.w = out.e = CMatrix(0, 0);
    return out;
  }
  const double norm = operator_norm(a);
  if (norm > 1.0 + tol) throw Error(ErrorKind::NotContraction, "A is not a contraction", norm);

  // H0 is the common kernel of the psd defects I - A^{*m} A^m and I - A^m A^{*m}, m = 1..n.
  const CMatrix id = CMatrix::identity(n);
  CMatrix sum(n, n);
  CMatrix p = id;
  for (std::size_t m = 1; m <= n; ++m) {
    p = p * a;
    sum += id - adjoint_times(p, p);
    sum += id - p * p.adjoint();
  }
  CMatrix sym = sum + sum.adjoint();
  sym *= 0.5;
  const auto eig = herm_eig(sym, 1e-8);
  const double thresh = tol * std::max(1.0, std::abs(eig.eigenvalues.back()));
  std::vector<CMatrix> kernel;
  for (std::size_t k = 0; k < n; ++k)
    if (eig.eigenvalues[k] <= thresh) kernel.push_back(eig.eigenvectors.col(k));

  out.h0 = kernel.empty() ? CMatrix(n, 0) : hstack(kernel);
  out.h1 = orthonormal_complement(out.h0);
  out.w = adjoint_times(out.h0, a * out.h0);
  out.e = adjoint_times(out.h1, a * out.h1);
  out.off_diagonal = operator_norm(adjoint_times(out.h0, a * out.h1)) +
                     operator_norm(adjoint_times(out.h1, a * out.h0));
  out.w_unitarity = out.w.rows() == 0 ? 0.0 : unitarity_defect(out.w);
  return out;
}

SymbolSeries phi_taylor(const Colligation& r, int cap) {
  const std::size_t vars = r.vars();
  const std::size_t e = r.outer_dim();
  SymbolSeries s(vars, cap, e, e);
  s.coeffs[0] = r.a.adjoint();
  const std::size_t f = r.inner_dim();
  if (f == 0) return s;

  std::vector<std::size_t> offsets(vars + 1, 0);
  for (std::size_t i = 0; i < vars; ++i) offsets[i + 1] = offsets[i] + r.partition[i];
  auto project = [&](std::size_t i, const CMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t row = offsets[i]; row < offsets[i + 1]; ++row)
      for (std::size_t c = 0; c < m.cols(); ++c) out(row, c) = m(row, c);
    return out;
  };

  const CMatrix b_adj = r.b.adjoint();
  const CMatrix d_adj = r.d.adjoint();
  // G(z) = E(z)(I - D^* E(z))^{-1} B^* satisfies G = E B^* + E D^* G.
  std::vector<CMatrix> g(s.box.count(), CMatrix(f, e));
  for (std::size_t l = 1; l < s.box.count(); ++l) {
    auto k = s.box.multi(l);
    int total = 0;
    for (int ki : k) total += ki;
    CMatrix acc(f, e);
    for (std::size_t i = 0; i < vars; ++i) {
      if (k[i] == 0) continue;
      k[i] -= 1;
      const std::size_t prev = s.box.linear(k);
      k[i] += 1;
      if (total == 1) acc += project(i, b_adj);
      if (prev != 0) acc += project(i, d_adj * g[prev]);
    }
    g[l] = std::move(acc);
    s.coeffs[l] = adjoint_times(r.c, g[l]);
  }
  return s;
}

}  // namespace polydil
