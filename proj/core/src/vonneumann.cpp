#include "polydil/vonneumann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polydil/error.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

MultiPoly MultiPoly::constant(std::size_t vars, cplx c) {
  MultiPoly p(vars);
  p.add_term(MultiIndex(vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t vars, std::size_t i) {
  if (i >= vars) throw Error(ErrorKind::IndexOutOfRange, "variable index", 0.0, i);
  MultiPoly p(vars);
  MultiIndex k(vars, 0);
  k[i] = 1;
  p.add_term(k, 1.0);
  return p;
}

int MultiPoly::total_degree() const {
  int best = 0;
  for (const auto& [k, c] : terms_) {
    int t = 0;
    for (int ki : k) t += ki;
    best = std::max(best, t);
  }
  return best;
}

int MultiPoly::degree_in(std::size_t i) const {
  int best = 0;
  for (const auto& [k, c] : terms_) best = std::max(best, k[i]);
  return best;
}

void MultiPoly::add_term(const MultiIndex& k, cplx c) {
  if (k.size() != vars_) throw Error(ErrorKind::ArityMismatch, "monomial arity", 0.0, k.size(), vars_);
  for (int ki : k)
    if (ki < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx MultiPoly::operator()(std::span<const cplx> z) const {
  if (z.size() != vars_) throw Error(ErrorKind::ArityMismatch, "point arity", 0.0, z.size(), vars_);
  cplx sum = 0.0;
  for (const auto& [k, c] : terms_) {
    cplx term = c;
    for (std::size_t i = 0; i < vars_; ++i)
      for (int e = 0; e < k[i]; ++e) term *= z[i];
    sum += term;
  }
  return sum;
}

namespace {

std::vector<CMatrix> powers_of(const CMatrix& m, int top) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(top) + 1);
  out.push_back(CMatrix::identity(m.rows()));
  for (int e = 1; e <= top; ++e) out.push_back(out.back() * m);
  return out;
}

}  // namespace

CMatrix eval_poly_tuple(const MultiPoly& p, const OperatorTuple& tuple) {
  if (p.vars() != tuple.size()) {
    throw Error(ErrorKind::ArityMismatch, "polynomial arity differs from tuple size", 0.0, p.vars(),
                tuple.size());
  }
  const std::size_t d = tuple.dim();
  std::vector<std::vector<CMatrix>> pw;
  for (std::size_t i = 0; i < tuple.size(); ++i) pw.push_back(powers_of(tuple[i], p.degree_in(i)));
  CMatrix out(d, d);
  for (const auto& [k, c] : p.terms()) {
    CMatrix term = CMatrix::identity(d);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] > 0) term = term * pw[i][static_cast<std::size_t>(k[i])];
    term *= c;
    out += term;
  }
  return out;
}

std::vector<cplx> last_variable_coeffs(const MultiPoly& p, std::span<const cplx> zeta) {
  if (p.vars() == 0 || zeta.size() + 1 != p.vars()) {
    throw Error(ErrorKind::ArityMismatch, "need one scalar per leading variable", 0.0, zeta.size(),
                p.vars());
  }
  const std::size_t last = p.vars() - 1;
  std::vector<cplx> q(static_cast<std::size_t>(p.degree_in(last)) + 1, 0.0);
  for (const auto& [k, c] : p.terms()) {
    cplx term = c;
    for (std::size_t i = 0; i < last; ++i)
      for (int e = 0; e < k[i]; ++e) term *= zeta[i];
    q[static_cast<std::size_t>(k[last])] += term;
  }
  return q;
}

CMatrix eval_poly_last_matrix(const MultiPoly& p, std::span<const cplx> zeta, const CMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "matrix argument must be square");
  const auto q = last_variable_coeffs(p, zeta);
  // Horner in the matrix variable.
  CMatrix acc(m.rows(), m.cols());
  for (std::size_t j = q.size(); j-- > 0;) {
    acc = acc * m;
    for (std::size_t r = 0; r < m.rows(); ++r) acc(r, r) += q[j];
  }
  return acc;
}

double circle_max(std::span<const cplx> q_in) {
  std::vector<cplx> q(q_in.begin(), q_in.end());
  while (!q.empty() && q.back() == cplx{}) q.pop_back();
  if (q.empty()) return 0.0;
  if (q.size() == 1) return std::abs(q[0]);

  double best = 0.0;
  auto probe = [&](cplx lambda) { best = std::max(best, std::abs(poly_eval(q, lambda))); };
  static const std::vector<cplx> samples = [] {
    std::vector<cplx> pts(256);
    for (std::size_t s = 0; s < pts.size(); ++s)
      pts[s] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(s) / 256.0);
    return pts;
  }();
  for (const cplx& lambda : samples) probe(lambda);

  // d/dtheta |q(e^{i theta})|^2 = 0, times lambda^m, is a degree-2m polynomial.
  const std::size_t m = q.size() - 1;
  std::vector<cplx> crit(2 * m + 1, 0.0);
  for (std::size_t j = 0; j <= m; ++j)
    for (std::size_t l = 0; l <= m; ++l)
      if (j != l) crit[m + j - l] += (static_cast<double>(j) - static_cast<double>(l)) * q[j] * std::conj(q[l]);
  double scale = 0.0;
  for (const auto& c : crit) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return best;
  while (!crit.empty() && std::abs(crit.back()) <= 1e-14 * scale) crit.pop_back();
  if (crit.size() < 2) return best;
  for (const auto& root : poly_roots(crit)) {
    const double r = std::abs(root);
    if (r > 0.0) probe(root / r);
  }
  return best;
}

PhiSplit split_phi(const TransferRealization& r, double tol) {
  const Colligation& blk = r.blocks;
  const CnuDecomposition cnu = cnu_decomposition(blk.a.adjoint(), tol);
  PhiSplit s;
  s.h0 = cnu.h0;
  s.h1 = cnu.h1;
  s.h0_dim = cnu.h0.cols();
  s.decomposition_off_diagonal = cnu.off_diagonal;
  s.w_adjoint = cnu.w;
  s.phi1.a = adjoint_times(s.h1, blk.a * s.h1);
  s.phi1.partition = blk.partition;
  if (blk.inner_dim() > 0) {
    s.phi1.b = adjoint_times(s.h1, blk.b);
    s.phi1.c = blk.c * s.h1;
    s.phi1.d = blk.d;
  } else {
    s.phi1.b = CMatrix(s.h1.cols(), 0);
    s.phi1.c = CMatrix(0, s.h1.cols());
    s.phi1.d = CMatrix(0, 0);
  }
  return s;
}

double split_block_residual(const PhiSplit& s, const Colligation& r, std::span<const cplx> z) {
  if (s.h0.cols() == 0 || s.h1.cols() == 0) return 0.0;
  const CMatrix phi = transfer_eval(r, z);
  return operator_norm(adjoint_times(s.h0, phi * s.h1)) + operator_norm(adjoint_times(s.h1, phi * s.h0));
}

TorusGrid make_torus_grid(const Colligation& r, std::size_t grid) {
  TorusGrid g;
  g.vars = r.vars();
  g.grid = grid;
  const std::size_t count = torus_point_count(g.vars, grid);
  g.points.reserve(count);
  g.phi.reserve(count);
  for (std::size_t l = 0; l < count; ++l) {
    g.points.push_back(torus_point(g.vars, grid, l));
    try {
      g.phi.emplace_back(transfer_eval(r, g.points.back()));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularResolvent) throw;
      g.phi.emplace_back(std::nullopt);
      ++g.singular_points;
    }
  }
  return g;
}

double torus_sup(const MultiPoly& p, const TorusGrid& g) {
  double best = 0.0;
  for (std::size_t l = 0; l < g.points.size(); ++l) {
    if (!g.phi[l]) continue;
    best = std::max(best, operator_norm(eval_poly_last_matrix(p, g.points[l], *g.phi[l])));
  }
  return best;
}

double torus_sup(const MultiPoly& p, const Colligation& r, std::size_t grid) {
  return torus_sup(p, make_torus_grid(r, grid));
}

double polydisc_sup(const MultiPoly& p, std::size_t vars, std::size_t grid) {
  double best = 0.0;
  const std::size_t count = torus_point_count(vars, grid);
  for (std::size_t l = 0; l < count; ++l) {
    const auto zeta = torus_point(vars, grid, l);
    best = std::max(best, circle_max(last_variable_coeffs(p, zeta)));
  }
  return best;
}

namespace {

std::vector<double> axis_points(std::size_t grid, double radius) {
  std::vector<double> xs;
  if (grid == 1) return {0.0};
  for (std::size_t a = 0; a < grid; ++a)
    xs.push_back(-radius + 2.0 * radius * static_cast<double>(a) / static_cast<double>(grid - 1));
  return xs;
}

std::vector<cplx> disc_lattice(std::size_t grid, double radius) {
  const auto xs = axis_points(grid, radius);
  std::vector<cplx> pts;
  for (double x : xs)
    for (double y : xs)
      if (x * x + y * y <= radius * radius * (1.0 + 1e-12)) pts.emplace_back(x, y);
  return pts;
}

void add_fiber(VarietySample& out, const std::vector<cplx>& z, const CMatrix& phi, VarietyComponent tag,
               bool boundary, double root_tol) {
  const std::size_t e = phi.rows();
  if (e == 0) return;
  const double bound = root_tol * std::pow(1.0 + operator_norm(phi), static_cast<double>(e));
  const CMatrix id = CMatrix::identity(e);
  for (const cplx lambda : eigenvalues_general(phi)) {
    VarietyPoint pt;
    pt.z = z;
    pt.lambda = lambda;
    pt.component = tag;
    pt.boundary = boundary;
    CMatrix shifted = id * lambda;
    shifted -= phi;
    pt.residual = std::abs(det(shifted));
    pt.bound = bound;
    out.max_residual = std::max(out.max_residual, pt.residual);
    if (pt.residual > pt.bound) out.residuals_ok = false;
    if (!boundary && std::abs(lambda) >= 1.0) out.interior_inside_disc = false;
    out.points.push_back(std::move(pt));
  }
}

}  // namespace

VarietySample variety_sample(const TransferRealization& r, std::size_t grid, double radius,
                             std::size_t torus_grid, double root_tol, double split_tol) {
  if (!(radius > 0.0) || radius > 1.0) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, 1]");
  const PhiSplit split = split_phi(r, split_tol);
  const std::size_t vars = r.blocks.vars();
  VarietySample out;
  out.interior_grid = grid;
  out.torus_grid = torus_grid;
  out.radius = radius;
  out.h0_dim = split.h0_dim;

  auto visit = [&](const std::vector<cplx>& z, bool boundary) {
    add_fiber(out, z, split.w_adjoint, VarietyComponent::V0, boundary, root_tol);
    if (split.phi1.outer_dim() == 0) return;
    try {
      add_fiber(out, z, transfer_eval(split.phi1, z), VarietyComponent::V1, boundary, root_tol);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularResolvent) throw;
      ++out.singular_points;
    }
  };

  const auto lattice = disc_lattice(grid, radius);
  std::size_t count = 1;
  for (std::size_t i = 0; i < vars; ++i) count *= lattice.size();
  std::vector<cplx> z(vars);
  for (std::size_t l = 0; l < count; ++l) {
    std::size_t rest = l;
    for (std::size_t i = vars; i-- > 0;) {
      z[i] = lattice[rest % lattice.size()];
      rest /= lattice.size();
    }
    visit(z, false);
  }
  if (torus_grid > 0) {
    const std::size_t tcount = torus_point_count(vars, torus_grid);
    for (std::size_t l = 0; l < tcount; ++l) visit(torus_point(vars, torus_grid, l), true);
  }
  return out;
}

VNContext make_vn_context(const OperatorTuple& tuple, const PnCertificate& cert, const RunConfig& config) {
  config.validate();
  VNContext ctx;
  ctx.realization = build_generating_unitary(tuple, cert);
  ctx.split = split_phi(ctx.realization);
  ctx.torus = make_torus_grid(ctx.realization.blocks, config.grid);
  return ctx;
}

VNReport vn_check(const MultiPoly& p, const OperatorTuple& tuple, const VNContext& ctx,
                  const RunConfig& config) {
  VNReport rep;
  rep.lhs = operator_norm(eval_poly_tuple(p, tuple));
  rep.rhs = torus_sup(p, ctx.torus);
  rep.margin = rep.rhs - rep.lhs;
  rep.polydisc_rhs = polydisc_sup(p, ctx.torus.vars, ctx.torus.grid);
  rep.grid = ctx.torus.grid;
  rep.singular_points = ctx.torus.singular_points;
  rep.h0_dim = ctx.split.h0_dim;
  rep.passed = rep.margin >= -config.tol.vn;
  rep.sharper_than_polydisc = rep.rhs <= rep.polydisc_rhs + 1e-9;
  return rep;
}

VNReport vn_check(const MultiPoly& p, const OperatorTuple& tuple, const PnCertificate& cert,
                  const RunConfig& config) {
  return vn_check(p, tuple, make_vn_context(tuple, cert, config), config);
}

bool pure_tn_refinement(const OperatorTuple& tuple, const PhiSplit& split, double tol) {
  if (spectral_radius_estimate(tuple.last()) >= 1.0 - tol) return true;
  return split.h0_dim == 0;
}

bool pure_tn_refinement(const OperatorTuple& tuple, const TransferRealization& r, double tol) {
  return pure_tn_refinement(tuple, split_phi(r, tol), tol);
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t vars, int degree) {
  std::bernoulli_distribution keep(0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MultiPoly p(vars);
  const IndexBox box(vars, degree);
  for (std::size_t l = 0; l < box.count(); ++l) {
    const auto k = box.multi(l);
    int total = 0;
    for (int ki : k) total += ki;
    if (total > degree) continue;
    if (!keep(rng)) continue;
    const cplx c(gauss(rng), gauss(rng));
    p.add_term(k, c);
  }
  if (p.is_zero()) p.add_term(MultiIndex(vars, 0), 1.0);
  return p;
}

}  // namespace polydil
