#include "polydil/dilation.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "polydil/error.hpp"
#include "polydil/hardy.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

void RunConfig::validate() const {
  const double tols[] = {tol.eig, tol.psd_clamp, tol.root, tol.cert, tol.vn, tol.commute, tol.contract, exact_tol};
  for (double t : tols) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "degree cap must be at least 1");
  if (grid < 4) throw Error(ErrorKind::InvalidArgument, "torus grid must be at least 4");
  if (variety_grid < 1) throw Error(ErrorKind::InvalidArgument, "variety grid must be positive");
  if (!(radius > 0.0) || radius > 1.0) throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, 1]");
}

const IdentityCheck* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

int effective_cap(const OperatorTuple& tuple, const RunConfig& config) {
  int cap = config.cap;
  if (config.auto_cap) {
    const auto order = nilpotency_order(hat(tuple, tuple.size() - 1));
    if (order > 0) cap = std::max(cap, static_cast<int>(order));
  }
  return cap;
}

namespace {

double vec_norm(const CMatrix& v) { return v.frobenius_norm(); }

// Interior sample uniform in the disc of radius 0.99 per coordinate.
std::vector<cplx> random_interior_point(std::mt19937_64& rng, std::size_t vars) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z(vars);
  for (auto& zi : z) {
    const double r = 0.99 * std::sqrt(u(rng));
    zi = std::polar(r, 2.0 * std::numbers::pi * u(rng));
  }
  return z;
}

struct Workspace {
  OperatorTuple head;
  std::size_t vars;
  std::size_t dim;
  CMatrix lead;  // frame^* D
  FrameMaps maps;
  CMatrix iota_adj;
};

}  // namespace

double lifting_residual(const OperatorTuple& tuple, const PnCertificate& cert,
                        const Colligation& blocks, int cap) {
  const OperatorTuple head = hat(tuple, tuple.size() - 1);
  const auto pi = canonical_isometry(head, cert.defect, cert.defect_frame, cap);
  const SymbolSeries phi = phi_taylor(blocks, cap);
  double worst = 0.0;
  for (std::size_t j = 0; j < tuple.dim(); ++j) {
    const CMatrix h = CMatrix::basis_vector(tuple.dim(), j);
    const HardyElement lhs = pi.apply(tuple.last().adjoint() * h);
    const HardyElement rhs = mult_symbol_adjoint(phi, pi.apply(h));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

VerificationReport verify_dilation(const OperatorTuple& tuple, const PnCertificate& cert,
                                   const TransferRealization& realization, const RunConfig& config) {
  config.validate();
  VerificationReport rep;
  const int cap = effective_cap(tuple, config);
  rep.cap = cap;
  rep.defect_rank = cert.defect_rank();
  rep.partition = cert.partition();
  const double floor = config.exact_tol;

  Workspace ws{hat(tuple, tuple.size() - 1), tuple.size() - 1, tuple.dim(),
               adjoint_times(cert.defect_frame, cert.defect), iota_and_y(cert, tuple), {}};
  ws.iota_adj = ws.maps.iota.adjoint();
  const Colligation& blk = realization.blocks;
  const std::size_t e = cert.defect_rank();
  const std::size_t fdim = blk.inner_dim();

  const auto pi = canonical_isometry(ws.head, cert.defect, cert.defect_frame, cap);
  const auto pi_next = canonical_isometry(ws.head, cert.defect, cert.defect_frame, cap + 1);
  const auto jmap = embed_j(ws.head, cap);
  const SymbolSeries phi = phi_taylor(blk, cap);

  double rho = 0.0;
  for (const auto& t : ws.head.ops()) rho = std::max(rho, spectral_radius_estimate(t));

  auto add = [&](std::string name, double residual, double bound, double geom = 0.0) {
    IdentityCheck c{std::move(name), residual, bound, geom, residual <= bound};
    rep.checks.push_back(std::move(c));
  };

  add("generating_identity", realization.generating_residual, 1e-9);
  add("unitarity", realization.unitarity_residual, 1e-10);

  // Pi isometry and the lifting identity, per standard basis vector.
  {
    double defect = 0.0;
    double defect_bound = 0.0;
    double lift = 0.0;
    double lift_bound = 0.0;
    double geom = 0.0;
    std::vector<double> z_res(ws.vars, 0.0);
    for (std::size_t j = 0; j < ws.dim; ++j) {
      const CMatrix h = CMatrix::basis_vector(ws.dim, j);
      const double tail = power_tail(ws.head, h, cap);
      geom = std::max(geom, geom_tail(rho, cap, 1.0, ws.dim));
      defect = std::max(defect, std::abs(isometry_defect(pi, h)));
      defect_bound = std::max(defect_bound, tail * tail);

      const HardyElement pih = pi.apply(h);
      const HardyElement lhs = pi.apply(tuple.last().adjoint() * h);
      const HardyElement rhs = mult_symbol_adjoint(phi, pih);
      lift = std::max(lift, (lhs - rhs).norm());
      lift_bound = std::max(lift_bound, tail);

      const HardyElement pih_next = pi_next.apply(h);
      for (std::size_t i = 0; i < ws.vars; ++i) {
        const HardyElement left = pi.apply(ws.head[i].adjoint() * h);
        const HardyElement shifted = mult_z_adjoint(i, pih_next);
        double worst = 0.0;
        for (std::size_t l = 0; l < left.box().count(); ++l) {
          const auto k = left.box().multi(l);
          const CMatrix diff = left.coefficient(k) - shifted.coefficient(k);
          worst = std::max(worst, diff.frobenius_norm());
        }
        z_res[i] = std::max(z_res[i], worst);
      }
    }
    add("pi_isometry_defect", defect, defect_bound + floor, geom);
    for (std::size_t i = 0; i < ws.vars; ++i) add("pi_intertwines_z" + std::to_string(i + 1), z_res[i], floor);
    add("lifting", lift, lift_bound + 1e-9, geom);
  }

  // (I (x) D) J = Pi.
  {
    double worst = 0.0;
    for (std::size_t j = 0; j < ws.dim; ++j) {
      const CMatrix h = CMatrix::basis_vector(ws.dim, j);
      const HardyElement diff = apply_coefficientwise(ws.lead, jmap.apply(h)) - pi.apply(h);
      worst = std::max(worst, diff.norm());
    }
    add("id4", worst, floor);
  }

  // Lemma identities over monomials z^p (x) xi inside the cap.
  {
    const IndexBox& box = pi.box();
    double id5 = 0.0;
    double id6 = 0.0;
    double l32 = 0.0;
    double l33 = 0.0;
    double power_norm = 1.0;
    const CMatrix y_adj = ws.maps.y.adjoint();
    const CMatrix d_adj = fdim > 0 ? blk.d.adjoint() : CMatrix(0, 0);
    const CMatrix c_adj = fdim > 0 ? blk.c.adjoint() : CMatrix(e, 0);
    const CMatrix defect_adj = ws.lead.adjoint();
    for (std::size_t l = 0; l < box.count(); ++l) {
      const auto p = box.multi(l);
      const CMatrix& tp = pi.power(l);
      power_norm = std::max(power_norm, operator_norm(tp));
      bool interior = true;
      for (int pi_ : p)
        if (pi_ >= cap) interior = false;

      for (std::size_t m = 0; m < e; ++m) {
        const CMatrix mv = CMatrix::basis_vector(e, m);
        const CMatrix lhs = pi.adjoint(HardyElement::monomial(ws.vars, cap, p, mv));
        l32 = std::max(l32, vec_norm(lhs - tp * defect_adj * mv));
      }
      for (std::size_t x = 0; x < fdim; ++x) {
        const CMatrix xi = CMatrix::basis_vector(fdim, x);
        const HardyElement mono = HardyElement::monomial(ws.vars, cap, p, xi);
        const CMatrix lhs6 = jmap.adjoint(apply_coefficientwise(ws.iota_adj, mono));
        id6 = std::max(id6, vec_norm(lhs6 - tp * ws.iota_adj * xi));
        if (!interior) continue;
        const CMatrix lhs5 = jmap.adjoint(apply_coefficientwise(ws.iota_adj, z_op(mono, blk.partition)));
        id5 = std::max(id5, vec_norm(lhs5 - tp * y_adj * xi));

        const HardyElement shifted =
            z_op(HardyElement::monomial(ws.vars, cap, p, d_adj * xi), blk.partition);
        const CMatrix lhs3 = jmap.adjoint(apply_coefficientwise(ws.iota_adj, mono - shifted));
        const CMatrix rhs3 = pi.adjoint(HardyElement::monomial(ws.vars, cap, p, c_adj * xi));
        l33 = std::max(l33, vec_norm(lhs3 - rhs3));
      }
    }
    add("lemma_id5", id5, floor);
    add("lemma_id6", id6, floor);
    add("lemma_pi_adjoint_monomial", l32, floor);
    const double gen_slack = realization.generating_residual * power_norm * std::sqrt(static_cast<double>(ws.dim));
    add("lemma_resolvent", l33, floor + 2.0 * gen_slack);
  }

  // Conclusion of the weak-limit lemma: J^*(I (x) iota^*) Z (1 (x) B^* m) = Pi^* M_{Phi - A^*}(1 (x) m).
  {
    SymbolSeries tilde = phi;
    tilde.coeffs[0] = CMatrix(e, e);
    double tail_norm = 0.0;
    for (const auto& t : ws.head.ops()) tail_norm += operator_norm(matrix_power(t, static_cast<unsigned>(cap + 1)));
    double worst = 0.0;
    for (std::size_t m = 0; m < e; ++m) {
      const CMatrix mv = CMatrix::basis_vector(e, m);
      CMatrix lhs(ws.dim, 1);
      if (fdim > 0) {
        const HardyElement bm = HardyElement::constant(ws.vars, cap, blk.b.adjoint() * mv);
        lhs = jmap.adjoint(apply_coefficientwise(ws.iota_adj, z_op(bm, blk.partition)));
      }
      const CMatrix rhs = pi.adjoint(mult_symbol(tilde, HardyElement::constant(ws.vars, cap, mv)));
      worst = std::max(worst, vec_norm(lhs - rhs));
    }
    const double gen_slack = realization.generating_residual * std::sqrt(static_cast<double>(ws.dim));
    add("lemma_weak_limit", worst, 2.0 * tail_norm + floor + 2.0 * gen_slack);
  }

  // Schur identity at random interior points.
  {
    std::mt19937_64 rng(config.seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < config.schur_samples; ++s) {
      worst = std::max(worst, schur_identity_residual(blk, random_interior_point(rng, ws.vars)));
    }
    add("schur_identity", worst, 1e-9);
  }

  // Innerness on the torus grid; singular points must stay below 1% of the grid.
  {
    const InnerReport inner = inner_check(blk, config.grid);
    add("inner", inner.max_deviation, 1e-7);
    const double frac = inner.total_points == 0
                            ? 0.0
                            : static_cast<double>(inner.singular_points) / static_cast<double>(inner.total_points);
    add("inner_singular_fraction", frac, 0.01);
  }

  rep.all_passed = true;
  for (const auto& c : rep.checks) rep.all_passed = rep.all_passed && c.passed;
  return rep;
}

}  // namespace polydil
