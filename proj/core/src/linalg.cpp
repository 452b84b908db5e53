#include "polydil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "polydil/error.hpp"

namespace polydil {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxJacobiSweeps = 100;

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The rotation is the
// phase diag(1, e^{-i phi}) that makes a(p,q) real, followed by the real
// symmetric rotation with t = tan(theta).
void jacobi_rotate(CMatrix& a, CMatrix* v, std::size_t p, std::size_t q, double skip) {
  const cplx apq = a(p, q);
  const double r = std::sqrt(std::norm(apq));
  if (r <= skip) return;
  const cplx phase = std::conj(apq) / r;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const cplx gpp = c;
  const cplx gpq = s;
  const cplx gqp = -s * phase;
  const cplx gqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  if (v == nullptr) return;
  for (std::size_t k = 0; k < v->rows(); ++k) {
    const cplx vkp = (*v)(k, p);
    const cplx vkq = (*v)(k, q);
    (*v)(k, p) = vkp * gpp + vkq * gqp;
    (*v)(k, q) = vkp * gpq + vkq * gqq;
  }
}

// Diagonalizes the Hermitian `work` in place, accumulating rotations into
// `vecs` when given.
void jacobi_diagonalize(CMatrix& work, CMatrix* vecs, double scale) {
  const std::size_t n = work.rows();
  const double target = kEps * std::max(scale, std::numeric_limits<double>::min());
  double off = off_diagonal_norm(work);
  int sweep = 0;
  while (off > target) {
    if (++sweep > kMaxJacobiSweeps) {
      throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted", off);
    }
    // Entries below target / n cannot keep the off-diagonal norm above target.
    const double skip = target / static_cast<double>(n);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(work, vecs, p, q, skip);
    const double next = off_diagonal_norm(work);
    // Stagnation at roundoff level counts as converged.
    if (next >= off && next <= 1e3 * target) break;
    off = next;
  }
}

// Largest eigenvalue of a Hermitian matrix, no eigenvectors.
double top_eigenvalue(const CMatrix& a) {
  CMatrix work = a + a.adjoint();
  work *= 0.5;
  jacobi_diagonalize(work, nullptr, a.frobenius_norm());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < work.rows(); ++k) top = std::max(top, work(k, k).real());
  return top;
}

}  // namespace

HermEig herm_eig(const CMatrix& a, double tol) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "herm_eig needs a square matrix");
  if (!a.all_finite()) throw Error(ErrorKind::InvalidArgument, "herm_eig: non-finite entries");
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  const double asym = (a - a.adjoint()).frobenius_norm();
  if (asym > tol * std::max(1.0, scale)) {
    throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance", asym);
  }

  CMatrix work = a + a.adjoint();
  work *= 0.5;
  CMatrix vecs = CMatrix::identity(n);
  jacobi_diagonalize(work, &vecs, scale);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i).real() < work(j, j).real();
  });
  HermEig out;
  out.eigenvalues.reserve(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(work(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = vecs(r, order[k]);
  }
  return out;
}

double min_eigenvalue(const CMatrix& hermitian, double tol) {
  if (hermitian.rows() == 0) return 0.0;
  return herm_eig(hermitian, tol).eigenvalues.front();
}

double operator_norm(const CMatrix& a) {
  if (a.empty()) return 0.0;
  const double scale = a.max_abs();
  if (scale == 0.0) return 0.0;
  // Scale to unit size so tiny residual matrices keep their relative accuracy.
  const CMatrix b = (1.0 / scale) * a;
  const CMatrix gram = b.rows() < b.cols() ? b * b.adjoint() : adjoint_times(b, b);
  return scale * std::sqrt(std::max(0.0, top_eigenvalue(gram)));
}

double hermitian_defect(const CMatrix& a) { return operator_norm(a - a.adjoint()); }

double unitarity_defect(const CMatrix& a) {
  return operator_norm(adjoint_times(a, a) - CMatrix::identity(a.cols()));
}

CMatrix psd_sqrt(const CMatrix& a, double tol) {
  const auto eig = herm_eig(a, std::max(tol, 1e-10));
  const std::size_t n = a.rows();
  double top = 0.0;
  for (double l : eig.eigenvalues) top = std::max(top, std::abs(l));
  const double floor = tol * std::max(1.0, top);
  // Eigenvalues at roundoff level are treated as exact zeros.
  const double noise = 64.0 * kEps * std::max(1.0, top);
  CMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -floor) {
      throw Error(ErrorKind::NotPsd, "eigenvalue below -tol", lambda, static_cast<std::ptrdiff_t>(k));
    }
    const double root = lambda <= noise ? 0.0 : std::sqrt(lambda);
    for (std::size_t r = 0; r < n; ++r) scaled(r, k) *= root;
  }
  CMatrix out = scaled * eig.eigenvectors.adjoint();
  CMatrix sym = out + out.adjoint();
  sym *= 0.5;
  return sym;
}

CMatrix kernel_basis(const CMatrix& a, double tol) {
  const std::size_t n = a.cols();
  if (n == 0) return CMatrix(0, 0);
  if (a.rows() == 0) return CMatrix::identity(n);
  const double norm = operator_norm(a);
  const double thresh = tol * std::max(1.0, norm);
  const auto eig = herm_eig(adjoint_times(a, a), 1e-8);
  std::vector<CMatrix> cols;
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] <= thresh * thresh) cols.push_back(eig.eigenvectors.col(k));
  }
  if (cols.empty()) return CMatrix(n, 0);
  return hstack(cols);
}

CMatrix range_onb(const CMatrix& vectors, double tol) {
  const std::size_t rows = vectors.rows();
  const std::size_t m = vectors.cols();
  std::vector<CMatrix> work;
  work.reserve(m);
  double scale = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    work.push_back(vectors.col(j));
    scale = std::max(scale, work.back().frobenius_norm());
  }
  std::vector<CMatrix> basis;
  std::vector<bool> used(m, false);
  while (basis.size() < rows) {
    std::size_t best = m;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double nj = work[j].frobenius_norm();
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best == m || best_norm <= tol * scale) break;
    used[best] = true;
    CMatrix q = work[best];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) q -= inner(b, q) * b;
    }
    const double qn = q.frobenius_norm();
    if (qn <= tol * scale) continue;
    q *= 1.0 / qn;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      for (int pass = 0; pass < 2; ++pass) work[j] -= inner(q, work[j]) * q;
    }
    basis.push_back(std::move(q));
  }
  if (basis.empty()) return CMatrix(rows, 0);
  return hstack(basis);
}

CMatrix orthonormal_complement(const CMatrix& frame, std::span<const std::size_t> basis_order) {
  const std::size_t n = frame.rows();
  std::vector<std::size_t> order(basis_order.begin(), basis_order.end());
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  if (order.size() != n) throw Error(ErrorKind::DimensionMismatch, "basis order length");

  std::vector<CMatrix> basis;
  for (std::size_t j = 0; j < frame.cols(); ++j) basis.push_back(frame.col(j));
  std::vector<CMatrix> added;

  auto residual_of = [&](std::size_t k) {
    CMatrix v = CMatrix::basis_vector(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= inner(b, v) * b;
    }
    return v;
  };
  auto accept = [&](CMatrix v) {
    v *= 1.0 / v.frobenius_norm();
    basis.push_back(v);
    added.push_back(std::move(v));
  };

  // Index-order pass with a conditioning threshold, then a pivoted fill for
  // whatever the first pass could not place.
  constexpr double kAcceptThreshold = 0.1;
  for (std::size_t k : order) {
    if (basis.size() >= n) break;
    CMatrix v = residual_of(k);
    if (v.frobenius_norm() > kAcceptThreshold) accept(std::move(v));
  }
  while (basis.size() < n) {
    double best = -1.0;
    CMatrix best_v;
    for (std::size_t k : order) {
      CMatrix v = residual_of(k);
      const double nv = v.frobenius_norm();
      if (nv > best) {
        best = nv;
        best_v = std::move(v);
      }
    }
    if (best <= 1e-8) break;
    accept(std::move(best_v));
  }
  if (added.empty()) return CMatrix(n, 0);
  return hstack(added);
}

CMatrix hpd_inverse_sqrt(const CMatrix& a, double tol) {
  const auto eig = herm_eig(a, tol);
  CMatrix scaled = eig.eigenvectors;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (eig.eigenvalues[k] <= 0.0) {
      throw Error(ErrorKind::NotPsd, "matrix is not positive definite", eig.eigenvalues[k]);
    }
    const double f = 1.0 / std::sqrt(eig.eigenvalues[k]);
    for (std::size_t r = 0; r < a.rows(); ++r) scaled(r, k) *= f;
  }
  return scaled * eig.eigenvectors.adjoint();
}

CMatrix unitary_completion(const CMatrix& domain_frame, const CMatrix& image_frame,
                           std::size_t ambient_dim, double tol,
                           std::span<const std::size_t> basis_order) {
  if (domain_frame.rows() != ambient_dim || image_frame.rows() != ambient_dim ||
      domain_frame.cols() != image_frame.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "unitary_completion frame shapes");
  }
  const std::size_t m = domain_frame.cols();
  const CMatrix gram_x = adjoint_times(domain_frame, domain_frame);
  const CMatrix gram_y = adjoint_times(image_frame, image_frame);
  const double mismatch = (gram_x - gram_y).frobenius_norm();
  if (mismatch > tol * std::max(1.0, gram_x.frobenius_norm())) {
    throw Error(ErrorKind::NotIsometric, "Gram matrices of domain and image differ", mismatch);
  }

  // Pivoted Gram-Schmidt on the domain columns; every elimination step is
  // replayed on the image columns so q_j -> v_j is the induced isometry.
  std::vector<CMatrix> wx;
  std::vector<CMatrix> wy;
  double scale = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    wx.push_back(domain_frame.col(j));
    wy.push_back(image_frame.col(j));
    scale = std::max(scale, wx.back().frobenius_norm());
  }
  std::vector<CMatrix> qs;
  std::vector<CMatrix> vs;
  std::vector<bool> used(m, false);
  while (qs.size() < ambient_dim) {
    std::size_t best = m;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      const double nj = wx[j].frobenius_norm();
      if (nj > best_norm) {
        best_norm = nj;
        best = j;
      }
    }
    if (best == m || best_norm <= tol * scale) break;
    used[best] = true;
    CMatrix q = wx[best];
    CMatrix v = wy[best];
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const cplx c = inner(qs[i], q);
      q -= c * qs[i];
      v -= c * vs[i];
    }
    const double qn = q.frobenius_norm();
    if (qn <= tol * scale) continue;
    q *= 1.0 / qn;
    v *= 1.0 / qn;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      for (int pass = 0; pass < 2; ++pass) {
        const cplx c = inner(q, wx[j]);
        wx[j] -= c * q;
        wy[j] -= c * v;
      }
    }
    qs.push_back(std::move(q));
    vs.push_back(std::move(v));
  }

  CMatrix q_frame = qs.empty() ? CMatrix(ambient_dim, 0) : hstack(qs);
  CMatrix v_frame = vs.empty() ? CMatrix(ambient_dim, 0) : hstack(vs);
  if (!vs.empty()) {
    // Nearest isometry to the replayed image columns.
    v_frame = v_frame * hpd_inverse_sqrt(adjoint_times(v_frame, v_frame), 1e-6);
  }
  const CMatrix q_comp = orthonormal_complement(q_frame, basis_order);
  const CMatrix v_comp = orthonormal_complement(v_frame, basis_order);
  if (q_comp.cols() != v_comp.cols()) {
    throw Error(ErrorKind::NotIsometric, "complement dimensions differ");
  }
  const CMatrix left_parts[] = {v_frame, v_comp};
  const CMatrix right_parts[] = {q_frame, q_comp};
  const CMatrix left = hstack(left_parts);
  const CMatrix right = hstack(right_parts);
  if (left.cols() != ambient_dim) {
    throw Error(ErrorKind::NotIsometric, "failed to complete to a full basis");
  }
  return left * right.adjoint();
}

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> poly_roots(std::span<const cplx> coeffs) {
  if (coeffs.empty()) return {};
  if (coeffs.back() == cplx{}) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient is zero");
  }
  std::size_t lead = coeffs.size() - 1;
  std::vector<cplx> roots;
  std::size_t low = 0;
  while (low < lead && coeffs[low] == cplx{}) {
    roots.push_back(0.0);
    ++low;
  }
  std::vector<cplx> p(coeffs.begin() + static_cast<std::ptrdiff_t>(low), coeffs.end());
  const std::size_t n = p.size() - 1;
  if (n == 0) return roots;
  const cplx lc = p.back();
  for (auto& c : p) c /= lc;
  if (n == 1) {
    roots.push_back(-p[0]);
    return roots;
  }
  std::vector<cplx> dp(n);
  for (std::size_t k = 1; k <= n; ++k) dp[k - 1] = static_cast<double>(k) * p[k];

  // Fujiwara bound for the initial circle.
  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double mag = std::abs(p[n - k]);
    if (k == n) mag *= 0.5;
    radius = std::max(radius, std::pow(mag, 1.0 / static_cast<double>(k)));
  }
  radius = std::max(2.0 * radius, 1e-3);
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, ang);
  }

  for (int iter = 0; iter < 1000; ++iter) {
    bool done = true;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx pv = poly_eval(p, z[k]);
      if (pv == cplx{}) continue;
      const cplx dv = poly_eval(dp, z[k]);
      cplx sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) sum += 1.0 / (z[k] - z[j]);
      }
      const cplx ratio = dv == cplx{} ? cplx{1.0, 0.0} : pv / dv;
      const cplx denom = 1.0 - ratio * sum;
      const cplx w = denom == cplx{} ? ratio : ratio / denom;
      z[k] -= w;
      if (std::abs(w) > 4.0 * kEps * (1.0 + std::abs(z[k]))) done = false;
    }
    if (done) break;
  }
  // Newton polish, accepted only when it reduces |p|.
  for (auto& root : z) {
    for (int it = 0; it < 5; ++it) {
      const cplx pv = poly_eval(p, root);
      const cplx dv = poly_eval(dp, root);
      if (dv == cplx{}) break;
      const cplx cand = root - pv / dv;
      if (std::abs(poly_eval(p, cand)) < std::abs(pv)) {
        root = cand;
      } else {
        break;
      }
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<cplx> char_poly(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "char_poly needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<cplx> c(n + 1, 0.0);
  c[n] = 1.0;
  CMatrix m(n, n);
  const CMatrix id = CMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> eigenvalues_general(const CMatrix& a) {
  if (a.rows() == 0) return {};
  const auto cp = char_poly(a);
  return poly_roots(cp);
}

cplx det(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "det needs a square matrix");
  const std::size_t n = a.rows();
  CMatrix w = a;
  cplx d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(w(i, k)) > std::abs(w(piv, k))) piv = i;
    if (w(piv, k) == cplx{}) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
      d = -d;
    }
    d *= w(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = w(i, k) / w(k, k);
      if (f == cplx{}) continue;
      for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return d;
}

bool lu_solve(const CMatrix& a, const CMatrix& b, CMatrix& x, double pivot_tol) {
  if (!a.is_square() || a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "lu_solve shapes");
  }
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  CMatrix w = a;
  x = b;
  const double scale = std::max(a.max_abs(), std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(w(i, k)) > std::abs(w(piv, k))) piv = i;
    if (std::abs(w(piv, k)) <= pivot_tol * scale) return false;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(piv, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(x(k, j), x(piv, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = w(i, k) / w(k, k);
      if (f == cplx{}) continue;
      for (std::size_t j = k; j < n; ++j) w(i, j) -= f * w(k, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      cplx s = x(kk, j);
      for (std::size_t l = kk + 1; l < n; ++l) s -= w(kk, l) * x(l, j);
      x(kk, j) = s / w(kk, kk);
    }
  }
  return true;
}

CMatrix inv_resolvent(const CMatrix& d, const CMatrix& ez, double tol) {
  const CMatrix de = d * ez;
  if (!de.is_square()) throw Error(ErrorKind::DimensionMismatch, "inv_resolvent shapes");
  const std::size_t n = de.rows();
  const CMatrix id = CMatrix::identity(n);
  const CMatrix m = id - de;
  CMatrix x;
  if (!lu_solve(m, id, x)) {
    throw Error(ErrorKind::SingularResolvent, "I - D E(z) is singular");
  }
  const double res = (m * x - id).frobenius_norm();
  if (!x.all_finite() || res > tol * std::max(1.0, x.frobenius_norm())) {
    throw Error(ErrorKind::SingularResolvent, "resolvent residual too large", res);
  }
  return x;
}

}  // namespace polydil
