#include "polydil/tuples.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polydil/error.hpp"
#include "polydil/linalg.hpp"

namespace polydil {

OperatorTuple make_tuple(std::vector<CMatrix> matrices, double commute_tol, double contract_tol) {
  if (matrices.empty()) throw Error(ErrorKind::InvalidArgument, "tuple needs at least one operator");
  const std::size_t d = matrices.front().rows();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const auto& m = matrices[i];
    if (m.rows() != d || m.cols() != d) {
      throw Error(ErrorKind::DimensionMismatch, "operator " + std::to_string(i) + " has wrong shape",
                  0.0, static_cast<std::ptrdiff_t>(i));
    }
    if (!m.all_finite()) {
      throw Error(ErrorKind::InvalidArgument, "operator " + std::to_string(i) + " has non-finite entries");
    }
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const double norm = operator_norm(matrices[i]);
    if (norm > 1.0 + contract_tol) {
      throw Error(ErrorKind::NotContractive, "operator " + std::to_string(i) + " has norm above 1",
                  norm, static_cast<std::ptrdiff_t>(i));
    }
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      const double res = operator_norm(matrices[i] * matrices[j] - matrices[j] * matrices[i]);
      if (res > commute_tol) {
        throw Error(ErrorKind::NotCommuting,
                    "operators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute",
                    res, static_cast<std::ptrdiff_t>(i), static_cast<std::ptrdiff_t>(j));
      }
    }
  }
  OperatorTuple t;
  t.dim_ = d;
  t.ops_ = std::move(matrices);
  t.commute_tol_ = commute_tol;
  t.contract_tol_ = contract_tol;
  return t;
}

OperatorTuple hat(const OperatorTuple& tuple, std::size_t i) {
  if (i >= tuple.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "hat index out of range", 0.0, static_cast<std::ptrdiff_t>(i));
  }
  if (tuple.size() == 1) throw Error(ErrorKind::InvalidArgument, "cannot remove the only operator");
  // A sub-tuple of a valid tuple is valid; the checks are not repeated.
  OperatorTuple out;
  out.dim_ = tuple.dim_;
  out.commute_tol_ = tuple.commute_tol_;
  out.contract_tol_ = tuple.contract_tol_;
  for (std::size_t j = 0; j < tuple.size(); ++j)
    if (j != i) out.ops_.push_back(tuple[j]);
  return out;
}

CMatrix tuple_power(std::span<const CMatrix> ops, std::span<const int> k) {
  if (ops.size() != k.size()) throw Error(ErrorKind::DimensionMismatch, "multi-index arity");
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "empty tuple");
  CMatrix out = CMatrix::identity(ops.front().rows());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (k[i] < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    if (k[i] > 0) out = out * matrix_power(ops[i], static_cast<unsigned>(k[i]));
  }
  return out;
}

CMatrix szego_defect(std::span<const CMatrix> ops) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "empty tuple");
  const std::size_t n = ops.size();
  const std::size_t d = ops.front().rows();
  CMatrix sum(d, d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    CMatrix p = CMatrix::identity(d);
    int parity = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        p = p * ops[i];
        ++parity;
      }
    }
    CMatrix term = p * p.adjoint();
    if (parity % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

CMatrix szego_defect(const OperatorTuple& tuple) { return szego_defect(tuple.ops()); }

CMatrix conjugacy_product(std::span<const CMatrix> ops, const CMatrix& x) {
  CMatrix out = x;
  for (const auto& t : ops) out = out - t * out * t.adjoint();
  return out;
}

SzegoReport is_szego(const OperatorTuple& tuple, double tol) {
  SzegoReport r;
  r.min_eigenvalue = min_eigenvalue(szego_defect(tuple), 1e-8);
  r.szego = r.min_eigenvalue >= -tol;
  return r;
}

double spectral_radius_estimate(const CMatrix& t) {
  // Every |T^m|^{1/m} bounds the spectral radius from above; keep the
  // smallest. A plateau is not a stopping signal (|J|=|J^2|=1 for J_3).
  CMatrix p = t;
  double best = std::numeric_limits<double>::infinity();
  double exponent = 1.0;
  for (int k = 0; k <= 8; ++k) {
    const double norm = operator_norm(p);
    if (norm == 0.0) return 0.0;
    best = std::min(best, std::pow(norm, exponent));
    p = p * p;
    exponent *= 0.5;
  }
  return best;
}

bool is_pure(const OperatorTuple& tuple, double tol) {
  for (const auto& t : tuple.ops()) {
    if (spectral_radius_estimate(t) >= 1.0 - tol) return false;
  }
  return true;
}

std::size_t nilpotency_order(const OperatorTuple& tuple, double tol) {
  std::size_t order = 0;
  for (const auto& t : tuple.ops()) {
    CMatrix p = CMatrix::identity(tuple.dim());
    std::size_t k = 0;
    bool found = false;
    for (; k <= tuple.dim(); ++k) {
      if (p.max_abs() <= tol) {
        found = true;
        break;
      }
      p = p * t;
    }
    if (!found) return 0;
    order = std::max(order, k);
  }
  return order;
}

std::vector<std::size_t> PnCertificate::partition() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(f_frames.size());
  for (const auto& f : f_frames) sizes.push_back(f.cols());
  return sizes;
}

PnCertificate verify_pn(const OperatorTuple& tuple, std::span<const CMatrix> g, double tol) {
  const std::size_t n = tuple.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "P_n membership needs at least two operators");
  if (g.size() != n - 1) {
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(n - 1) + " G operators");
  }
  const std::size_t d = tuple.dim();
  for (const auto& gi : g) {
    if (gi.rows() != d || gi.cols() != d) throw Error(ErrorKind::DimensionMismatch, "G has wrong shape");
  }

  const OperatorTuple head = hat(tuple, n - 1);
  PnCertificate cert;
  const CMatrix szego = szego_defect(head);
  cert.hat_szego_min_eig = min_eigenvalue(szego, 1e-8);
  if (cert.hat_szego_min_eig < -tol) {
    throw Error(ErrorKind::NotSzego, "leading (n-1)-tuple is not Szego", cert.hat_szego_min_eig);
  }
  if (!is_pure(head, tol)) throw Error(ErrorKind::NotPure, "leading (n-1)-tuple is not pure");

  for (std::size_t i = 0; i < g.size(); ++i) {
    const double scale = std::max(1.0, g[i].max_abs());
    const double asym = (g[i] - g[i].adjoint()).max_abs();
    if (asym > tol * scale) {
      throw Error(ErrorKind::GNotPsd, "G_" + std::to_string(i) + " is not Hermitian", asym,
                  static_cast<std::ptrdiff_t>(i));
    }
    CMatrix sym = g[i] + g[i].adjoint();
    sym *= 0.5;
    const double me = min_eigenvalue(sym, 1e-8);
    cert.g_min_eigs.push_back(me);
    if (me < -tol) {
      throw Error(ErrorKind::GNotPsd, "G_" + std::to_string(i) + " is not psd", me,
                  static_cast<std::ptrdiff_t>(i));
    }
    cert.g.push_back(std::move(sym));
  }

  const CMatrix& tn = tuple.last();
  CMatrix sum = CMatrix::identity(d) - tn * tn.adjoint();
  for (const auto& gi : cert.g) sum -= gi;
  cert.sum_residual = operator_norm(sum);
  if (cert.sum_residual > tol) {
    throw Error(ErrorKind::SumMismatch, "I - T_n T_n^* differs from the sum of G_i", cert.sum_residual);
  }

  for (std::size_t i = 0; i < cert.g.size(); ++i) {
    std::vector<CMatrix> others;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (j != i) others.push_back(tuple[j]);
    CMatrix prod = conjugacy_product(others, cert.g[i]);
    CMatrix sym = prod + prod.adjoint();
    sym *= 0.5;
    const double me = min_eigenvalue(sym, 1e-8);
    cert.product_min_eigs.push_back(me);
    if (me < -tol) {
      throw Error(ErrorKind::ProductNotPsd, "alternating product for G_" + std::to_string(i) + " is not psd",
                  me, static_cast<std::ptrdiff_t>(i));
    }
    CMatrix root = psd_sqrt(sym, tol);
    cert.f_frames.push_back(range_onb(root, tol));
    cert.f.push_back(std::move(root));
    cert.f_squared.push_back(std::move(sym));
  }

  cert.defect = psd_sqrt(szego, tol);
  cert.defect_frame = range_onb(cert.defect, tol);
  return cert;
}

PnCertificate bdhs_certificate(const OperatorTuple& tuple, double tol) {
  const std::size_t n = tuple.size();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least two operators");
  const OperatorTuple head = hat(tuple, n - 1);
  const OperatorTuple tail = hat(tuple, 0);
  const auto head_szego = is_szego(head, tol);
  if (!head_szego.szego) {
    throw Error(ErrorKind::HypothesisFailed, "T_hat_n is not Szego", head_szego.min_eigenvalue, 0);
  }
  if (!is_pure(head, tol)) throw Error(ErrorKind::HypothesisFailed, "T_hat_n is not pure", 0.0, 1);
  const auto tail_szego = is_szego(tail, tol);
  if (!tail_szego.szego) {
    throw Error(ErrorKind::HypothesisFailed, "T_hat_1 is not Szego", tail_szego.min_eigenvalue, 2);
  }
  const std::size_t d = tuple.dim();
  std::vector<CMatrix> g(n - 1, CMatrix(d, d));
  g[0] = CMatrix::identity(d) - tuple.last() * tuple.last().adjoint();
  return verify_pn(tuple, g, tol);
}

}  // namespace polydil
