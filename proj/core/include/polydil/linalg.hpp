#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polydil/cmatrix.hpp"

namespace polydil {

/// Spectral decomposition A = V diag(eigenvalues) V* of a Hermitian matrix.
struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // orthonormal columns, same order
};

/// Operator 2-norm: sqrt of the top eigenvalue of A*A (or AA*, whichever is smaller).
double operator_norm(const CMatrix& a);

/// Hermitian part residual |A - A*| in operator norm.
double hermitian_defect(const CMatrix& a);

/// |A*A - I| in operator norm.
double unitarity_defect(const CMatrix& a);

/// Cyclic complex Jacobi eigensolver.
///
/// Throws NotHermitian when |A - A*| > tol * max(1, |A|) and NoConvergence
/// when the off-diagonal mass does not vanish within the sweep budget. The
/// input is symmetrized before iterating.
HermEig herm_eig(const CMatrix& a, double tol = 1e-10);

double min_eigenvalue(const CMatrix& hermitian, double tol = 1e-10);

/// Positive square root of a Hermitian psd matrix. Eigenvalues in
/// [-tol * max(1,|A|), 0) are clamped to zero; anything lower is NotPsd.
CMatrix psd_sqrt(const CMatrix& a, double tol = 1e-9);

/// Orthonormal basis of the numerical kernel {v : |Av| <= tol * max(1,|A|)}.
CMatrix kernel_basis(const CMatrix& a, double tol = 1e-10);

/// Orthonormal basis of the span of the given columns. Uses column-pivoted
/// modified Gram-Schmidt with one reorthogonalization pass; a column is
/// accepted while its residual exceeds tol * max(1, largest input norm).
CMatrix range_onb(const CMatrix& vectors, double tol = 1e-10);

/// Completes the orthonormal columns of `frame` to an orthonormal basis of
/// C^rows. New columns come from the standard basis taken in `basis_order`
/// (index order when empty).
CMatrix orthonormal_complement(const CMatrix& frame,
                               std::span<const std::size_t> basis_order = {});

/// Unitary U on C^ambient_dim with U * domain_frame = image_frame.
///
/// The frames need not be orthonormal or full rank; they must have equal
/// Gram matrices (NotIsometric otherwise). The span of the domain columns is
/// mapped by the induced isometry; the orthogonal complements are matched
/// i-th to i-th after Gram-Schmidt over the standard basis in
/// `basis_order`, so the result is a deterministic function of its inputs.
CMatrix unitary_completion(const CMatrix& domain_frame, const CMatrix& image_frame,
                           std::size_t ambient_dim, double tol = 1e-9,
                           std::span<const std::size_t> basis_order = {});

/// Roots of sum_k coeffs[k] z^k (ascending order), with multiplicity.
/// Aberth-Ehrlich iteration followed by Newton polishing.
std::vector<cplx> poly_roots(std::span<const cplx> coeffs);

/// Evaluates sum_k coeffs[k] z^k by Horner's rule.
cplx poly_eval(std::span<const cplx> coeffs, cplx z);

/// Characteristic polynomial det(zI - A), ascending coefficients, leading 1
/// (Faddeev-LeVerrier).
std::vector<cplx> char_poly(const CMatrix& a);

/// General-matrix eigenvalues as roots of the characteristic polynomial.
std::vector<cplx> eigenvalues_general(const CMatrix& a);

/// Determinant by partially pivoted Gaussian elimination.
cplx det(const CMatrix& a);

/// Solves A X = B by partially pivoted elimination. Returns false when a
/// pivot falls below `pivot_tol` times the largest entry of A.
bool lu_solve(const CMatrix& a, const CMatrix& b, CMatrix& x, double pivot_tol = 1e-14);

/// X = (I - D*Ez)^{-1}, checked by |(I - D*Ez) X - I| <= tol.
/// Throws SingularResolvent when the system is numerically singular.
CMatrix inv_resolvent(const CMatrix& d, const CMatrix& ez, double tol = 1e-10);

/// Inverse square root of a Hermitian positive definite matrix.
CMatrix hpd_inverse_sqrt(const CMatrix& a, double tol = 1e-10);

}  // namespace polydil
