#pragma once

#include <Eigen/Dense>

#include "ttr/tensor3.hpp"

namespace ttr {

// Table of transform-domain tubes, one row per tube: entry (l, k) is the
// value of tube l in transform slice k.  Used for eigenvalue tubes and
// degree tubes, where the full n x n x n3 tensor would be wastefully
// sparse.
struct FDiagonal {
  std::size_t count = 0;  // number of tubes
  std::size_t n3 = 0;     // depth
  Eigen::MatrixXcd tubes; // count x n3

  // The f-diagonal spatial tensor carrying these tubes on its diagonal.
  // Verifies conjugate symmetry on the way back, so a table sourced from
  // a real f-symmetric tensor reconstructs to a real tensor or throws.
  Tensor3 to_tensor() const;
};

// Result of a slice-wise eigendecomposition: a * v = v * lambda, or
// a * v = b * v * lambda for the generalized form.
struct EigenPairs {
  Tensor3 v;          // n x d x n3 eigenslices
  FDiagonal lambda;   // d eigentubes
  double residual = 0.0;  // frobenius norm of the defining equation
  // Smallest margin, across slices, between the last eigenvalue kept and
  // the first one rejected, measured in the selection order's key.
  // Infinite when every eigenvalue was kept.  A tiny margin means the
  // selected subspace is poorly separated from the rest.
  double selection_gap = 0.0;
};

// How per-slice eigenvalues are ranked before the leading d are kept.
enum class EigOrder {
  magnitude,    // |lambda| descending
  signed_desc,  // lambda descending
  signed_asc,   // lambda ascending
};

// Which end of the generalized spectrum to keep.
enum class EigWhich {
  largest,           // d largest by value
  smallest_nonzero,  // d smallest after skipping near-zero eigenvalues
};

// Eigendecomposition of an f-symmetric tensor, slice by slice in the
// transform domain.  Each transform slice is Hermitian, so per-slice
// eigenvalues are real; eigenvector phases are fixed deterministically.
// Throws NotFSymmetric if a strays from its transpose beyond 1e-8.
EigenPairs eig_f_symmetric(const Tensor3& a, std::size_t d, EigOrder order);

// Generalized eigendecomposition a * v = b * v * lambda with b symmetric
// positive definite.  Eigenslices come out b-orthonormal per slice, i.e.
// v^T * b * v = identity in the tensor sense.  With smallest_nonzero,
// eigenvalues with |lambda| <= 1e-8 * n * max|lambda| are skipped slice by
// slice; InsufficientNonzero is thrown when fewer than d survive in some
// slice.
EigenPairs generalized_eig(const Tensor3& a, const Tensor3& b,
                           std::size_t d, EigWhich which);

// Definiteness of an f-symmetric tensor, decided on the per-slice
// eigenvalues with a floor of 1e-10 relative to the largest magnitude.
bool is_positive_definite(const Tensor3& a);
bool is_positive_semidefinite(const Tensor3& a);

// Largest transform-slice rank: the number of nonzero singular tubes of
// the slice-wise SVD.  Singular values below tol times the global largest
// singular value count as zero.
std::size_t tubal_rank(const Tensor3& a, double tol);

// Whether every transform slice of l is a graph Laplacian matrix:
// real symmetric, zero row sums, non-positive off-diagonal entries,
// all within tol relative to the largest entry.
bool is_laplacian(const Tensor3& l, double tol);

// Orthonormalises the columns of v slice by slice in the transform domain
// (thin QR), so the result w satisfies w^T * w = identity tensor.
Tensor3 f_orthogonalize(const Tensor3& v);

}  // namespace ttr
