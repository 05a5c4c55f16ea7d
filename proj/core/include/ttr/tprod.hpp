#pragma once

#include <Eigen/Dense>

#include "ttr/tensor3.hpp"

namespace ttr {

// The t-product A * B of an n1 x n2 x n3 tensor with an n2 x m x n3
// tensor, computed slice-wise in the transform domain.  Only the
// independent half-spectrum is multiplied; mirror slices follow by
// conjugation, so the result is real by construction.
Tensor3 t_product(const Tensor3& a, const Tensor3& b);

// Transpose in the algebra's sense: every frontal slice is transposed and
// slices 2..n3 swap into reverse order.  Equivalent to conjugating each
// transform slice.
Tensor3 t_transpose(const Tensor3& a);

// Identity element: first frontal slice is I_n, all others zero.
Tensor3 identity_tensor(std::size_t n, std::size_t n3);

// Tensor trace, the mean of the transform-slice traces.  Coincides with
// the trace of the first frontal slice.
double trace(const Tensor3& a);

// Frobenius norm through the trace identity sqrt(trace(a * a^T)).
double frobenius_norm(const Tensor3& a);

// Inner product through the trace identity trace(a^T * b).
double inner_product(const Tensor3& a, const Tensor3& b);

// Whether a equals its own t-transpose within tol (relative to the norm
// of a, with an absolute floor of tol itself).
bool is_f_symmetric(const Tensor3& a, double tol);

// Block-circulant matrix of a: block (i, j) is frontal slice
// ((i - j) mod n3) + 1, each block n1 x n2.  Refuses to materialise
// anything beyond a few thousand rows per side; this exists as a
// reference, not a compute path.
Eigen::MatrixXd bcirc_matrix(const Tensor3& a);

// Reference t-product by explicit block-circulant multiplication:
// fold(bcirc(a) . unfold(b)).  Shares no code with t_product's transform
// route, which is the point.
Tensor3 bcirc_oracle(const Tensor3& a, const Tensor3& b);

}  // namespace ttr
