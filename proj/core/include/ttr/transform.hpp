#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ttr/tensor3.hpp"

namespace ttr {

// Unnormalised forward DFT along every tube; the inverse carries the 1/n3
// factor.  For real input only slices 0 .. floor(n3/2) are independent;
// slice n3-k is the conjugate of slice k, and for even n3 the half-way
// slice is real on its own.

// Forward transform of all tubes, returning the full slice set with the
// redundant half filled in by exact conjugation.
TransformTensor to_transform(const Tensor3& a);

// Inverse transform.  Verifies that ft is conjugate-symmetric across
// slices (relative tolerance 1e-9), then reconstructs the real tensor
// from the independent half-spectrum.  Throws SymmetryViolation if the
// symmetry test fails; a failure means some upstream step produced a
// spectrum no real tensor can have.
Tensor3 from_transform(const TransformTensor& ft);

// Number of independent transform slices for a real tensor of depth n3.
inline std::size_t half_spectrum_count(std::size_t n3) {
  return n3 / 2 + 1;
}

// Whether transform slice k of a depth-n3 spectrum is its own mirror
// (the DC slice, plus the Nyquist slice when n3 is even).  Self-paired
// slices are real for real spatial data and count once in slice sums;
// all others stand in for themselves and their conjugate.
inline bool self_paired(std::size_t k, std::size_t n3) {
  return k == 0 || (n3 % 2 == 0 && k == n3 / 2);
}

namespace detail {

// Independent transform slices 0 .. half_spectrum_count-1 as dense
// complex matrices.  The hot path for every per-slice algorithm.
std::vector<Eigen::MatrixXcd> transform_half(const Tensor3& a);

// Real tensor from independent half-spectrum slices (inverse transform,
// 1/n3 scaled).  Only the real part of self-paired slices participates,
// matching the definition of the inverse for real output.
Tensor3 inverse_from_half(const std::vector<Eigen::MatrixXcd>& half,
                          std::size_t n3);

// All n3 slices: the half-spectrum plus conjugate mirrors.
std::vector<Eigen::MatrixXcd> transform_full(const Tensor3& a);

}  // namespace detail

}  // namespace ttr
