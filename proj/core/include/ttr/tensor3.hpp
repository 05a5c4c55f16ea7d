#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ttr/errors.hpp"

namespace ttr {

// A tube is the scalar of this algebra: a 1 x 1 x n3 fibre viewed as a
// plain vector of length n3.
using Tube = Eigen::VectorXd;

// Dense real third-order tensor, n1 x n2 x n3.  Storage is frontal-slice
// major with row-major slices: element (i, j, k) lives at
// (k * n1 + i) * n2 + j.  Slice and tube accessors copy; the data()
// pointer gives raw access in storage order.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t n1, std::size_t n2, std::size_t n3)
      : n1_(n1), n2_(n2), n3_(n3), v_(n1 * n2 * n3, 0.0) {}

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return v_[(k * n1_ + i) * n2_ + j];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return v_[(k * n1_ + i) * n2_ + j];
  }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  Eigen::MatrixXd slice(std::size_t k) const;
  void set_slice(std::size_t k, const Eigen::MatrixXd& m);

  Tube tube(std::size_t i, std::size_t j) const;
  void set_tube(std::size_t i, std::size_t j, const Tube& t);

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

 private:
  std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<double> v_;
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(double s, Tensor3 a);

// How a complex transform-domain tensor came to be.  Tensors produced by
// transforming real data must stay conjugate-symmetric across slices;
// freely constructed ones carry no such promise.
enum class TransformOrigin { derived_from_real, free_form };

// Complex tensor holding per-slice DFT values along the tube direction.
// Same shape conventions and storage order as Tensor3.
class TransformTensor {
 public:
  TransformTensor() = default;
  TransformTensor(std::size_t n1, std::size_t n2, std::size_t n3,
                  TransformOrigin origin = TransformOrigin::free_form)
      : n1_(n1), n2_(n2), n3_(n3), origin_(origin), v_(n1 * n2 * n3) {}

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  TransformOrigin origin() const { return origin_; }
  void set_origin(TransformOrigin o) { origin_ = o; }

  std::complex<double> operator()(std::size_t i, std::size_t j,
                                  std::size_t k) const {
    return v_[(k * n1_ + i) * n2_ + j];
  }
  std::complex<double>& operator()(std::size_t i, std::size_t j,
                                   std::size_t k) {
    return v_[(k * n1_ + i) * n2_ + j];
  }

  std::complex<double>* data() { return v_.data(); }
  const std::complex<double>* data() const { return v_.data(); }

  Eigen::MatrixXcd slice(std::size_t k) const;
  void set_slice(std::size_t k, const Eigen::MatrixXcd& m);

 private:
  std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
  TransformOrigin origin_ = TransformOrigin::free_form;
  std::vector<std::complex<double>> v_;
};

// Transposes every frontal slice in place, so b(j, i, k) = a(i, j, k).
// This is a plain mode swap, not the algebra's transpose (which also
// reverses the slice order; see t_transpose in tprod.hpp).
Tensor3 swap_modes12(const Tensor3& a);

// New tensor keeping the given mode-1 rows, in the given order.
Tensor3 take_rows(const Tensor3& a, const std::vector<std::size_t>& rows);

// Standard-normal entries from a fixed-seed Mersenne generator; fill order
// is storage order, so results are reproducible across platforms.
Tensor3 gaussian_tensor(std::size_t n1, std::size_t n2, std::size_t n3,
                        std::uint64_t seed);

}  // namespace ttr
