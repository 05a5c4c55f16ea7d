#include "ttr/tensor3.hpp"

#include <random>

namespace ttr {

namespace {

void check_same_shape(const Tensor3& a, const Tensor3& b, const char* op) {
  if (a.n1() != b.n1() || a.n2() != b.n2() || a.n3() != b.n3()) {
    throw ShapeMismatch(std::string(op) + ": shapes differ");
  }
}

}  // namespace

Eigen::MatrixXd Tensor3::slice(std::size_t k) const {
  Eigen::MatrixXd m(n1_, n2_);
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j) m(i, j) = (*this)(i, j, k);
  return m;
}

void Tensor3::set_slice(std::size_t k, const Eigen::MatrixXd& m) {
  if (static_cast<std::size_t>(m.rows()) != n1_ ||
      static_cast<std::size_t>(m.cols()) != n2_) {
    throw ShapeMismatch("set_slice: matrix does not match tensor face");
  }
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j) (*this)(i, j, k) = m(i, j);
}

Tube Tensor3::tube(std::size_t i, std::size_t j) const {
  Tube t(n3_);
  for (std::size_t k = 0; k < n3_; ++k) t(k) = (*this)(i, j, k);
  return t;
}

void Tensor3::set_tube(std::size_t i, std::size_t j, const Tube& t) {
  if (static_cast<std::size_t>(t.size()) != n3_) {
    throw ShapeMismatch("set_tube: length does not match depth");
  }
  for (std::size_t k = 0; k < n3_; ++k) (*this)(i, j, k) = t(k);
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  check_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
  check_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (auto& x : v_) x *= s;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Eigen::MatrixXcd TransformTensor::slice(std::size_t k) const {
  Eigen::MatrixXcd m(n1_, n2_);
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j) m(i, j) = (*this)(i, j, k);
  return m;
}

void TransformTensor::set_slice(std::size_t k, const Eigen::MatrixXcd& m) {
  if (static_cast<std::size_t>(m.rows()) != n1_ ||
      static_cast<std::size_t>(m.cols()) != n2_) {
    throw ShapeMismatch("set_slice: matrix does not match tensor face");
  }
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j) (*this)(i, j, k) = m(i, j);
}

Tensor3 swap_modes12(const Tensor3& a) {
  Tensor3 b(a.n2(), a.n1(), a.n3());
  for (std::size_t k = 0; k < a.n3(); ++k)
    for (std::size_t i = 0; i < a.n1(); ++i)
      for (std::size_t j = 0; j < a.n2(); ++j) b(j, i, k) = a(i, j, k);
  return b;
}

Tensor3 take_rows(const Tensor3& a, const std::vector<std::size_t>& rows) {
  Tensor3 b(rows.size(), a.n2(), a.n3());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= a.n1()) throw ShapeMismatch("take_rows: index out of range");
    for (std::size_t k = 0; k < a.n3(); ++k)
      for (std::size_t j = 0; j < a.n2(); ++j) b(r, j, k) = a(rows[r], j, k);
  }
  return b;
}

Tensor3 gaussian_tensor(std::size_t n1, std::size_t n2, std::size_t n3,
                        std::uint64_t seed) {
  Tensor3 t(n1, n2, n3);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double* p = t.data();
  for (std::size_t i = 0; i < t.size(); ++i) p[i] = gauss(rng);
  return t;
}

}  // namespace ttr
