#include "ttr/tprod.hpp"

#include <cmath>
#include <vector>

#include "ttr/parallel.hpp"
#include "ttr/transform.hpp"

namespace ttr {

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw ShapeMismatch("t_product: inner extent or depth differs");
  }
  const std::size_t n3 = a.n3();
  const std::vector<Eigen::MatrixXcd> ah = detail::transform_half(a);
  const std::vector<Eigen::MatrixXcd> bh = detail::transform_half(b);
  std::vector<Eigen::MatrixXcd> ch(ah.size());
  parallel_for(0, ah.size(),
               [&](std::size_t k) { ch[k] = ah[k] * bh[k]; });
  return detail::inverse_from_half(ch, n3);
}

Tensor3 t_transpose(const Tensor3& a) {
  const std::size_t n3 = a.n3();
  Tensor3 b(a.n2(), a.n1(), a.n3());
  for (std::size_t k = 0; k < n3; ++k) {
    const std::size_t src = (k == 0) ? 0 : n3 - k;
    for (std::size_t i = 0; i < a.n1(); ++i)
      for (std::size_t j = 0; j < a.n2(); ++j) b(j, i, k) = a(i, j, src);
  }
  return b;
}

Tensor3 identity_tensor(std::size_t n, std::size_t n3) {
  Tensor3 e(n, n, n3);
  for (std::size_t i = 0; i < n; ++i) e(i, i, 0) = 1.0;
  return e;
}

double trace(const Tensor3& a) {
  if (a.n1() != a.n2()) throw ShapeMismatch("trace: tensor is not square");
  const std::size_t n3 = a.n3();
  if (n3 == 0 || a.n1() == 0) return 0.0;
  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(a);
  // Self-paired slices appear once in the full spectrum, the rest twice;
  // the conjugate mirrors cancel the imaginary parts exactly.
  double sum = 0.0;
  for (std::size_t k = 0; k < half.size(); ++k) {
    const double re = half[k].trace().real();
    sum += self_paired(k, n3) ? re : 2.0 * re;
  }
  return sum / static_cast<double>(n3);
}

double frobenius_norm(const Tensor3& a) {
  const double sq = trace(t_product(a, t_transpose(a)));
  return std::sqrt(std::max(0.0, sq));
}

double inner_product(const Tensor3& a, const Tensor3& b) {
  if (a.n1() != b.n1() || a.n2() != b.n2() || a.n3() != b.n3()) {
    throw ShapeMismatch("inner_product: shapes differ");
  }
  return trace(t_product(t_transpose(a), b));
}

bool is_f_symmetric(const Tensor3& a, double tol) {
  if (a.n1() != a.n2()) return false;
  const Tensor3 d = a - t_transpose(a);
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    diff2 += d.data()[i] * d.data()[i];
    ref2 += a.data()[i] * a.data()[i];
  }
  return std::sqrt(diff2) <= tol * std::max(1.0, std::sqrt(ref2));
}

Eigen::MatrixXd bcirc_matrix(const Tensor3& a) {
  const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  if (n1 * n3 > 4096 || n2 * n3 > 4096) {
    throw ValidationError(
        "bcirc_matrix: refusing to materialise a block-circulant this "
        "large; use t_product instead");
  }
  Eigen::MatrixXd m(n1 * n3, n2 * n3);
  for (std::size_t bi = 0; bi < n3; ++bi) {
    for (std::size_t bj = 0; bj < n3; ++bj) {
      const std::size_t src = (bi + n3 - bj) % n3;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          m(bi * n1 + i, bj * n2 + j) = a(i, j, src);
    }
  }
  return m;
}

Tensor3 bcirc_oracle(const Tensor3& a, const Tensor3& b) {
  if (a.n2() != b.n1() || a.n3() != b.n3()) {
    throw ShapeMismatch("bcirc_oracle: inner extent or depth differs");
  }
  const std::size_t n2 = b.n2(), n3 = a.n3();
  const Eigen::MatrixXd big = bcirc_matrix(a);
  // unfold stacks the frontal slices of b on top of each other.
  Eigen::MatrixXd unfolded(b.n1() * n3, n2);
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t i = 0; i < b.n1(); ++i)
      for (std::size_t j = 0; j < n2; ++j)
        unfolded(k * b.n1() + i, j) = b(i, j, k);
  const Eigen::MatrixXd prod = big * unfolded;
  Tensor3 c(a.n1(), n2, n3);
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t i = 0; i < a.n1(); ++i)
      for (std::size_t j = 0; j < n2; ++j)
        c(i, j, k) = prod(k * a.n1() + i, j);
  return c;
}

}  // namespace ttr
