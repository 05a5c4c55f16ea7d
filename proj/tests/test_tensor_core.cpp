#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "test_util.hpp"
#include "ttr/tensor3.hpp"
#include "ttr/tprod.hpp"
#include "ttr/transform.hpp"

using namespace ttr;
using ttr_test::frob;
using ttr_test::max_abs_diff;
using ttr_test::rel_err;

namespace {

// Textbook DFT along one tube, quadratic and FFTW-free on purpose.
std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * M_PI * double(k) * double(t) / double(n);
      acc += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

// Circular convolution of two tubes, the scalar multiplication of the
// algebra, again written the slow direct way.
Tube circular_conv(const Tube& a, const Tube& b) {
  const std::size_t n = a.size();
  Tube c = Tube::Zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c((i + j) % n) += a(i) * b(j);
  return c;
}

}  // namespace

TEST_CASE("storage layout is frontal-slice-major with row-major slices") {
  Tensor3 t(2, 3, 2);
  double v = 0.0;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) t(i, j, k) = v++;
  // (i, j, k) should land at (k*n1 + i)*n2 + j, which is exactly the fill
  // order used above.
  for (std::size_t p = 0; p < t.size(); ++p) {
    CHECK(t.data()[p] == doctest::Approx(double(p)));
  }
  CHECK(t(1, 2, 0) == doctest::Approx(5.0));
  CHECK(t(0, 0, 1) == doctest::Approx(6.0));
}

TEST_CASE("tube and slice accessors round-trip") {
  Tensor3 t = gaussian_tensor(3, 4, 5, 7);
  Tube tube = t.tube(2, 1);
  CHECK(tube.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(tube(k) == t(2, 1, k));
  Tube replacement = Tube::LinSpaced(5, 1.0, 5.0);
  t.set_tube(2, 1, replacement);
  CHECK(t(2, 1, 3) == doctest::Approx(4.0));

  Eigen::MatrixXd s = t.slice(2);
  t.set_slice(2, 2.0 * s);
  CHECK(t.slice(2).isApprox(2.0 * s));

  CHECK_THROWS_AS(t.set_tube(0, 0, Tube::Zero(4)), ShapeMismatch);
  CHECK_THROWS_AS(t.set_slice(0, Eigen::MatrixXd::Zero(2, 2)), ShapeMismatch);
}

TEST_CASE("gaussian_tensor is reproducible per seed") {
  Tensor3 a = gaussian_tensor(4, 3, 6, 99);
  Tensor3 b = gaussian_tensor(4, 3, 6, 99);
  Tensor3 c = gaussian_tensor(4, 3, 6, 100);
  CHECK(max_abs_diff(a, b) == 0.0);
  CHECK(frob(a - c) > 0.0);
}

TEST_CASE("forward transform matches a naive DFT") {
  for (std::size_t n3 : {1, 2, 3, 4, 5, 8}) {
    Tensor3 a = gaussian_tensor(3, 2, n3, 11 + n3);
    TransformTensor ft = to_transform(a);
    CHECK(ft.origin() == TransformOrigin::derived_from_real);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        std::vector<double> tube(n3);
        for (std::size_t k = 0; k < n3; ++k) tube[k] = a(i, j, k);
        const auto want = naive_dft(tube);
        for (std::size_t k = 0; k < n3; ++k) {
          CHECK(std::abs(ft(i, j, k) - want[k]) < 1e-12 * (1.0 + frob(a)));
        }
      }
    }
  }
}

TEST_CASE("transform of the identity tensor is identity in every slice") {
  TransformTensor ft = to_transform(identity_tensor(3, 4));
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(ft(i, j, k) == std::complex<double>(i == j ? 1.0 : 0.0, 0.0));
      }
    }
  }
}

TEST_CASE("transform output is conjugate-symmetric, with real self-paired "
          "slices") {
  for (std::size_t n3 : {2, 4, 5, 7, 8}) {
    Tensor3 a = gaussian_tensor(2, 3, n3, 21 + n3);
    TransformTensor ft = to_transform(a);
    for (std::size_t k = 0; k < n3; ++k) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (self_paired(k, n3)) {
            CHECK(ft(i, j, k).imag() == 0.0);
          } else {
            CHECK(ft(i, j, (n3 - k) % n3) == std::conj(ft(i, j, k)));
          }
        }
      }
    }
  }
}

TEST_CASE("transform round-trips to 1e-12") {
  for (std::size_t n3 : {1, 2, 3, 4, 6, 9}) {
    Tensor3 a = gaussian_tensor(4, 5, n3, 31 + n3);
    CHECK(rel_err(from_transform(to_transform(a)), a) < 1e-12);
  }
  Tensor3 z(3, 3, 4);
  CHECK(frob(from_transform(to_transform(z))) == 0.0);
}

TEST_CASE("depth-one transform is the identity map") {
  Tensor3 a = gaussian_tensor(3, 3, 1, 5);
  TransformTensor ft = to_transform(a);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(ft(i, j, 0).real() == a(i, j, 0));
      CHECK(ft(i, j, 0).imag() == 0.0);
    }
}

TEST_CASE("from_transform rejects spectra that break conjugate symmetry") {
  Tensor3 a = gaussian_tensor(3, 3, 4, 77);
  TransformTensor ft = to_transform(a);
  ft(1, 2, 1) += std::complex<double>(0.5, 0.25);  // break one mirror pair
  CHECK_THROWS_AS(from_transform(ft), SymmetryViolation);

  TransformTensor bad_dc = to_transform(a);
  bad_dc(0, 0, 0) += std::complex<double>(0.0, 1.0);  // DC must stay real
  CHECK_THROWS_AS(from_transform(bad_dc), SymmetryViolation);
}

TEST_CASE("block-circulant matrix has the right block pattern") {
  Tensor3 a(2, 2, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    a.set_slice(k, Eigen::MatrixXd::Constant(2, 2, double(k + 1)));
  }
  Eigen::MatrixXd big = bcirc_matrix(a);
  REQUIRE(big.rows() == 6);
  REQUIRE(big.cols() == 6);
  // Blocks cycle as (i - j) mod 3, so the first block column reads
  // slices 1, 2, 3 top to bottom and each following column rotates down.
  auto block_value = [&](std::size_t bi, std::size_t bj) {
    return big(bi * 2, bj * 2);
  };
  CHECK(block_value(0, 0) == 1.0);
  CHECK(block_value(1, 0) == 2.0);
  CHECK(block_value(2, 0) == 3.0);
  CHECK(block_value(0, 1) == 3.0);
  CHECK(block_value(1, 1) == 1.0);
  CHECK(block_value(2, 1) == 2.0);
  CHECK(block_value(0, 2) == 2.0);
  CHECK(block_value(1, 2) == 3.0);
  CHECK(block_value(2, 2) == 1.0);
}

TEST_CASE("t_product agrees with the block-circulant oracle") {
  struct Shape {
    std::size_t n1, n2, m, n3;
  };
  const Shape shapes[] = {{2, 3, 4, 1}, {3, 2, 2, 2}, {4, 4, 4, 3},
                          {2, 5, 3, 4}, {5, 2, 4, 5}, {3, 3, 3, 8}};
  for (const Shape& s : shapes) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Tensor3 a = gaussian_tensor(s.n1, s.n2, s.n3, 1000 + seed);
      Tensor3 b = gaussian_tensor(s.n2, s.m, s.n3, 2000 + seed);
      CHECK(rel_err(t_product(a, b), bcirc_oracle(a, b)) < 1e-12);
    }
  }
}

TEST_CASE("t_product with the identity tensor is a no-op") {
  Tensor3 a = gaussian_tensor(4, 3, 5, 8);
  CHECK(rel_err(t_product(a, identity_tensor(3, 5)), a) < 1e-13);
  CHECK(rel_err(t_product(identity_tensor(4, 5), a), a) < 1e-13);
}

TEST_CASE("t_product of tubes is circular convolution") {
  Tensor3 a = gaussian_tensor(1, 1, 6, 3);
  Tensor3 b = gaussian_tensor(1, 1, 6, 4);
  Tensor3 c = t_product(a, b);
  Tube want = circular_conv(a.tube(0, 0), b.tube(0, 0));
  CHECK((c.tube(0, 0) - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("t_product is associative") {
  Tensor3 a = gaussian_tensor(2, 3, 4, 51);
  Tensor3 b = gaussian_tensor(3, 4, 4, 52);
  Tensor3 c = gaussian_tensor(4, 2, 4, 53);
  CHECK(rel_err(t_product(t_product(a, b), c),
                t_product(a, t_product(b, c))) < 1e-12);
}

TEST_CASE("t_product rejects non-conforming operands") {
  Tensor3 a = gaussian_tensor(2, 3, 4, 1);
  CHECK_THROWS_AS(t_product(a, gaussian_tensor(2, 3, 4, 2)), ShapeMismatch);
  CHECK_THROWS_AS(t_product(a, gaussian_tensor(3, 2, 5, 3)), ShapeMismatch);
  CHECK_THROWS_AS(bcirc_oracle(a, gaussian_tensor(2, 3, 4, 4)),
                  ShapeMismatch);
}

TEST_CASE("bcirc refuses to materialise huge matrices") {
  Tensor3 big(300, 300, 16);
  CHECK_THROWS_AS(bcirc_matrix(big), ValidationError);
}

TEST_CASE("t_transpose reverses the trailing slices and transposes each") {
  Tensor3 a = gaussian_tensor(2, 3, 4, 61);
  Tensor3 at = t_transpose(a);
  REQUIRE(at.n1() == 3);
  REQUIRE(at.n2() == 2);
  CHECK(at.slice(0).isApprox(a.slice(0).transpose()));
  CHECK(at.slice(1).isApprox(a.slice(3).transpose()));
  CHECK(at.slice(2).isApprox(a.slice(2).transpose()));
  CHECK(at.slice(3).isApprox(a.slice(1).transpose()));
}

TEST_CASE("t_transpose is an involution and reverses products") {
  Tensor3 a = gaussian_tensor(3, 4, 5, 71);
  Tensor3 b = gaussian_tensor(4, 2, 5, 72);
  CHECK(max_abs_diff(t_transpose(t_transpose(a)), a) == 0.0);
  CHECK(rel_err(t_transpose(t_product(a, b)),
                t_product(t_transpose(b), t_transpose(a))) < 1e-12);
}

TEST_CASE("t_transpose conjugates every transform slice") {
  Tensor3 a = gaussian_tensor(3, 3, 4, 73);
  TransformTensor fa = to_transform(a);
  TransformTensor fat = to_transform(t_transpose(a));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK((fat.slice(k) - fa.slice(k).adjoint()).cwiseAbs().maxCoeff() <
          1e-12 * (1.0 + frob(a)));
  }
}

TEST_CASE("trace equals the first frontal slice trace") {
  for (std::size_t n3 : {1, 2, 5, 8}) {
    Tensor3 a = gaussian_tensor(4, 4, n3, 400 + n3);
    CHECK(trace(a) == doctest::Approx(a.slice(0).trace()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(trace(gaussian_tensor(2, 3, 2, 1)), ShapeMismatch);
}

TEST_CASE("trace is linear and invariant under t_transpose") {
  Tensor3 a = gaussian_tensor(3, 3, 4, 81);
  Tensor3 b = gaussian_tensor(3, 3, 4, 82);
  CHECK(trace(a + b) == doctest::Approx(trace(a) + trace(b)).epsilon(1e-12));
  CHECK(trace(t_transpose(a)) == doctest::Approx(trace(a)).epsilon(1e-12));
}

TEST_CASE("norm and inner product agree with elementwise computation") {
  Tensor3 a = gaussian_tensor(3, 5, 4, 91);
  Tensor3 b = gaussian_tensor(3, 5, 4, 92);
  CHECK(frobenius_norm(a) == doctest::Approx(frob(a)).epsilon(1e-12));
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a.data()[i] * b.data()[i];
  }
  CHECK(inner_product(a, b) == doctest::Approx(dot).epsilon(1e-10));
  // Symmetry of the inner product comes from the cyclic trace property.
  CHECK(inner_product(a, b) ==
        doctest::Approx(inner_product(b, a)).epsilon(1e-10));
}

TEST_CASE("is_f_symmetric accepts a + a^T and rejects a generic tensor") {
  Tensor3 a = gaussian_tensor(4, 4, 5, 101);
  CHECK(is_f_symmetric(a + t_transpose(a), 1e-12));
  CHECK_FALSE(is_f_symmetric(a, 1e-6));
  CHECK_FALSE(is_f_symmetric(gaussian_tensor(3, 4, 2, 1), 1e-6));
  // Depth one degenerates to plain matrix symmetry.
  Tensor3 m(3, 3, 1);
  m.set_slice(0, Eigen::MatrixXd::Identity(3, 3));
  CHECK(is_f_symmetric(m, 1e-15));
}

TEST_CASE("swap_modes12 transposes faces without touching depth") {
  Tensor3 a = gaussian_tensor(3, 4, 2, 111);
  Tensor3 s = swap_modes12(a);
  REQUIRE(s.n1() == 4);
  REQUIRE(s.n2() == 3);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(s.slice(k).isApprox(a.slice(k).transpose()));
  }
  CHECK(max_abs_diff(swap_modes12(s), a) == 0.0);
}

TEST_CASE("take_rows keeps the requested rows in order") {
  Tensor3 a = gaussian_tensor(5, 3, 2, 121);
  Tensor3 sub = take_rows(a, {4, 0, 2});
  REQUIRE(sub.n1() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(sub(0, j, k) == a(4, j, k));
      CHECK(sub(1, j, k) == a(0, j, k));
      CHECK(sub(2, j, k) == a(2, j, k));
    }
  CHECK_THROWS_AS(take_rows(a, {5}), ShapeMismatch);
}
