#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "test_util.hpp"
#include "ttr/spectral.hpp"
#include "ttr/tensor3.hpp"
#include "ttr/tprod.hpp"
#include "ttr/transform.hpp"

using namespace ttr;
using ttr_test::frob;
using ttr_test::rel_err;

namespace {

Tensor3 random_f_symmetric(std::size_t n, std::size_t n3,
                           std::uint64_t seed) {
  Tensor3 c = gaussian_tensor(n, n, n3, seed);
  return c + t_transpose(c);
}

// Diagonal tensor whose tubes are circularly even, which is exactly when
// a real f-diagonal tensor is f-symmetric (even tubes have real spectra).
Tensor3 even_tube_diagonal(std::size_t n, std::size_t n3,
                           std::uint64_t seed) {
  Tensor3 a(n, n, n3);
  Tensor3 raw = gaussian_tensor(n, 1, n3, seed);
  for (std::size_t i = 0; i < n; ++i) {
    Tube t(n3);
    for (std::size_t k = 0; k < n3; ++k) {
      t(k) = 0.5 * (raw(i, 0, k) + raw(i, 0, (n3 - k) % n3));
    }
    a.set_tube(i, i, t);
  }
  return a;
}

double orthonormality_defect(const Tensor3& v) {
  return frob(t_product(t_transpose(v), v) -
              identity_tensor(v.n2(), v.n3()));
}

// Complete-graph Laplacian on every transform slice (only the first
// frontal slice is populated, so all transform slices coincide).
Tensor3 complete_graph_laplacian(std::size_t n, std::size_t n3) {
  Eigen::MatrixXd l = -Eigen::MatrixXd::Ones(n, n);
  l.diagonal().setConstant(double(n) - 1.0);
  Tensor3 t(n, n, n3);
  t.set_slice(0, l);
  return t;
}

}  // namespace

TEST_CASE("identity tensor has unit eigentubes and f-orthogonal slices") {
  EigenPairs ep = eig_f_symmetric(identity_tensor(4, 3), 4,
                                  EigOrder::magnitude);
  for (std::size_t l = 0; l < 4; ++l)
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(std::abs(ep.lambda.tubes(l, k) - 1.0) < 1e-12);
    }
  CHECK(orthonormality_defect(ep.v) < 1e-10);
  CHECK(ep.residual < 1e-10);
  CHECK(std::isinf(ep.selection_gap));  // nothing was rejected

  // Keeping only some of a flat spectrum leaves no margin at all.
  EigenPairs part = eig_f_symmetric(identity_tensor(4, 3), 2,
                                    EigOrder::magnitude);
  CHECK(part.selection_gap == doctest::Approx(0.0));
}

TEST_CASE("eigentubes of an f-diagonal tensor are its tube spectra") {
  const std::size_t n = 5, n3 = 4;
  Tensor3 a = even_tube_diagonal(n, n3, 17);
  REQUIRE(is_f_symmetric(a, 1e-12));
  EigenPairs ep = eig_f_symmetric(a, n, EigOrder::magnitude);

  TransformTensor fa = to_transform(a);
  for (std::size_t k = 0; k < n3; ++k) {
    std::vector<double> want, got;
    for (std::size_t i = 0; i < n; ++i) {
      want.push_back(fa(i, i, k).real());
      got.push_back(ep.lambda.tubes(i, k).real());
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("full decomposition reconstructs the tensor") {
  for (std::uint64_t seed : {1, 2, 3}) {
    for (std::size_t n3 : {1, 2, 5}) {
      Tensor3 a = random_f_symmetric(6, n3, 500 + seed * 10 + n3);
      EigenPairs ep = eig_f_symmetric(a, 6, EigOrder::magnitude);
      const double scale = frob(a);
      CHECK(ep.residual <= 1e-8 * scale);
      CHECK(orthonormality_defect(ep.v) <= 1e-8);
      Tensor3 rebuilt = t_product(
          t_product(ep.v, ep.lambda.to_tensor()), t_transpose(ep.v));
      CHECK(rel_err(rebuilt, a) <= 1e-7);
      // Eigenvalue tubes of an f-symmetric tensor are real per slice.
      CHECK(ep.lambda.tubes.imag().cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("eigenvalue ordering options hold slice by slice") {
  Tensor3 a = random_f_symmetric(6, 4, 99);

  EigenPairs mag = eig_f_symmetric(a, 6, EigOrder::magnitude);
  EigenPairs desc = eig_f_symmetric(a, 6, EigOrder::signed_desc);
  EigenPairs asc = eig_f_symmetric(a, 6, EigOrder::signed_asc);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t l = 0; l + 1 < 6; ++l) {
      CHECK(std::abs(mag.lambda.tubes(l, k)) >=
            std::abs(mag.lambda.tubes(l + 1, k)) - 1e-14);
      CHECK(desc.lambda.tubes(l, k).real() >=
            desc.lambda.tubes(l + 1, k).real() - 1e-14);
      CHECK(asc.lambda.tubes(l, k).real() <=
            asc.lambda.tubes(l + 1, k).real() + 1e-14);
    }
  }
}

TEST_CASE("truncated decomposition keeps the leading eigenvalues") {
  Tensor3 a = random_f_symmetric(7, 3, 123);
  EigenPairs full = eig_f_symmetric(a, 7, EigOrder::magnitude);
  EigenPairs part = eig_f_symmetric(a, 3, EigOrder::magnitude);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) {
      CHECK(part.lambda.tubes(l, k).real() ==
            doctest::Approx(full.lambda.tubes(l, k).real()).epsilon(1e-10));
    }
  CHECK(part.v.n2() == 3);
  CHECK(orthonormality_defect(part.v) <= 1e-8);
  CHECK(part.selection_gap > 0.0);
}

TEST_CASE("depth-one decomposition matches the dense matrix solver") {
  Tensor3 a = random_f_symmetric(6, 1, 321);
  EigenPairs ep = eig_f_symmetric(a, 6, EigOrder::signed_asc);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.slice(0));
  for (std::size_t l = 0; l < 6; ++l) {
    CHECK(ep.lambda.tubes(l, 0).real() ==
          doctest::Approx(es.eigenvalues()(l)).epsilon(1e-10));
  }
}

TEST_CASE("eig_f_symmetric validates its input") {
  CHECK_THROWS_AS(eig_f_symmetric(gaussian_tensor(4, 4, 3, 9), 2,
                                  EigOrder::magnitude),
                  NotFSymmetric);
  Tensor3 a = random_f_symmetric(4, 3, 9);
  CHECK_THROWS_AS(eig_f_symmetric(a, 0, EigOrder::magnitude), ShapeMismatch);
  CHECK_THROWS_AS(eig_f_symmetric(a, 5, EigOrder::magnitude), ShapeMismatch);
  CHECK_THROWS_AS(eig_f_symmetric(gaussian_tensor(3, 4, 2, 1), 1,
                                  EigOrder::magnitude),
                  ShapeMismatch);
}

TEST_CASE("generalized decomposition with identity mass reduces to the "
          "plain one") {
  Tensor3 a = random_f_symmetric(5, 3, 888);
  Tensor3 b = identity_tensor(5, 3);
  EigenPairs gen = generalized_eig(a, b, 5, EigWhich::largest);
  EigenPairs plain = eig_f_symmetric(a, 5, EigOrder::signed_desc);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 5; ++l) {
      CHECK(gen.lambda.tubes(l, k).real() ==
            doctest::Approx(plain.lambda.tubes(l, k).real()).epsilon(1e-9));
    }
}

TEST_CASE("generalized eigenslices are mass-orthonormal with small "
          "residual") {
  Tensor3 a = random_f_symmetric(6, 4, 777);
  Tensor3 c = gaussian_tensor(6, 6, 4, 778);
  Tensor3 b = t_product(c, t_transpose(c)) + identity_tensor(6, 4);
  EigenPairs ep = generalized_eig(a, b, 3, EigWhich::largest);

  Tensor3 vbv = t_product(t_transpose(ep.v), t_product(b, ep.v));
  CHECK(frob(vbv - identity_tensor(3, 4)) <= 1e-8);
  CHECK(ep.residual <= 1e-8 * (frob(a) + frob(b)));
}

TEST_CASE("depth-one generalized decomposition matches the dense solver") {
  Tensor3 a = random_f_symmetric(5, 1, 654);
  Tensor3 c = gaussian_tensor(5, 5, 1, 655);
  Tensor3 b = t_product(c, t_transpose(c)) + identity_tensor(5, 1);
  EigenPairs ep = generalized_eig(a, b, 5, EigWhich::largest);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
      a.slice(0), b.slice(0));
  for (std::size_t l = 0; l < 5; ++l) {
    // Ours are sorted descending, Eigen's ascending.
    CHECK(ep.lambda.tubes(l, 0).real() ==
          doctest::Approx(es.eigenvalues()(4 - l)).epsilon(1e-9));
  }
}

TEST_CASE("smallest_nonzero skips null modes slice by slice") {
  const std::size_t n = 4, n3 = 3;
  Tensor3 l = complete_graph_laplacian(n, n3);
  Tensor3 b = identity_tensor(n, n3);
  EigenPairs ep = generalized_eig(l, b, 2, EigWhich::smallest_nonzero);
  // Complete-graph spectrum is {0, n, n, n}; the zero must be skipped.
  for (std::size_t k = 0; k < n3; ++k) {
    CHECK(ep.lambda.tubes(0, k).real() == doctest::Approx(4.0));
    CHECK(ep.lambda.tubes(1, k).real() == doctest::Approx(4.0));
  }
  CHECK_THROWS_AS(generalized_eig(l, b, 4, EigWhich::smallest_nonzero),
                  InsufficientNonzero);
}

TEST_CASE("generalized decomposition validates its inputs") {
  Tensor3 a = random_f_symmetric(4, 2, 11);
  Tensor3 b = identity_tensor(4, 2);
  CHECK_THROWS_AS(generalized_eig(gaussian_tensor(4, 4, 2, 3), b, 2,
                                  EigWhich::largest),
                  NotFSymmetric);
  CHECK_THROWS_AS(generalized_eig(a, gaussian_tensor(4, 4, 2, 3), 2,
                                  EigWhich::largest),
                  NotFSymmetric);
  Tensor3 neg = identity_tensor(4, 2);
  neg *= -1.0;
  CHECK_THROWS_AS(generalized_eig(a, neg, 2, EigWhich::largest),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(generalized_eig(a, identity_tensor(3, 2), 2,
                                  EigWhich::largest),
                  ShapeMismatch);
}

TEST_CASE("definiteness predicates see through the transform") {
  CHECK(is_positive_definite(identity_tensor(4, 3)));
  CHECK(is_positive_semidefinite(identity_tensor(4, 3)));

  Tensor3 c = gaussian_tensor(5, 5, 3, 2100);
  Tensor3 gram = t_product(c, t_transpose(c));
  CHECK(is_positive_semidefinite(gram));
  CHECK(is_positive_definite(gram + 0.1 * identity_tensor(5, 3)));

  Tensor3 wide = gaussian_tensor(5, 2, 3, 2200);  // rank-deficient gram
  Tensor3 low = t_product(wide, t_transpose(wide));
  CHECK(is_positive_semidefinite(low));
  CHECK_FALSE(is_positive_definite(low));

  Tensor3 lap = complete_graph_laplacian(4, 2);
  CHECK(is_positive_semidefinite(lap));
  CHECK_FALSE(is_positive_definite(lap));

  Tensor3 neg = identity_tensor(3, 2);
  neg *= -1.0;
  CHECK_FALSE(is_positive_semidefinite(neg));
  CHECK_THROWS_AS(is_positive_definite(gaussian_tensor(3, 3, 2, 5)),
                  NotFSymmetric);
}

TEST_CASE("tubal rank counts nonzero singular tubes") {
  CHECK(tubal_rank(identity_tensor(5, 3), 1e-10) == 5);
  CHECK(tubal_rank(Tensor3(4, 4, 3), 1e-10) == 0);

  // Outer product of two random tubes of vectors has rank one.
  Tensor3 u = gaussian_tensor(5, 1, 3, 2300);
  Tensor3 v = gaussian_tensor(4, 1, 3, 2301);
  CHECK(tubal_rank(t_product(u, t_transpose(v)), 1e-10) == 1);

  // Zeroing one diagonal tube of an f-diagonal tensor drops the rank.
  Tensor3 d = even_tube_diagonal(5, 4, 2302);
  for (std::size_t k = 0; k < 4; ++k) d(2, 2, k) = 0.0;
  CHECK(tubal_rank(d, 1e-10) == 4);
}

TEST_CASE("is_laplacian recognises Laplacian tensors and rejects others") {
  CHECK(is_laplacian(complete_graph_laplacian(5, 3), 1e-10));
  CHECK_FALSE(is_laplacian(identity_tensor(4, 2), 1e-10));

  Tensor3 broken = complete_graph_laplacian(5, 3);
  broken(0, 1, 0) = 1.0;  // positive off-diagonal entry
  CHECK_FALSE(is_laplacian(broken, 1e-10));

  Tensor3 unbalanced = complete_graph_laplacian(5, 3);
  unbalanced(0, 0, 0) += 0.5;  // row sum no longer zero
  CHECK_FALSE(is_laplacian(unbalanced, 1e-10));
}

TEST_CASE("f_orthogonalize produces an f-orthonormal basis of the same "
          "span") {
  Tensor3 v = gaussian_tensor(6, 3, 4, 3100);
  Tensor3 q = f_orthogonalize(v);
  CHECK(orthonormality_defect(q) <= 1e-10);

  // Same column space per transform slice: projectors must agree.
  auto vh = detail::transform_full(v);
  auto qh = detail::transform_full(q);
  for (std::size_t k = 0; k < 4; ++k) {
    Eigen::MatrixXcd pv = vh[k] * (vh[k].adjoint() * vh[k]).inverse() *
                          vh[k].adjoint();
    Eigen::MatrixXcd pq = qh[k] * qh[k].adjoint();
    CHECK((pv - pq).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK_THROWS_AS(f_orthogonalize(gaussian_tensor(3, 5, 2, 1)),
                  ShapeMismatch);
}

TEST_CASE("eigenvalue table reconstructs an f-diagonal tensor") {
  Tensor3 a = random_f_symmetric(4, 3, 4100);
  EigenPairs ep = eig_f_symmetric(a, 4, EigOrder::magnitude);
  Tensor3 lam = ep.lambda.to_tensor();
  REQUIRE(lam.n1() == 4);
  REQUIRE(lam.n3() == 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (i != j) CHECK(std::abs(lam(i, j, k)) < 1e-12);
      }
  // Diagonal tubes transform back to the recorded eigenvalues.
  TransformTensor fl = to_transform(lam);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(fl(i, i, k) - ep.lambda.tubes(i, k)) < 1e-10);
    }
}
