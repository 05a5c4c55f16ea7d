#include "matrix_refs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matref {

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& v) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  return qr.householderQ() *
         Eigen::MatrixXd::Identity(v.rows(), v.cols());
}

// Top-d eigenvectors of a symmetric matrix by descending eigenvalue.
Eigen::MatrixXd top_eigenvectors(const Eigen::MatrixXd& m, std::size_t d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd v(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    v.col(j) = es.eigenvectors().col(n - 1 - static_cast<Eigen::Index>(j));
  }
  return v;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d2(i, j) = (x.row(i) - x.row(j)).squaredNorm();
  return d2;
}

// Symmetric heat-kernel weight matrix on an OR-symmetrised kNN graph.
Eigen::MatrixXd heat_graph(const Eigen::MatrixXd& x,
                           const std::vector<std::vector<std::size_t>>& knn,
                           double t) {
  const Eigen::Index n = x.rows();
  const Eigen::MatrixXd d2 = squared_distances(x);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t j : knn[static_cast<std::size_t>(i)]) {
      const double wij = std::exp(-d2(i, static_cast<Eigen::Index>(j)) / t);
      w(i, static_cast<Eigen::Index>(j)) = wij;
      w(static_cast<Eigen::Index>(j), i) = wij;
    }
  }
  return w;
}

Eigen::MatrixXd laplacian_of(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd l = -w;
  l.diagonal() += w.rowwise().sum();
  return l;
}

}  // namespace

NewtonResult trace_ratio_newton(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b, std::size_t d,
                                double eps, std::size_t max_iter) {
  const Eigen::Index p = a.rows();
  Eigen::MatrixXd v = orthonormalize(Eigen::MatrixXd::Identity(p, d));
  double rho = (v.transpose() * a * v).trace() /
               (v.transpose() * b * v).trace();
  NewtonResult out;
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    v = top_eigenvectors(a - rho * b, d);
    const double num = (v.transpose() * a * v).trace();
    const double den = (v.transpose() * b * v).trace();
    const double rho_next = num / den;
    out.iterations = iter;
    if (std::abs(rho_next - rho) <= eps) {
      out.converged = true;
      rho = rho_next;
      v = top_eigenvectors(a - rho * b, d);
      break;
    }
    rho = rho_next;
  }
  out.v = v;
  out.rho = rho;
  return out;
}

std::vector<std::vector<std::size_t>> knn_rows(
    const Eigen::MatrixXd& x,
    const std::vector<std::vector<std::size_t>>& candidates, std::size_t k) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  const Eigen::MatrixXd d2 = squared_distances(x);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cand = candidates[i];
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
      const double da = d2(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(a));
      const double db = d2(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(b));
      return da < db || (da == db && a < b);
    });
    if (cand.size() > k) cand.resize(k);
    out[i] = cand;
  }
  return out;
}

Eigen::MatrixXd lde_fit(const Eigen::MatrixXd& x,
                        const std::vector<int>& labels, std::size_t d,
                        std::size_t k1, std::size_t k2, double t,
                        double eps, std::size_t max_iter) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  std::vector<std::vector<std::size_t>> same(n), other(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      (labels[i] == labels[j] ? same[i] : other[i]).push_back(j);
    }
  }
  const Eigen::MatrixXd ww = heat_graph(x, knn_rows(x, same, k1), t);
  const Eigen::MatrixXd wb = heat_graph(x, knn_rows(x, other, k2), t);
  const Eigen::MatrixXd sw = x.transpose() * laplacian_of(ww) * x;
  const Eigen::MatrixXd sb = x.transpose() * laplacian_of(wb) * x;
  return trace_ratio_newton(sb, sw, d, eps, max_iter).v;
}

Eigen::MatrixXd laplacian_eigenmaps(const Eigen::MatrixXd& x, std::size_t d,
                                    std::size_t k, double t) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  std::vector<std::vector<std::size_t>> all(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) all[i].push_back(j);
  const Eigen::MatrixXd w = heat_graph(x, knn_rows(x, all, k), t);
  const Eigen::MatrixXd l = laplacian_of(w);
  Eigen::MatrixXd deg = Eigen::MatrixXd::Zero(n, n);
  deg.diagonal() = w.rowwise().sum();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(l, deg);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double zero_tol = 1e-8 * double(n) * ev.cwiseAbs().maxCoeff();
  Eigen::MatrixXd y(n, d);
  std::size_t found = 0;
  for (Eigen::Index i = 0; i < ev.size() && found < d; ++i) {
    if (std::abs(ev(i)) <= zero_tol) continue;
    y.col(static_cast<Eigen::Index>(found++)) = es.eigenvectors().col(i);
  }
  if (found < d) {
    throw std::runtime_error("laplacian_eigenmaps: spectrum too degenerate");
  }
  return y;
}

Eigen::MatrixXd lle(const Eigen::MatrixXd& x, std::size_t d, std::size_t k,
                    double reg_eps) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  std::vector<std::vector<std::size_t>> all(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) all[i].push_back(j);
  const auto knn = knn_rows(x, all, k);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t kk = knn[i].size();
    Eigen::MatrixXd diffs(kk, x.cols());
    for (std::size_t j = 0; j < kk; ++j) {
      diffs.row(static_cast<Eigen::Index>(j)) =
          x.row(static_cast<Eigen::Index>(i)) -
          x.row(static_cast<Eigen::Index>(knn[i][j]));
    }
    Eigen::MatrixXd gram = diffs * diffs.transpose();
    // Regularise only when the local Gram system is ill-conditioned.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= smax / 1e12) {
      gram += reg_eps * gram.trace() / double(kk) *
              Eigen::MatrixXd::Identity(kk, kk);
    }
    Eigen::VectorXd wi = gram.ldlt().solve(Eigen::VectorXd::Ones(kk));
    wi /= wi.sum();
    for (std::size_t j = 0; j < kk; ++j) {
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(knn[i][j])) =
          wi(static_cast<Eigen::Index>(j));
    }
  }

  const Eigen::MatrixXd t =
      Eigen::MatrixXd::Identity(n, n) - w;
  const Eigen::MatrixXd m = t.transpose() * t;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double zero_tol = 1e-8 * double(n) * ev.cwiseAbs().maxCoeff();
  Eigen::MatrixXd y(n, d);
  std::size_t found = 0;
  for (Eigen::Index i = 0; i < ev.size() && found < d; ++i) {
    if (std::abs(ev(i)) <= zero_tol) continue;
    y.col(static_cast<Eigen::Index>(found++)) = es.eigenvectors().col(i);
  }
  if (found < d) {
    throw std::runtime_error("lle: spectrum too degenerate");
  }
  return y;
}

double projector_distance(const Eigen::MatrixXd& a,
                          const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd qa = orthonormalize(a);
  const Eigen::MatrixXd qb = orthonormalize(b);
  return (qa * qa.transpose() - qb * qb.transpose()).norm();
}

}  // namespace matref
