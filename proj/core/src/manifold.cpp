#include "ttr/manifold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "ttr/errors.hpp"
#include "ttr/parallel.hpp"
#include "ttr/tprod.hpp"

namespace ttr {

namespace {

Tensor3 symmetrized(const Tensor3& a) {
  Tensor3 s = a;
  s += t_transpose(a);
  s *= 0.5;
  return s;
}

// x * lap * x' with the roundoff asymmetry squeezed back out.
Tensor3 scatter_through(const Tensor3& x, const Tensor3& lap) {
  return symmetrized(t_product(t_product(x, lap), t_transpose(x)));
}

// Weights reconstructing a sample from its neighbours: minimise w'Gw
// subject to sum(w) = 1.  When the ones vector reaches the null space of
// G the minimum is an exact affine reconstruction; return the
// minimum-norm exact solution.  Otherwise solve G w = 1 and normalise,
// bumping the diagonal by reg_eps * tr(G)/k first when G is
// ill-conditioned (condition above 1e12).
Eigen::VectorXd reconstruction_weights(const Eigen::MatrixXd& gram,
                                       double reg_eps, std::size_t slice,
                                       std::size_t sample) {
  const Eigen::Index k = gram.rows();
  const std::string where = "sample " + std::to_string(sample + 1) +
                            " in slice " + std::to_string(slice + 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success)
    throw SingularGram(
        "lme_weights: eigendecomposition of the local Gram matrix failed for " +
        where);
  const Eigen::VectorXd& sig = es.eigenvalues();  // ascending
  const double smax = std::max(0.0, sig(k - 1));
  const double null_tol = smax / 1e12;
  const Eigen::VectorXd coef =
      es.eigenvectors().transpose() * Eigen::VectorXd::Ones(k);

  bool deficient = false;
  double null_mass = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (sig(i) <= null_tol) {
      deficient = true;
      null_mass += coef(i) * coef(i);
    }
  }

  if (deficient && null_mass > 1e-9 * static_cast<double>(k)) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < k; ++i)
      if (sig(i) <= null_tol) w += (coef(i) / null_mass) * es.eigenvectors().col(i);
    return w;
  }

  Eigen::MatrixXd g = gram;
  if (deficient) {
    if (reg_eps <= 0.0)
      throw SingularGram("lme_weights: the local Gram matrix for " + where +
                         " is rank-deficient, no exact reconstruction exists, "
                         "and reg_eps is zero");
    g.diagonal().array() += reg_eps * gram.trace() / static_cast<double>(k);
  }
  Eigen::VectorXd w = g.ldlt().solve(Eigen::VectorXd::Ones(k));
  const double s = w.sum();
  if (!std::isfinite(s) ||
      std::abs(s) <= 1e-12 * std::max(1.0, w.cwiseAbs().sum()))
    throw SingularGram("lme_weights: reconstruction weights for " + where +
                       " cannot be normalised to unit sum");
  return w / s;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::mlde:
      return "mlde";
    case Method::mle:
      return "mle";
    case Method::lme:
      return "lme";
  }
  throw ValidationError("method_name: unknown method tag");
}

MldeModel mlde_fit(const Tensor3& x, const std::vector<int>& labels,
                   std::size_t d, std::size_t k1, std::size_t k2,
                   const WeightRule& weights, double eps,
                   std::size_t max_iter, std::uint64_t seed) {
  const std::size_t p = x.n1();
  const std::size_t n = x.n2();
  if (labels.size() != n)
    throw LabelMismatch("mlde_fit: got " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(n) + " samples");
  if (d < 1 || d >= p)
    throw ValidationError("mlde_fit: d must lie in [1, " + std::to_string(p) +
                          "), got " + std::to_string(d));
  if (std::all_of(labels.begin(), labels.end(),
                  [&](int l) { return l == labels.front(); }))
    throw IllPosed(
        "mlde_fit: every sample carries the same label, so the between-class "
        "graph has no edges and the trace ratio is undefined; provide at "
        "least two classes");

  const Tensor3 rows = swap_modes12(x);

  GraphSpec within;
  within.rule = NeighborRule::knn;
  within.k = k1;
  within.weights = weights;
  within.mode = CandidateMode::within_class;
  within.domain = GraphDomain::transform;

  GraphSpec between = within;
  between.k = k2;
  between.mode = CandidateMode::between_class;

  const AffinityGraphs gw = build_graphs(rows, labels, within);
  const AffinityGraphs gb = build_graphs(rows, labels, between);

  const Tensor3 l_within = scatter_through(x, gw.lap);
  const Tensor3 l_between = scatter_through(x, gb.lap);

  const Tensor3 v0 = f_orthogonalize(gaussian_tensor(p, d, x.n3(), seed));
  try {
    TraceRatioResult res = newton_qr({l_between, l_within, d}, v0, eps, max_iter);
    return {std::move(res.v), res.rho, std::move(res.trace)};
  } catch (const IllPosed& e) {
    throw IllPosed(std::string(e.what()) +
                   "; the within-class scatter lacks rank, raising k1 or "
                   "lowering d can restore it");
  }
}

Tensor3 mlde_project(const MldeModel& m, const Tensor3& x) {
  if (x.n1() != m.v.n1() || x.n3() != m.v.n3())
    throw ShapeMismatch("mlde_project: model expects " +
                        std::to_string(m.v.n1()) + " features and depth " +
                        std::to_string(m.v.n3()) + ", got " +
                        std::to_string(x.n1()) + " and " +
                        std::to_string(x.n3()));
  return t_product(t_transpose(m.v), x);
}

Embedding mle_fit(const Tensor3& x, std::size_t d, std::size_t k,
                  WeightKind weights, double t) {
  const std::size_t n = x.n1();
  if (d < 1 || d >= n)
    throw ValidationError("mle_fit: d must lie in [1, " + std::to_string(n) +
                          "), got " + std::to_string(d));

  GraphSpec spec;
  spec.rule = NeighborRule::knn;
  spec.k = k;
  spec.weights = WeightRule{weights, t};
  spec.mode = CandidateMode::unsupervised;
  spec.domain = GraphDomain::transform;

  const AffinityGraphs g = build_graphs(x, {}, spec);
  if (g.isolated_vertices > 0)
    throw SingularDegree("mle_fit: " + std::to_string(g.isolated_vertices) +
                         " slice-vertex pairs have zero degree, so the degree "
                         "tensor is singular; widen the neighbourhood or "
                         "enlarge t");

  EigenPairs ep =
      generalized_eig(g.lap, g.deg.to_tensor(), d, EigWhich::smallest_nonzero);
  FDiagonal lam = std::move(ep.lambda);
  lam.tubes *= static_cast<double>(x.n3());
  return {std::move(ep.v), std::move(lam), Method::mle, ep.residual};
}

LmeWeights lme_weights(const Tensor3& x, std::size_t k, double reg_eps) {
  const std::size_t n = x.n1();
  const std::size_t p = x.n2();
  const std::size_t n3 = x.n3();
  if (n < 2)
    throw ValidationError("lme_weights: need at least two samples, got " +
                          std::to_string(n));
  if (k < 1 || k >= n)
    throw BadK("lme_weights: k must lie in [1, " + std::to_string(n) +
               "), got " + std::to_string(k));
  if (reg_eps < 0.0)
    throw ValidationError("lme_weights: reg_eps must be non-negative");

  LmeWeights out;
  out.neighbors.assign(n3, {});
  out.e.assign(n3, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                         static_cast<Eigen::Index>(k)));
  out.w = Tensor3(n, n, n3);

  parallel_for(0, n3, [&](std::size_t r) {
    const Eigen::MatrixXd rows = x.slice(r);
    const Eigen::MatrixXd d2 =
        detail::pairwise_sq_dist(rows.cast<std::complex<double>>());
    std::vector<std::vector<std::size_t>> cand(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) cand[i].push_back(j);
    out.neighbors[r] = detail::knn_select(d2, cand, k);

    for (std::size_t i = 0; i < n; ++i) {
      const auto& nb = out.neighbors[r][i];
      Eigen::MatrixXd diffs(static_cast<Eigen::Index>(k),
                            static_cast<Eigen::Index>(p));
      for (std::size_t j = 0; j < k; ++j)
        diffs.row(static_cast<Eigen::Index>(j)) =
            rows.row(static_cast<Eigen::Index>(i)) -
            rows.row(static_cast<Eigen::Index>(nb[j]));
      const Eigen::MatrixXd gram = diffs * diffs.transpose();
      const Eigen::VectorXd wi = reconstruction_weights(gram, reg_eps, r, i);
      for (std::size_t j = 0; j < k; ++j) {
        out.e[r](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            wi(static_cast<Eigen::Index>(j));
        out.w(i, nb[j], r) = wi(static_cast<Eigen::Index>(j));
      }
    }
  });
  return out;
}

Embedding lme_fit(const Tensor3& x, std::size_t d, std::size_t k,
                  double reg_eps) {
  const std::size_t n = x.n1();
  if (d < 1 || d >= n)
    throw ValidationError("lme_fit: d must lie in [1, " + std::to_string(n) +
                          "), got " + std::to_string(d));

  const LmeWeights lw = lme_weights(x, k, reg_eps);
  Tensor3 t = identity_tensor(n, x.n3());
  t -= lw.w;
  const Tensor3 m = symmetrized(t_product(t_transpose(t), t));

  EigenPairs ep = generalized_eig(m, identity_tensor(n, x.n3()), d,
                                  EigWhich::smallest_nonzero);
  Tensor3 y = std::move(ep.v);
  y *= std::sqrt(static_cast<double>(n));
  FDiagonal lam = std::move(ep.lambda);
  lam.tubes *= static_cast<double>(n) * static_cast<double>(x.n3());
  return {std::move(y), std::move(lam), Method::lme, ep.residual};
}

}  // namespace ttr
