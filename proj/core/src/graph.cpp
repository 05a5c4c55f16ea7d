#include "ttr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ttr/parallel.hpp"
#include "ttr/transform.hpp"

namespace ttr {

namespace detail {

Eigen::MatrixXd pairwise_sq_dist(const Eigen::MatrixXcd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (rows.row(i) - rows.row(j)).squaredNorm();
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

std::vector<std::vector<std::size_t>> knn_select(
    const Eigen::MatrixXd& d2,
    const std::vector<std::vector<std::size_t>>& candidates, std::size_t k) {
  const std::size_t n = candidates.size();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cand = candidates[i];
    std::sort(cand.begin(), cand.end(),
              [&](std::size_t a, std::size_t b) {
                const double da = d2(i, a), db = d2(i, b);
                return da < db || (da == db && a < b);
              });
    if (cand.size() > k) cand.resize(k);
    out[i] = std::move(cand);
  }
  return out;
}

}  // namespace detail

namespace {

struct SliceGraph {
  Eigen::MatrixXd w;
  std::size_t isolated = 0;
};

// One graph over the rows of a single slice.  Distances, candidate
// filtering, adjacency, and weights all live here so the transform and
// spatial routes share every rule.
SliceGraph build_slice_graph(const Eigen::MatrixXcd& rows,
                             const std::vector<int>& labels,
                             const GraphSpec& spec) {
  const std::size_t n = static_cast<std::size_t>(rows.rows());
  const Eigen::MatrixXd d2 = detail::pairwise_sq_dist(rows);

  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      switch (spec.mode) {
        case CandidateMode::unsupervised:
          candidates[i].push_back(j);
          break;
        case CandidateMode::within_class:
          if (labels[i] == labels[j]) candidates[i].push_back(j);
          break;
        case CandidateMode::between_class:
          if (labels[i] != labels[j]) candidates[i].push_back(j);
          break;
      }
    }
  }

  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  if (spec.rule == NeighborRule::knn) {
    const auto knn = detail::knn_select(d2, candidates, spec.k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : knn[i]) {
        adj(i, j) = 1.0;
        adj(j, i) = 1.0;  // OR-symmetrised
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : candidates[i]) {
        if (d2(i, j) < spec.epsilon) adj(i, j) = 1.0;
      }
    }
  }

  double t_eff = 1.0;
  if (spec.weights.kind == WeightKind::heat) {
    t_eff = spec.weights.t;
    if (!(t_eff > 0.0)) {
      // Median of the squared distances over candidate pairs.
      std::vector<double> pool;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j : candidates[i]) {
          if (j > i) pool.push_back(d2(i, j));
        }
      }
      if (!pool.empty()) {
        const std::size_t mid = (pool.size() - 1) / 2;
        std::nth_element(pool.begin(), pool.begin() + mid, pool.end());
        t_eff = pool[mid];
      }
      if (!(t_eff > 0.0)) t_eff = 1.0;
    }
  }

  SliceGraph out;
  out.w = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (adj(i, j) == 0.0) continue;
      out.w(i, j) = spec.weights.kind == WeightKind::binary
                        ? 1.0
                        : std::exp(-d2(i, j) / t_eff);
      deg += out.w(i, j);
    }
    if (deg == 0.0) ++out.isolated;
  }
  return out;
}

void validate_spec(const Tensor3& x, const std::vector<int>& labels,
                   const GraphSpec& spec) {
  const std::size_t n = x.n1();
  if (n < 2) {
    throw ShapeMismatch("build_graphs: need at least two samples");
  }
  if (spec.rule == NeighborRule::knn && (spec.k < 1 || spec.k >= n)) {
    throw BadK("build_graphs: k must satisfy 1 <= k <= " +
               std::to_string(n - 1) + ", got " + std::to_string(spec.k));
  }
  if (spec.rule == NeighborRule::epsilon && !(spec.epsilon > 0.0)) {
    throw ValidationError("build_graphs: epsilon must be positive");
  }
  if (spec.mode != CandidateMode::unsupervised) {
    if (labels.size() != n) {
      throw LabelMismatch("build_graphs: class-aware mode needs one label "
                          "per sample, got " + std::to_string(labels.size()) +
                          " for " + std::to_string(n));
    }
    for (int l : labels) {
      if (l < 1) throw LabelMismatch("build_graphs: labels are 1-based");
    }
  }
}

}  // namespace

AffinityGraphs build_graphs(const Tensor3& x, const std::vector<int>& labels,
                            const GraphSpec& spec) {
  validate_spec(x, labels, spec);
  const std::size_t n = x.n1(), n3 = x.n3();

  AffinityGraphs out;
  std::vector<std::size_t> isolated_per_slice;

  if (spec.domain == GraphDomain::transform) {
    const std::vector<Eigen::MatrixXcd> xh = detail::transform_half(x);
    std::vector<SliceGraph> slices(xh.size());
    parallel_for(0, xh.size(), [&](std::size_t k) {
      slices[k] = build_slice_graph(xh[k], labels, spec);
    });
    // Mirror slices reuse their partner's graph: conjugation preserves
    // row distances, so the weights are identical and the spatial tensor
    // comes back real.
    std::vector<Eigen::MatrixXcd> what(slices.size());
    isolated_per_slice.resize(slices.size());
    for (std::size_t k = 0; k < slices.size(); ++k) {
      what[k] = slices[k].w.cast<std::complex<double>>();
      isolated_per_slice[k] = slices[k].isolated;
    }
    out.w = detail::inverse_from_half(what, n3);
    for (std::size_t k = 0; k < n3; ++k) {
      const std::size_t src = std::min(k, n3 - k);
      out.isolated_vertices += isolated_per_slice[src];
    }
  } else {
    out.w = Tensor3(n, n, n3);
    std::vector<SliceGraph> slices(n3);
    parallel_for(0, n3, [&](std::size_t r) {
      Eigen::MatrixXcd rows = x.slice(r).cast<std::complex<double>>();
      slices[r] = build_slice_graph(rows, labels, spec);
    });
    for (std::size_t r = 0; r < n3; ++r) {
      out.w.set_slice(r, slices[r].w);
      out.isolated_vertices += slices[r].isolated;
    }
  }

  auto dl = degree_and_laplacian(out.w);
  out.deg = std::move(dl.first);
  out.lap = std::move(dl.second);
  return out;
}

std::pair<FDiagonal, Tensor3> degree_and_laplacian(const Tensor3& w) {
  if (w.n1() != w.n2()) {
    throw ShapeMismatch("degree_and_laplacian: tensor is not square");
  }
  const std::size_t n = w.n1(), n3 = w.n3();

  // Row sums commute with the tube transform, so the spatial degree
  // tubes transform into the per-slice degrees.
  Tensor3 deg_tubes(n, 1, n3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n3; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += w(i, j, k);
      deg_tubes(i, 0, k) = s;
    }

  FDiagonal deg;
  deg.count = n;
  deg.n3 = n3;
  deg.tubes.resize(n, n3);
  const std::vector<Eigen::MatrixXcd> dh = detail::transform_full(deg_tubes);
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t i = 0; i < n; ++i) deg.tubes(i, k) = dh[k](i, 0);

  Tensor3 lap = -1.0 * w;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n3; ++k) {
      lap(i, i, k) += deg_tubes(i, 0, k);
    }
  return {std::move(deg), std::move(lap)};
}

}  // namespace ttr
