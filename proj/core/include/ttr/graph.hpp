#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "ttr/spectral.hpp"
#include "ttr/tensor3.hpp"

namespace ttr {

// Edge weighting.  A non-positive heat bandwidth asks for the per-slice
// median of the squared candidate distances; an infinite one makes the
// kernel collapse to binary weights.
enum class WeightKind { heat, binary };

struct WeightRule {
  WeightKind kind = WeightKind::heat;
  double t = 0.0;

  static WeightRule heat_kernel(double t) { return {WeightKind::heat, t}; }
  static WeightRule binary() { return {WeightKind::binary, 0.0}; }
};

enum class NeighborRule { knn, epsilon };

// Which sample pairs may become edges.  The class-aware modes need labels.
enum class CandidateMode { unsupervised, within_class, between_class };

// Where the per-slice graphs are built.  In the transform domain the
// mirror slices share distances (conjugation preserves moduli), so the
// assembled weight tensor is f-symmetric and its transform slices are
// Laplacian-compatible.  In the spatial domain each frontal slice gets
// its own graph; the weight tensor is then only slice-wise symmetric.
enum class GraphDomain { transform, spatial };

struct GraphSpec {
  NeighborRule rule = NeighborRule::knn;
  std::size_t k = 0;       // neighbour count for the knn rule
  double epsilon = 0.0;    // squared-distance threshold for the eps rule
  WeightRule weights;
  CandidateMode mode = CandidateMode::unsupervised;
  GraphDomain domain = GraphDomain::transform;
};

// A built graph set: affinities, degree tubes, and the Laplacian tensor
// lap = deg - w.  isolated_vertices counts (slice, vertex) pairs whose
// row ended up with zero degree; possible under the epsilon rule or when
// a class is too small, and reported rather than treated as an error.
struct AffinityGraphs {
  Tensor3 w;
  FDiagonal deg;
  Tensor3 lap;
  std::size_t isolated_vertices = 0;
};

// Builds one affinity graph per slice from the rows of x (samples are
// mode-1 fibres, one row per sample).  labels are 1-based class ids and
// may be empty for unsupervised candidates.  Throws BadK for impossible
// neighbour counts and LabelMismatch when a class-aware mode gets labels
// that do not line up with the samples.
AffinityGraphs build_graphs(const Tensor3& x, const std::vector<int>& labels,
                            const GraphSpec& spec);

// Degree tubes deg(i) = sum_j w(i, j, :) and the Laplacian tensor
// deg - w.  Works slice-wise and commutes with the transform, so the
// transform slices of the result relate to those of w the same way.
std::pair<FDiagonal, Tensor3> degree_and_laplacian(const Tensor3& w);

namespace detail {

// Pairwise squared distances between the rows of a complex matrix.
Eigen::MatrixXd pairwise_sq_dist(const Eigen::MatrixXcd& rows);

// The k nearest candidates of each row under d2, ties toward the lower
// index.  candidates[i] must not contain i.
std::vector<std::vector<std::size_t>> knn_select(
    const Eigen::MatrixXd& d2,
    const std::vector<std::vector<std::size_t>>& candidates, std::size_t k);

}  // namespace detail

}  // namespace ttr
