#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ttr/graph.hpp"
#include "ttr/spectral.hpp"
#include "ttr/tensor3.hpp"
#include "ttr/trace_ratio.hpp"

namespace ttr {

enum class Method { mlde, mle, lme };

const char* method_name(Method m);

// Fitted discriminant projection.  v maps feature space to the reduced
// space; apply it with mlde_project.
struct MldeModel {
  Tensor3 v;  // p x d x n3, f-orthogonal
  double rho_star = 0.0;
  SolverTrace solver_trace;
};

// Embedded coordinates of the fitted samples, one row block per sample.
// eigentubes carries the d selected tubes rescaled to the reported
// convention of the method (see mle_fit / lme_fit).  residual is the
// Frobenius norm of the defining eigen equation, kept as a diagnostic.
struct Embedding {
  Tensor3 y;  // n x d x n3
  FDiagonal eigentubes;
  Method method = Method::mle;
  double residual = 0.0;
};

// Local reconstruction weights.  neighbors[r][i] lists sample i's k
// nearest neighbours within frontal slice r, nearest first; e[r] row i
// holds the matching weights, which sum to one.  w scatters them into an
// n x n affinity matrix per slice (directed, not symmetrised).
struct LmeWeights {
  std::vector<std::vector<std::vector<std::size_t>>> neighbors;
  std::vector<Eigen::MatrixXd> e;
  Tensor3 w;
};

// Supervised discriminant embedding.  Samples are the lateral slices of
// x (p x n x n3).  Builds within-class (k1) and between-class (k2)
// neighbourhood graphs, folds them into scatter tensors through x, and
// maximises the between/within trace ratio over f-orthogonal bases.
// Throws IllPosed when every sample carries the same label or when the
// within scatter is too rank-deficient for the ratio to be bounded.
MldeModel mlde_fit(const Tensor3& x, const std::vector<int>& labels,
                   std::size_t d, std::size_t k1, std::size_t k2,
                   const WeightRule& weights, double eps,
                   std::size_t max_iter, std::uint64_t seed);

// Reduced coordinates v' * x of new samples in the model's feature
// layout (x is p x m x n3, result d x m x n3).
Tensor3 mlde_project(const MldeModel& m, const Tensor3& x);

// Unsupervised locality-preserving embedding.  Samples are the mode-1
// slices of x (n x p x n3).  Builds a kNN graph with the given edge
// weighting, then keeps the d eigenslices of the graph Laplacian with
// the smallest nonzero eigentubes under the degree inner product.
// Reported eigentubes are scaled by n3.  Throws SingularDegree when some
// sample ends up with zero degree in a slice.
Embedding mle_fit(const Tensor3& x, std::size_t d, std::size_t k,
                  WeightKind weights, double t);

// Per-slice linear reconstruction weights of each sample from its k
// nearest neighbours in that slice.  When the local Gram system admits
// an exact affine reconstruction it is solved exactly (minimum-norm
// weights); otherwise the system is regularised by reg_eps * tr(G)/k on
// the diagonal once its condition number exceeds 1e12.  Throws
// SingularGram when reg_eps is zero on a rank-deficient system with no
// exact solution, or when the weights cannot be normalised.
LmeWeights lme_weights(const Tensor3& x, std::size_t k, double reg_eps);

// Unsupervised embedding that preserves the local reconstruction
// weights: the d smallest nonzero eigenslices of (I - W)' * (I - W),
// scaled so that (1/n1) y' * y = I.  Reported eigentubes are scaled by
// n1 * n3.
Embedding lme_fit(const Tensor3& x, std::size_t d, std::size_t k,
                  double reg_eps);

}  // namespace ttr
