#pragma once

// Reference implementations of the classical matrix methods this library
// generalises, written directly against Eigen with no shared code paths.
// They exist so the depth-one behaviour of every tensor method can be
// checked against an independent derivation of the same mathematics.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace matref {

struct NewtonResult {
  Eigen::MatrixXd v;  // p x d, orthonormal
  double rho = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Trace-ratio maximisation max tr(V^T a V) / tr(V^T b V) over orthonormal
// V by the classical Newton scheme: repeatedly take the top-d eigenvectors
// of a - rho*b and update rho to the ratio they achieve.
NewtonResult trace_ratio_newton(const Eigen::MatrixXd& a,
                                const Eigen::MatrixXd& b, std::size_t d,
                                double eps, std::size_t max_iter);

// k nearest neighbours of each row of x among the candidate rows, by
// Euclidean distance, ties broken toward the lower index.  candidates[i]
// lists the allowed neighbours of row i (never including i itself).
std::vector<std::vector<std::size_t>> knn_rows(
    const Eigen::MatrixXd& x,
    const std::vector<std::vector<std::size_t>>& candidates, std::size_t k);

// Discriminant embedding on row-sample data: within-class and
// between-class kNN graphs with heat weights exp(-dist^2 / t), graph
// Laplacians folded into scatter matrices, then the trace ratio of the
// between scatter over the within scatter.  Returns the p x d projection.
Eigen::MatrixXd lde_fit(const Eigen::MatrixXd& x,
                        const std::vector<int>& labels, std::size_t d,
                        std::size_t k1, std::size_t k2, double t,
                        double eps, std::size_t max_iter);

// Laplacian eigenmaps: kNN heat graph, generalized eigenproblem
// L y = lambda D y, keep the d smallest eigenvalues above the null
// threshold.  Returns the n x d embedding, D-orthonormal.
Eigen::MatrixXd laplacian_eigenmaps(const Eigen::MatrixXd& x, std::size_t d,
                                    std::size_t k, double t);

// Locally linear embedding: reconstruction weights from local Gram
// systems (regularised when ill-conditioned), then the d bottom non-null
// eigenvectors of (I - W)^T (I - W).  Returns the n x d embedding.
Eigen::MatrixXd lle(const Eigen::MatrixXd& x, std::size_t d, std::size_t k,
                    double reg_eps);

// Distance between the column spaces of two bases: Frobenius norm of the
// difference of their orthogonal projectors.  Zero iff equal subspaces.
double projector_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace matref
