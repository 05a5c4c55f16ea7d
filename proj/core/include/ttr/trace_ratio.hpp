#pragma once

#include <cstddef>
#include <vector>

#include "ttr/spectral.hpp"
#include "ttr/tensor3.hpp"

namespace ttr {

// Maximise trace(v^T * a * v) / trace(v^T * b * v) over f-orthogonal
// v (p x d x n3).  Both operands must be f-symmetric and b positive
// semidefinite with enough rank to keep every feasible denominator away
// from zero.
struct TraceRatioProblem {
  Tensor3 a;
  Tensor3 b;
  std::size_t d = 0;
};

// Iteration log of the ratio solver.  rho_history holds the initial ratio
// followed by one entry per iteration, f_history the auxiliary objective
// f(rho) at each evaluated rho (the last entry belongs to the final rho
// and sits at the root, near zero, on success).
struct SolverTrace {
  std::vector<double> rho_history;
  std::vector<double> f_history;
  std::size_t iterations = 0;
  bool converged = false;
  // Set when, at some iterate, the d-th and (d+1)-th eigenvalue of
  // a - rho*b nearly coincide in some slice.  The optimal subspace is
  // then not unique and the returned basis is one valid choice.
  bool degenerate = false;
};

// Thrown when the iteration cap is reached; carries the log so callers
// can inspect how far the solve got.
class NotConverged : public NumericalError {
 public:
  NotConverged(const std::string& msg, SolverTrace trace)
      : NumericalError(msg), trace(std::move(trace)) {}
  SolverTrace trace;
};

struct TraceRatioResult {
  Tensor3 v;          // p x d x n3, f-orthogonal maximiser
  double rho = 0.0;   // the optimal ratio
  FDiagonal lambda;   // eigentubes of a - rho*b at the optimum
  // Frobenius norm of (a - rho*b) * v - v * lambda, the first-order
  // optimality condition.
  double optimality_residual = 0.0;
  SolverTrace trace;
};

struct WellPosedReport {
  std::size_t rank_b = 0;         // tubal rank of b
  std::size_t required_rank = 0;  // p - d + 1
  bool b_semidefinite = false;
  bool shared_null = false;  // a and b annihilate a common slice direction
  bool well_posed = false;
};

// One evaluation of the auxiliary function f(rho) =
// max_v trace(v^T * (a - rho*b) * v): the value, the maximising basis
// (top-d eigenslices of a - rho*b by signed value), and the derivative
// f'(rho) = -trace(v^T * b * v).
struct RhoEvaluation {
  double value = 0.0;
  Tensor3 v;
  FDiagonal lambda;
  double derivative = 0.0;
  double numerator = 0.0;    // trace(v^T * a * v)
  double denominator = 0.0;  // trace(v^T * b * v)
  double selection_gap = 0.0;
  double optimality_residual = 0.0;
};

// The ratio at a given f-orthogonal basis.  Throws NotFOrthogonal when
// v^T * v strays from the identity beyond 1e-6, DegenerateDenominator
// when the denominator trace vanishes.
double objective(const TraceRatioProblem& p, const Tensor3& v);

RhoEvaluation f_of_rho(const TraceRatioProblem& p, double rho);

// Newton iteration on f: start from the ratio at v0 (orthonormalised
// first), repeatedly decompose a - rho*b and take the ratio at the
// maximising basis as the next rho, until two consecutive ratios agree
// within eps.  Throws IllPosed up front when check_well_posed fails and
// NotConverged past max_iter.
TraceRatioResult newton_qr(const TraceRatioProblem& p, const Tensor3& v0,
                           double eps, std::size_t max_iter);

WellPosedReport check_well_posed(const TraceRatioProblem& p);

}  // namespace ttr
