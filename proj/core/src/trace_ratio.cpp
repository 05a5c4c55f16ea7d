#include "ttr/trace_ratio.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ttr/parallel.hpp"
#include "ttr/tprod.hpp"
#include "ttr/transform.hpp"

namespace ttr {

namespace {

void validate_problem(const TraceRatioProblem& p, const char* who) {
  const std::size_t n = p.a.n1();
  if (p.a.n2() != n || p.b.n1() != n || p.b.n2() != n ||
      p.a.n3() != p.b.n3()) {
    throw ShapeMismatch(std::string(who) +
                        ": operands must be square tensors of equal shape");
  }
  if (p.d < 1 || p.d >= n) {
    throw ShapeMismatch(std::string(who) + ": d must be in [1, p)");
  }
  if (!is_f_symmetric(p.a, 1e-8)) {
    throw NotFSymmetric(std::string(who) +
                        ": numerator tensor is not f-symmetric");
  }
  if (!is_f_symmetric(p.b, 1e-8)) {
    throw NotFSymmetric(std::string(who) +
                        ": denominator tensor is not f-symmetric");
  }
}

double quotient_traces(const TraceRatioProblem& p, const Tensor3& v,
                       double* num_out, double* den_out) {
  const Tensor3 vt = t_transpose(v);
  const double num = trace(t_product(vt, t_product(p.a, v)));
  const double den = trace(t_product(vt, t_product(p.b, v)));
  if (num_out) *num_out = num;
  if (den_out) *den_out = den;
  return num / den;
}

double denominator_floor(const TraceRatioProblem& p) {
  return 1e-12 * std::max(1.0, frobenius_norm(p.b));
}

}  // namespace

double objective(const TraceRatioProblem& p, const Tensor3& v) {
  validate_problem(p, "objective");
  if (v.n1() != p.a.n1() || v.n2() != p.d || v.n3() != p.a.n3()) {
    throw ShapeMismatch("objective: basis shape does not fit the problem");
  }
  const Tensor3 gram = t_product(t_transpose(v), v);
  const double defect = frobenius_norm(gram - identity_tensor(p.d, v.n3()));
  if (defect > 1e-6) {
    throw NotFOrthogonal("objective: basis is not f-orthogonal (defect " +
                         std::to_string(defect) + ")");
  }
  double num = 0.0, den = 0.0;
  quotient_traces(p, v, &num, &den);
  if (std::abs(den) <= denominator_floor(p)) {
    throw DegenerateDenominator("objective: denominator trace is zero for "
                                "this basis");
  }
  return num / den;
}

RhoEvaluation f_of_rho(const TraceRatioProblem& p, double rho) {
  validate_problem(p, "f_of_rho");
  const Tensor3 shifted = p.a - rho * p.b;
  EigenPairs ep = eig_f_symmetric(shifted, p.d, EigOrder::signed_desc);

  RhoEvaluation ev;
  ev.v = std::move(ep.v);
  ev.lambda = std::move(ep.lambda);
  ev.selection_gap = ep.selection_gap;
  ev.optimality_residual = ep.residual;
  // f(rho) is the slice-mean of the kept eigenvalues; the eigentube table
  // already stores all n3 slices, so this is a plain average.
  double sum = 0.0;
  for (std::size_t l = 0; l < p.d; ++l)
    for (std::size_t k = 0; k < ev.lambda.n3; ++k)
      sum += ev.lambda.tubes(l, k).real();
  ev.value = sum / static_cast<double>(ev.lambda.n3);

  quotient_traces(p, ev.v, &ev.numerator, &ev.denominator);
  ev.derivative = -ev.denominator;
  return ev;
}

TraceRatioResult newton_qr(const TraceRatioProblem& p, const Tensor3& v0,
                           double eps, std::size_t max_iter) {
  validate_problem(p, "newton_qr");
  if (v0.n1() != p.a.n1() || v0.n2() != p.d || v0.n3() != p.a.n3()) {
    throw ShapeMismatch("newton_qr: starting basis shape does not fit");
  }

  const WellPosedReport report = check_well_posed(p);
  if (!report.well_posed) {
    std::string why;
    if (!report.b_semidefinite) {
      why = "denominator tensor is not positive semidefinite";
    } else if (report.rank_b < report.required_rank) {
      why = "denominator tubal rank " + std::to_string(report.rank_b) +
            " is below the required " + std::to_string(report.required_rank);
    } else {
      why = "numerator and denominator share a null direction";
    }
    throw IllPosed("newton_qr: " + why);
  }

  const double den_floor = denominator_floor(p);
  SolverTrace trace_log;
  double rho = objective(p, f_orthogonalize(v0));
  trace_log.rho_history.push_back(rho);

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    RhoEvaluation ev = f_of_rho(p, rho);
    trace_log.f_history.push_back(ev.value);
    const double scale =
        ev.lambda.tubes.cwiseAbs().maxCoeff();
    if (ev.selection_gap < 1e-8 * std::max(1.0, scale)) {
      trace_log.degenerate = true;
    }
    if (std::abs(ev.denominator) <= den_floor) {
      throw DegenerateDenominator(
          "newton_qr: denominator trace vanished at rho = " +
          std::to_string(rho));
    }
    const double rho_next = ev.numerator / ev.denominator;
    trace_log.rho_history.push_back(rho_next);
    trace_log.iterations = iter;

    if (std::abs(rho_next - rho) <= eps) {
      trace_log.converged = true;
      // Decompose once more at the accepted ratio so the reported basis
      // and eigentubes belong to rho itself, not its predecessor.
      RhoEvaluation last = f_of_rho(p, rho_next);
      trace_log.f_history.push_back(last.value);
      TraceRatioResult out;
      out.v = std::move(last.v);
      out.rho = rho_next;
      out.lambda = std::move(last.lambda);
      out.optimality_residual = last.optimality_residual;
      out.trace = std::move(trace_log);
      return out;
    }
    rho = rho_next;
  }
  throw NotConverged("newton_qr: no convergence after " +
                         std::to_string(max_iter) + " iterations",
                     trace_log);
}

WellPosedReport check_well_posed(const TraceRatioProblem& p) {
  validate_problem(p, "check_well_posed");
  const std::size_t n = p.a.n1();

  WellPosedReport r;
  r.required_rank = n - p.d + 1;
  r.b_semidefinite = is_positive_semidefinite(p.b);
  r.rank_b = tubal_rank(p.b, 1e-10);

  // A direction common to both null spaces would make the ratio 0/0.
  // Per slice, the null spaces intersect exactly when A^H A + B^H B is
  // singular.
  const std::vector<Eigen::MatrixXcd> ha = detail::transform_half(p.a);
  const std::vector<Eigen::MatrixXcd> hb = detail::transform_half(p.b);
  std::vector<int> shared(ha.size(), 0);
  parallel_for(0, ha.size(), [&](std::size_t k) {
    const Eigen::MatrixXcd m =
        ha[k].adjoint() * ha[k] + hb[k].adjoint() * hb[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw SliceEigFailure("check_well_posed: eigensolver failed on "
                            "transform slice " + std::to_string(k));
    }
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    shared[k] = lo <= 1e-10 * std::max(1.0, hi) ? 1 : 0;
  });
  for (int s : shared) {
    if (s != 0) r.shared_null = true;
  }

  r.well_posed = r.b_semidefinite && r.rank_b >= r.required_rank &&
                 !r.shared_null;
  return r;
}

}  // namespace ttr
