#include "ttr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "ttr/parallel.hpp"
#include "ttr/tprod.hpp"
#include "ttr/transform.hpp"

namespace ttr {

namespace {

constexpr double kSymTol = 1e-8;

// Fixes the free phase of each column so the entry of largest magnitude
// is real and positive.  Keeps decompositions reproducible and makes
// eigenvectors of real slices come out real.
void normalise_phases(Eigen::MatrixXcd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index best = 0;
    double best_mag = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    if (best_mag > 0.0) {
      m.col(c) *= std::conj(m(best, c)) / best_mag;
    }
  }
}

// Indices of evals sorted by descending key, ties broken by index.
std::vector<std::size_t> order_indices(const Eigen::VectorXd& evals,
                                       EigOrder order) {
  std::vector<std::size_t> idx(evals.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](std::size_t i) {
    switch (order) {
      case EigOrder::magnitude: return std::abs(evals(i));
      case EigOrder::signed_desc: return evals(i);
      case EigOrder::signed_asc: return -evals(i);
    }
    return 0.0;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return key(a) > key(b);
  });
  return idx;
}

struct SliceEig {
  Eigen::VectorXd evals;   // ascending, as the solver returns them
  Eigen::MatrixXcd evecs;
};

std::vector<SliceEig> decompose_slices(const std::vector<Eigen::MatrixXcd>& h,
                                       const char* who) {
  std::vector<SliceEig> out(h.size());
  parallel_for(0, h.size(), [&](std::size_t k) {
    const Eigen::MatrixXcd herm = 0.5 * (h[k] + h[k].adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    if (es.info() != Eigen::Success) {
      throw SliceEigFailure(std::string(who) + ": eigensolver failed on "
                            "transform slice " + std::to_string(k));
    }
    out[k].evals = es.eigenvalues();
    out[k].evecs = es.eigenvectors();
  });
  return out;
}

std::vector<SliceEig> decompose_slices_generalized(
    const std::vector<Eigen::MatrixXcd>& ha,
    const std::vector<Eigen::MatrixXcd>& hb, const char* who) {
  std::vector<SliceEig> out(ha.size());
  parallel_for(0, ha.size(), [&](std::size_t k) {
    const Eigen::MatrixXcd herm_a = 0.5 * (ha[k] + ha[k].adjoint());
    const Eigen::MatrixXcd herm_b = 0.5 * (hb[k] + hb[k].adjoint());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        herm_a, herm_b, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) {
      throw SliceEigFailure(std::string(who) + ": generalized eigensolver "
                            "failed on transform slice " + std::to_string(k));
    }
    out[k].evals = es.eigenvalues();
    out[k].evecs = es.eigenvectors();
  });
  return out;
}

// Assembles the spatial eigenslices and eigenvalue table from per-slice
// selections, then measures the defining-equation residual.
EigenPairs assemble(const std::vector<SliceEig>& dec,
                    const std::vector<std::vector<std::size_t>>& picks,
                    const Tensor3& a, const Tensor3* b, std::size_t n,
                    std::size_t d, std::size_t n3, double gap) {
  const std::size_t hcount = dec.size();
  std::vector<Eigen::MatrixXcd> vhat(hcount);
  EigenPairs out;
  out.lambda.count = d;
  out.lambda.n3 = n3;
  out.lambda.tubes.resize(d, n3);
  for (std::size_t k = 0; k < hcount; ++k) {
    Eigen::MatrixXcd cols(n, d);
    for (std::size_t l = 0; l < d; ++l) {
      cols.col(l) = dec[k].evecs.col(picks[k][l]);
      out.lambda.tubes(l, k) = dec[k].evals(picks[k][l]);
    }
    normalise_phases(cols);
    vhat[k] = cols;
  }
  for (std::size_t k = hcount; k < n3; ++k) {
    out.lambda.tubes.col(k) = out.lambda.tubes.col(n3 - k).conjugate();
  }
  out.v = detail::inverse_from_half(vhat, n3);
  out.selection_gap = gap;

  const Tensor3 lam = out.lambda.to_tensor();
  const Tensor3 right =
      b ? t_product(*b, t_product(out.v, lam)) : t_product(out.v, lam);
  out.residual = frobenius_norm(t_product(a, out.v) - right);
  return out;
}

}  // namespace

Tensor3 FDiagonal::to_tensor() const {
  TransformTensor ft(count, count, n3, TransformOrigin::derived_from_real);
  for (std::size_t k = 0; k < n3; ++k)
    for (std::size_t l = 0; l < count; ++l) ft(l, l, k) = tubes(l, k);
  return from_transform(ft);
}

EigenPairs eig_f_symmetric(const Tensor3& a, std::size_t d, EigOrder order) {
  const std::size_t n = a.n1(), n3 = a.n3();
  if (a.n2() != n) throw ShapeMismatch("eig_f_symmetric: tensor not square");
  if (d < 1 || d > n) {
    throw ShapeMismatch("eig_f_symmetric: d must be in [1, n]");
  }
  if (!is_f_symmetric(a, kSymTol)) {
    throw NotFSymmetric("eig_f_symmetric: input is not f-symmetric");
  }

  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(a);
  const std::vector<SliceEig> dec = decompose_slices(half, "eig_f_symmetric");

  double gap = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> picks(dec.size());
  for (std::size_t k = 0; k < dec.size(); ++k) {
    const std::vector<std::size_t> idx = order_indices(dec[k].evals, order);
    picks[k].assign(idx.begin(), idx.begin() + d);
    if (d < n) {
      auto key = [&](std::size_t i) {
        const double v = dec[k].evals(i);
        if (order == EigOrder::magnitude) return std::abs(v);
        return order == EigOrder::signed_desc ? v : -v;
      };
      gap = std::min(gap, key(idx[d - 1]) - key(idx[d]));
    }
  }
  return assemble(dec, picks, a, nullptr, n, d, n3, gap);
}

EigenPairs generalized_eig(const Tensor3& a, const Tensor3& b, std::size_t d,
                           EigWhich which) {
  const std::size_t n = a.n1(), n3 = a.n3();
  if (a.n2() != n || b.n1() != n || b.n2() != n || b.n3() != n3) {
    throw ShapeMismatch("generalized_eig: operands must be square with "
                        "matching shape");
  }
  if (d < 1 || d > n) {
    throw ShapeMismatch("generalized_eig: d must be in [1, n]");
  }
  if (!is_f_symmetric(a, kSymTol)) {
    throw NotFSymmetric("generalized_eig: left operand is not f-symmetric");
  }
  if (!is_f_symmetric(b, kSymTol)) {
    throw NotFSymmetric("generalized_eig: right operand is not f-symmetric");
  }
  if (!is_positive_definite(b)) {
    throw NotPositiveDefinite("generalized_eig: right operand must be "
                              "positive definite");
  }

  const std::vector<Eigen::MatrixXcd> ha = detail::transform_half(a);
  const std::vector<Eigen::MatrixXcd> hb = detail::transform_half(b);
  const std::vector<SliceEig> dec =
      decompose_slices_generalized(ha, hb, "generalized_eig");

  double scale = 0.0;
  for (const SliceEig& se : dec) {
    scale = std::max(scale, se.evals.cwiseAbs().maxCoeff());
  }
  const double zero_tol = 1e-8 * static_cast<double>(n) * scale;

  double gap = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::size_t>> picks(dec.size());
  for (std::size_t k = 0; k < dec.size(); ++k) {
    if (which == EigWhich::largest) {
      const std::vector<std::size_t> idx =
          order_indices(dec[k].evals, EigOrder::signed_desc);
      picks[k].assign(idx.begin(), idx.begin() + d);
      if (d < n) {
        gap = std::min(gap, dec[k].evals(idx[d - 1]) - dec[k].evals(idx[d]));
      }
      continue;
    }
    // smallest_nonzero: ascending scan skipping the near-null modes.
    std::vector<std::size_t> kept;
    for (Eigen::Index i = 0; i < dec[k].evals.size(); ++i) {
      if (std::abs(dec[k].evals(i)) > zero_tol) kept.push_back(i);
    }
    if (kept.size() < d) {
      throw InsufficientNonzero(
          "generalized_eig: transform slice " + std::to_string(k) + " has " +
          std::to_string(kept.size()) + " eigenvalues above the zero "
          "threshold, need " + std::to_string(d));
    }
    picks[k].assign(kept.begin(), kept.begin() + d);
    if (kept.size() > d) {
      gap = std::min(gap, dec[k].evals(kept[d]) - dec[k].evals(kept[d - 1]));
    }
  }
  return assemble(dec, picks, a, &b, n, d, n3, gap);
}

namespace {

// Per-slice eigenvalue extremes of an f-symmetric tensor.
void eigenvalue_range(const Tensor3& a, const char* who, double* min_out,
                      double* max_abs_out) {
  if (a.n1() != a.n2()) {
    throw ShapeMismatch(std::string(who) + ": tensor not square");
  }
  if (!is_f_symmetric(a, kSymTol)) {
    throw NotFSymmetric(std::string(who) + ": input is not f-symmetric");
  }
  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(a);
  std::vector<double> mins(half.size()), maxs(half.size());
  parallel_for(0, half.size(), [&](std::size_t k) {
    const Eigen::MatrixXcd herm = 0.5 * (half[k] + half[k].adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw SliceEigFailure(std::string(who) + ": eigensolver failed on "
                            "transform slice " + std::to_string(k));
    }
    mins[k] = es.eigenvalues().minCoeff();
    maxs[k] = es.eigenvalues().cwiseAbs().maxCoeff();
  });
  *min_out = *std::min_element(mins.begin(), mins.end());
  *max_abs_out = *std::max_element(maxs.begin(), maxs.end());
}

}  // namespace

bool is_positive_definite(const Tensor3& a) {
  double lo = 0.0, scale = 0.0;
  eigenvalue_range(a, "is_positive_definite", &lo, &scale);
  return lo > 1e-10 * std::max(1.0, scale);
}

bool is_positive_semidefinite(const Tensor3& a) {
  double lo = 0.0, scale = 0.0;
  eigenvalue_range(a, "is_positive_semidefinite", &lo, &scale);
  return lo >= -1e-10 * std::max(1.0, scale);
}

std::size_t tubal_rank(const Tensor3& a, double tol) {
  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(a);
  std::vector<Eigen::VectorXd> sv(half.size());
  parallel_for(0, half.size(), [&](std::size_t k) {
    sv[k] = Eigen::JacobiSVD<Eigen::MatrixXcd>(half[k]).singularValues();
  });
  double smax = 0.0;
  for (const auto& s : sv) {
    if (s.size() > 0) smax = std::max(smax, s(0));
  }
  if (smax == 0.0) return 0;
  std::size_t rank = 0;
  for (const auto& s : sv) {
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > tol * smax) ++r;
    }
    rank = std::max(rank, r);
  }
  return rank;
}

bool is_laplacian(const Tensor3& l, double tol) {
  if (l.n1() != l.n2()) return false;
  const std::size_t n = l.n1();
  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(l);
  double scale = 1.0;
  for (const auto& s : half) {
    scale = std::max(scale, s.cwiseAbs().maxCoeff());
  }
  const double bound = tol * scale;
  for (const auto& s : half) {
    for (std::size_t i = 0; i < n; ++i) {
      double row_sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> z = s(i, j);
        if (std::abs(z.imag()) > bound) return false;
        if (std::abs(z - std::conj(s(j, i))) > bound) return false;
        if (i != j && z.real() > bound) return false;
        row_sum += z.real();
      }
      if (std::abs(row_sum) > bound) return false;
      if (s(i, i).real() < -bound) return false;
    }
  }
  return true;
}

Tensor3 f_orthogonalize(const Tensor3& v) {
  const std::size_t n = v.n1(), d = v.n2(), n3 = v.n3();
  if (d > n) {
    throw ShapeMismatch("f_orthogonalize: more columns than rows");
  }
  const std::vector<Eigen::MatrixXcd> half = detail::transform_half(v);
  std::vector<Eigen::MatrixXcd> qhat(half.size());
  parallel_for(0, half.size(), [&](std::size_t k) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(half[k]);
    qhat[k] = qr.householderQ() * Eigen::MatrixXcd::Identity(n, d);
  });
  return detail::inverse_from_half(qhat, n3);
}

}  // namespace ttr
