#include "ttr/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "ttr/parallel.hpp"

namespace ttr {

namespace {

// FFTW plan creation is not thread safe, execution on distinct buffers is.
// Plans are cached per depth for the life of the process and executed via
// the new-array interface.  FFTW_UNALIGNED keeps them valid for any buffer.
std::mutex g_plan_mutex;

fftw_plan r2c_plan(std::size_t n3) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n3);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n3);
  std::vector<std::complex<double>> out(n3 / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(
      static_cast<int>(n3), in.data(),
      reinterpret_cast<fftw_complex*>(out.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n3, p);
  return p;
}

fftw_plan c2r_plan(std::size_t n3) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = cache.find(n3);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n3 / 2 + 1);
  std::vector<double> out(n3);
  fftw_plan p = fftw_plan_dft_c2r_1d(
      static_cast<int>(n3), reinterpret_cast<fftw_complex*>(in.data()),
      out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n3, p);
  return p;
}

}  // namespace

namespace detail {

std::vector<Eigen::MatrixXcd> transform_half(const Tensor3& a) {
  const std::size_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
  const std::size_t h = half_spectrum_count(n3);
  std::vector<Eigen::MatrixXcd> out(h, Eigen::MatrixXcd(n1, n2));
  if (n1 == 0 || n2 == 0 || n3 == 0) return out;

  fftw_plan plan = r2c_plan(n3);
  parallel_for(0, n1 * n2, [&](std::size_t t) {
    const std::size_t i = t / n2, j = t % n2;
    std::vector<double> rbuf(n3);
    std::vector<std::complex<double>> cbuf(h);
    for (std::size_t k = 0; k < n3; ++k) rbuf[k] = a(i, j, k);
    fftw_execute_dft_r2c(plan, rbuf.data(),
                         reinterpret_cast<fftw_complex*>(cbuf.data()));
    for (std::size_t k = 0; k < h; ++k) out[k](i, j) = cbuf[k];
  });
  return out;
}

Tensor3 inverse_from_half(const std::vector<Eigen::MatrixXcd>& half,
                          std::size_t n3) {
  const std::size_t h = half_spectrum_count(n3);
  if (half.size() != h) {
    throw ShapeMismatch("inverse_from_half: wrong slice count for depth");
  }
  const std::size_t n1 = half.empty() ? 0 : half[0].rows();
  const std::size_t n2 = half.empty() ? 0 : half[0].cols();
  Tensor3 out(n1, n2, n3);
  if (n1 == 0 || n2 == 0 || n3 == 0) return out;

  fftw_plan plan = c2r_plan(n3);
  const double scale = 1.0 / static_cast<double>(n3);
  parallel_for(0, n1 * n2, [&](std::size_t t) {
    const std::size_t i = t / n2, j = t % n2;
    std::vector<std::complex<double>> cbuf(h);
    std::vector<double> rbuf(n3);
    for (std::size_t k = 0; k < h; ++k) {
      std::complex<double> z = half[k](i, j);
      // A real result only ever depends on the real part of self-paired
      // bins; dropping their imaginary residue here keeps the inverse
      // well defined no matter how the slices were assembled.
      if (self_paired(k, n3)) z = std::complex<double>(z.real(), 0.0);
      cbuf[k] = z;
    }
    fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(cbuf.data()),
                         rbuf.data());
    for (std::size_t k = 0; k < n3; ++k) out(i, j, k) = rbuf[k] * scale;
  });
  return out;
}

std::vector<Eigen::MatrixXcd> transform_full(const Tensor3& a) {
  std::vector<Eigen::MatrixXcd> slices = transform_half(a);
  const std::size_t n3 = a.n3();
  slices.resize(n3, Eigen::MatrixXcd());
  for (std::size_t k = half_spectrum_count(n3); k < n3; ++k) {
    slices[k] = slices[n3 - k].conjugate();
  }
  return slices;
}

}  // namespace detail

TransformTensor to_transform(const Tensor3& a) {
  const std::vector<Eigen::MatrixXcd> slices = detail::transform_full(a);
  TransformTensor ft(a.n1(), a.n2(), a.n3(),
                     TransformOrigin::derived_from_real);
  for (std::size_t k = 0; k < a.n3(); ++k) ft.set_slice(k, slices[k]);
  return ft;
}

Tensor3 from_transform(const TransformTensor& ft) {
  const std::size_t n1 = ft.n1(), n2 = ft.n2(), n3 = ft.n3();
  const std::size_t h = half_spectrum_count(n3);

  // Conjugate-symmetry defect: paired slices must mirror under
  // conjugation and self-paired slices must be real.
  double defect2 = 0.0, total2 = 0.0;
  for (std::size_t k = 0; k < n3; ++k) {
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        const std::complex<double> z = ft(i, j, k);
        total2 += std::norm(z);
        if (self_paired(k, n3)) {
          defect2 += z.imag() * z.imag();
        } else if (k < h) {
          const std::complex<double> m = ft(i, j, n3 - k);
          defect2 += std::norm(m - std::conj(z));
        }
      }
    }
  }
  if (std::sqrt(defect2) > 1e-9 * std::sqrt(total2)) {
    throw SymmetryViolation(
        "from_transform: slices are not conjugate-symmetric; no real tensor "
        "has this spectrum");
  }

  std::vector<Eigen::MatrixXcd> half(h);
  for (std::size_t k = 0; k < h; ++k) half[k] = ft.slice(k);
  return detail::inverse_from_half(half, n3);
}

}  // namespace ttr
