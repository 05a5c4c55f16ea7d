#include "ttr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ttr/errors.hpp"
#include "ttr/io.hpp"

namespace ttr {

const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::samples_lateral:
      return "lateral";
    case Orientation::samples_mode1:
      return "mode1";
  }
  throw ValidationError("orientation_name: unknown orientation tag");
}

std::size_t Dataset::sample_count() const {
  return orientation == Orientation::samples_lateral ? x.n2() : x.n1();
}

std::size_t Dataset::class_count() const {
  if (labels.empty()) return 0;
  return static_cast<std::size_t>(
      *std::max_element(labels.begin(), labels.end()));
}

namespace {

void check_labels_contiguous(const std::vector<int>& labels,
                             std::size_t samples) {
  if (labels.size() != samples)
    throw LabelMismatch("dataset: " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(samples) +
                        " samples");
  const int c = *std::max_element(labels.begin(), labels.end());
  std::vector<bool> seen(static_cast<std::size_t>(c), false);
  for (int l : labels) seen[static_cast<std::size_t>(l - 1)] = true;
  for (int v = 0; v < c; ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw LabelMismatch("dataset: label " + std::to_string(v + 1) +
                          " is missing; labels must cover 1.." +
                          std::to_string(c) + " contiguously");
}

}  // namespace

Dataset load_dataset(const std::string& tensor_path,
                     const std::string& labels_path,
                     Orientation orientation) {
  Dataset d;
  d.x = read_t3b(tensor_path);
  d.orientation = orientation;
  const auto slash = tensor_path.find_last_of("/\\");
  d.name = slash == std::string::npos ? tensor_path
                                      : tensor_path.substr(slash + 1);
  if (!labels_path.empty()) {
    d.labels = read_labels(labels_path);
    check_labels_contiguous(d.labels, d.sample_count());
  }
  return d;
}

Dataset synth_gaussian_classes(std::size_t c, std::size_t per_class,
                               std::size_t p, std::size_t n3,
                               double separation, std::uint64_t seed) {
  if (c < 2)
    throw ValidationError("synth_gaussian_classes: need at least two "
                          "classes, got " +
                          std::to_string(c));
  if (per_class < 1)
    throw ValidationError("synth_gaussian_classes: per_class must be "
                          "positive");
  if (p < c)
    throw ValidationError(
        "synth_gaussian_classes: class means sit on distinct coordinate "
        "axes, so p must be at least c; got p = " +
        std::to_string(p) + " for c = " + std::to_string(c));
  if (n3 < 1)
    throw ValidationError("synth_gaussian_classes: n3 must be positive");

  const std::size_t n = c * per_class;
  const double shift = separation / std::sqrt(2.0);
  Dataset d;
  d.x = Tensor3(n, p, n3);
  d.labels.resize(n);
  d.name = "synth";
  d.orientation = Orientation::samples_mode1;

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cls = i / per_class;
    d.labels[i] = static_cast<int>(cls) + 1;
    for (std::size_t k = 0; k < n3; ++k)
      for (std::size_t j = 0; j < p; ++j)
        d.x(i, j, k) = noise(gen) + (j == cls ? shift : 0.0);
  }
  return d;
}

double evaluate_1nn(const Tensor3& y_train,
                    const std::vector<int>& labels_train,
                    const Tensor3& y_test,
                    const std::vector<int>& labels_test) {
  if (y_train.n2() != y_test.n2() || y_train.n3() != y_test.n3())
    throw ShapeMismatch("evaluate_1nn: train blocks are " +
                        std::to_string(y_train.n2()) + "x" +
                        std::to_string(y_train.n3()) + ", test blocks are " +
                        std::to_string(y_test.n2()) + "x" +
                        std::to_string(y_test.n3()));
  if (labels_train.size() != y_train.n1() ||
      labels_test.size() != y_test.n1())
    throw LabelMismatch("evaluate_1nn: label counts do not match the "
                        "sample extents");
  if (y_train.n1() == 0 || y_test.n1() == 0)
    throw ValidationError("evaluate_1nn: empty train or test set");

  const std::size_t d = y_train.n2();
  const std::size_t n3 = y_train.n3();
  std::size_t correct = 0;
  for (std::size_t q = 0; q < y_test.n1(); ++q) {
    double best = 0.0;
    std::size_t who = y_train.n1();
    for (std::size_t s = 0; s < y_train.n1(); ++s) {
      double dist = 0.0;
      for (std::size_t k = 0; k < n3; ++k)
        for (std::size_t j = 0; j < d; ++j) {
          const double diff = y_test(q, j, k) - y_train(s, j, k);
          dist += diff * diff;
        }
      if (who == y_train.n1() || dist < best) {
        best = dist;
        who = s;
      }
    }
    if (labels_train[who] == labels_test[q]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(y_test.n1());
}

}  // namespace ttr
