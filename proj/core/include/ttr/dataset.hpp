#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ttr/tensor3.hpp"

namespace ttr {

// How samples are laid out in a data tensor: as lateral slices (one
// sample per mode-2 index, the discriminant method's layout) or as
// mode-1 slices (one sample per row, the locality methods' layout).
enum class Orientation { samples_lateral, samples_mode1 };

const char* orientation_name(Orientation o);

struct Dataset {
  Tensor3 x;
  std::vector<int> labels;  // empty when the dataset is unlabeled
  std::string name;
  Orientation orientation = Orientation::samples_mode1;

  std::size_t sample_count() const;
  // Highest label value; labels are validated to cover 1..c with no gap.
  std::size_t class_count() const;
};

// Reads a tensor file and an optional labels file (pass an empty path to
// skip labels).  Label count must match the sample extent under the given
// orientation and label values must cover 1..c contiguously.
Dataset load_dataset(const std::string& tensor_path,
                     const std::string& labels_path, Orientation orientation);

// c gaussian classes of per_class samples each in p features across n3
// slices, samples as mode-1 rows.  Class i's mean sits at
// (separation/sqrt(2)) * e_i in every slice, so every pair of class
// means is exactly `separation` apart; the noise is unit-variance and
// independent across slices.  Labels come out in class order 1..c.
Dataset synth_gaussian_classes(std::size_t c, std::size_t per_class,
                               std::size_t p, std::size_t n3,
                               double separation, std::uint64_t seed);

// Nearest-neighbour accuracy: each test sample (a mode-1 row block of
// d x n3 coordinates) takes the label of the closest training sample
// under the squared Frobenius distance, ties toward the lower training
// index.  Returns the fraction of test labels matched.
double evaluate_1nn(const Tensor3& y_train,
                    const std::vector<int>& labels_train,
                    const Tensor3& y_test,
                    const std::vector<int>& labels_test);

}  // namespace ttr
