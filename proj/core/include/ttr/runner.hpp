#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ttr/dataset.hpp"
#include "ttr/manifold.hpp"

namespace ttr {

struct RunConfig {
  Method method = Method::mlde;
  std::size_t d = 2;
  std::size_t k = 0;   // locality methods
  std::size_t k1 = 0;  // discriminant within-class neighbours
  std::size_t k2 = 0;  // discriminant between-class neighbours
  double t = 0.0;      // heat bandwidth; <= 0 median, +inf binary
  double eps = 1e-10;
  double reg_eps = 1e-3;
  std::size_t max_iter = 100;
  std::uint64_t seed = 0;
  double split_fraction = 0.8;
  std::string out_dir = ".";
};

struct RunResult {
  double accuracy = 0.0;
  double rho_star = 0.0;  // meaningful for the discriminant method only
  std::size_t iterations = 0;
  double residual = 0.0;
  std::int64_t elapsed_ms = 0;
  std::string metrics_line;  // the JSON object appended to metrics.jsonl
  std::string embedding_path;
  std::string projection_path;  // empty unless the method fits a basis
  std::string metrics_path;
};

// Cheap structural checks: the method's required knobs are present and
// in range.  Data-dependent checks happen in run before any fitting.
void validate_config(const RunConfig& cfg);

// The seeded shuffle split used by run: first fraction*n indices train,
// the rest test, both returned in ascending order.  The train side is
// clamped to [1, n-1] so neither side is empty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double fraction, std::uint64_t seed);

// Seeded shuffle split, fit, embed, nearest-neighbour evaluation, and
// artifact writes into cfg.out_dir: embedding.t3b with one row block per
// sample, projection.t3b for the discriminant basis, and one JSON line
// appended to metrics.jsonl.  The discriminant method fits on the train
// split and projects everything; the locality methods embed all samples
// jointly and are evaluated on the split transductively (recorded in the
// metrics line).  Labels are required.
RunResult run(const RunConfig& cfg, const Dataset& data);

}  // namespace ttr
