#include "ttr/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "ttr/errors.hpp"
#include "ttr/io.hpp"

namespace ttr {

void validate_config(const RunConfig& cfg) {
  if (cfg.d < 1) throw ValidationError("run: d must be at least 1");
  if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0))
    throw ValidationError("run: split fraction must lie strictly between "
                          "0 and 1");
  switch (cfg.method) {
    case Method::mlde:
      if (cfg.k1 < 1 || cfg.k2 < 1)
        throw ValidationError(
            "run: the discriminant method needs k1 and k2 neighbour counts");
      if (!(cfg.eps > 0.0))
        throw ValidationError("run: eps must be positive");
      if (cfg.max_iter < 1)
        throw ValidationError("run: max_iter must be at least 1");
      break;
    case Method::mle:
      if (cfg.k < 1)
        throw ValidationError("run: the locality method needs a k neighbour "
                              "count");
      break;
    case Method::lme:
      if (cfg.k < 1)
        throw ValidationError("run: the linear embedding needs a k neighbour "
                              "count");
      if (cfg.reg_eps < 0.0)
        throw ValidationError("run: reg_eps must be non-negative");
      break;
  }
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, double fraction, std::uint64_t seed) {
  if (n < 2)
    throw ValidationError("split: need at least two samples, got " +
                          std::to_string(n));
  if (!(fraction > 0.0 && fraction < 1.0))
    throw ValidationError("split: fraction must lie strictly between 0 and 1");
  std::size_t n_train =
      static_cast<std::size_t>(fraction * static_cast<double>(n));
  n_train = std::min(std::max<std::size_t>(n_train, 1), n - 1);

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 gen(seed);
  std::shuffle(idx.begin(), idx.end(), gen);
  std::vector<std::size_t> train(idx.begin(),
                                 idx.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> test(idx.begin() + static_cast<long>(n_train),
                                idx.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

namespace {

std::vector<int> pick(const std::vector<int>& all,
                      const std::vector<std::size_t>& idx) {
  std::vector<int> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = all[idx[i]];
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg, const Dataset& data) {
  validate_config(cfg);
  if (data.labels.empty())
    throw ValidationError("run: the dataset has no labels; evaluation needs "
                          "them");

  const Tensor3 rows = data.orientation == Orientation::samples_mode1
                           ? data.x
                           : swap_modes12(data.x);
  const std::size_t n = rows.n1();
  const std::size_t p = rows.n2();
  if (cfg.method == Method::mlde) {
    if (cfg.d >= p)
      throw ValidationError("run: d must be below the feature extent " +
                            std::to_string(p));
  } else if (cfg.d >= n) {
    throw ValidationError("run: d must be below the sample count " +
                          std::to_string(n));
  }

  const auto [train_idx, test_idx] =
      split_indices(n, cfg.split_fraction, cfg.seed);
  const std::vector<int> labels_train = pick(data.labels, train_idx);
  const std::vector<int> labels_test = pick(data.labels, test_idx);

  const auto t0 = std::chrono::steady_clock::now();

  RunResult res;
  Tensor3 y_all(1, 1, 1);
  Tensor3 basis(1, 1, 1);
  bool have_basis = false;
  const bool transductive = cfg.method != Method::mlde;

  switch (cfg.method) {
    case Method::mlde: {
      const Tensor3 lateral_train =
          swap_modes12(take_rows(rows, train_idx));
      MldeModel model =
          mlde_fit(lateral_train, labels_train, cfg.d, cfg.k1, cfg.k2,
                   WeightRule::heat_kernel(cfg.t), cfg.eps, cfg.max_iter,
                   cfg.seed);
      y_all = swap_modes12(mlde_project(model, swap_modes12(rows)));
      res.rho_star = model.rho_star;
      res.iterations = model.solver_trace.iterations;
      res.residual = model.solver_trace.f_history.empty()
                         ? 0.0
                         : std::abs(model.solver_trace.f_history.back());
      basis = std::move(model.v);
      have_basis = true;
      break;
    }
    case Method::mle: {
      Embedding emb = mle_fit(rows, cfg.d, cfg.k, WeightKind::heat, cfg.t);
      res.residual = emb.residual;
      y_all = std::move(emb.y);
      break;
    }
    case Method::lme: {
      Embedding emb = lme_fit(rows, cfg.d, cfg.k, cfg.reg_eps);
      res.residual = emb.residual;
      y_all = std::move(emb.y);
      break;
    }
  }

  res.accuracy = evaluate_1nn(take_rows(y_all, train_idx), labels_train,
                              take_rows(y_all, test_idx), labels_test);
  res.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec)
    throw ValidationError("run: cannot create output directory '" +
                          cfg.out_dir + "': " + ec.message());

  res.embedding_path = cfg.out_dir + "/embedding.t3b";
  write_t3b(res.embedding_path, y_all);
  if (have_basis) {
    res.projection_path = cfg.out_dir + "/projection.t3b";
    write_t3b(res.projection_path, basis);
  }

  nlohmann::json params;
  params["d"] = cfg.d;
  params["dataset"] = data.name;
  params["split"] = cfg.split_fraction;
  params["transductive"] = transductive;
  switch (cfg.method) {
    case Method::mlde:
      params["k1"] = cfg.k1;
      params["k2"] = cfg.k2;
      params["t"] = cfg.t;
      params["eps"] = cfg.eps;
      params["max_iter"] = cfg.max_iter;
      break;
    case Method::mle:
      params["k"] = cfg.k;
      params["t"] = cfg.t;
      break;
    case Method::lme:
      params["k"] = cfg.k;
      params["reg_eps"] = cfg.reg_eps;
      break;
  }

  nlohmann::json j;
  j["method"] = method_name(cfg.method);
  j["params"] = params;
  j["accuracy"] = res.accuracy;
  if (cfg.method == Method::mlde)
    j["rho_star"] = res.rho_star;
  else
    j["rho_star"] = nullptr;
  j["iterations"] = res.iterations;
  j["residuals"] = res.residual;
  j["elapsed_ms"] = res.elapsed_ms;
  j["seed"] = cfg.seed;
  res.metrics_line = j.dump();

  res.metrics_path = cfg.out_dir + "/metrics.jsonl";
  std::ofstream out(res.metrics_path, std::ios::app);
  if (!out)
    throw ValidationError("run: cannot open '" + res.metrics_path +
                          "' for appending");
  out << res.metrics_line << "\n";
  if (!out.flush())
    throw ValidationError("run: failed writing '" + res.metrics_path + "'");
  return res;
}

}  // namespace ttr
