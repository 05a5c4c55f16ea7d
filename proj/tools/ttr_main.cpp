#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "matrix_refs.hpp"
#include "ttr/dataset.hpp"
#include "ttr/errors.hpp"
#include "ttr/io.hpp"
#include "ttr/manifold.hpp"
#include "ttr/parallel.hpp"
#include "ttr/runner.hpp"
#include "ttr/tensor3.hpp"
#include "ttr/tprod.hpp"

namespace {

ttr::Method parse_method(const std::string& s) {
  if (s == "mlde") return ttr::Method::mlde;
  if (s == "mle") return ttr::Method::mle;
  if (s == "lme") return ttr::Method::lme;
  throw ttr::ValidationError("unknown method '" + s + "'");
}

ttr::Orientation parse_orientation(const std::string& s) {
  if (s == "mode1") return ttr::Orientation::samples_mode1;
  if (s == "lateral") return ttr::Orientation::samples_lateral;
  throw ttr::ValidationError("unknown orientation '" + s + "'");
}

bool report(bool ok, const std::string& what) {
  std::cout << (ok ? "[ok]   " : "[fail] ") << what << "\n";
  return ok;
}

// Product oracle and depth-one reference comparisons, the fast subset of
// the acceptance properties suitable for an installed-binary smoke test.
int selftest() {
  bool all = true;

  {
    bool ok = true;
    double worst = 0.0;
    std::uint64_t seed = 1;
    for (std::size_t n3 : {1u, 2u, 3u, 4u, 5u}) {
      for (int rep = 0; rep < 8; ++rep) {
        const std::size_t m = 2 + rep % 5, k = 2 + (rep + 1) % 4,
                          l = 2 + (rep + 2) % 4;
        ttr::Tensor3 a = ttr::gaussian_tensor(m, k, n3, seed++);
        ttr::Tensor3 b = ttr::gaussian_tensor(k, l, n3, seed++);
        ttr::Tensor3 fast = ttr::t_product(a, b);
        ttr::Tensor3 slow = ttr::bcirc_oracle(a, b);
        const double rel = ttr::frobenius_norm(fast - slow) /
                           std::max(1e-300, ttr::frobenius_norm(slow));
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-12;
      }
    }
    all = report(ok, "product matches the block-circulant oracle (worst " +
                         std::to_string(worst) + ")") &&
          all;
  }

  {
    ttr::Dataset d = ttr::synth_gaussian_classes(2, 20, 6, 1, 6.0, 11);
    ttr::MldeModel m =
        ttr::mlde_fit(ttr::swap_modes12(d.x), d.labels, 2, 4, 4,
                      ttr::WeightRule::heat_kernel(2.0), 1e-10, 200, 12);
    Eigen::MatrixXd ref =
        matref::lde_fit(d.x.slice(0), d.labels, 2, 4, 4, 2.0, 1e-10, 200);
    const double dist = matref::projector_distance(m.v.slice(0), ref);
    all = report(dist <= 1e-5, "depth-one discriminant fit matches the "
                               "matrix reference (distance " +
                                   std::to_string(dist) + ")") &&
          all;
  }

  {
    ttr::Tensor3 x = ttr::gaussian_tensor(40, 4, 1, 21);
    ttr::Embedding emb = ttr::mle_fit(x, 2, 4, ttr::WeightKind::heat, 2.0);
    Eigen::MatrixXd ref = matref::laplacian_eigenmaps(x.slice(0), 2, 4, 2.0);
    const double dist = matref::projector_distance(emb.y.slice(0), ref);
    all = report(dist <= 1e-5, "depth-one locality embedding matches the "
                               "matrix reference (distance " +
                                   std::to_string(dist) + ")") &&
          all;
  }

  {
    const std::size_t n = 120;
    Eigen::MatrixXd rows(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double t =
          -4.5 + 9.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      rows(static_cast<Eigen::Index>(i), 0) = t;
      rows(static_cast<Eigen::Index>(i), 1) = std::sin(t);
    }
    ttr::Tensor3 x(n, 2, 1);
    x.set_slice(0, rows);
    ttr::Embedding emb = ttr::lme_fit(x, 2, 2, 1e-3);
    Eigen::MatrixXd ref = matref::lle(rows, 2, 2, 1e-3);
    const double dist = matref::projector_distance(emb.y.slice(0), ref);
    all = report(dist <= 1e-5, "depth-one linear embedding matches the "
                               "matrix reference (distance " +
                                   std::to_string(dist) + ")") &&
          all;
  }

  if (!all) {
    std::cerr << "selftest: numerical checks failed\n";
    return 3;
  }
  std::cout << "selftest: all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"third-order tensor dimensionality reduction toolkit"};
  app.require_subcommand(1);

  // synth
  std::size_t sy_c = 2, sy_per = 50, sy_p = 8, sy_n3 = 3;
  double sy_sep = 10.0;
  std::uint64_t sy_seed = 0;
  std::string sy_out = ".";
  auto* synth =
      app.add_subcommand("synth", "generate a gaussian-classes dataset");
  synth->add_option("--c", sy_c, "number of classes")->capture_default_str();
  synth->add_option("--per-class", sy_per, "samples per class")
      ->capture_default_str();
  synth->add_option("--p", sy_p, "feature count")->capture_default_str();
  synth->add_option("--n3", sy_n3, "slice depth")->capture_default_str();
  synth->add_option("--sep", sy_sep, "distance between class means")
      ->capture_default_str();
  synth->add_option("--seed", sy_seed, "generator seed")
      ->capture_default_str();
  synth->add_option("--out-dir", sy_out, "where data.t3b and labels.txt go")
      ->capture_default_str();

  // reduce
  std::string rd_method, rd_input, rd_labels, rd_orient = "mode1",
                                              rd_out = ".";
  ttr::RunConfig cfg;
  std::size_t rd_threads = 1;
  auto* reduce =
      app.add_subcommand("reduce", "fit a method and write the embedding");
  reduce->add_option("--method", rd_method, "mlde, mle, or lme")
      ->required()
      ->check(CLI::IsMember({"mlde", "mle", "lme"}));
  reduce->add_option("--input", rd_input, "data tensor (.t3b)")->required();
  reduce->add_option("--labels", rd_labels, "labels file, one per line")
      ->required();
  reduce->add_option("--orientation", rd_orient,
                     "sample layout in the input: mode1 rows or lateral "
                     "slices")
      ->check(CLI::IsMember({"mode1", "lateral"}))
      ->capture_default_str();
  reduce->add_option("--d", cfg.d, "embedding dimension")
      ->capture_default_str();
  reduce->add_option("--k", cfg.k, "neighbour count (mle, lme)");
  reduce->add_option("--k1", cfg.k1, "within-class neighbours (mlde)");
  reduce->add_option("--k2", cfg.k2, "between-class neighbours (mlde)");
  reduce->add_option("--t", cfg.t,
                     "heat bandwidth; <= 0 takes the per-slice median, "
                     "inf gives binary weights")
      ->capture_default_str();
  reduce->add_option("--eps", cfg.eps, "ratio solver tolerance (mlde)")
      ->capture_default_str();
  reduce->add_option("--reg-eps", cfg.reg_eps,
                     "local Gram regularisation scale (lme)")
      ->capture_default_str();
  reduce->add_option("--max-iter", cfg.max_iter,
                     "ratio solver iteration cap (mlde)")
      ->capture_default_str();
  reduce->add_option("--seed", cfg.seed, "split and initialisation seed")
      ->capture_default_str();
  reduce->add_option("--split", cfg.split_fraction, "training fraction")
      ->capture_default_str();
  reduce->add_option("--out-dir", rd_out, "artifact directory")
      ->capture_default_str();
  reduce->add_option("--threads", rd_threads, "worker thread count")
      ->capture_default_str();

  // eval
  std::string ev_input, ev_labels;
  std::uint64_t ev_seed = 0;
  double ev_split = 0.8;
  auto* eval = app.add_subcommand(
      "eval", "1-NN accuracy of an embedding under a seeded split");
  eval->add_option("--input", ev_input, "embedding tensor (.t3b)")
      ->required();
  eval->add_option("--labels", ev_labels, "labels file")->required();
  eval->add_option("--seed", ev_seed, "split seed")->capture_default_str();
  eval->add_option("--split", ev_split, "training fraction")
      ->capture_default_str();

  // selftest
  std::size_t st_threads = 1;
  auto* st = app.add_subcommand(
      "selftest", "product oracle and matrix reference checks");
  st->add_option("--threads", st_threads, "worker thread count")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      ttr::Dataset d = ttr::synth_gaussian_classes(sy_c, sy_per, sy_p, sy_n3,
                                                   sy_sep, sy_seed);
      std::error_code ec;
      std::filesystem::create_directories(sy_out, ec);
      if (ec)
        throw ttr::ValidationError("synth: cannot create '" + sy_out +
                                   "': " + ec.message());
      const std::string data_path = sy_out + "/data.t3b";
      const std::string labels_path = sy_out + "/labels.txt";
      ttr::write_t3b(data_path, d.x);
      ttr::write_labels(labels_path, d.labels);
      std::cout << "{\"data\":\"" << data_path << "\",\"labels\":\""
                << labels_path << "\",\"samples\":" << d.sample_count()
                << ",\"features\":" << d.x.n2() << ",\"depth\":" << d.x.n3()
                << "}\n";
      return 0;
    }
    if (reduce->parsed()) {
      ttr::set_num_threads(rd_threads);
      cfg.method = parse_method(rd_method);
      cfg.out_dir = rd_out;
      ttr::Dataset data = ttr::load_dataset(rd_input, rd_labels,
                                            parse_orientation(rd_orient));
      ttr::RunResult res = ttr::run(cfg, data);
      std::cout << res.metrics_line << "\n";
      return 0;
    }
    if (eval->parsed()) {
      ttr::Tensor3 y = ttr::read_t3b(ev_input);
      std::vector<int> labels = ttr::read_labels(ev_labels);
      if (labels.size() != y.n1())
        throw ttr::LabelMismatch("eval: " + std::to_string(labels.size()) +
                                 " labels for " + std::to_string(y.n1()) +
                                 " embedded samples");
      const auto [train_idx, test_idx] =
          ttr::split_indices(y.n1(), ev_split, ev_seed);
      std::vector<int> lt, lq;
      for (auto i : train_idx) lt.push_back(labels[i]);
      for (auto i : test_idx) lq.push_back(labels[i]);
      const double acc = ttr::evaluate_1nn(ttr::take_rows(y, train_idx), lt,
                                           ttr::take_rows(y, test_idx), lq);
      std::cout << "{\"accuracy\":" << acc << "}\n";
      return 0;
    }
    if (st->parsed()) {
      ttr::set_num_threads(st_threads);
      return selftest();
    }
  } catch (const ttr::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ttr::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
