// Copyright 2026 The qcval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end: parse JSON specs, dispatch computations, emit CSV.
// Exit codes: 0 success / all checks pass, 1 check failures, 2 input errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qcval/acceptance.hpp"
#include "qcval/qcval.hpp"

namespace {

using qcval::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qcval::ParseError("io", path, "cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw qcval::ParseError("io", path, e.what());
  }
  return j;
}

// All output goes through a string first so a file write is all-or-nothing
// and stdout stays byte-stable.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qcval::ParseError("io", out_path, "cannot open output file");
  out << text;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> grid;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stod(item));
  }
  if (grid.empty())
    throw qcval::ParseError("schema", "--grid", "expected a comma-separated list");
  return grid;
}

struct CommonOpts {
  std::string input, spec, out;
  int k = -1;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  long samples = 1000000;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-concave valuation toolkit"};
  app.require_subcommand(1);
  CommonOpts opt;

  auto add_common = [&](CLI::App* sub, bool needs_input, bool needs_spec) {
    if (needs_input)
      sub->add_option("--input", opt.input, "input JSON file")->required();
    if (needs_spec)
      sub->add_option("--spec", opt.spec, "valuation spec JSON file")->required();
    sub->add_option("--seed", opt.seed, "random seed")->envname("QCVAL_SEED");
    sub->add_option("--tol", opt.tol, "tolerance")->envname("QCVAL_TOL");
    sub->add_option("--samples", opt.samples, "Monte-Carlo samples per radius")
        ->envname("QCVAL_SAMPLES");
    sub->add_option("--out", opt.out, "output file (default stdout)")
        ->envname("QCVAL_OUT");
  };

  CLI::App* volumes = app.add_subcommand("volumes", "intrinsic volumes of a body");
  add_common(volumes, true, false);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a valuation on a function");
  add_common(eval, true, true);

  CLI::App* measure = app.add_subcommand("measure", "level-set measure S_k as CSV");
  add_common(measure, true, false);
  measure->add_option("--k", opt.k, "intrinsic volume degree")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose", "homogeneous components and residuals");
  add_common(decompose, true, true);
  std::string lambdas_csv = "0.5,3,7.25";
  decompose->add_option("--lambdas", lambdas_csv, "dilation factors (CSV)");

  CLI::App* klain = app.add_subcommand("klain", "Klain function scan over frames");
  add_common(klain, false, true);
  std::string grid_csv = "0.25,0.5,1,1.5,2,3";
  int n_frames = 8;
  int klain_k = 1;
  int klain_dim = 2;
  klain->add_option("--grid", grid_csv, "t grid (CSV)");
  klain->add_option("--frames", n_frames, "number of frames");
  klain->add_option("--k", klain_k, "homogeneity degree / frame size");
  klain->add_option("--dim", klain_dim, "ambient dimension");

  CLI::App* approx =
      app.add_subcommand("approx", "dyadic approximants of an oracle under a valuation");
  add_common(approx, true, true);
  int depth = 7;
  approx->add_option("--depth", depth, "maximum dyadic depth");

  CLI::App* check = app.add_subcommand("check", "run the deterministic check suite");
  opt.seed = 42;
  add_common(check, false, false);
  int threads = 0;
  check->add_option("--threads", threads, "worker threads (0 = auto)")
      ->envname("QCVAL_THREADS");

  CLI11_PARSE(app, argc, argv);

  try {
    if (volumes->parsed()) {
      const qcval::ConvexBody body = qcval::body_from_json(load_json(opt.input));
      std::ostringstream os;
      qcval::write_volumes_csv(os, qcval::intrinsic_volumes(body));
      emit(opt.out, os.str());
      return 0;
    }

    if (eval->parsed()) {
      const qcval::ValuationOracle mu =
          qcval::valuation_oracle_from_json(load_json(opt.spec));
      const qcval::SimpleQCF f = qcval::qcf_from_json(load_json(opt.input));
      emit(opt.out, qcval::fmt17(mu(f)) + "\n");
      return 0;
    }

    if (measure->parsed()) {
      const qcval::SimpleQCF f = qcval::qcf_from_json(load_json(opt.input));
      if (!f.is_zero() && (opt.k < 0 || opt.k > f.dim()))
        throw qcval::ParseError("invariant", "--k", "k out of range for the input");
      std::ostringstream os;
      qcval::write_measure_csv(os, qcval::level_measure(f, opt.k));
      emit(opt.out, os.str());
      return 0;
    }

    if (decompose->parsed()) {
      const qcval::ValuationOracle mu =
          qcval::valuation_oracle_from_json(load_json(opt.spec));
      const qcval::SimpleQCF f = qcval::qcf_from_json(load_json(opt.input));
      const std::vector<double> lambdas = parse_grid(lambdas_csv);
      const qcval::DecompositionReport rep =
          qcval::verify_decomposition(mu, f, lambdas);
      std::ostringstream os;
      os << "k,value,residual_sum";
      for (double l : lambdas) os << ",residual_homog_" << l;
      os << "\n";
      for (std::size_t k = 0; k < rep.components.size(); ++k) {
        os << k << "," << qcval::fmt17(rep.components[k]) << ","
           << qcval::fmt17(rep.sum_residual);
        for (std::size_t li = 0; li < lambdas.size(); ++li)
          os << "," << qcval::fmt17(rep.homogeneity_residuals[k][li]);
        os << "\n";
      }
      emit(opt.out, os.str());
      return 0;
    }

    if (klain->parsed()) {
      const qcval::ValuationOracle mu =
          qcval::valuation_oracle_from_json(load_json(opt.spec));
      const std::vector<double> grid = parse_grid(grid_csv);
      const std::vector<qcval::Frame> frames =
          qcval::standard_frames(klain_dim, klain_k, n_frames, opt.seed);
      std::ostringstream os;
      os << "t,frame_id,value\n";
      for (double t : grid)
        for (std::size_t fi = 0; fi < frames.size(); ++fi) {
          const qcval::KlainSample s = qcval::klain_eval(mu, t, frames[fi]);
          os << qcval::fmt17(t) << "," << fi << "," << qcval::fmt17(s.value) << "\n";
        }
      emit(opt.out, os.str());
      // frames echoed in a sidecar for reproducibility
      const std::string sidecar =
          (opt.out.empty() ? std::string("klain") : opt.out) + ".frames.json";
      std::ofstream fs(sidecar, std::ios::binary);
      if (!fs) throw qcval::ParseError("io", sidecar, "cannot open sidecar file");
      fs << qcval::frames_to_json(frames).dump(2) << "\n";
      return 0;
    }

    if (approx->parsed()) {
      const qcval::QCFOracle oracle = qcval::oracle_from_json(load_json(opt.input));
      const qcval::ValuationOracle mu =
          qcval::valuation_oracle_from_json(load_json(opt.spec));
      std::ostringstream os;
      os << "depth,value\n";
      for (int i = 1; i <= depth; ++i)
        os << i << ","
           << qcval::fmt17(mu(qcval::dyadic_approx(oracle, i))) << "\n";
      emit(opt.out, os.str());
      return 0;
    }

    if (check->parsed()) {
      qcval::AcceptanceConfig cfg;
      cfg.seed = opt.seed;
      cfg.tol = opt.tol;
      cfg.samples = opt.samples;
      cfg.threads = threads;
      const qcval::AcceptanceResult res = qcval::run_acceptance(cfg);
      std::ostringstream os;
      qcval::write_report_csv(os, res.rows);
      emit(opt.out, os.str());
      for (const auto& [name, sec] : res.timings_sec)
        std::cerr << "# timing " << name << " " << sec << "s\n";
      return res.all_pass() ? 0 : 1;
    }
  } catch (const qcval::ParseError& e) {
    std::cerr << json{{"error", e.code}, {"path", e.path}, {"detail", e.detail}}.dump()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "invariant"}, {"path", ""}, {"detail", e.what()}}.dump()
              << "\n";
    return 2;
  }
  return 2;
}
