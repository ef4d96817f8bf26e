// bam: command-line front end for simulating, fitting, predicting with and
// benchmarking the additive GP model. Machine-readable output goes to stdout,
// progress and errors to stderr.

#include "bam/baselines.hpp"
#include "bam/benchmark.hpp"
#include "bam/data.hpp"
#include "bam/ep.hpp"
#include "bam/eval.hpp"
#include "bam/hyperopt.hpp"
#include "bam/predict.hpp"
#include "bam/simulate.hpp"
#include "bam/snapshot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Raised for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_quad_nodes() {
  if (const char* env = std::getenv("BAM_QUAD_NODES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 200) return static_cast<int>(v);
    std::cerr << "warning: ignoring invalid BAM_QUAD_NODES='" << env << "'\n";
  }
  return 20;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bam::DataError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw bam::DataError(path + ": " + e.what());
  }
}

// Writes to the named file, or to stdout when the name is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw bam::DataError("cannot write " + path);
  out << text;
}

bam::Hyperparams default_hyperparams(const bam::Dataset& ds, bam::Likelihood lik) {
  bam::Hyperparams hp;
  hp.routine_kernel = bam::SeArdParams{1.0, Eigen::VectorXd::Ones(ds.d_routine())};
  hp.event_kernel = bam::SeArdParams{1.0, Eigen::VectorXd::Ones(std::max(ds.d_event(), 1))};
  hp.likelihood = lik;
  return hp;
}

bam::Hyperparams load_hyperparams(const std::string& path, const bam::Dataset& ds,
                                  const std::string& likelihood) {
  const bam::Likelihood lik = bam::parse_likelihood(likelihood);
  bam::Hyperparams hp = default_hyperparams(ds, lik);
  if (!path.empty()) {
    json j = read_json_file(path);
    // Accept both a bare hyperparameter object and a hyperopt result.
    if (j.contains("hyperparams")) j = j["hyperparams"];
    hp = bam::hyperparams_from_json(j, hp);
  }
  hp.likelihood = lik;
  hp.check(ds.d_routine(), ds.d_event());
  return hp;
}

json mean_var_json(double mean, double var) { return {{"mean", mean}, {"var", var}}; }

struct SimulateArgs {
  int n = 1000;
  std::uint64_t seed = 0;
  std::string out, truth_out;
  bam::ToyParams toy;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.n < 1) throw UsageError("--n must be at least 1");
  const bam::ToySample s = bam::generate_toy(a.n, a.seed, a.toy);
  bam::save_dataset(s.data, a.out);
  bam::save_ground_truth(s.truth, a.truth_out);
  std::cout << json{{"n", a.n},
                    {"seed", a.seed},
                    {"events", s.data.total_events()},
                    {"fingerprint", bam::fingerprint_hex(s.data.fingerprint())}}
                   .dump()
            << '\n';
  return 0;
}

struct FitArgs {
  std::string data, hyperparams, likelihood = "trunc", out_snapshot;
  bam::EPConfig ep;
};

int cmd_fit(const FitArgs& a) {
  a.ep.check();
  const bam::Dataset ds = bam::load_dataset(a.data);
  const bam::Hyperparams hp = load_hyperparams(a.hyperparams, ds, a.likelihood);
  const bam::FittedModel m = bam::fit(ds, hp, a.ep);
  if (!m.converged)
    std::cerr << "warning: EP did not converge in " << m.iterations << " iterations\n";
  bam::save_snapshot(m, a.out_snapshot);
  std::cout << json{{"converged", m.converged},
                    {"iterations", m.iterations},
                    {"log_evidence", m.log_evidence},
                    {"likelihood", bam::likelihood_name(hp.likelihood)},
                    {"fingerprint", bam::fingerprint_hex(m.fingerprint)}}
                   .dump()
            << '\n';
  return 0;
}

struct PredictArgs {
  std::string snapshot, train_data, data, out;
};

int cmd_predict(const PredictArgs& a) {
  const bam::Dataset train = bam::load_dataset(a.train_data);
  const bam::FittedModel m = bam::load_snapshot(a.snapshot, train);
  const bam::Dataset query = bam::load_dataset(a.data);
  std::ostringstream out;
  bam::write_predictions(query, bam::predict_dataset(m, query), out);
  emit(a.out, out.str());
  return 0;
}

struct DecomposeArgs {
  std::string snapshot, data, out;
};

int cmd_decompose(const DecomposeArgs& a) {
  const bam::Dataset ds = bam::load_dataset(a.data);
  const bam::FittedModel m = bam::load_snapshot(a.snapshot, ds);
  std::ostringstream out;
  for (std::size_t n = 0; n < ds.size(); ++n) {
    const auto& r = m.routine_marginals[n];
    json events = json::array();
    for (std::size_t k = m.state.event_offset[n]; k < m.state.event_offset[n + 1]; ++k)
      events.push_back(mean_var_json(m.event_marginals[k].mean(), m.event_marginals[k].variance()));
    out << json{{"id", ds[n].id},
                {"y", ds[n].y},
                {"routine", mean_var_json(r.mean(), r.variance())},
                {"events", events}}
               .dump()
        << '\n';
  }
  emit(a.out, out.str());
  return 0;
}

struct HyperoptArgs {
  std::string data, init, likelihood = "trunc", out;
  bool linear = false;
  bam::OptConfig opt;
};

int cmd_hyperopt(const HyperoptArgs& a) {
  const bam::Dataset ds = bam::load_dataset(a.data);
  bam::Hyperparams init = load_hyperparams(a.init, ds, a.likelihood);
  if (a.linear) init = bam::bam_lr_hyperparams(init);
  const bam::OptResult r = bam::optimize(ds, init, a.opt);
  json j = bam::opt_result_to_json(r);
  j["opt_config"] = bam::opt_config_to_json(a.opt);
  emit(a.out, j.dump(2) + '\n');
  for (bam::Component c : {bam::Component::routine, bam::Component::event}) {
    const bam::Kernel& k = c == bam::Component::routine ? r.hp.routine_kernel : r.hp.event_kernel;
    if (!std::holds_alternative<bam::SeArdParams>(k)) continue;
    if (c == bam::Component::event && ds.total_events() == 0) continue;
    const auto& se = std::get<bam::SeArdParams>(k);
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < se.length_scales.size(); ++i) names.push_back("x" + std::to_string(i));
    std::cerr << (c == bam::Component::routine ? "routine" : "event") << " relevance:\n"
              << bam::relevance_tsv(bam::ard_relevance(se, names));
  }
  return 0;
}

struct EvaluateArgs {
  std::string data, predictions, truth, decomposition;
};

// Reads the "total" means (and optionally component means) from a
// predictions or decomposition JSONL file.
std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bam::DataError("cannot open " + path);
  std::vector<json> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw bam::DataError(path + ": " + e.what());
    }
  }
  return rows;
}

json metrics_json(const bam::Metrics& m) {
  return {{"rae", m.rae}, {"corrcoef", m.corrcoef}, {"r2", m.r2}, {"r2_raw", m.r2_raw}};
}

int cmd_evaluate(const EvaluateArgs& a) {
  if (a.predictions.empty() && a.decomposition.empty())
    throw UsageError("evaluate needs --predictions and/or --decomposition");
  const bam::Dataset ds = bam::load_dataset(a.data);
  json report;
  auto check_ids = [&](const std::vector<json>& rows, const std::string& what) {
    if (rows.size() != ds.size())
      throw bam::DataError(what + " has " + std::to_string(rows.size()) + " records, dataset has " +
                           std::to_string(ds.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i].at("id").get<std::string>() != ds[i].id)
        throw bam::DataError(what + ": id '" + rows[i].at("id").get<std::string>() +
                             "' does not match '" + ds[i].id + "'");
  };
  if (!a.predictions.empty()) {
    const auto rows = read_jsonl(a.predictions);
    check_ids(rows, a.predictions);
    std::vector<double> y, yhat;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      y.push_back(ds[i].y);
      yhat.push_back(rows[i].at("total").at("mean").get<double>());
    }
    report["total"] = metrics_json(bam::metrics(y, yhat));
  }
  if (!a.decomposition.empty()) {
    if (a.truth.empty()) throw UsageError("--decomposition requires --truth");
    const bam::GroundTruth gt = bam::load_ground_truth(a.truth);
    bam::check_alignment(ds, gt);
    const auto rows = read_jsonl(a.decomposition);
    check_ids(rows, a.decomposition);
    std::vector<bam::ComponentEstimate> est;
    for (const auto& r : rows) {
      bam::ComponentEstimate c{r.at("routine").at("mean").get<double>(), {}};
      for (const auto& e : r.at("events")) c.events.push_back(e.at("mean").get<double>());
      est.push_back(std::move(c));
    }
    const bam::DecompositionMetrics d = bam::evaluate_decomposition(est, gt.entries);
    report["decomposition"] = {{"A", metrics_json(d.routine)}, {"B", metrics_json(d.events)}};
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

struct BenchmarkArgs {
  bam::BenchmarkConfig cfg;
  std::vector<std::string> models{"all"};
  std::string out_json, table1, table2;
};

int cmd_benchmark(BenchmarkArgs a) {
  a.cfg.models.clear();
  for (const auto& m : a.models) {
    if (m == "all") {
      a.cfg.models = bam::all_models();
      break;
    }
    a.cfg.models.push_back(bam::parse_model(m));
  }
  if (a.cfg.k < 2) throw UsageError("--k must be at least 2");
  const bam::BenchmarkResult r = bam::run_benchmark(a.cfg, &std::cerr);
  const std::string t1 = bam::prediction_table_tsv(r), t2 = bam::decomposition_table_tsv(r);
  if (!a.table1.empty()) emit(a.table1, t1);
  if (!a.table2.empty()) emit(a.table2, t2);
  if (!a.out_json.empty()) emit(a.out_json, bam::benchmark_report(r).dump(2) + '\n');
  std::cout << t1 << '\n' << t2;
  return 0;
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bam::CholeskyError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const bam::HyperoptError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    for (const auto& f : e.failure_log) std::cerr << "  " << f << '\n';
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive GP model with EP inference"};
  app.require_subcommand(1);
  const int quad_nodes = default_quad_nodes();
  std::function<int()> action;

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "generate the synthetic benchmark data");
  s->add_option("--n", sim.n, "number of observations")->required();
  s->add_option("--seed", sim.seed, "random seed")->required();
  s->add_option("--out", sim.out, "dataset JSONL")->required();
  s->add_option("--truth-out", sim.truth_out, "ground-truth JSONL")->required();
  s->add_option("--dim-routine", sim.toy.dim_routine)->check(CLI::PositiveNumber);
  s->add_option("--dim-event", sim.toy.dim_event)->check(CLI::PositiveNumber);
  s->callback([&] { action = [&] { return cmd_simulate(sim); }; });

  FitArgs fa;
  fa.ep.quad_nodes = quad_nodes;
  auto* f = app.add_subcommand("fit", "run EP and write a snapshot");
  f->add_option("--data", fa.data)->required();
  f->add_option("--hyperparams", fa.hyperparams, "JSON file; defaults when omitted");
  f->add_option("--likelihood", fa.likelihood)->check(CLI::IsMember({"trunc", "poisson"}));
  f->add_option("--out-snapshot", fa.out_snapshot)->required();
  f->add_option("--damping", fa.ep.damping);
  f->add_option("--max-iters", fa.ep.max_iters);
  f->add_option("--tol", fa.ep.tol);
  f->add_option("--quad-nodes", fa.ep.quad_nodes, "overrides BAM_QUAD_NODES");
  f->callback([&] { action = [&] { return cmd_fit(fa); }; });

  PredictArgs pa;
  auto* p = app.add_subcommand("predict", "predictive distributions for new observations");
  p->add_option("--snapshot", pa.snapshot)->required();
  p->add_option("--train-data", pa.train_data, "dataset the snapshot was fitted on")->required();
  p->add_option("--data", pa.data, "query observations (y ignored)")->required();
  p->add_option("--out", pa.out, "JSONL; stdout when omitted");
  p->callback([&] { action = [&] { return cmd_predict(pa); }; });

  DecomposeArgs da;
  auto* d = app.add_subcommand("decompose", "posterior component marginals of the training data");
  d->add_option("--snapshot", da.snapshot)->required();
  d->add_option("--data", da.data)->required();
  d->add_option("--out", da.out, "JSONL; stdout when omitted");
  d->callback([&] { action = [&] { return cmd_decompose(da); }; });

  HyperoptArgs ha;
  ha.opt.quad_nodes = quad_nodes;
  auto* h = app.add_subcommand("hyperopt", "maximize the EP evidence over hyperparameters");
  h->add_option("--data", ha.data)->required();
  h->add_option("--init", ha.init, "initial hyperparameters JSON");
  h->add_option("--likelihood", ha.likelihood)->check(CLI::IsMember({"trunc", "poisson"}));
  h->add_flag("--linear", ha.linear, "linear kernels (BAM-LR)");
  h->add_option("--restarts", ha.opt.restarts);
  h->add_option("--max-evals", ha.opt.max_evals);
  h->add_option("--seed", ha.opt.seed);
  h->add_option("--quad-nodes", ha.opt.quad_nodes, "overrides BAM_QUAD_NODES");
  h->add_option("--out", ha.out, "result JSON; stdout when omitted");
  h->callback([&] { action = [&] { return cmd_hyperopt(ha); }; });

  EvaluateArgs ea;
  auto* e = app.add_subcommand("evaluate", "score predictions and decompositions");
  e->add_option("--data", ea.data)->required();
  e->add_option("--predictions", ea.predictions, "JSONL from predict");
  e->add_option("--decomposition", ea.decomposition, "JSONL from decompose");
  e->add_option("--truth", ea.truth, "ground-truth JSONL from simulate");
  e->callback([&] { action = [&] { return cmd_evaluate(ea); }; });

  BenchmarkArgs ba;
  ba.cfg.ep.quad_nodes = quad_nodes;
  ba.cfg.opt.quad_nodes = quad_nodes;
  auto* b = app.add_subcommand("benchmark", "cross-validated comparison on synthetic data");
  b->add_option("--seed", ba.cfg.seed);
  b->add_option("--k", ba.cfg.k, "number of folds");
  b->add_option("--n", ba.cfg.n, "observations")->check(CLI::PositiveNumber);
  b->add_option("--tune-n", ba.cfg.tune_n, "tuning-set size")->check(CLI::PositiveNumber);
  b->add_option("--models", ba.models,
                "all, blr, gp, bam-lr, bam-gp-poisson, bam-gp-trunc")
      ->delimiter(',');
  b->add_option("--restarts", ba.cfg.opt.restarts);
  b->add_option("--max-evals", ba.cfg.opt.max_evals);
  b->add_option("--out-json", ba.out_json);
  b->add_option("--table1", ba.table1, "prediction table TSV");
  b->add_option("--table2", ba.table2, "decomposition table TSV");
  b->callback([&] { action = [&] { return cmd_benchmark(ba); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return guarded(action);
}
