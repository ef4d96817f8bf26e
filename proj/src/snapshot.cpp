#include "bam/snapshot.hpp"

#include <cstdio>
#include <fstream>

namespace bam {

using nlohmann::json;

namespace {

json vector_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json messages_json(const std::vector<ComponentMessages>& msgs) {
  json arr = json::array();
  for (const auto& m : msgs)
    arr.push_back({m.gp_to_f.precision, m.gp_to_f.precision_mean, m.h_to_f.precision,
                   m.h_to_f.precision_mean, m.h_to_y.precision, m.h_to_y.precision_mean,
                   m.sum_to_y.precision, m.sum_to_y.precision_mean});
  return arr;
}

std::vector<ComponentMessages> messages_from(const json& arr) {
  std::vector<ComponentMessages> out;
  for (const auto& row : arr) {
    const auto v = row.get<std::vector<double>>();
    if (v.size() != 8) throw SnapshotError("snapshot: message row must have 8 entries");
    out.push_back({{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}});
  }
  return out;
}

// Site view: mean and variance of each h -> f message, null when uniform.
json sites_json(const std::vector<ComponentMessages>& msgs) {
  json mu = json::array(), var = json::array();
  for (const auto& m : msgs) {
    if (m.h_to_f.is_proper()) {
      mu.push_back(m.h_to_f.mean());
      var.push_back(m.h_to_f.variance());
    } else {
      mu.push_back(nullptr);
      var.push_back(nullptr);
    }
  }
  return {{"mu", mu}, {"var", var}};
}

}  // namespace

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::string likelihood_name(Likelihood l) {
  return l == Likelihood::poisson ? "poisson" : "trunc";
}

Likelihood parse_likelihood(const std::string& name) {
  if (name == "trunc" || name == "truncated_gaussian") return Likelihood::truncated_gaussian;
  if (name == "poisson") return Likelihood::poisson;
  throw std::invalid_argument("unknown likelihood '" + name + "' (expected trunc or poisson)");
}

json kernel_to_json(const Kernel& k) {
  if (const auto* se = std::get_if<SeArdParams>(&k))
    return {{"type", "se_ard"},
            {"signal_variance", se->signal_variance},
            {"length_scales", vector_json(se->length_scales)}};
  const auto& lin = std::get<LinearKernelParams>(k);
  return {{"type", "linear"},
          {"weight_variance", lin.weight_variance},
          {"bias_variance", lin.bias_variance}};
}

Kernel kernel_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "se_ard")
    return SeArdParams{j.at("signal_variance").get<double>(), vector_from(j.at("length_scales"))};
  if (type == "linear")
    return LinearKernelParams{j.at("weight_variance").get<double>(),
                              j.value("bias_variance", 0.0)};
  throw std::invalid_argument("unknown kernel type '" + type + "'");
}

json hyperparams_to_json(const Hyperparams& hp) {
  return {{"routine_kernel", kernel_to_json(hp.routine_kernel)},
          {"event_kernel", kernel_to_json(hp.event_kernel)},
          {"beta_r", hp.beta_r},
          {"beta_e", hp.beta_e},
          {"noise_v", hp.noise_v},
          {"likelihood", likelihood_name(hp.likelihood)}};
}

Hyperparams hyperparams_from_json(const json& j, const Hyperparams& defaults) {
  Hyperparams hp = defaults;
  if (j.contains("routine_kernel")) hp.routine_kernel = kernel_from_json(j.at("routine_kernel"));
  if (j.contains("event_kernel")) hp.event_kernel = kernel_from_json(j.at("event_kernel"));
  hp.beta_r = j.value("beta_r", hp.beta_r);
  hp.beta_e = j.value("beta_e", hp.beta_e);
  hp.noise_v = j.value("noise_v", hp.noise_v);
  if (j.contains("likelihood")) hp.likelihood = parse_likelihood(j.at("likelihood"));
  return hp;
}

json config_to_json(const EPConfig& cfg) {
  return {{"damping", cfg.damping},
          {"max_iters", cfg.max_iters},
          {"tol", cfg.tol},
          {"quad_nodes", cfg.quad_nodes},
          {"relative_jitter", cfg.relative_jitter}};
}

EPConfig config_from_json(const json& j, const EPConfig& defaults) {
  EPConfig cfg = defaults;
  cfg.damping = j.value("damping", cfg.damping);
  cfg.max_iters = j.value("max_iters", cfg.max_iters);
  cfg.tol = j.value("tol", cfg.tol);
  cfg.quad_nodes = j.value("quad_nodes", cfg.quad_nodes);
  cfg.relative_jitter = j.value("relative_jitter", cfg.relative_jitter);
  return cfg;
}

json snapshot_to_json(const FittedModel& model) {
  return {{"format", "bam-snapshot"},
          {"version", 1},
          {"fingerprint", fingerprint_hex(model.fingerprint)},
          {"n_observations", model.state.routine.size()},
          {"n_events", model.state.events.size()},
          {"hyperparams", hyperparams_to_json(model.hp)},
          {"config", config_to_json(model.cfg)},
          {"converged", model.converged},
          {"iterations", model.iterations},
          {"log_evidence", model.log_evidence},
          {"sites", {{"routine", sites_json(model.state.routine)},
                     {"event", sites_json(model.state.events)}}},
          {"messages", {{"routine", messages_json(model.state.routine)},
                        {"event", messages_json(model.state.events)}}}};
}

FittedModel snapshot_from_json(const json& j, const Dataset& ds) {
  try {
    if (j.at("format").get<std::string>() != "bam-snapshot")
      throw SnapshotError("not a model snapshot");
    if (j.at("fingerprint").get<std::string>() != fingerprint_hex(ds.fingerprint()))
      throw SnapshotError("snapshot fingerprint does not match the dataset");
    const Hyperparams hp = hyperparams_from_json(j.at("hyperparams"));
    const EPConfig cfg = config_from_json(j.at("config"));
    const EPEngine engine(ds, hp, cfg);
    EPState state = engine.initial_state();
    auto routine = messages_from(j.at("messages").at("routine"));
    auto events = messages_from(j.at("messages").at("event"));
    if (routine.size() != state.routine.size() || events.size() != state.events.size())
      throw SnapshotError("snapshot message counts do not match the dataset");
    state.routine = std::move(routine);
    state.events = std::move(events);
    return assemble(engine, std::move(state), j.at("converged").get<bool>(),
                    j.at("iterations").get<int>());
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("malformed snapshot: ") + e.what());
  }
}

void save_snapshot(const FittedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SnapshotError("cannot write " + path.string());
  out << snapshot_to_json(model).dump() << '\n';
}

FittedModel load_snapshot(const std::filesystem::path& path, const Dataset& ds) {
  std::ifstream in(path);
  if (!in) throw SnapshotError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SnapshotError(std::string("malformed snapshot: ") + e.what());
  }
  return snapshot_from_json(j, ds);
}

}  // namespace bam
