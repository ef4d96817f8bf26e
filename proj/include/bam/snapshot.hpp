#pragma once

#include "bam/ep.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>

namespace bam {

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

nlohmann::json hyperparams_to_json(const Hyperparams& hp);
/// Missing fields keep the values of `defaults`.
Hyperparams hyperparams_from_json(const nlohmann::json& j, const Hyperparams& defaults = {});

nlohmann::json config_to_json(const EPConfig& cfg);
EPConfig config_from_json(const nlohmann::json& j, const EPConfig& defaults = {});

std::string likelihood_name(Likelihood l);
Likelihood parse_likelihood(const std::string& name);

/// Hyperparameters, EP configuration, every stored message in natural
/// parameters, the derived site means/variances, convergence flag, log
/// evidence and the dataset fingerprint.
nlohmann::json snapshot_to_json(const FittedModel& model);

/// Rebuilds the model from a snapshot and the dataset it was fitted on.
/// Throws SnapshotError if the dataset fingerprint or the message counts do
/// not match.
FittedModel snapshot_from_json(const nlohmann::json& j, const Dataset& ds);

void save_snapshot(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_snapshot(const std::filesystem::path& path, const Dataset& ds);

std::string fingerprint_hex(std::uint64_t fp);

}  // namespace bam
