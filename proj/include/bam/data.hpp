#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace bam {

/// One time bin: routine features, zero or more event feature vectors and
/// the observed total.
struct Observation {
  std::string id;
  double y = 0.0;
  Eigen::VectorXd routine;
  std::vector<Eigen::VectorXd> events;

  std::size_t num_events() const { return events.size(); }
};

/// Ordered observations with fixed routine and event feature dimensions.
/// Immutable once constructed through `make` or `load_dataset`.
class Dataset {
 public:
  Dataset() = default;

  /// Builds a dataset and throws DataError if any invariant fails.
  static Dataset make(std::vector<Observation> observations, int d_routine,
                      int d_event);

  const std::vector<Observation>& observations() const { return observations_; }
  const Observation& operator[](std::size_t i) const { return observations_[i]; }
  std::size_t size() const { return observations_.size(); }
  bool empty() const { return observations_.empty(); }
  int d_routine() const { return d_routine_; }
  int d_event() const { return d_event_; }
  std::size_t total_events() const;

  /// Subset in the given index order.
  Dataset subset(const std::vector<std::size_t>& indices) const;

  /// Stable 64-bit FNV-1a hash of the id sequence.
  std::uint64_t fingerprint() const;

 private:
  Dataset(std::vector<Observation> obs, int dr, int de)
      : observations_(std::move(obs)), d_routine_(dr), d_event_(de) {}
  friend std::vector<std::string> validate(const Dataset&);
  friend Dataset make_unchecked(std::vector<Observation>, int, int);

  std::vector<Observation> observations_;
  int d_routine_ = 0;
  int d_event_ = 0;
};

/// Ground-truth component values for simulated data, aligned with a Dataset
/// by id and event index.
struct GroundTruth {
  struct Entry {
    std::string id;
    double routine = 0.0;
    std::vector<double> events;
  };
  std::vector<Entry> entries;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constructs without validation, for `validate` tests and internal use.
Dataset make_unchecked(std::vector<Observation> observations, int d_routine,
                       int d_event);

/// Every violated invariant, one description each. Empty iff valid.
std::vector<std::string> validate(const Dataset& ds);

/// Reads JSON-lines: {"id", "y", "routine", "events"} per line. Dimensions
/// are taken from the first record that provides them.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::istream& in);

void write_dataset(const Dataset& ds, std::ostream& out);
void save_dataset(const Dataset& ds, const std::filesystem::path& path);

GroundTruth load_ground_truth(const std::filesystem::path& path);
void write_ground_truth(const GroundTruth& gt, std::ostream& out);
void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path);

/// Throws DataError unless `gt` lines up with `ds` id by id and event by event.
void check_alignment(const Dataset& ds, const GroundTruth& gt);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace bam
