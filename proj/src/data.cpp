#include "bam/data.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace bam {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vector(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

json to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Dataset make_unchecked(std::vector<Observation> observations, int d_routine,
                       int d_event) {
  return Dataset(std::move(observations), d_routine, d_event);
}

Dataset Dataset::make(std::vector<Observation> observations, int d_routine,
                      int d_event) {
  Dataset ds(std::move(observations), d_routine, d_event);
  const auto problems = validate(ds);
  if (!problems.empty()) throw DataError(problems.front());
  return ds;
}

std::size_t Dataset::total_events() const {
  std::size_t n = 0;
  for (const auto& o : observations_) n += o.events.size();
  return n;
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Observation> obs;
  obs.reserve(indices.size());
  for (std::size_t i : indices) obs.push_back(observations_.at(i));
  return Dataset(std::move(obs), d_routine_, d_event_);
}

std::uint64_t Dataset::fingerprint() const {
  std::string joined;
  for (const auto& o : observations_) {
    joined += o.id;
    joined += '\n';
  }
  return fnv1a(joined);
}

std::vector<std::string> validate(const Dataset& ds) {
  std::vector<std::string> problems;
  if (ds.d_routine_ <= 0) problems.push_back("routine dimension must be positive");
  if (ds.d_event_ <= 0 && ds.total_events() > 0)
    problems.push_back("event dimension must be positive when events are present");
  std::unordered_set<std::string> seen;
  for (const auto& o : ds.observations_) {
    if (!seen.insert(o.id).second) problems.push_back("duplicate id '" + o.id + "'");
    if (!std::isfinite(o.y)) problems.push_back("record '" + o.id + "': field y is not finite");
    if (o.routine.size() != ds.d_routine_)
      problems.push_back("record '" + o.id + "': routine has dimension " +
                         std::to_string(o.routine.size()) + ", expected " +
                         std::to_string(ds.d_routine_));
    else if (!o.routine.allFinite())
      problems.push_back("record '" + o.id + "': routine features are not finite");
    for (std::size_t i = 0; i < o.events.size(); ++i) {
      const auto& e = o.events[i];
      if (e.size() != ds.d_event_)
        problems.push_back("record '" + o.id + "': event " + std::to_string(i) +
                           " has dimension " + std::to_string(e.size()) + ", expected " +
                           std::to_string(ds.d_event_));
      else if (!e.allFinite())
        problems.push_back("record '" + o.id + "': event " + std::to_string(i) +
                           " features are not finite");
    }
  }
  return problems;
}

Dataset parse_dataset(std::istream& in) {
  std::vector<Observation> obs;
  int d_routine = -1, d_event = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    Observation o;
    try {
      o.id = rec.contains("id") ? rec.at("id").get<std::string>() : std::to_string(line_no);
      o.y = rec.at("y").get<double>();
      o.routine = to_vector(rec.at("routine"));
      for (const auto& e : rec.at("events")) o.events.push_back(to_vector(e));
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (d_routine < 0) d_routine = static_cast<int>(o.routine.size());
    if (d_event < 0 && !o.events.empty()) d_event = static_cast<int>(o.events.front().size());
    if (o.routine.size() != d_routine)
      throw DataError("record '" + o.id + "' (line " + std::to_string(line_no) +
                      "): routine dimension mismatch");
    for (const auto& e : o.events)
      if (e.size() != d_event)
        throw DataError("record '" + o.id + "' (line " + std::to_string(line_no) +
                        "): event dimension mismatch");
    obs.push_back(std::move(o));
  }
  return Dataset::make(std::move(obs), std::max(d_routine, 0), std::max(d_event, 0));
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dataset(in);
}

void write_dataset(const Dataset& ds, std::ostream& out) {
  for (const auto& o : ds.observations()) {
    json rec;
    rec["id"] = o.id;
    rec["y"] = o.y;
    rec["routine"] = to_json(o.routine);
    rec["events"] = json::array();
    for (const auto& e : o.events) rec["events"].push_back(to_json(e));
    out << rec.dump() << '\n';
  }
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_dataset(ds, out);
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  auto in = open_input(path);
  GroundTruth gt;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json rec = json::parse(line);
      GroundTruth::Entry e;
      e.id = rec.at("id").get<std::string>();
      e.routine = rec.at("routine").get<double>();
      e.events = rec.at("events").get<std::vector<double>>();
      gt.entries.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw DataError("ground truth line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return gt;
}

void write_ground_truth(const GroundTruth& gt, std::ostream& out) {
  for (const auto& e : gt.entries) {
    json rec;
    rec["id"] = e.id;
    rec["routine"] = e.routine;
    rec["events"] = e.events;
    out << rec.dump() << '\n';
  }
}

void save_ground_truth(const GroundTruth& gt, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_ground_truth(gt, out);
}

void check_alignment(const Dataset& ds, const GroundTruth& gt) {
  if (gt.entries.size() != ds.size())
    throw DataError("ground truth has " + std::to_string(gt.entries.size()) +
                    " records, dataset has " + std::to_string(ds.size()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (gt.entries[i].id != ds[i].id)
      throw DataError("ground truth id '" + gt.entries[i].id + "' does not match '" +
                      ds[i].id + "'");
    if (gt.entries[i].events.size() != ds[i].num_events())
      throw DataError("ground truth for '" + ds[i].id + "' has the wrong event count");
  }
}

}  // namespace bam
