#ifndef ISLANDING_MONITOR_HPP
#define ISLANDING_MONITOR_HPP

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "islanding/error.hpp"
#include "islanding/grid_model.hpp"
#include "islanding/json_fields.hpp"
#include "islanding/scheme_io.hpp"
#include "islanding/solve.hpp"
#include "islanding/weights.hpp"

namespace islanding {

enum class LogLevel { debug, info, warn, error };
using LogSink = std::function<void(LogLevel, const std::string&)>;

inline std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a sibling temporary file and renames, so readers never see a partial file.
inline void write_text_file(const std::filesystem::path& p, const std::string& text) {
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

struct MonitorConfig {
  std::filesystem::path watch_dir;
  /// Scheme destination; defaults to `scheme.json` inside the watch directory.
  std::filesystem::path out;
  /// Island count when the trigger file gives none; otherwise the group count is used.
  std::optional<int> k;
  std::optional<double> big_m_factor;
  SolveConfig solve;
  bool record_timings = false;
};

struct PollResult {
  int snapshots_loaded = 0;
  int snapshots_rejected = 0;
  int triggers_seen = 0;
  int schemes_written = 0;
};

/// Watches a directory for `snapshot*.json` and `trigger*.json` files. Each
/// new snapshot refreshes the weighted graph and degrees; each new trigger
/// (a constraints file, optionally with `k`) solves against the freshest
/// snapshot and writes the scheme. Files are keyed by name and modification
/// time, so a rewritten file is picked up again. Never throws from poll().
class Monitor {
 public:
  Monitor(Network net, MonitorConfig cfg, LogSink log = {})
      : net_(std::move(net)), cfg_(std::move(cfg)), log_(std::move(log)) {
    if (cfg_.out.empty()) cfg_.out = cfg_.watch_dir / "scheme.json";
  }

  PollResult poll() {
    PollResult res;
    std::vector<Entry> snapshots, triggers;
    try {
      for (const auto& de : std::filesystem::directory_iterator(cfg_.watch_dir)) {
        if (!de.is_regular_file()) continue;
        const std::string name = de.path().filename().string();
        if (de.path().extension() != ".json") continue;
        Entry e{de.path(), name, de.last_write_time()};
        auto it = seen_.find(name);
        if (it != seen_.end() && it->second == e.mtime) continue;
        if (name.rfind("snapshot", 0) == 0) snapshots.push_back(std::move(e));
        else if (name.rfind("trigger", 0) == 0) triggers.push_back(std::move(e));
      }
    } catch (const std::exception& ex) {
      emit(LogLevel::error, std::string("cannot scan watch directory: ") + ex.what());
      return res;
    }
    auto by_time = [](const Entry& a, const Entry& b) { return std::tie(a.mtime, a.name) < std::tie(b.mtime, b.name); };
    std::sort(snapshots.begin(), snapshots.end(), by_time);
    std::sort(triggers.begin(), triggers.end(), by_time);

    for (const auto& e : snapshots) {
      seen_[e.name] = e.mtime;
      if (load_snapshot(e)) ++res.snapshots_loaded;
      else ++res.snapshots_rejected;
    }
    for (const auto& e : triggers) {
      seen_[e.name] = e.mtime;
      ++res.triggers_seen;
      if (handle_trigger(e)) ++res.schemes_written;
    }
    return res;
  }

  /// File name of the snapshot the next solve would use.
  std::optional<std::string> current_snapshot() const {
    if (!current_) return std::nullopt;
    return current_->name;
  }

  const MonitorConfig& config() const { return cfg_; }

 private:
  struct Entry {
    std::filesystem::path path;
    std::string name;
    std::filesystem::file_time_type mtime;
  };

  struct Loaded {
    std::string name;
    std::filesystem::file_time_type mtime;
    Snapshot snapshot;
    WeightedGraph original;
  };

  void emit(LogLevel level, const std::string& msg) const {
    if (log_) log_(level, msg);
  }

  bool load_snapshot(const Entry& e) {
    try {
      Snapshot snap = parse_snapshot(read_text_file(e.path), net_);
      if (!zbus_) zbus_ = build_zbus(net_);
      WeightedGraph g = build_weighted_graph(net_, snap, *zbus_, cfg_.solve.weights);
      try {
        (void)degree_matrix(g);
      } catch (const Error& ex) {
        emit(LogLevel::warn, e.name + ": " + ex.what());
      }
      if (current_ && std::tie(e.mtime, e.name) < std::tie(current_->mtime, current_->name)) {
        emit(LogLevel::info, e.name + " is older than " + current_->name + "; keeping the newer snapshot");
        return true;
      }
      current_ = Loaded{e.name, e.mtime, std::move(snap), std::move(g)};
      emit(LogLevel::info, "refreshed weights from " + e.name);
      return true;
    } catch (const std::exception& ex) {
      emit(LogLevel::warn, "skipping " + e.name + ": " + ex.what());
      return false;
    }
  }

  bool handle_trigger(const Entry& e) {
    try {
      const std::string text = read_text_file(e.path);
      ConstraintSet c = parse_constraints(text);
      if (cfg_.big_m_factor) c.big_m_factor = *cfg_.big_m_factor;
      std::optional<int> k = cfg_.k;
      const auto doc = detail::parse_json_text(text, e.name);
      if (doc.is_object() && doc.contains("k")) k = detail::Field(doc, "").at("k").integer();
      if (!k && !c.coherent_groups.empty()) k = static_cast<int>(c.coherent_groups.size());
      if (!k) throw Error(ErrorCode::invalid_argument, "no island count: trigger has no k and no coherent groups");
      if (!current_) {
        emit(LogLevel::error, e.name + ": no snapshot received yet; nothing solved");
        return false;
      }
      PartitionResult part = partition_graph(net_, current_->original, c, *k, cfg_.solve);
      SolveResult res = evaluate_scheme(net_, current_->snapshot, current_->original, c, part.partition);
      std::optional<double> ms;
      if (cfg_.record_timings) ms = part.diagnostics.elapsed_ms;
      write_text_file(cfg_.out, serialize_scheme(res.scheme, res.report, ms));
      emit(LogLevel::info, e.name + ": scheme written to " + cfg_.out.string() + " using " + current_->name);
      return true;
    } catch (const std::exception& ex) {
      emit(LogLevel::error, e.name + ": " + ex.what());
      return false;
    }
  }

  Network net_;
  MonitorConfig cfg_;
  LogSink log_;
  std::optional<ImpedanceMatrix> zbus_;
  std::optional<Loaded> current_;
  std::map<std::string, std::filesystem::file_time_type> seen_;
};

}  // namespace islanding

#endif  // ISLANDING_MONITOR_HPP
