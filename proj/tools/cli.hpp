#ifndef ISLANDCTL_CLI_HPP
#define ISLANDCTL_CLI_HPP

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "islanding/error.hpp"
#include "islanding/grid_model.hpp"
#include "islanding/monitor.hpp"
#include "islanding/scheme_io.hpp"
#include "islanding/solve.hpp"
#include "islanding/weights.hpp"

namespace islandctl {

namespace fs = std::filesystem;
using namespace islanding;

enum class Command { partition, validate, distances, monitor, report };

struct CliConfig {
  Command command = Command::partition;
  std::string network, snapshot, constraints, scheme, out, watch_dir;
  std::optional<int> k;
  std::uint64_t seed = 0;
  std::optional<double> big_m_factor;
  int restarts = 20;
  double interval_s = 300.0;
  std::optional<int> max_polls;
  bool row_normalize = false;
  bool no_weight_override = false;
  bool record_timings = false;
  DistanceMode distance_mode = DistanceMode::magnitude;
  std::optional<double> dc_distance;
  std::vector<std::string> pairs;
  int precision = 4;
};

/// Set by SIGINT/SIGTERM; the monitor loop exits after the current poll.
inline std::atomic<bool>& stop_requested() {
  static std::atomic<bool> flag{false};
  return flag;
}

inline std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto log = std::make_shared<spdlog::logger>("islandctl", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("ISLANDCTL_LOG");
  log->set_level(env ? spdlog::level::from_str(env) : spdlog::level::info);
  return log;
}

inline SolveConfig solve_config(const CliConfig& cfg) {
  SolveConfig sc;
  sc.kmeans.seed = cfg.seed;
  sc.kmeans.restarts = cfg.restarts;
  sc.weights.distance_mode = cfg.distance_mode;
  sc.weights.dc_distance = cfg.dc_distance;
  sc.weights.use_overrides = !cfg.no_weight_override;
  sc.row_normalize = cfg.row_normalize;
  return sc;
}

inline ConstraintSet load_constraints(const CliConfig& cfg) {
  ConstraintSet c;
  if (!cfg.constraints.empty()) c = parse_constraints(read_text_file(cfg.constraints));
  if (cfg.big_m_factor) c.big_m_factor = *cfg.big_m_factor;
  return c;
}

inline std::string fixed(double v, int precision) {
  if (v == 0.0) v = 0.0;
  return fmt::format("{:.{}f}", v, precision);
}

inline void print_scheme(std::ostream& out, const IslandingScheme& s, int precision) {
  out << "islands:\n";
  for (std::size_t i = 0; i < s.islands.size(); ++i) out << "  " << i + 1 << ": " << fmt::format("{}", fmt::join(s.islands[i], " ")) << "\n";
  out << "cut lines:\n";
  for (const auto& c : s.cut_lines)
    out << "  " << to_string(c.branch) << "  w=" << fixed(c.w, precision) << (c.dc ? "  dc" : "") << "\n";
  out << "cut_weight_sum: " << fixed(s.cut_weight_sum, precision) << "\n";
  out << "composite_disruption: " << fixed(s.composite_disruption, precision) << "\n";
  out << "per island:\n";
  for (std::size_t i = 0; i < s.per_island.size(); ++i) {
    const auto& b = s.per_island[i];
    out << "  " << i + 1 << ": generation=" << fixed(b.generation, precision) << " load=" << fixed(b.load, precision)
        << " imbalance=" << fixed(b.imbalance, precision) << (b.has_generator ? "" : "  (no generator)") << "\n";
  }
  for (const auto& w : s.warnings) out << "warning: " << w << "\n";
}

inline void print_report(std::ostream& out, const ValidationReport& r, int precision) {
  out << "coherence: " << (r.coherence_ok ? "ok" : "VIOLATED") << "\n";
  for (const auto& v : r.coherence_violations)
    out << "  (" << v.pair.a << ", " << v.pair.b << ") "
        << (v.kind == CoherenceViolationKind::split_group ? "coherent pair split" : "non-coherent pair merged") << "\n";
  out << "vsc: " << (r.vsc_ok ? "ok" : "VIOLATED") << "\n";
  for (const auto& p : r.vsc_violations) out << "  (" << p.a << ", " << p.b << ") terminals share an island\n";
  out << "connectivity: " << (r.connectivity_ok ? "ok" : "VIOLATED") << "\n";
  for (const auto& comp : r.orphan_components) out << "  orphan component: " << fmt::format("{}", fmt::join(comp, " ")) << "\n";
  out << "limits: " << (r.limits.empty() ? "ok" : "VIOLATED") << "\n";
  for (const auto& l : r.limits)
    out << "  " << l.entity << " " << l.quantity << " = " << fixed(l.value, precision) << " outside " << l.bound_name
        << " " << fixed(l.bound, precision) << "\n";
  for (const auto& u : r.unchecked) out << "  unchecked: " << u << "\n";
  for (int i : r.islands_without_generation) out << "island " << i + 1 << " has no generator\n";
}

inline int cmd_partition(const CliConfig& cfg, std::ostream& out, spdlog::logger& log) {
  const Network net = parse_network(read_text_file(cfg.network));
  const Snapshot snap = parse_snapshot(read_text_file(cfg.snapshot), net);
  const ConstraintSet c = load_constraints(cfg);
  int k = 0;
  if (cfg.k) k = *cfg.k;
  else if (!c.coherent_groups.empty()) k = static_cast<int>(c.coherent_groups.size());
  else throw Error(ErrorCode::invalid_argument, "-k is required when no coherent groups are given");

  const SolveResult res = solve_islanding(net, snap, c, k, solve_config(cfg));
  log.debug("chosen restart {} of {}, big-M {}", res.diagnostics.chosen_restart, cfg.restarts, res.diagnostics.big_m);
  print_scheme(out, res.scheme, cfg.precision);
  out << "solve time: " << fixed(res.diagnostics.elapsed_ms, cfg.precision) << " ms\n";
  if (!cfg.out.empty()) {
    std::optional<double> ms;
    if (cfg.record_timings) ms = res.diagnostics.elapsed_ms;
    write_text_file(cfg.out, serialize_scheme(res.scheme, res.report, ms));
    log.info("scheme written to {}", cfg.out);
  }
  return 0;
}

inline int cmd_validate(const CliConfig& cfg, std::ostream& out, spdlog::logger&) {
  const Network net = parse_network(read_text_file(cfg.network));
  const Partition p = parse_scheme_partition(read_text_file(cfg.scheme), net);
  const ConstraintSet c = load_constraints(cfg);
  validate_constraints(c, net);

  ValidationReport r;
  const auto coh = validate_coherence(p, c, net);
  r.coherence_violations = coh.violations;
  r.coherence_ok = coh.violations.empty();
  r.orphan_components = coh.orphan_components;
  r.connectivity_ok = coh.orphan_components.empty();
  r.vsc_violations = validate_vsc(p, c, net);
  r.vsc_ok = r.vsc_violations.empty();
  if (!cfg.snapshot.empty()) {
    const Snapshot snap = parse_snapshot(read_text_file(cfg.snapshot), net);
    auto lim = check_limits(net, snap);
    r.limits = std::move(lim.violations);
    r.unchecked = std::move(lim.unchecked);
    const auto bal = island_imbalance(net, snap, p);
    for (std::size_t i = 0; i < bal.size(); ++i)
      if (!bal[i].has_generator) r.islands_without_generation.push_back(static_cast<int>(i));
  } else {
    r.unchecked.push_back("limits (no snapshot given)");
  }
  print_report(out, r, cfg.precision);
  return r.ok() ? 0 : 1;
}

inline std::pair<BusId, BusId> parse_pair(const std::string& s) {
  const auto sep = s.find_first_of(",-:");
  try {
    if (sep == std::string::npos) throw std::invalid_argument(s);
    std::size_t used_a = 0, used_b = 0;
    const std::string sa = s.substr(0, sep), sb = s.substr(sep + 1);
    const int a = std::stoi(sa, &used_a), b = std::stoi(sb, &used_b);
    if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_argument, "bad bus pair '" + s + "', expected I,J");
  }
}

inline int cmd_distances(const CliConfig& cfg, std::ostream& out, spdlog::logger& log) {
  const Network net = parse_network(read_text_file(cfg.network));
  const ImpedanceMatrix z = build_zbus(net);
  std::ostringstream text;
  if (!cfg.pairs.empty()) {
    for (const auto& s : cfg.pairs) {
      const auto [a, b] = parse_pair(s);
      text << a << " " << b << " " << fixed(electrical_distance(z, a, b, cfg.distance_mode), cfg.precision) << "\n";
    }
  } else {
    const auto& ids = net.bus_index().ids();
    text << "bus";
    for (BusId b : ids) text << " " << b;
    text << "\n";
    for (BusId a : ids) {
      text << a;
      for (BusId b : ids) text << " " << fixed(a == b ? 0.0 : electrical_distance(z, a, b, cfg.distance_mode), cfg.precision);
      text << "\n";
    }
  }
  if (cfg.out.empty()) {
    out << text.str();
  } else {
    write_text_file(cfg.out, text.str());
    log.info("distances written to {}", cfg.out);
  }
  return 0;
}

inline int cmd_report(const CliConfig& cfg, std::ostream& out, spdlog::logger&) {
  const auto doc = detail::parse_json_text(read_text_file(cfg.scheme), "scheme");
  const detail::Field root(doc, "");
  IslandingScheme s;
  const auto islands = root.at("islands");
  for (std::size_t i = 0; i < islands.size(); ++i) {
    std::vector<BusId> ids;
    for (std::size_t j = 0; j < islands[i].size(); ++j) ids.push_back(islands[i][j].integer());
    s.islands.push_back(std::move(ids));
  }
  if (auto lines = root.maybe("cut_lines"))
    for (std::size_t i = 0; i < lines->size(); ++i) {
      const auto l = (*lines)[i];
      const bool dc = l.has("dc") && l.at("dc").node().is_boolean() && l.at("dc").node().get<bool>();
      s.cut_lines.push_back({{l.at("from").integer(), l.at("to").integer(), l.at("circuit").integer()}, l.at("w").number(), dc});
    }
  s.cut_weight_sum = root.number_or("cut_weight_sum", 0.0);
  s.composite_disruption = root.number_or("composite_disruption", 0.0);
  if (auto per = root.maybe("per_island"))
    for (std::size_t i = 0; i < per->size(); ++i) {
      const auto b = (*per)[i];
      const bool has_gen = !b.has("has_generator") || b.at("has_generator").node().get<bool>();
      s.per_island.push_back({b.number_or("generation", 0.0), b.number_or("load", 0.0), b.number_or("imbalance", 0.0), has_gen});
    }
  if (auto w = root.maybe("warnings"))
    for (std::size_t i = 0; i < w->size(); ++i) s.warnings.push_back((*w)[i].string());
  print_scheme(out, s, cfg.precision);
  return 0;
}

inline int cmd_monitor(const CliConfig& cfg, std::ostream&, spdlog::logger& log) {
  if (!fs::is_directory(cfg.watch_dir))
    throw Error(ErrorCode::invalid_argument, "watch directory " + cfg.watch_dir + " does not exist");
  if (!(cfg.interval_s > 0.0)) throw Error(ErrorCode::invalid_argument, "--interval must be positive");
  MonitorConfig mc;
  mc.watch_dir = cfg.watch_dir;
  mc.out = cfg.out;
  mc.k = cfg.k;
  mc.big_m_factor = cfg.big_m_factor;
  mc.solve = solve_config(cfg);
  mc.record_timings = cfg.record_timings;
  Monitor mon(parse_network(read_text_file(cfg.network)), mc, [&log](LogLevel level, const std::string& msg) {
    switch (level) {
      case LogLevel::debug: log.debug(msg); break;
      case LogLevel::info: log.info(msg); break;
      case LogLevel::warn: log.warn(msg); break;
      case LogLevel::error: log.error(msg); break;
    }
  });
  log.info("watching {} every {} s", cfg.watch_dir, cfg.interval_s);
  const auto interval = std::chrono::duration<double>(cfg.interval_s);
  for (int n = 0; !cfg.max_polls || n < *cfg.max_polls; ++n) {
    if (n > 0) {
      const auto until = std::chrono::steady_clock::now() + interval;
      while (!stop_requested() && std::chrono::steady_clock::now() < until)
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    if (stop_requested()) break;
    mon.poll();
  }
  return 0;
}

/// Parses arguments and runs one command; returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  auto log = make_logger(err);
  CliConfig cfg;
  CLI::App app{"Controlled islanding by constrained spectral clustering", "islandctl"};
  app.require_subcommand(1);

  const std::map<std::string, DistanceMode> modes{
      {"magnitude", DistanceMode::magnitude}, {"resistance", DistanceMode::resistance}, {"reactance", DistanceMode::reactance}};

  auto add_network = [&](CLI::App* sub) { sub->add_option("--network", cfg.network, "Network file")->required(); };
  auto add_precision = [&](CLI::App* sub) {
    sub->add_option("--precision", cfg.precision, "Decimals in printed numbers")->check(CLI::Range(0, 12));
  };
  auto add_distance = [&](CLI::App* sub) {
    sub->add_option("--distance-mode", cfg.distance_mode, "Electrical distance quantity")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("-k", cfg.k, "Number of islands (default: number of coherent groups)");
    sub->add_option("--seed", cfg.seed, "k-means seed");
    sub->add_option("--big-m-factor", cfg.big_m_factor, "Must-link weight as a multiple of the largest line weight")
        ->check(CLI::PositiveNumber);
    sub->add_option("--restarts", cfg.restarts, "k-means restarts")->check(CLI::PositiveNumber);
    sub->add_option("--dc-distance", cfg.dc_distance, "Distance for VSC DC branches")->check(CLI::PositiveNumber);
    sub->add_flag("--row-normalize", cfg.row_normalize, "Cluster unit-length embedding rows");
    sub->add_flag("--no-weight-override", cfg.no_weight_override, "Ignore the snapshot's weights section");
    sub->add_flag("--record-timings", cfg.record_timings, "Store solve time in the scheme file");
    add_distance(sub);
  };

  auto* partition = app.add_subcommand("partition", "Solve for an islanding scheme");
  add_network(partition);
  partition->add_option("--snapshot", cfg.snapshot, "Snapshot file")->required();
  partition->add_option("--constraints", cfg.constraints, "Constraints file");
  partition->add_option("--out", cfg.out, "Scheme output file");
  add_solver(partition);
  add_precision(partition);

  auto* validate = app.add_subcommand("validate", "Check a scheme against constraints and limits");
  add_network(validate);
  validate->add_option("--scheme", cfg.scheme, "Scheme file")->required();
  validate->add_option("--constraints", cfg.constraints, "Constraints file");
  validate->add_option("--snapshot", cfg.snapshot, "Snapshot file for limit checks");
  add_precision(validate);

  auto* distances = app.add_subcommand("distances", "Print electrical distances");
  add_network(distances);
  distances->add_option("--pair", cfg.pairs, "Bus pair I,J (repeatable); default is the full matrix");
  distances->add_option("--out", cfg.out, "Output text file");
  add_distance(distances);
  add_precision(distances);

  auto* monitor = app.add_subcommand("monitor", "Poll a directory for snapshots and trigger files");
  add_network(monitor);
  monitor->add_option("--watch-dir", cfg.watch_dir, "Directory to poll")->required();
  monitor->add_option("--interval", cfg.interval_s, "Seconds between polls")->capture_default_str();
  monitor->add_option("--out", cfg.out, "Scheme output file (default: <watch-dir>/scheme.json)");
  monitor->add_option("--max-polls", cfg.max_polls, "Stop after this many polls")->check(CLI::PositiveNumber);
  add_solver(monitor);

  auto* report = app.add_subcommand("report", "Summarize a scheme file");
  report->add_option("--scheme", cfg.scheme, "Scheme file")->required();
  add_precision(report);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  if (validate->parsed()) cfg.command = Command::validate;
  if (distances->parsed()) cfg.command = Command::distances;
  if (monitor->parsed()) cfg.command = Command::monitor;
  if (report->parsed()) cfg.command = Command::report;

  try {
    switch (cfg.command) {
      case Command::partition: return cmd_partition(cfg, out, *log);
      case Command::validate: return cmd_validate(cfg, out, *log);
      case Command::distances: return cmd_distances(cfg, out, *log);
      case Command::monitor: return cmd_monitor(cfg, out, *log);
      case Command::report: return cmd_report(cfg, out, *log);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace islandctl

#endif  // ISLANDCTL_CLI_HPP
