#ifndef ISLANDING_SCHEME_IO_HPP
#define ISLANDING_SCHEME_IO_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "islanding/json_fields.hpp"
#include "islanding/solve.hpp"

namespace islanding {

/// Stored numbers are rounded to this many decimals.
inline constexpr int kSchemeDecimals = 4;

namespace detail {

inline double round_output(double x) {
  const double scale = std::pow(10.0, kSchemeDecimals);
  const double r = std::round(x * scale) / scale;
  return r == 0.0 ? 0.0 : r;
}

inline const char* to_string(CoherenceViolationKind k) {
  return k == CoherenceViolationKind::split_group ? "split_group" : "merged_groups";
}

}  // namespace detail

inline nlohmann::ordered_json validation_to_json(const ValidationReport& r) {
  using nlohmann::ordered_json;
  using detail::round_output;
  ordered_json v;
  v["coherence_ok"] = r.coherence_ok;
  v["coherence_violations"] = ordered_json::array();
  for (const auto& c : r.coherence_violations)
    v["coherence_violations"].push_back({{"buses", {c.pair.a, c.pair.b}}, {"kind", detail::to_string(c.kind)}});
  v["vsc_ok"] = r.vsc_ok;
  v["vsc_violations"] = ordered_json::array();
  for (const auto& p : r.vsc_violations) v["vsc_violations"].push_back({p.a, p.b});
  v["connectivity_ok"] = r.connectivity_ok;
  v["orphan_components"] = r.orphan_components;
  v["limits"] = ordered_json::array();
  for (const auto& l : r.limits)
    v["limits"].push_back({{"entity", l.entity},
                           {"quantity", l.quantity},
                           {"value", round_output(l.value)},
                           {"bound", round_output(l.bound)},
                           {"bound_name", l.bound_name}});
  v["unchecked"] = r.unchecked;
  v["islands_without_generation"] = ordered_json::array();
  for (int i : r.islands_without_generation) v["islands_without_generation"].push_back(i + 1);
  return v;
}

/// Scheme file contents. `timings_ms` is written as null unless supplied so
/// that reruns with the same seed produce identical bytes.
inline nlohmann::ordered_json scheme_to_json(const IslandingScheme& s, const ValidationReport& r,
                                             std::optional<double> timings_ms = std::nullopt) {
  using nlohmann::ordered_json;
  using detail::round_output;
  ordered_json doc;
  doc["islands"] = s.islands;
  doc["cut_lines"] = ordered_json::array();
  for (const auto& c : s.cut_lines)
    doc["cut_lines"].push_back({{"from", c.branch.from},
                                {"to", c.branch.to},
                                {"circuit", c.branch.circuit},
                                {"w", round_output(c.w)},
                                {"dc", c.dc}});
  doc["cut_weight_sum"] = round_output(s.cut_weight_sum);
  doc["composite_disruption"] = round_output(s.composite_disruption);
  doc["per_island"] = ordered_json::array();
  for (std::size_t i = 0; i < s.per_island.size(); ++i) {
    const auto& b = s.per_island[i];
    doc["per_island"].push_back({{"island", i + 1},
                                 {"generation", round_output(b.generation)},
                                 {"load", round_output(b.load)},
                                 {"imbalance", round_output(b.imbalance)},
                                 {"has_generator", b.has_generator}});
  }
  doc["validation"] = validation_to_json(r);
  doc["warnings"] = s.warnings;
  doc["timings_ms"] = timings_ms ? ordered_json(round_output(*timings_ms)) : ordered_json(nullptr);
  return doc;
}

inline std::string serialize_scheme(const IslandingScheme& s, const ValidationReport& r,
                                    std::optional<double> timings_ms = std::nullopt) {
  return scheme_to_json(s, r, timings_ms).dump(2) + "\n";
}

/// Reads the `islands` member of a scheme file into a partition over the network's buses.
inline Partition parse_scheme_partition(std::string_view text, const Network& net) {
  using detail::Field;
  const auto doc = detail::parse_json_text(text, "scheme");
  const Field root(doc, "");
  const Field islands = root.at("islands");
  if (islands.size() == 0) islands.fail("expected a non-empty array of islands");
  std::vector<std::vector<BusId>> groups;
  for (std::size_t i = 0; i < islands.size(); ++i) {
    const Field isl = islands[i];
    std::vector<BusId> ids;
    for (std::size_t j = 0; j < isl.size(); ++j) ids.push_back(static_cast<BusId>(isl[j].integer()));
    groups.push_back(std::move(ids));
  }
  return Partition::from_groups(net.bus_index(), groups);
}

}  // namespace islanding

#endif  // ISLANDING_SCHEME_IO_HPP
