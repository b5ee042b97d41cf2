#ifndef ISLANDING_SOLVE_HPP
#define ISLANDING_SOLVE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "islanding/clustering.hpp"
#include "islanding/error.hpp"
#include "islanding/grid_model.hpp"
#include "islanding/spectral.hpp"
#include "islanding/weights.hpp"

namespace islanding {

struct BusPair {
  BusId a = 0;
  BusId b = 0;
  bool operator==(const BusPair&) const = default;
};

struct CutLine {
  BranchKey branch;
  /// Original weight of the aggregated bus-pair edge the branch belongs to.
  double w = 0.0;
  bool dc = false;
};

struct IslandBalance {
  double generation = 0.0;
  double load = 0.0;
  double imbalance = 0.0;
  bool has_generator = false;
};

struct IslandingScheme {
  std::vector<std::vector<BusId>> islands;
  std::vector<CutLine> cut_lines;
  double cut_weight_sum = 0.0;
  double composite_disruption = 0.0;
  std::vector<IslandBalance> per_island;
  std::vector<std::string> warnings;
};

enum class CoherenceViolationKind { split_group, merged_groups };

struct CoherenceViolation {
  BusPair pair;
  CoherenceViolationKind kind = CoherenceViolationKind::split_group;
};

struct CoherenceFindings {
  std::vector<CoherenceViolation> violations;
  /// Islands whose induced AC subgraph is disconnected: every component but the first.
  std::vector<std::vector<BusId>> orphan_components;
};

struct LimitViolation {
  std::string entity;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
  std::string bound_name;
};

struct LimitFindings {
  std::vector<LimitViolation> violations;
  std::vector<std::string> unchecked;
};

struct ValidationReport {
  bool coherence_ok = true;
  std::vector<CoherenceViolation> coherence_violations;
  bool vsc_ok = true;
  std::vector<BusPair> vsc_violations;
  bool connectivity_ok = true;
  std::vector<std::vector<BusId>> orphan_components;
  std::vector<LimitViolation> limits;
  std::vector<std::string> unchecked;
  std::vector<int> islands_without_generation;

  bool ok() const { return coherence_ok && vsc_ok && connectivity_ok && limits.empty(); }
};

// ---------------------------------------------------------------------------
// Topology helpers

/// Adjacency over AC lines (any weight); DC links carry no synchronous connection.
inline std::vector<std::vector<std::size_t>> ac_adjacency(const Network& net) {
  const auto& idx = net.bus_index();
  std::vector<std::vector<std::size_t>> adj(idx.size());
  for (const auto& br : net.branches()) {
    if (br.is_dc()) continue;
    const auto i = idx.index_of(br.from), j = idx.index_of(br.to);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

/// Connected components of the subgraph induced by `members`, each sorted,
/// ordered by smallest index.
inline std::vector<std::vector<std::size_t>> induced_components(const std::vector<std::vector<std::size_t>>& adj,
                                                                const std::vector<std::size_t>& members) {
  std::vector<char> in(adj.size(), 0), seen(adj.size(), 0);
  for (auto m : members) in[m] = 1;
  std::vector<std::vector<std::size_t>> comps;
  for (auto start : members) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp, stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto u : adj[v])
        if (in[u] && !seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// Positive-weight connectivity of the whole graph; throws naming a stranded bus.
inline void require_connected(const WeightedGraph& g) {
  auto comps = induced_components(g.positive_adjacency(), all_indices(g.size()));
  if (comps.size() > 1) {
    std::string msg = std::to_string(comps.size()) + " components after constraints; bus " +
                      std::to_string(g.bus_index().id_at(comps[1].front())) + " is cut off from bus " +
                      std::to_string(g.bus_index().id_at(comps[0].front()));
    throw Error(ErrorCode::disconnected_graph, msg);
  }
}

// ---------------------------------------------------------------------------
// Cut extraction and objective

/// Physical branches crossing islands with the original-weight cut sum. A DC
/// link is listed only when it carries weight in the graph.
inline std::pair<std::vector<CutLine>, double> extract_cut(const WeightedGraph& original, const Network& net,
                                                           const Partition& p) {
  const auto& idx = net.bus_index();
  std::vector<CutLine> lines;
  for (const auto& br : net.branches()) {
    const auto i = idx.index_of(br.from), j = idx.index_of(br.to);
    if (p[i] == p[j]) continue;
    const double w = original.weight(i, j);
    if (br.is_dc() && !(w > 0.0)) continue;
    lines.push_back({br.key(), w, br.is_dc()});
  }
  std::sort(lines.begin(), lines.end(), [](const CutLine& x, const CutLine& y) {
    auto kx = std::make_tuple(std::min(x.branch.from, x.branch.to), std::max(x.branch.from, x.branch.to), x.branch.circuit);
    auto ky = std::make_tuple(std::min(y.branch.from, y.branch.to), std::max(y.branch.from, y.branch.to), y.branch.circuit);
    return kx < ky;
  });
  double sum = 0.0;
  for (const auto& [ij, e] : original.edges())
    if (!e.is_virtual && p[ij.first] != p[ij.second]) sum += e.weight;
  return {std::move(lines), sum};
}

/// Half the sum of |P_ij| / D_ij over ordered cross-island bus pairs.
inline double composite_disruption(const WeightedGraph& original, const Partition& p) {
  double sum = 0.0;
  for (const auto& [ij, e] : original.edges()) {
    if (e.is_virtual || p[ij.first] == p[ij.second]) continue;
    sum += 2.0 * e.weight;
  }
  return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// Validators

inline CoherenceFindings validate_coherence(const Partition& p, const ConstraintSet& c, const Network& net) {
  const auto& idx = net.bus_index();
  CoherenceFindings out;
  for (const auto& grp : c.coherent_groups)
    for (std::size_t x = 0; x < grp.size(); ++x)
      for (std::size_t y = x + 1; y < grp.size(); ++y)
        if (p[idx.index_of(grp[x])] != p[idx.index_of(grp[y])])
          out.violations.push_back({{grp[x], grp[y]}, CoherenceViolationKind::split_group});
  for (std::size_t ga = 0; ga < c.coherent_groups.size(); ++ga)
    for (std::size_t gb = ga + 1; gb < c.coherent_groups.size(); ++gb)
      for (BusId a : c.coherent_groups[ga])
        for (BusId b : c.coherent_groups[gb])
          if (p[idx.index_of(a)] == p[idx.index_of(b)])
            out.violations.push_back({{a, b}, CoherenceViolationKind::merged_groups});

  const auto adj = ac_adjacency(net);
  for (int isl = 0; isl < p.k(); ++isl) {
    auto comps = induced_components(adj, p.members(isl));
    for (std::size_t ci = 1; ci < comps.size(); ++ci) {
      std::vector<BusId> ids;
      for (auto v : comps[ci]) ids.push_back(idx.id_at(v));
      out.orphan_components.push_back(std::move(ids));
    }
  }
  return out;
}

inline std::vector<BusPair> validate_vsc(const Partition& p, const ConstraintSet& c, const Network& net) {
  std::vector<BusPair> out;
  for (const auto& [a, b] : c.vsc_pairs)
    if (p[net.bus_index().index_of(a)] == p[net.bus_index().index_of(b)]) out.push_back({a, b});
  return out;
}

inline LimitFindings check_limits(const Network& net, const Snapshot& snap) {
  LimitFindings out;
  auto check = [&](const std::string& entity, const std::string& quantity, double v, const Range& r) {
    if (v < r.min) out.violations.push_back({entity, quantity, v, r.min, "min"});
    if (v > r.max) out.violations.push_back({entity, quantity, v, r.max, "max"});
  };

  std::map<BusId, std::pair<Range, Range>> gen_limits;
  for (const auto& g : net.generators()) {
    auto [it, fresh] = gen_limits.try_emplace(g.bus, g.p, g.q);
    if (!fresh) {
      it->second.first.min += g.p.min;
      it->second.first.max += g.p.max;
      it->second.second.min += g.q.min;
      it->second.second.max += g.q.max;
    }
  }
  for (const auto& [bus, lim] : gen_limits) {
    const std::string who = "generator@" + std::to_string(bus);
    auto it = snap.generation.find(bus);
    if (it == snap.generation.end()) {
      out.unchecked.push_back(who + " P/Q");
      continue;
    }
    check(who, "P", it->second.p, lim.first);
    check(who, "Q", it->second.q, lim.second);
  }

  if (snap.bus_voltages.empty()) {
    if (std::any_of(net.buses().begin(), net.buses().end(), [](const Bus& b) { return b.voltage_limits.has_value(); }))
      out.unchecked.push_back("bus voltages");
  } else {
    for (const auto& b : net.buses()) {
      if (!b.voltage_limits) continue;
      auto it = snap.bus_voltages.find(b.id);
      if (it == snap.bus_voltages.end()) {
        out.unchecked.push_back("bus@" + std::to_string(b.id) + " U");
        continue;
      }
      check("bus@" + std::to_string(b.id), "U", it->second, *b.voltage_limits);
    }
  }

  for (const auto& link : net.vsc_links()) {
    for (BusId t : {link.terminal1, link.terminal2}) {
      const std::string who = "vsc@" + std::to_string(t);
      auto it = snap.vsc_points.find(t);
      if (it == snap.vsc_points.end()) {
        out.unchecked.push_back(who + " operating point");
        continue;
      }
      const auto& op = it->second;
      check(who, "P_s", op.p_s, link.p_s);
      check(who, "Q_s", op.q_s, link.q_s);
      if (op.u_dc) check(who, "U_dc", *op.u_dc, link.u_dc);
      else out.unchecked.push_back(who + " U_dc");
      if (op.i_dc) check(who, "I_dc", *op.i_dc, link.i_dc);
      else out.unchecked.push_back(who + " I_dc");
      if (link.pq_circle) {
        const auto& c = *link.pq_circle;
        const double r2 = (op.p_s - c.p0) * (op.p_s - c.p0) + (op.q_s - c.q0) * (op.q_s - c.q0);
        if (r2 < c.r_min * c.r_min) out.violations.push_back({who, "PQ radius^2", r2, c.r_min * c.r_min, "r_min"});
        if (r2 > c.r_max * c.r_max) out.violations.push_back({who, "PQ radius^2", r2, c.r_max * c.r_max, "r_max"});
      }
    }
  }
  return out;
}

/// Per-island generation, load and their difference from net bus injections.
/// Generation comes from the snapshot's dispatch when present; otherwise
/// positive injections count as generation and negative ones as load.
inline std::vector<IslandBalance> island_imbalance(const Network& net, const Snapshot& snap, const Partition& p) {
  const auto& idx = net.bus_index();
  std::vector<IslandBalance> out(static_cast<std::size_t>(p.k()));
  const bool has_dispatch = !snap.generation.empty();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const BusId id = idx.id_at(i);
    auto& isl = out[static_cast<std::size_t>(p[i])];
    isl.has_generator = isl.has_generator || net.hosts_generator(id);
    const auto inj = snap.bus_injections.find(id);
    const double net_p = inj == snap.bus_injections.end() ? 0.0 : inj->second.p;
    double gen = 0.0, load = 0.0;
    if (has_dispatch) {
      auto g = snap.generation.find(id);
      gen = g == snap.generation.end() ? 0.0 : g->second.p;
      load = gen - net_p;
    } else {
      gen = std::max(net_p, 0.0);
      load = std::max(-net_p, 0.0);
    }
    isl.generation += gen;
    isl.load += load;
    isl.imbalance += net_p;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Repairs

namespace detail {

/// Weight between a bus set and each island, over the given graph.
inline std::vector<double> link_weights(const WeightedGraph& g, const Partition& p,
                                        const std::vector<std::size_t>& members) {
  std::vector<char> in(g.size(), 0);
  for (auto m : members) in[m] = 1;
  std::vector<double> out(static_cast<std::size_t>(p.k()), 0.0);
  for (const auto& [ij, e] : g.edges()) {
    if (e.is_virtual) continue;
    const bool a = in[ij.first], b = in[ij.second];
    if (a && !b) out[static_cast<std::size_t>(p[ij.second])] += e.weight;
    if (b && !a) out[static_cast<std::size_t>(p[ij.first])] += e.weight;
  }
  return out;
}

}  // namespace detail

/// Reassigns every generator-free component of a disconnected island to the
/// adjacent island with the smallest total_cut increase (ties: lowest island id),
/// repeating to a fixpoint. Islands without any generator keep their largest component.
inline Partition repair_connectivity(const WeightedGraph& graph, const Partition& p, const Network& net) {
  const auto adj = ac_adjacency(net);
  const auto& idx = net.bus_index();
  std::vector<int> a = p.assignment();
  const int k = p.k();
  bool changed = true;
  while (changed) {
    changed = false;
    Partition cur(a, k);
    for (int isl = 0; isl < k && !changed; ++isl) {
      auto comps = induced_components(adj, cur.members(isl));
      if (comps.size() < 2) continue;
      auto has_gen = [&](const std::vector<std::size_t>& comp) {
        return std::any_of(comp.begin(), comp.end(), [&](std::size_t v) { return net.hosts_generator(idx.id_at(v)); });
      };
      std::size_t keep = comps.size();
      if (std::none_of(comps.begin(), comps.end(), has_gen)) {
        keep = 0;
        for (std::size_t ci = 1; ci < comps.size(); ++ci)
          if (comps[ci].size() > comps[keep].size()) keep = ci;
      }
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        if (ci == keep || has_gen(comps[ci])) continue;
        const auto& comp = comps[ci];
        std::set<int> neighbours;
        for (auto v : comp)
          for (auto u : adj[v])
            if (a[u] != isl) neighbours.insert(a[u]);
        if (neighbours.empty())
          throw Error(ErrorCode::disconnected_graph,
                      "component at bus " + std::to_string(idx.id_at(comp.front())) + " touches no other island");
        const auto links = detail::link_weights(graph, cur, comp);
        int best = -1;
        double best_delta = 0.0;
        for (int j : neighbours) {
          const double delta = links[static_cast<std::size_t>(isl)] - links[static_cast<std::size_t>(j)];
          if (best < 0 || delta < best_delta) {
            best = j;
            best_delta = delta;
          }
        }
        for (auto v : comp) a[v] = best;
        changed = true;
        break;
      }
    }
  }
  return Partition(std::move(a), k);
}

/// Separates VSC terminal pairs that share an island by moving one terminal
/// (never a coherent-group bus) into an AC-adjacent island, keeping both
/// islands connected and choosing the smallest cut increase (ties: lower bus
/// id, then lower island id). Returns nullopt when no such move exists.
inline std::optional<Partition> repair_cannot_link(const WeightedGraph& graph, const Partition& p, const Network& net,
                                                   const ConstraintSet& c) {
  const auto adj = ac_adjacency(net);
  const auto& idx = net.bus_index();
  std::vector<int> a = p.assignment();
  const int k = p.k();
  for (std::size_t round = 0; round <= c.vsc_pairs.size(); ++round) {
    bool moved = false;
    for (const auto& [t1, t2] : c.vsc_pairs) {
      const auto i1 = idx.index_of(t1), i2 = idx.index_of(t2);
      if (a[i1] != a[i2]) continue;
      Partition cur(a, k);
      std::optional<std::tuple<double, BusId, int, std::size_t>> best;
      for (BusId t : {std::min(t1, t2), std::max(t1, t2)}) {
        if (c.group_of(t)) continue;
        const auto ti = idx.index_of(t);
        const int from = a[ti];
        auto rest = cur.members(from);
        rest.erase(std::remove(rest.begin(), rest.end(), ti), rest.end());
        if (rest.empty() || induced_components(adj, rest).size() != 1) continue;
        const auto links = detail::link_weights(graph, cur, {ti});
        std::set<int> targets;
        for (auto u : adj[ti])
          if (a[u] != from) targets.insert(a[u]);
        for (int j : targets) {
          const double delta = links[static_cast<std::size_t>(from)] - links[static_cast<std::size_t>(j)];
          auto cand = std::make_tuple(delta, t, j, ti);
          if (!best || cand < *best) best = cand;
        }
      }
      if (!best) return std::nullopt;
      a[std::get<3>(*best)] = std::get<2>(*best);
      moved = true;
    }
    if (!moved) return Partition(std::move(a), k);
  }
  Partition out(std::move(a), k);
  if (!validate_vsc(out, c, net).empty()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end solve

struct SolveConfig {
  KMeansConfig kmeans;
  WeightOptions weights;
  SpectralOptions spectral;
  bool row_normalize = false;
};

struct CandidateSummary {
  int restart_index = 0;
  double wgss = 0.0;
  bool valid = false;
  double cut_weight_sum = 0.0;
};

struct SolveDiagnostics {
  Eigen::VectorXd eigenvalues;
  int chosen_restart = -1;
  std::vector<CandidateSummary> candidates;
  double big_m = 0.0;
  double elapsed_ms = 0.0;
};

struct PartitionResult {
  Partition partition;
  SolveDiagnostics diagnostics;
};

/// Spectral partition of an already-built original graph under constraints:
/// coherence and VSC weight modification, embedding, seeded k-means restarts,
/// repairs, and selection of the constraint-valid candidate with the smallest
/// original-weight cut (ties: WGSS, then restart index).
inline PartitionResult partition_graph(const Network& net, const WeightedGraph& original, const ConstraintSet& c, int k,
                                       const SolveConfig& cfg = {}) {
  if (k < 2) throw Error(ErrorCode::invalid_argument, "k must be >= 2, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > net.bus_count())
    throw Error(ErrorCode::invalid_argument, "k exceeds the bus count");
  if (!c.coherent_groups.empty() && c.coherent_groups.size() != static_cast<std::size_t>(k))
    throw Error(ErrorCode::group_count_mismatch, "k = " + std::to_string(k) + " but " +
                                                     std::to_string(c.coherent_groups.size()) + " coherent groups");
  validate_constraints(c, net);

  const auto t0 = std::chrono::steady_clock::now();
  PartitionResult out;
  const WeightedGraph constrained = apply_vsc_constraints(apply_coherence_constraints(original, c), c, net);
  out.diagnostics.big_m = c.coherent_groups.empty() ? 0.0 : c.big_m_factor * max_base_weight(original);
  const DegreeMatrix deg = degree_matrix(constrained);
  require_connected(constrained);

  const SpectralEmbedding emb = spectral_embedding(constrained, deg, k, cfg.spectral);
  out.diagnostics.eigenvalues = emb.eigenvalues;
  const auto runs = kmeans_runs(embedding_points(emb, cfg.row_normalize), k, cfg.kmeans);

  std::optional<std::size_t> best;
  std::vector<Partition> repaired(runs.size());
  std::size_t reference = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].wgss < runs[reference].wgss) reference = r;
    CandidateSummary s{runs[r].restart_index, runs[r].wgss, false, 0.0};
    Partition cand = repair_connectivity(original, runs[r].assignment, net);
    auto separated = repair_cannot_link(original, cand, net, c);
    if (separated) cand = *separated;
    repaired[r] = cand;
    const auto coh = validate_coherence(cand, c, net);
    s.valid = separated.has_value() && coh.violations.empty() && coh.orphan_components.empty() &&
              validate_vsc(cand, c, net).empty();
    s.cut_weight_sum = total_cut(original, cand);
    out.diagnostics.candidates.push_back(s);
    if (!s.valid) continue;
    if (!best) {
      best = r;
      continue;
    }
    const auto& b = out.diagnostics.candidates[*best];
    if (std::tie(s.cut_weight_sum, s.wgss, s.restart_index) < std::tie(b.cut_weight_sum, b.wgss, b.restart_index))
      best = r;
  }

  if (!best) {
    const Partition& ref = repaired[reference];
    const auto coh = validate_coherence(ref, c, net);
    for (const auto& v : coh.violations)
      if (v.kind == CoherenceViolationKind::split_group)
        throw Error(ErrorCode::must_link_violation,
                    "coherent buses " + std::to_string(v.pair.a) + " and " + std::to_string(v.pair.b) +
                        " land in different islands; raise big_m_factor (now " + std::to_string(c.big_m_factor) + ")");
    for (const auto& v : coh.violations)
      throw Error(ErrorCode::cannot_link_infeasible, "non-coherent generator buses " + std::to_string(v.pair.a) +
                                                         " and " + std::to_string(v.pair.b) + " share an island");
    for (const auto& v : validate_vsc(ref, c, net))
      throw Error(ErrorCode::cannot_link_infeasible,
                  "VSC terminals " + std::to_string(v.a) + " and " + std::to_string(v.b) + " cannot be separated");
    const auto orphans = validate_coherence(ref, c, net).orphan_components;
    throw Error(ErrorCode::disconnected_graph,
                "no candidate has connected islands; component at bus " +
                    (orphans.empty() ? std::string("?") : std::to_string(orphans.front().front())) +
                    " holds a generator but is cut off from the rest of its island");
  }
  out.diagnostics.chosen_restart = runs[*best].restart_index;
  out.partition = repaired[*best].canonical();
  out.diagnostics.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

struct SolveResult {
  IslandingScheme scheme;
  ValidationReport report;
  SolveDiagnostics diagnostics;
};

/// Builds the report for a given partition: cut, objective, balances, validation.
inline SolveResult evaluate_scheme(const Network& net, const Snapshot& snap, const WeightedGraph& original,
                                   const ConstraintSet& c, const Partition& part) {
  SolveResult res;
  auto& s = res.scheme;
  s.islands = part.islands(net.bus_index());
  std::tie(s.cut_lines, s.cut_weight_sum) = extract_cut(original, net, part);
  s.composite_disruption = composite_disruption(original, part);
  s.per_island = island_imbalance(net, snap, part);

  auto& r = res.report;
  const auto coh = validate_coherence(part, c, net);
  r.coherence_violations = coh.violations;
  r.coherence_ok = coh.violations.empty();
  r.orphan_components = coh.orphan_components;
  r.connectivity_ok = coh.orphan_components.empty();
  r.vsc_violations = validate_vsc(part, c, net);
  r.vsc_ok = r.vsc_violations.empty();
  auto lim = check_limits(net, snap);
  r.limits = std::move(lim.violations);
  r.unchecked = std::move(lim.unchecked);
  for (std::size_t i = 0; i < s.per_island.size(); ++i)
    if (!s.per_island[i].has_generator) {
      r.islands_without_generation.push_back(static_cast<int>(i));
      s.warnings.push_back("island " + std::to_string(i + 1) + " has no generator");
    }
  return res;
}

/// Full pipeline from network and snapshot to an islanding scheme.
inline SolveResult solve_islanding(const Network& net, const Snapshot& snap, const ConstraintSet& c, int k,
                                   const SolveConfig& cfg = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const ImpedanceMatrix zbus = build_zbus(net);
  const WeightedGraph original = build_weighted_graph(net, snap, zbus, cfg.weights);
  PartitionResult part = partition_graph(net, original, c, k, cfg);
  SolveResult res = evaluate_scheme(net, snap, original, c, part.partition);
  const WeightedGraph coh = apply_coherence_constraints(original, c);
  for (const auto& [a, b] : zeroed_physical_lines(coh))
    res.scheme.warnings.push_back("physical line " + std::to_string(a) + "-" + std::to_string(b) +
                                  " zeroed by a cannot-link constraint between non-coherent generators");
  res.diagnostics = std::move(part.diagnostics);
  res.diagnostics.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace islanding

#endif  // ISLANDING_SOLVE_HPP
