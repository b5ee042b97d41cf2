#ifndef ISLANDING_WEIGHTS_HPP
#define ISLANDING_WEIGHTS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "islanding/error.hpp"
#include "islanding/grid_model.hpp"
#include "islanding/json_fields.hpp"

namespace islanding {

/// Which pair-wise constraint last touched an edge.
enum class ConstraintMark { none, must_link, cannot_link };

struct Edge {
  double weight = 0.0;
  /// Weight before any constraint was applied (0 for virtual edges).
  double base_weight = 0.0;
  std::vector<BranchKey> branches;
  bool is_virtual = false;
  bool has_dc = false;
  ConstraintMark mark = ConstraintMark::none;
};

/// Undirected weighted graph over buses with symmetric adjacency and zero diagonal.
/// Entries are stored once per unordered index pair together with the
/// physical branches they aggregate.
class WeightedGraph {
 public:
  using IndexPair = std::pair<std::size_t, std::size_t>;

  WeightedGraph() = default;
  explicit WeightedGraph(BusIndex index) : index_(std::move(index)) {}

  const BusIndex& bus_index() const { return index_; }
  std::size_t size() const { return index_.size(); }
  const std::map<IndexPair, Edge>& edges() const { return edges_; }

  double weight(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    auto it = edges_.find(key(i, j));
    return it == edges_.end() ? 0.0 : it->second.weight;
  }

  double weight_between(BusId a, BusId b) const { return weight(index_.index_of(a), index_.index_of(b)); }

  const Edge* edge(std::size_t i, std::size_t j) const {
    if (i == j) return nullptr;
    auto it = edges_.find(key(i, j));
    return it == edges_.end() ? nullptr : &it->second;
  }

  const Edge* edge_between(BusId a, BusId b) const { return edge(index_.index_of(a), index_.index_of(b)); }

  /// Entry for (i, j), created empty when absent.
  Edge& entry(std::size_t i, std::size_t j) {
    if (i == j) throw Error(ErrorCode::invariant, "self loop at bus " + std::to_string(index_.id_at(i)));
    if (i >= size() || j >= size()) throw Error(ErrorCode::invalid_argument, "edge index out of range");
    return edges_[key(i, j)];
  }

  Eigen::MatrixXd dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [ij, e] : edges_) {
      w(static_cast<Eigen::Index>(ij.first), static_cast<Eigen::Index>(ij.second)) = e.weight;
      w(static_cast<Eigen::Index>(ij.second), static_cast<Eigen::Index>(ij.first)) = e.weight;
    }
    return w;
  }

  Eigen::SparseMatrix<double> sparse() const {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * edges_.size());
    for (const auto& [ij, e] : edges_) {
      if (e.weight == 0.0) continue;
      trips.emplace_back(static_cast<int>(ij.first), static_cast<int>(ij.second), e.weight);
      trips.emplace_back(static_cast<int>(ij.second), static_cast<int>(ij.first), e.weight);
    }
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::SparseMatrix<double> w(n, n);
    w.setFromTriplets(trips.begin(), trips.end());
    return w;
  }

  /// Adjacency lists restricted to positive weights.
  std::vector<std::vector<std::size_t>> positive_adjacency() const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (const auto& [ij, e] : edges_) {
      if (!(e.weight > 0.0)) continue;
      adj[ij.first].push_back(ij.second);
      adj[ij.second].push_back(ij.first);
    }
    return adj;
  }

 private:
  static IndexPair key(std::size_t i, std::size_t j) { return i < j ? IndexPair{i, j} : IndexPair{j, i}; }

  BusIndex index_;
  std::map<IndexPair, Edge> edges_;
};

struct DegreeMatrix {
  Eigen::VectorXd a;
};

/// Must-link coherent generator groups and cannot-link VSC terminal pairs.
struct ConstraintSet {
  std::vector<std::vector<BusId>> coherent_groups;
  std::vector<std::pair<BusId, BusId>> vsc_pairs;
  double big_m_factor = 1e4;

  bool empty() const { return coherent_groups.empty() && vsc_pairs.empty(); }

  /// Index of the group containing `bus`, if any.
  std::optional<std::size_t> group_of(BusId bus) const {
    for (std::size_t g = 0; g < coherent_groups.size(); ++g)
      if (std::find(coherent_groups[g].begin(), coherent_groups[g].end(), bus) != coherent_groups[g].end()) return g;
    return std::nullopt;
  }
};

inline void validate_constraints(const ConstraintSet& c, const Network& net) {
  if (!(c.big_m_factor > 0.0) || !std::isfinite(c.big_m_factor))
    throw Error(ErrorCode::invalid_argument, "big_m_factor must be a positive finite number");
  std::map<BusId, std::size_t> owner;
  for (std::size_t g = 0; g < c.coherent_groups.size(); ++g) {
    if (c.coherent_groups[g].empty()) throw Error(ErrorCode::invalid_argument, "coherent group " + std::to_string(g + 1) + " is empty");
    for (BusId b : c.coherent_groups[g]) {
      if (!net.bus_index().contains(b))
        throw Error(ErrorCode::dangling_reference, "coherent group references missing bus " + std::to_string(b));
      if (!net.hosts_generator(b) && !net.is_vsc_terminal(b))
        throw Error(ErrorCode::invalid_argument,
                    "bus " + std::to_string(b) + " in a coherent group hosts neither a generator nor a VSC terminal");
      auto [it, fresh] = owner.emplace(b, g);
      if (!fresh)
        throw Error(ErrorCode::overlapping_sets, "bus " + std::to_string(b) + " appears in coherent groups " +
                                                     std::to_string(it->second + 1) + " and " + std::to_string(g + 1));
    }
  }
  for (const auto& [a, b] : c.vsc_pairs) {
    if (!net.bus_index().contains(a) || !net.bus_index().contains(b))
      throw Error(ErrorCode::dangling_reference, "VSC pair references a missing bus");
    if (!net.find_vsc_link(a, b))
      throw Error(ErrorCode::invalid_argument,
                  "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") does not correspond to any VSC link");
    auto ga = owner.find(a), gb = owner.find(b);
    if (ga != owner.end() && gb != owner.end() && ga->second == gb->second)
      throw Error(ErrorCode::cannot_link_infeasible, "VSC terminals " + std::to_string(a) + " and " +
                                                         std::to_string(b) + " belong to the same coherent group");
  }
}

inline ConstraintSet parse_constraints(std::string_view text) {
  using detail::Field;
  const auto doc = detail::parse_json_text(text, "constraints file");
  Field root(doc, "");
  if (!doc.is_object()) root.fail("constraints file must be an object");
  ConstraintSet c;
  if (auto groups = root.maybe("coherent_groups")) {
    for (std::size_t g = 0; g < groups->size(); ++g) {
      Field grp = (*groups)[g];
      std::vector<BusId> buses;
      for (std::size_t i = 0; i < grp.size(); ++i) buses.push_back(grp[i].integer());
      c.coherent_groups.push_back(std::move(buses));
    }
  }
  if (auto pairs = root.maybe("vsc_pairs")) {
    for (std::size_t p = 0; p < pairs->size(); ++p) {
      Field pr = (*pairs)[p];
      if (pr.size() != 2) pr.fail("VSC pair must have exactly two buses");
      c.vsc_pairs.emplace_back(pr[0].integer(), pr[1].integer());
    }
  }
  if (root.has("big_m_factor")) c.big_m_factor = root.at("big_m_factor").number();
  return c;
}

/// Mean absolute directed active power on a line.
constexpr double edge_disruption(double p_ij, double p_ji) noexcept {
  return ((p_ij < 0 ? -p_ij : p_ij) + (p_ji < 0 ? -p_ji : p_ji)) / 2.0;
}

struct WeightOptions {
  DistanceMode distance_mode = DistanceMode::magnitude;
  /// Distance used for VSC DC branches; defaults to the branch impedance magnitude.
  std::optional<double> dc_distance;
  /// Honor the snapshot's `weights` section.
  bool use_overrides = true;
};

/// W_ij = (sum of parallel-circuit disruptions) / D_ij for every connected bus pair.
inline WeightedGraph build_weighted_graph(const Network& net, const Snapshot& snap, const ImpedanceMatrix& zbus,
                                          const WeightOptions& opts = {}) {
  const auto& idx = net.bus_index();
  WeightedGraph g(idx);

  std::map<WeightedGraph::IndexPair, std::vector<const Branch*>> groups;
  for (const auto& br : net.branches()) {
    auto i = idx.index_of(br.from), j = idx.index_of(br.to);
    groups[{std::min(i, j), std::max(i, j)}].push_back(&br);
  }

  std::map<WeightedGraph::IndexPair, double> overrides;
  if (opts.use_overrides) {
    for (const auto& o : snap.weight_overrides) {
      auto i = idx.index_of(o.from), j = idx.index_of(o.to);
      WeightedGraph::IndexPair k{std::min(i, j), std::max(i, j)};
      if (!groups.count(k))
        throw Error(ErrorCode::unknown_branch,
                    "weight override for " + std::to_string(o.from) + "-" + std::to_string(o.to) + " matches no branch");
      if (!overrides.emplace(k, o.w).second)
        throw Error(ErrorCode::invariant,
                    "duplicate weight override for " + std::to_string(o.from) + "-" + std::to_string(o.to));
    }
  }

  for (const auto& [k, branches] : groups) {
    Edge& e = g.entry(k.first, k.second);
    for (const Branch* br : branches) {
      e.branches.push_back(br->key());
      e.has_dc = e.has_dc || br->is_dc();
    }
    double w = 0.0;
    if (auto ov = overrides.find(k); ov != overrides.end()) {
      w = ov->second;
    } else {
      double disruption = 0.0;
      bool any_ac = false;
      Complex dc_admittance{0.0, 0.0};
      for (const Branch* br : branches) {
        auto flow = snap.branch_flows.find(br->key());
        if (flow == snap.branch_flows.end())
          throw Error(ErrorCode::missing_flow, "snapshot has no flow for existing branch " + to_string(br->key()));
        disruption += edge_disruption(flow->second.p_ij, flow->second.p_ji);
        if (br->is_dc()) {
          if (std::abs(br->impedance) > 0.0) dc_admittance += 1.0 / br->impedance;
        } else {
          any_ac = true;
        }
      }
      double d = 0.0;
      const BusId a = idx.id_at(k.first), b = idx.id_at(k.second);
      if (any_ac) {
        d = electrical_distance(zbus, a, b, opts.distance_mode);
      } else if (opts.dc_distance) {
        d = *opts.dc_distance;
      } else {
        d = std::abs(dc_admittance) > 0.0 ? std::abs(1.0 / dc_admittance) : 0.0;
      }
      if (!(d >= kDistanceFloor))
        throw Error(ErrorCode::degenerate_distance,
                    "D(" + std::to_string(a) + "," + std::to_string(b) + ") is below the floor");
      w = disruption / d;
    }
    e.weight = w;
    e.base_weight = w;
  }
  return g;
}

/// Diagonal of row sums of W; a zero row is an error naming the bus.
inline DegreeMatrix degree_matrix(const WeightedGraph& g) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
  for (const auto& [ij, e] : g.edges()) {
    a(static_cast<Eigen::Index>(ij.first)) += e.weight;
    a(static_cast<Eigen::Index>(ij.second)) += e.weight;
  }
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) > 0.0))
      throw Error(ErrorCode::zero_degree,
                  "bus " + std::to_string(g.bus_index().id_at(static_cast<std::size_t>(i))) + " has no weighted edges");
  return {std::move(a)};
}

/// Largest pre-constraint weight over physical edges.
inline double max_base_weight(const WeightedGraph& g) {
  double m = 0.0;
  for (const auto& [ij, e] : g.edges())
    if (!e.is_virtual) m = std::max(m, e.base_weight);
  return m;
}

/// Must-link: every same-group pair gets M = big_m_factor * max base weight
/// (creating virtual edges as needed). Cannot-link: every cross-group pair is zeroed.
inline WeightedGraph apply_coherence_constraints(const WeightedGraph& g, const ConstraintSet& c) {
  WeightedGraph out = g;
  if (c.coherent_groups.empty()) return out;
  std::set<BusId> seen;
  for (const auto& grp : c.coherent_groups)
    for (BusId b : grp)
      if (!seen.insert(b).second)
        throw Error(ErrorCode::overlapping_sets, "bus " + std::to_string(b) + " is in more than one coherent group");

  const double base = max_base_weight(g);
  if (!(base > 0.0)) throw Error(ErrorCode::invalid_argument, "graph has no positive weight to scale big-M from");
  const double big_m = c.big_m_factor * base;
  const auto& idx = g.bus_index();

  for (const auto& grp : c.coherent_groups) {
    for (std::size_t x = 0; x < grp.size(); ++x) {
      for (std::size_t y = x + 1; y < grp.size(); ++y) {
        const auto i = idx.index_of(grp[x]), j = idx.index_of(grp[y]);
        if (i == j) continue;
        const bool existed = out.edge(i, j) != nullptr;
        Edge& e = out.entry(i, j);
        if (!existed) e.is_virtual = true;
        e.weight = big_m;
        e.mark = ConstraintMark::must_link;
      }
    }
  }
  for (std::size_t ga = 0; ga < c.coherent_groups.size(); ++ga) {
    for (std::size_t gb = ga + 1; gb < c.coherent_groups.size(); ++gb) {
      for (BusId a : c.coherent_groups[ga]) {
        for (BusId b : c.coherent_groups[gb]) {
          const auto i = idx.index_of(a), j = idx.index_of(b);
          if (!out.edge(i, j)) continue;
          Edge& e = out.entry(i, j);
          e.weight = 0.0;
          e.mark = ConstraintMark::cannot_link;
        }
      }
    }
  }
  return out;
}

/// Zeroes W at each VSC terminal pair.
inline WeightedGraph apply_vsc_constraints(const WeightedGraph& g, const ConstraintSet& c, const Network& net) {
  WeightedGraph out = g;
  for (const auto& [a, b] : c.vsc_pairs) {
    if (!net.find_vsc_link(a, b))
      throw Error(ErrorCode::invalid_argument,
                  "pair (" + std::to_string(a) + ", " + std::to_string(b) + ") does not correspond to any VSC link");
    const auto i = g.bus_index().index_of(a), j = g.bus_index().index_of(b);
    if (!out.edge(i, j)) continue;
    Edge& e = out.entry(i, j);
    e.weight = 0.0;
    e.mark = ConstraintMark::cannot_link;
  }
  return out;
}

/// Physical edges with positive base weight that a cannot-link constraint zeroed,
/// excluding VSC DC links.
inline std::vector<std::pair<BusId, BusId>> zeroed_physical_lines(const WeightedGraph& g) {
  std::vector<std::pair<BusId, BusId>> out;
  for (const auto& [ij, e] : g.edges()) {
    if (e.is_virtual || e.has_dc || e.mark != ConstraintMark::cannot_link || !(e.base_weight > 0.0)) continue;
    out.emplace_back(g.bus_index().id_at(ij.first), g.bus_index().id_at(ij.second));
  }
  return out;
}

}  // namespace islanding

#endif  // ISLANDING_WEIGHTS_HPP
