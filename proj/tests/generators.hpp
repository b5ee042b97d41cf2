// Seeded instance generators shared by the property suite and the acceptance binary.
#ifndef ISLANDING_TESTS_GENERATORS_HPP
#define ISLANDING_TESTS_GENERATORS_HPP

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "islanding/solve.hpp"
#include "oracles.hpp"

namespace gen {

using namespace islanding;

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

/// Random spanning tree plus chords, as index pairs with i < j.
inline Edges random_edges(oracle::TestRng& rng, std::size_t n, double chord_p) {
  std::set<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = rng.below(i);
    e.insert({j, i});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < chord_p) e.insert({i, j});
  return {e.begin(), e.end()};
}

inline Network with_random_impedances(oracle::TestRng& rng, const Network& base, double eps) {
  auto branches = base.branches();
  for (auto& b : branches) b.impedance = Complex{rng.uniform(0.001, 0.05), rng.uniform(0.01, 0.5)};
  auto buses = base.buses();
  for (auto& b : buses)
    if (rng.uniform() < 0.3) b.shunt = Complex{0.0, rng.uniform(0.0, 0.2)};
  return Network(base.base_mva(), buses, branches, base.generators(), base.vsc_links(), eps);
}

struct Planted {
  Network net;
  Snapshot snap;
  ConstraintSet cs;
  oracle::ConstrainedProblem problem;
};

inline Planted assemble(std::size_t n, const Edges& ac, const Edges& dc, const oracle::DMat& w,
                 const std::vector<std::vector<std::size_t>>& groups) {
  oracle::ConstrainedProblem p;
  p.k = static_cast<int>(groups.size());
  p.w = w;
  p.groups = groups;
  p.separate = dc;
  p.ac_adj.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : ac) p.ac_adj[a][b] = p.ac_adj[b][a] = true;
  std::set<std::size_t> gens;
  for (const auto& g : groups) gens.insert(g.begin(), g.end());
  Edges all = ac;
  all.insert(all.end(), dc.begin(), dc.end());

  Network net = oracle::make_network(n, ac, gens, dc);
  Snapshot snap = oracle::override_snapshot(w, all);
  ConstraintSet cs;
  for (const auto& grp : groups) {
    std::vector<BusId> ids;
    for (auto i : grp) ids.push_back(static_cast<BusId>(i + 1));
    cs.coherent_groups.push_back(ids);
  }
  for (const auto& [a, b] : dc) cs.vsc_pairs.push_back({static_cast<BusId>(a + 1), static_cast<BusId>(b + 1)});
  return {std::move(net), std::move(snap), std::move(cs), std::move(p)};
}

/// Unstructured instance: random topology and weights, k coherent groups of
/// one or two random generators, and sometimes one VSC link between load buses.
inline Planted random_instance(oracle::TestRng& rng, std::size_t n, int k) {
  const Edges ac = random_edges(rng, n, 0.25);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::size_t next = 0;
  std::vector<std::vector<std::size_t>> groups;
  for (int g = 0; g < k; ++g) {
    std::vector<std::size_t> grp{order[next++]};
    if (rng.uniform() < 0.5) grp.push_back(order[next++]);
    groups.push_back(grp);
  }
  Edges dc;
  if (rng.uniform() < 0.5) {
    auto a = order[next], b = order[next + 1];
    if (a > b) std::swap(a, b);
    if (std::find(ac.begin(), ac.end(), std::make_pair(a, b)) == ac.end()) dc.push_back({a, b});
  }
  oracle::DMat w(n, std::vector<double>(n, 0.0));
  for (const auto& e : ac) w[e.first][e.second] = w[e.second][e.first] = rng.uniform(0.05, 20.0);
  for (const auto& e : dc) w[e.first][e.second] = w[e.second][e.first] = rng.uniform(0.05, 20.0);
  return assemble(n, ac, dc, w, groups);
}

/// Planted-partition instance: k connected blocks with heavy internal lines,
/// a few light tie lines between blocks, one coherent group per block, and
/// sometimes a VSC link across two blocks.
inline Planted planted_instance(oracle::TestRng& rng, std::size_t n, int k) {
  std::vector<std::size_t> block(n);
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    block[i] = i < static_cast<std::size_t>(k) * 3 ? i % static_cast<std::size_t>(k) : rng.below(static_cast<std::size_t>(k));
    members[block[i]].push_back(i);
  }
  std::set<std::pair<std::size_t, std::size_t>> ac;
  oracle::DMat w(n, std::vector<double>(n, 0.0));
  std::set<std::size_t> taken;
  auto add = [&](std::size_t a, std::size_t b, double x) {
    if (a > b) std::swap(a, b);
    if (!ac.insert({a, b}).second) return;
    w[a][b] = w[b][a] = x;
  };
  for (const auto& m : members) {
    for (const auto& [a, b] : random_edges(rng, m.size(), 0.4)) add(m[a], m[b], rng.uniform(5.0, 20.0));
  }
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& m : members) {
    std::vector<std::size_t> grp{m[0]};
    if (rng.uniform() < 0.5) grp.push_back(m[1 + rng.below(m.size() - 1)]);
    taken.insert(grp.begin(), grp.end());
    groups.push_back(grp);
  }
  // Tie lines join load buses only, so no cannot-link zeroing can cut a block off.
  auto load_bus = [&](const std::vector<std::size_t>& m) {
    std::size_t v = m[rng.below(m.size())];
    while (taken.count(v)) v = m[rng.below(m.size())];
    return v;
  };
  for (std::size_t c = 1; c < members.size(); ++c)
    add(load_bus(members[rng.below(c)]), load_bus(members[c]), rng.uniform(0.05, 1.0));
  for (std::size_t extra = rng.below(3); extra > 0; --extra) {
    const std::size_t x = rng.below(members.size()), y = rng.below(members.size());
    if (x != y) add(load_bus(members[x]), load_bus(members[y]), rng.uniform(0.05, 1.0));
  }
  Edges dc;
  if (rng.uniform() < 0.5) {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken.count(i)) free.push_back(i);
    const std::size_t a = free[rng.below(free.size())], b = free[rng.below(free.size())];
    if (block[a] != block[b] && !ac.count({std::min(a, b), std::max(a, b)})) {
      dc.push_back({std::min(a, b), std::max(a, b)});
      w[a][b] = w[b][a] = rng.uniform(0.05, 1.0);
    }
  }
  return assemble(n, {ac.begin(), ac.end()}, dc, w, groups);
}

inline std::vector<int> labels_of(const SolveResult& r, const Network& net) {
  return Partition::from_groups(net.bus_index(), r.scheme.islands).assignment();
}

}  // namespace gen

#endif  // ISLANDING_TESTS_GENERATORS_HPP
