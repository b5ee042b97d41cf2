// Acceptance gate: one PASS/FAIL line per criterion at pinned tolerances.
// Exit status is the number of failed criteria (0 when all pass).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "islanding/clustering.hpp"
#include "islanding/scheme_io.hpp"
#include "oracles.hpp"

using namespace islanding;

namespace {

constexpr double kRuntimeLimitMs = 500.0;

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << (v == 0.0 ? 0.0 : v);
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.setf(std::ios::scientific);
  s.precision(2);
  s << v;
  return s.str();
}

struct Solved {
  Network net;
  SolveResult result;
  double ms = 0.0;
};

/// Parses the fixture files and solves, timing the whole path.
Solved solve_fixture(const std::string& dir, const std::string& constraints, int k) {
  const auto t0 = std::chrono::steady_clock::now();
  Network net = parse_network(oracle::slurp(oracle::data_path(dir + "/network.json")));
  const Snapshot snap = parse_snapshot(oracle::slurp(oracle::data_path(dir + "/snapshot.json")), net);
  const ConstraintSet cs = parse_constraints(oracle::slurp(oracle::data_path(constraints)));
  SolveResult r = solve_islanding(net, snap, cs, k);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(net), std::move(r), ms};
}

std::set<std::string> cut_set(const IslandingScheme& s) {
  std::set<std::string> out;
  for (const auto& l : s.cut_lines)
    out.insert(std::to_string(std::min(l.branch.from, l.branch.to)) + "-" +
               std::to_string(std::max(l.branch.from, l.branch.to)));
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return "{" + out + "}";
}

bool same_island(const IslandingScheme& s, BusId a, BusId b) {
  for (const auto& isl : s.islands) {
    const bool ha = std::count(isl.begin(), isl.end(), a) > 0, hb = std::count(isl.begin(), isl.end(), b) > 0;
    if (ha || hb) return ha && hb;
  }
  return false;
}

void check_cut(Verdict& v, const Solved& s, const std::set<std::string>& expect, double sum, double tol) {
  const auto got = cut_set(s.result.scheme);
  v.require(got == expect, "cut set " + join(got) + " != " + join(expect));
  v.note("cut " + join(got));
  v.require(std::abs(s.result.scheme.cut_weight_sum - sum) <= tol,
            "cut_weight_sum " + fmt(s.result.scheme.cut_weight_sum) + " outside " + fmt(sum, 2) + " +- " + fmt(tol, 3));
  v.note("sum " + fmt(s.result.scheme.cut_weight_sum));
}

void check_runtime(Verdict& v, double ms) {
  v.require(ms < kRuntimeLimitMs, "runtime " + fmt(ms, 1) + " ms >= 500 ms");
  v.note(fmt(ms, 1) + " ms");
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  const Solved s = solve_fixture("ieee39", "ieee39/constraints_empty.json", 3);
  const Partition got = Partition::from_groups(s.net.bus_index(), s.result.scheme.islands).canonical();
  const Partition want =
      parse_scheme_partition(oracle::slurp(oracle::data_path("ieee39/scheme_unconstrained.json")), s.net).canonical();
  v.require(got == want, "islands differ from the reference scheme");
  v.note("islands equal the reference scheme");
  check_runtime(v, s.ms);
  return v;
}

Verdict criterion2() {
  Verdict v;
  const Solved s = solve_fixture("ieee39", "ieee39/constraints_coherence.json", 3);
  check_cut(v, s, {"2-25", "3-18", "3-4", "8-9", "17-27"}, 36.18, 0.01);
  return v;
}

Verdict criterion3() {
  Verdict v;
  const Solved s = solve_fixture("ieee39", "ieee39/constraints_full.json", 3);
  check_cut(v, s, {"2-25", "3-18", "4-5", "4-14", "8-9", "17-27"}, 55.75, 0.01);
  v.require(!same_island(s.result.scheme, 4, 14), "buses 4 and 14 share an island");
  const ConstraintSet cs = parse_constraints(oracle::slurp(oracle::data_path("ieee39/constraints_full.json")));
  bool grouped = true;
  for (const auto& g : cs.coherent_groups)
    for (BusId b : g) grouped = grouped && same_island(s.result.scheme, g.front(), b);
  v.require(grouped, "a coherent group is split");
  check_runtime(v, s.ms);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const Solved s = solve_fixture("xiamen", "xiamen/constraints.json", 2);
  check_cut(v, s, {"2-4", "9-10", "18-25", "23-24"}, 32.96, 0.005);
  check_runtime(v, s.ms);
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 5: property suite

WeightedGraph graph_from(const oracle::DMat& w) {
  std::vector<BusId> ids;
  for (std::size_t i = 0; i < w.size(); ++i) ids.push_back(static_cast<BusId>(i + 1));
  WeightedGraph g{BusIndex(ids)};
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i][j] != 0.0) {
        Edge& e = g.entry(i, j);
        e.weight = e.base_weight = w[i][j];
      }
  return g;
}

oracle::DMat random_weights(oracle::TestRng& rng, std::size_t n, double chord_p) {
  oracle::DMat w(n, std::vector<double>(n, 0.0));
  for (const auto& [a, b] : gen::random_edges(rng, n, chord_p)) w[a][b] = w[b][a] = rng.uniform(0.1, 10.0);
  return w;
}

std::vector<int> random_labels(oracle::TestRng& rng, std::size_t n, int k) {
  std::vector<int> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) : static_cast<int>(rng.below(static_cast<std::size_t>(k)));
  return a;
}

void zy_identity(Verdict& v) {
  oracle::TestRng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng.below(30);
    const Network net =
        gen::with_random_impedances(rng, oracle::make_network(n, gen::random_edges(rng, n, 0.1)), Network::kDefaultGroundShunt);
    worst = std::max(worst, oracle::relative_inverse_residual(build_zbus(net).z, build_ybus(net)));
  }
  for (const char* dir : {"ieee39", "xiamen", "two_bus"}) {
    const Network net = parse_network(oracle::slurp(oracle::data_path(std::string(dir) + "/network.json")));
    worst = std::max(worst, oracle::relative_inverse_residual(build_zbus(net).z, build_ybus(net)));
  }
  v.require(worst <= 1e-10, "Z*Y residual " + std::to_string(worst));
  v.note("max relative |ZY - I| " + sci(worst));
}

void laplacian_properties(Verdict& v) {
  oracle::TestRng rng(5);
  double trace_err = 0.0, row_err = 0.0, lo = 0.0, hi = 0.0;
  for (int t = 0; t < 30; ++t) {
    const WeightedGraph g = graph_from(random_weights(rng, 5 + rng.below(20), 0.2));
    const auto a = degree_matrix(g);
    row_err = std::max(row_err, normalized_laplacian(g, a).rowwise().sum().cwiseAbs().maxCoeff());
    const SpectralEmbedding e = spectral_embedding(g, a, static_cast<int>(g.size()));
    lo = std::min(lo, e.eigenvalues.minCoeff());
    hi = std::max(hi, e.eigenvalues.maxCoeff());
    const Eigen::MatrixXd lap = Eigen::MatrixXd(a.a.asDiagonal()) - g.dense();
    for (int r = 0; r < 10; ++r) {
      const int k = 2 + static_cast<int>(rng.below(3));
      const auto labels = random_labels(rng, g.size(), k);
      Eigen::VectorXd vol = Eigen::VectorXd::Zero(k);
      for (std::size_t i = 0; i < g.size(); ++i) vol(labels[i]) += a.a(static_cast<Eigen::Index>(i));
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.size()), k);
      for (std::size_t i = 0; i < g.size(); ++i) h(static_cast<Eigen::Index>(i), labels[i]) = 1.0 / std::sqrt(vol(labels[i]));
      const double tr = (h.transpose() * lap * h).trace();
      trace_err = std::max(trace_err, std::abs(tr - ncut_value(g, a, Partition(labels, k))) / std::max(1.0, tr));
    }
  }
  v.require(trace_err <= 1e-10, "trace identity error " + std::to_string(trace_err));
  v.require(row_err <= 1e-12, "L_N row sum " + std::to_string(row_err));
  v.require(lo >= -1e-8 && hi <= 2.0 + 1e-8, "eigenvalue outside [0, 2]: " + std::to_string(lo) + " " + std::to_string(hi));
  v.note("trace identity err " + sci(trace_err) + ", row sums " + sci(row_err) + ", eigenvalues in [" + sci(lo) + ", " + fmt(hi) + "]");
}

void component_recovery(Verdict& v) {
  oracle::TestRng rng(103);
  int exact = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const int k = 2 + static_cast<int>(rng.below(3));
    oracle::DMat w;
    std::vector<int> truth;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t n = 0;
    for (int c = 0; c < k; ++c) {
      const std::size_t size = 2 + rng.below(6);
      blocks.push_back({n, size});
      n += size;
      truth.insert(truth.end(), size, c);
    }
    w.assign(n, std::vector<double>(n, 0.0));
    for (const auto& [start, size] : blocks)
      for (const auto& [a, b] : gen::random_edges(rng, size, 0.3))
        w[start + a][start + b] = w[start + b][start + a] = rng.uniform(0.1, 10.0);
    const WeightedGraph g = graph_from(w);
    const auto a = degree_matrix(g);
    const ClusterResult cl = kmeans(embedding_points(spectral_embedding(g, a, k), false), k, {});
    if (cl.assignment.canonical() == Partition(truth, k).canonical() && ncut_value(g, a, cl.assignment) == 0.0) ++exact;
  }
  v.require(exact == trials, "components recovered " + std::to_string(exact) + "/" + std::to_string(trials));
  v.note("components " + std::to_string(exact) + "/" + std::to_string(trials));
}

void kmeans_properties(Verdict& v) {
  oracle::TestRng rng(2);
  bool monotone = true;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd pts(60, 3);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = rng.uniform(-5.0, 5.0);
    std::vector<std::vector<double>> seq(20);
    kmeans_runs(pts, 4, {}, [&](int r, int, double w) { seq[static_cast<std::size_t>(r)].push_back(w); });
    for (const auto& s : seq)
      for (std::size_t i = 1; i < s.size(); ++i) monotone = monotone && s[i] <= s[i - 1] + 1e-12;
  }
  v.require(monotone, "WGSS increased within a run");

  oracle::TestRng micro(20240601);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<Eigen::Index>(4 + micro.below(7));
    const auto d = static_cast<Eigen::Index>(1 + micro.below(3));
    const int k = 2 + static_cast<int>(micro.below(2));
    Eigen::MatrixXd pts(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < d; ++j) pts(i, j) = micro.uniform(-5.0, 5.0);
    KMeansConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(t);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < d; ++j) rows[static_cast<std::size_t>(i)].push_back(pts(i, j));
    if (kmeans(pts, k, cfg).wgss <= oracle::brute_force_wgss(rows, k) + 1e-9) ++hits;
  }
  v.require(hits >= 95, "k-means optimum on " + std::to_string(hits) + "/100 micro instances");
  v.note("WGSS monotone, k-means optimum " + std::to_string(hits) + "/100");
}

void planted_min_cut(Verdict& v) {
  oracle::TestRng rng(105);
  int instances = 0, hits = 0, invalid = 0;
  while (instances < 50) {
    gen::Planted inst = gen::planted_instance(rng, 12, 2 + static_cast<int>(rng.below(2)));
    const auto best = oracle::brute_force_min_cut(inst.problem);
    if (!best) continue;
    ++instances;
    try {
      const SolveResult r = solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k);
      const auto labels = gen::labels_of(r, inst.net);
      if (!oracle::valid_partition(inst.problem, labels)) ++invalid;
      else if (r.scheme.cut_weight_sum <= *best + 1e-9) ++hits;
    } catch (const Error&) {
      ++invalid;
    }
  }
  v.require(hits >= 45, "constrained min cut on " + std::to_string(hits) + "/50 planted instances");
  v.require(invalid == 0, std::to_string(invalid) + " planted solves invalid or failed");
  v.note("min cut " + std::to_string(hits) + "/50 planted");
}

void rescale_and_rerun(Verdict& v) {
  const Network net = parse_network(oracle::slurp(oracle::data_path("ieee39/network.json")));
  const Snapshot snap = parse_snapshot(oracle::slurp(oracle::data_path("ieee39/snapshot.json")), net);
  SolveConfig computed;
  computed.weights.use_overrides = false;
  bool invariant = true, identical = true;
  for (const char* rel : {"ieee39/constraints_empty.json", "ieee39/constraints_coherence.json", "ieee39/constraints_full.json"}) {
    const ConstraintSet cs = parse_constraints(oracle::slurp(oracle::data_path(rel)));
    const SolveResult base = solve_islanding(net, snap, cs, 3, computed);
    const auto labels = gen::labels_of(base, net);
    for (double f : {1e-3, 0.37, 3.7, 1e3}) {
      Snapshot scaled = snap;
      for (auto& [key, flow] : scaled.branch_flows) {
        flow.p_ij *= f;
        flow.p_ji *= f;
      }
      invariant = invariant && gen::labels_of(solve_islanding(net, scaled, cs, 3, computed), net) == labels;
    }
    const SolveResult again = solve_islanding(net, snap, cs, 3, computed);
    identical = identical && serialize_scheme(base.scheme, base.report) == serialize_scheme(again.scheme, again.report);
  }
  oracle::TestRng rng(107);
  for (int t = 0; t < 10; ++t) {
    gen::Planted inst = gen::planted_instance(rng, 12, 2 + static_cast<int>(rng.below(2)));
    SolveConfig cfg;
    cfg.kmeans.seed = rng.next();
    auto text = [&](const Snapshot& s) {
      try {
        const SolveResult r = solve_islanding(inst.net, s, inst.cs, inst.problem.k, cfg);
        return serialize_scheme(r.scheme, r.report);
      } catch (const Error& e) {
        return std::string(e.what());
      }
    };
    const std::string first = text(inst.snap);
    identical = identical && text(inst.snap) == first;
    Snapshot scaled = inst.snap;
    for (auto& o : scaled.weight_overrides) o.w *= 41.5;
    try {
      invariant = invariant && gen::labels_of(solve_islanding(inst.net, scaled, inst.cs, inst.problem.k, cfg), inst.net) ==
                                   gen::labels_of(solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k, cfg), inst.net);
    } catch (const Error&) {
      invariant = false;
    }
  }
  v.require(invariant, "partition changed under positive rescaling");
  v.require(identical, "reruns not byte-identical");
  v.note("rescale invariant, reruns byte-identical");
}

Verdict criterion5() {
  Verdict v;
  for (const auto& part : std::vector<std::function<void(Verdict&)>>{zy_identity, laplacian_properties, component_recovery,
                                                                     kmeans_properties, planted_min_cut, rescale_and_rerun}) {
    try {
      part(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("unexpected error: ") + e.what());
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Criterion 6: designated errors

void expect_error(Verdict& v, const std::string& name, ErrorCode code, const std::function<SolveResult()>& run) {
  try {
    (void)run();
    v.require(false, name + " returned a scheme");
  } catch (const Error& e) {
    v.require(e.code() == code, name + " raised '" + e.what() + "'");
    if (e.code() == code) v.note(name + " -> " + to_string(code) + " (exit " + std::to_string(e.exit_code()) + ")");
  }
}

Verdict criterion6() {
  Verdict v;
  expect_error(v, "zero-degree bus", ErrorCode::zero_degree, [] {
    const gen::Edges edges{{0, 1}, {1, 2}, {2, 0}, {2, 3}};
    const Network net = oracle::make_network(4, edges, {0, 3});
    oracle::DMat w(4, std::vector<double>(4, 1.0));
    w[2][3] = w[3][2] = 0.0;
    return solve_islanding(net, oracle::override_snapshot(w, edges), {}, 2);
  });
  expect_error(v, "disconnected graph", ErrorCode::disconnected_graph, [] {
    const gen::Edges edges{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}};
    const Network net = oracle::make_network(6, edges, {0, 5});
    oracle::DMat w(6, std::vector<double>(6, 1.0));
    w[2][3] = w[3][2] = 0.0;
    return solve_islanding(net, oracle::override_snapshot(w, edges), {}, 2);
  });
  const Network net = parse_network(oracle::slurp(oracle::data_path("ieee39/network.json")));
  const Snapshot snap = parse_snapshot(oracle::slurp(oracle::data_path("ieee39/snapshot.json")), net);
  const ConstraintSet full = parse_constraints(oracle::slurp(oracle::data_path("ieee39/constraints_full.json")));
  expect_error(v, "k != group count", ErrorCode::group_count_mismatch, [&] { return solve_islanding(net, snap, full, 4); });
  expect_error(v, "big-M insufficient", ErrorCode::must_link_violation, [&] {
    ConstraintSet weak = full;
    weak.big_m_factor = 0.01;
    return solve_islanding(net, snap, weak, 3);
  });
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 ieee39 unconstrained, reference islands", criterion1},
      {"2 ieee39 coherence-only cut set", criterion2},
      {"3 ieee39 coherence + VSC cut set", criterion3},
      {"4 xiamen cut set", criterion4},
      {"5 property suite", criterion5},
      {"6 robustness errors", criterion6},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("unexpected error: ") + e.what();
    }
    if (!v.ok) ++failed;
    std::printf("%s criterion %s: %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
