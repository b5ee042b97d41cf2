// Randomized invariants. Every generator is seeded so failures reproduce.
#include <gtest/gtest.h>

#include <cstdio>
#include <set>

#include "generators.hpp"
#include "islanding/scheme_io.hpp"
#include "oracles.hpp"

using namespace islanding;
using namespace gen;

TEST(Properties, ZbusInvertsYbusOnRandomNetworks) {
  oracle::TestRng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(30);
    const Network base = oracle::make_network(n, random_edges(rng, n, 0.1));
    const Network net = with_random_impedances(rng, base, Network::kDefaultGroundShunt);
    const Eigen::MatrixXcd y = build_ybus(net);
    EXPECT_LT(oracle::relative_inverse_residual(build_zbus(net).z, y), 1e-10);
    // With a well-conditioned ground shunt the plain residual is small too.
    const Network grounded = with_random_impedances(rng, base, 0.1);
    const Eigen::MatrixXcd yg = build_ybus(grounded);
    const Eigen::MatrixXcd r = build_zbus(grounded).z * yg - Eigen::MatrixXcd::Identity(yg.rows(), yg.cols());
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Properties, DistancesSymmetricPositive) {
  oracle::TestRng rng(102);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng.below(15);
    const Network net = with_random_impedances(rng, oracle::make_network(n, random_edges(rng, n, 0.2)), Network::kDefaultGroundShunt);
    const ImpedanceMatrix z = build_zbus(net);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = electrical_distance(z, static_cast<BusId>(i + 1), static_cast<BusId>(j + 1));
        EXPECT_GT(d, 0.0);
        EXPECT_NEAR(d, electrical_distance(z, static_cast<BusId>(j + 1), static_cast<BusId>(i + 1)), 1e-12 * d);
      }
  }
}

TEST(Properties, RandomComponentsRecoveredWithZeroNcut) {
  oracle::TestRng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(3));
    std::vector<BusId> ids;
    std::vector<int> truth;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    std::size_t n = 0;
    for (int c = 0; c < k; ++c) {
      const std::size_t size = 2 + rng.below(6);
      blocks.push_back({n, size});
      for (std::size_t i = 0; i < size; ++i) {
        ids.push_back(static_cast<BusId>(++n));
        truth.push_back(c);
      }
    }
    WeightedGraph g{BusIndex(ids)};
    for (const auto& [start, size] : blocks)
      for (const auto& [a, b] : random_edges(rng, size, 0.3)) {
        Edge& e = g.entry(start + a, start + b);
        e.weight = e.base_weight = rng.uniform(0.1, 10.0);
      }
    const auto a = degree_matrix(g);
    const SpectralEmbedding emb = spectral_embedding(g, a, k);
    for (int c = 0; c < k; ++c) EXPECT_NEAR(emb.eigenvalues(c), 0.0, 1e-8);
    const ClusterResult cl = kmeans(embedding_points(emb, false), k, {});
    EXPECT_EQ(cl.assignment.canonical(), Partition(truth, k).canonical());
    EXPECT_EQ(ncut_value(g, a, cl.assignment), 0.0);
  }
}

TEST(Properties, PositiveFlowRescalingKeepsPartition) {
  const Network net = parse_network(oracle::slurp(oracle::data_path("ieee39/network.json")));
  const Snapshot snap = parse_snapshot(oracle::slurp(oracle::data_path("ieee39/snapshot.json")), net);
  SolveConfig cfg;
  cfg.weights.use_overrides = false;
  for (const char* rel : {"ieee39/constraints_empty.json", "ieee39/constraints_coherence.json", "ieee39/constraints_full.json"}) {
    const ConstraintSet cs = parse_constraints(oracle::slurp(oracle::data_path(rel)));
    const auto base = labels_of(solve_islanding(net, snap, cs, 3, cfg), net);
    for (double f : {1e-3, 0.37, 3.7, 1e3}) {
      Snapshot scaled = snap;
      for (auto& [key, flow] : scaled.branch_flows) {
        flow.p_ij *= f;
        flow.p_ji *= f;
      }
      EXPECT_EQ(labels_of(solve_islanding(net, scaled, cs, 3, cfg), net), base) << rel << " x" << f;
    }
  }
  oracle::TestRng rng(104);
  for (int trial = 0; trial < 20; ++trial) {
    Planted inst = planted_instance(rng, 10, 2 + static_cast<int>(rng.below(2)));
    std::vector<int> base;
    try {
      base = labels_of(solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k), inst.net);
    } catch (const Error&) {
      continue;
    }
    const double f = rng.uniform(0.01, 100.0);
    for (auto& o : inst.snap.weight_overrides) o.w *= f;
    EXPECT_EQ(labels_of(solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k), inst.net), base);
  }
}

TEST(Properties, SolverMatchesBruteForceOnPlantedInstances) {
  oracle::TestRng rng(105);
  int instances = 0, hits = 0;
  while (instances < 50) {
    Planted inst = planted_instance(rng, 12, 2 + static_cast<int>(rng.below(2)));
    const auto best = oracle::brute_force_min_cut(inst.problem);
    if (!best) continue;  // no valid partition exists; not a planted instance
    ++instances;
    SolveResult r;
    try {
      r = solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k);
    } catch (const Error& e) {
      ADD_FAILURE() << "instance " << instances << ": " << e.what();
      continue;
    }
    const auto labels = labels_of(r, inst.net);
    // Every returned scheme is valid, hit or miss.
    EXPECT_TRUE(oracle::valid_partition(inst.problem, labels)) << "instance " << instances;
    EXPECT_NEAR(r.scheme.cut_weight_sum, oracle::cut_of(inst.problem.w, labels), 1e-9);
    EXPECT_GE(r.scheme.cut_weight_sum, *best - 1e-9);
    if (r.scheme.cut_weight_sum <= *best + 1e-9) ++hits;
  }
  RecordProperty("hits", hits);
  std::printf("planted instances matching the brute-force optimum: %d of 50\n", hits);
  EXPECT_GE(hits, 45) << hits << " of 50";
}

TEST(Properties, SolverOutputsHonourConstraints) {
  oracle::TestRng rng(106);
  for (int trial = 0; trial < 40; ++trial) {
    Planted inst = random_instance(rng, 8 + rng.below(12), 2 + static_cast<int>(rng.below(3)));
    try {
      const SolveResult r = solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k);
      EXPECT_TRUE(r.report.coherence_ok);
      EXPECT_TRUE(r.report.vsc_ok);
      EXPECT_TRUE(r.report.connectivity_ok);
      EXPECT_TRUE(oracle::valid_partition(inst.problem, labels_of(r, inst.net)));
    } catch (const Error& e) {
      // Allowed outcome: a typed infeasibility error, never a silent invalid scheme.
      const std::set<ErrorCode> allowed{ErrorCode::zero_degree, ErrorCode::disconnected_graph,
                                        ErrorCode::must_link_violation, ErrorCode::cannot_link_infeasible};
      EXPECT_TRUE(allowed.count(e.code())) << e.what();
    }
  }
}

TEST(Properties, ByteIdenticalReruns) {
  oracle::TestRng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    Planted inst = planted_instance(rng, 12, 2 + static_cast<int>(rng.below(2)));
    SolveConfig cfg;
    cfg.kmeans.seed = rng.next();
    std::string first;
    for (int rep = 0; rep < 3; ++rep) {
      std::string text;
      try {
        const SolveResult r = solve_islanding(inst.net, inst.snap, inst.cs, inst.problem.k, cfg);
        text = serialize_scheme(r.scheme, r.report);
      } catch (const Error& e) {
        text = e.what();
      }
      if (rep == 0) first = text;
      EXPECT_EQ(text, first);
    }
  }
}

TEST(Properties, TraceIdentityOnPipelineGraphs) {
  oracle::TestRng rng(108);
  for (int trial = 0; trial < 10; ++trial) {
    Planted inst = planted_instance(rng, 12, 3);
    const WeightedGraph g = build_weighted_graph(inst.net, inst.snap, build_zbus(inst.net));
    const auto a = degree_matrix(g);
    const Eigen::MatrixXd lap = Eigen::MatrixXd(a.a.asDiagonal()) - g.dense();
    const Eigen::MatrixXd ln = normalized_laplacian(g, a);
    EXPECT_LT(ln.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    const SpectralEmbedding emb = spectral_embedding(g, a, static_cast<int>(g.size()));
    EXPECT_GE(emb.eigenvalues.minCoeff(), -1e-8);
    EXPECT_LE(emb.eigenvalues.maxCoeff(), 2.0 + 1e-8);
    oracle::for_each_partition(static_cast<int>(g.size()), 2, [&](const std::vector<int>& labels) {
      if (rng.uniform() > 0.02) return;
      Eigen::VectorXd vol = Eigen::VectorXd::Zero(2);
      for (std::size_t i = 0; i < labels.size(); ++i) vol(labels[i]) += a.a(static_cast<Eigen::Index>(i));
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), 2);
      for (std::size_t i = 0; i < labels.size(); ++i)
        h(static_cast<Eigen::Index>(i), labels[i]) = 1.0 / std::sqrt(vol(labels[i]));
      const double trace = (h.transpose() * lap * h).trace();
      EXPECT_NEAR(trace, ncut_value(g, a, Partition(labels, 2)), 1e-10 * std::max(1.0, trace));
    });
  }
}
