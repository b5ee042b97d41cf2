#ifndef ISLANDING_CLUSTERING_HPP
#define ISLANDING_CLUSTERING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "islanding/error.hpp"
#include "islanding/spectral.hpp"

namespace islanding {

/// Counter-based generator: output i is a SplitMix64 hash of (key, i), so a
/// stream is fully determined by its seed on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6A09E667F3BCC908ull)) {}

  std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct KMeansConfig {
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_iters = 300;
  /// Extra stop rule on the largest center shift; 0 means assignment fixpoint only.
  double tolerance = 0.0;
};

struct ClusterResult {
  Partition assignment;
  Eigen::MatrixXd centers;
  double wgss = 0.0;
  int restart_index = 0;
  int iterations = 0;
  bool converged = false;
};

/// Called after every center update with (restart, iteration, WGSS).
using KMeansHook = std::function<void(int, int, double)>;

namespace detail {

inline double squared_distance(const Eigen::MatrixXd& pts, Eigen::Index i, const Eigen::MatrixXd& centers,
                               Eigen::Index c) {
  return (pts.row(i) - centers.row(c)).squaredNorm();
}

inline std::size_t distinct_rows(const Eigen::MatrixXd& pts) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(pts.rows()));
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (Eigen::Index j = 0; j < pts.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(pts(i, j));
  std::sort(rows.begin(), rows.end());
  return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

inline std::vector<int> assign_nearest(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& centers) {
  std::vector<int> labels(static_cast<std::size_t>(pts.rows()));
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double d = squared_distance(pts, i, centers, c);
      if (d < best) {
        best = d;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
  }
  return labels;
}

inline double wgss_of(const Eigen::MatrixXd& pts, const std::vector<int>& labels, const Eigen::MatrixXd& centers) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) s += squared_distance(pts, i, centers, labels[static_cast<std::size_t>(i)]);
  return s;
}

/// Cluster means; an empty cluster takes over the point farthest from its
/// current center (ties: lowest index) among clusters with more than one point.
inline Eigen::MatrixXd update_centers(const Eigen::MatrixXd& pts, std::vector<int>& labels, int k) {
  auto means = [&](Eigen::MatrixXd& centers, std::vector<int>& counts) {
    centers = Eigen::MatrixXd::Zero(k, pts.cols());
    counts.assign(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      centers.row(labels[static_cast<std::size_t>(i)]) += pts.row(i);
      ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0) centers.row(c) /= counts[static_cast<std::size_t>(c)];
  };
  Eigen::MatrixXd centers;
  std::vector<int> counts;
  means(centers, counts);
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    double far_d = -1.0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      const int li = labels[static_cast<std::size_t>(i)];
      if (counts[static_cast<std::size_t>(li)] < 2) continue;
      const double d = squared_distance(pts, i, centers, li);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) throw Error(ErrorCode::invalid_argument, "cannot repair empty cluster");
    labels[static_cast<std::size_t>(far)] = c;
    means(centers, counts);
  }
  return centers;
}

inline Eigen::MatrixXd kmeanspp_init(const Eigen::MatrixXd& pts, int k, CounterRng& rng) {
  const Eigen::Index n = pts.rows();
  Eigen::MatrixXd centers(k, pts.cols());
  centers.row(0) = pts.row(static_cast<Eigen::Index>(rng.below(static_cast<std::size_t>(n))));
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, squared_distance(pts, i, centers, c - 1));
      total += d;
    }
    Eigen::Index pick = -1;
    if (total > 0.0) {
      double target = rng.uniform() * total, acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += nearest[static_cast<std::size_t>(i)];
        if (nearest[static_cast<std::size_t>(i)] > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0)
        for (Eigen::Index i = n - 1; i >= 0 && pick < 0; --i)
          if (nearest[static_cast<std::size_t>(i)] > 0.0) pick = i;
    }
    if (pick < 0) throw Error(ErrorCode::invalid_argument, "k-means++ found fewer distinct points than clusters");
    centers.row(c) = pts.row(pick);
  }
  return centers;
}

}  // namespace detail

/// One seeded Lloyd run per restart; restart r uses seed + r.
inline std::vector<ClusterResult> kmeans_runs(const Eigen::MatrixXd& points, int k, const KMeansConfig& cfg,
                                              const KMeansHook& hook = {}) {
  if (cfg.restarts < 1) throw Error(ErrorCode::invalid_argument, "restarts must be >= 1");
  if (cfg.max_iters < 1) throw Error(ErrorCode::invalid_argument, "max_iters must be >= 1");
  if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be >= 1");
  if (!points.allFinite()) throw Error(ErrorCode::invalid_argument, "k-means input contains non-finite values");
  const std::size_t distinct = detail::distinct_rows(points);
  if (static_cast<std::size_t>(k) > distinct)
    throw Error(ErrorCode::invalid_argument,
                "k = " + std::to_string(k) + " exceeds the " + std::to_string(distinct) + " distinct points");

  std::vector<ClusterResult> runs;
  runs.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int r = 0; r < cfg.restarts; ++r) {
    CounterRng rng(cfg.seed + static_cast<std::uint64_t>(r));
    Eigen::MatrixXd centers = detail::kmeanspp_init(points, k, rng);
    std::vector<int> labels = detail::assign_nearest(points, centers);
    ClusterResult res;
    res.restart_index = r;
    for (int it = 1; it <= cfg.max_iters; ++it) {
      Eigen::MatrixXd next = detail::update_centers(points, labels, k);
      const double shift = (next - centers).rowwise().norm().maxCoeff();
      centers = std::move(next);
      res.iterations = it;
      if (hook) hook(r, it, detail::wgss_of(points, labels, centers));
      std::vector<int> relabeled = detail::assign_nearest(points, centers);
      if (relabeled == labels || (cfg.tolerance > 0.0 && shift <= cfg.tolerance)) {
        res.converged = true;
        break;
      }
      labels = std::move(relabeled);
    }
    if (!res.converged) centers = detail::update_centers(points, labels, k);
    res.wgss = detail::wgss_of(points, labels, centers);
    res.centers = std::move(centers);
    res.assignment = Partition(std::move(labels), k);
    runs.push_back(std::move(res));
  }
  return runs;
}

/// Best restart by WGSS; ties go to the lowest restart index.
inline ClusterResult kmeans(const Eigen::MatrixXd& points, int k, const KMeansConfig& cfg, const KMeansHook& hook = {}) {
  auto runs = kmeans_runs(points, k, cfg, hook);
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].wgss < runs[best].wgss) best = r;
  return std::move(runs[best]);
}

/// Recomputes sum_i ||x_i - mu_{c(i)}||^2 from the result's centers.
inline double wgss(const Eigen::MatrixXd& points, const ClusterResult& result) {
  if (static_cast<std::size_t>(points.rows()) != result.assignment.size() || points.cols() != result.centers.cols() ||
      result.centers.rows() != result.assignment.k())
    throw Error(ErrorCode::invalid_argument, "points and clustering result have mismatched shapes");
  double s = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    s += (points.row(i) - result.centers.row(result.assignment[static_cast<std::size_t>(i)])).squaredNorm();
  return s;
}

}  // namespace islanding

#endif  // ISLANDING_CLUSTERING_HPP
