#ifndef ISLANDING_SPECTRAL_HPP
#define ISLANDING_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "islanding/error.hpp"
#include "islanding/weights.hpp"

namespace islanding {

/// Assignment of bus indices to clusters 0..k-1, every cluster nonempty.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> assignment, int k) : assignment_(std::move(assignment)), k_(k) {
    if (k_ < 1) throw Error(ErrorCode::invalid_argument, "partition needs k >= 1");
    std::vector<bool> used(static_cast<std::size_t>(k_), false);
    for (int c : assignment_) {
      if (c < 0 || c >= k_) throw Error(ErrorCode::invalid_argument, "cluster id " + std::to_string(c) + " out of range");
      used[static_cast<std::size_t>(c)] = true;
    }
    for (int c = 0; c < k_; ++c)
      if (!used[static_cast<std::size_t>(c)])
        throw Error(ErrorCode::invalid_argument, "cluster " + std::to_string(c) + " is empty");
  }

  /// Partition from explicit bus-id groups; every indexed bus must appear exactly once.
  static Partition from_groups(const BusIndex& index, const std::vector<std::vector<BusId>>& groups) {
    std::vector<int> a(index.size(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (BusId b : groups[g]) {
        const auto i = index.index_of(b);
        if (a[i] != -1) throw Error(ErrorCode::overlapping_sets, "bus " + std::to_string(b) + " appears in two islands");
        a[i] = static_cast<int>(g);
      }
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < 0) throw Error(ErrorCode::invalid_argument, "bus " + std::to_string(index.id_at(i)) + " is in no island");
    return Partition(std::move(a), static_cast<int>(groups.size()));
  }

  int k() const { return k_; }
  std::size_t size() const { return assignment_.size(); }
  int operator[](std::size_t i) const { return assignment_[i]; }
  const std::vector<int>& assignment() const { return assignment_; }

  std::vector<std::size_t> members(int c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment_.size(); ++i)
      if (assignment_[i] == c) out.push_back(i);
    return out;
  }

  /// Relabels clusters in order of first appearance.
  Partition canonical() const {
    std::vector<int> relabel(static_cast<std::size_t>(k_), -1);
    int next = 0;
    std::vector<int> a(assignment_.size());
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
      int& r = relabel[static_cast<std::size_t>(assignment_[i])];
      if (r < 0) r = next++;
      a[i] = r;
    }
    return Partition(std::move(a), k_);
  }

  std::vector<std::vector<BusId>> islands(const BusIndex& index) const {
    std::vector<std::vector<BusId>> out(static_cast<std::size_t>(k_));
    for (std::size_t i = 0; i < assignment_.size(); ++i)
      out[static_cast<std::size_t>(assignment_[i])].push_back(index.id_at(i));
    return out;
  }

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> assignment_;
  int k_ = 0;
};

/// c(S, T) = sum of w_ij over i in S, j in T.
inline double cut_value(const WeightedGraph& g, std::span<const std::size_t> s, std::span<const std::size_t> t) {
  std::vector<std::int8_t> side(g.size(), 0);
  for (auto i : s) side.at(i) = 1;
  for (auto j : t) {
    if (side.at(j) == 1) throw Error(ErrorCode::overlapping_sets, "bus index " + std::to_string(j) + " is in both sets");
    side[j] = 2;
  }
  double sum = 0.0;
  for (const auto& [ij, e] : g.edges()) {
    const auto a = side[ij.first], b = side[ij.second];
    if ((a == 1 && b == 2) || (a == 2 && b == 1)) sum += e.weight;
  }
  return sum;
}

/// Half the sum of c(V_s, V_t) over ordered pairs of distinct clusters.
inline double total_cut(const WeightedGraph& g, const Partition& p) {
  std::vector<std::vector<std::size_t>> members;
  for (int c = 0; c < p.k(); ++c) members.push_back(p.members(c));
  double sum = 0.0;
  for (int s = 0; s < p.k(); ++s)
    for (int t = 0; t < p.k(); ++t)
      if (s != t) sum += cut_value(g, members[static_cast<std::size_t>(s)], members[static_cast<std::size_t>(t)]);
  return 0.5 * sum;
}

/// Sum over clusters of c(V_s, complement) / vol(V_s).
inline double ncut_value(const WeightedGraph& g, const DegreeMatrix& a, const Partition& p) {
  std::vector<double> vol(static_cast<std::size_t>(p.k()), 0.0), out(static_cast<std::size_t>(p.k()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) vol[static_cast<std::size_t>(p[i])] += a.a(static_cast<Eigen::Index>(i));
  for (const auto& [ij, e] : g.edges()) {
    const int ci = p[ij.first], cj = p[ij.second];
    if (ci == cj) continue;
    out[static_cast<std::size_t>(ci)] += e.weight;
    out[static_cast<std::size_t>(cj)] += e.weight;
  }
  double sum = 0.0;
  for (int c = 0; c < p.k(); ++c) {
    if (!(vol[static_cast<std::size_t>(c)] > 0.0))
      throw Error(ErrorCode::zero_degree, "cluster " + std::to_string(c) + " has zero volume");
    sum += out[static_cast<std::size_t>(c)] / vol[static_cast<std::size_t>(c)];
  }
  return sum;
}

/// Random-walk normalized Laplacian I - A^{-1} W as a dense matrix.
inline Eigen::MatrixXd normalized_laplacian(const WeightedGraph& g, const DegreeMatrix& a) {
  for (Eigen::Index i = 0; i < a.a.size(); ++i)
    if (!(a.a(i) > 0.0))
      throw Error(ErrorCode::zero_degree, "bus " + std::to_string(g.bus_index().id_at(static_cast<std::size_t>(i))));
  Eigen::MatrixXd l = -(a.a.cwiseInverse().asDiagonal() * g.dense());
  l.diagonal().array() += 1.0;
  return l;
}

struct SpectralOptions {
  /// Problems up to this many buses use a dense symmetric eigensolver.
  std::size_t dense_limit = 2000;
  /// Krylov dimension cap for the iterative path.
  std::size_t lanczos_max_dim = 600;
  double lanczos_tolerance = 1e-11;
  /// Accepted residual ||L_N v - lambda v||_inf per returned pair.
  double residual_tolerance = 1e-8;
};

struct SpectralEmbedding {
  /// n x k eigenvectors of L_N (unit columns, ascending eigenvalue order).
  Eigen::MatrixXd vectors;
  /// The corresponding eigenvectors of I - A^{-1/2} W A^{-1/2}.
  Eigen::MatrixXd symmetric_vectors;
  Eigen::VectorXd eigenvalues;
};

namespace detail {

inline void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best + 1e-12 * std::max(1.0, best)) {
      best = std::abs(v(i));
      arg = i;
    }
  }
  if (v(arg) < 0) v = -v;
}

/// Deterministic start vector for Krylov iterations.
inline Eigen::VectorXd krylov_start(Eigen::Index n) {
  Eigen::VectorXd v(n);
  std::uint64_t s = 0x9E3779B97F4A7C15ull;
  for (Eigen::Index i = 0; i < n; ++i) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    v(i) = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  return v.normalized();
}

/// k smallest eigenpairs of a sparse symmetric matrix by Lanczos with full
/// reorthogonalization. Requires well-separated (simple) target eigenvalues.
inline void lanczos_smallest(const Eigen::SparseMatrix<double>& s, int k, const SpectralOptions& opts,
                             Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index n = s.rows();
  const auto max_dim = static_cast<Eigen::Index>(std::min<std::size_t>(opts.lanczos_max_dim, static_cast<std::size_t>(n)));
  Eigen::MatrixXd q(n, max_dim);
  std::vector<double> alpha, beta;
  q.col(0) = krylov_start(n);
  Eigen::Index m = 0;
  bool converged = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  for (Eigen::Index j = 0; j < max_dim; ++j) {
    Eigen::VectorXd w = s * q.col(j);
    const double a = q.col(j).dot(w);
    alpha.push_back(a);
    w -= a * q.col(j);
    if (j > 0) w -= beta.back() * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    const double b = w.norm();
    m = j + 1;
    const bool exhausted = b < 1e-13 || m == max_dim;
    if ((m >= k && (m % 10 == 0 || exhausted)) || exhausted) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      tri.compute(t);
      if (m >= k) {
        converged = true;
        for (int c = 0; c < k; ++c)
          if (std::abs(b * tri.eigenvectors()(m - 1, c)) > opts.lanczos_tolerance) converged = false;
      }
      if (converged || exhausted) break;
    }
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }
  if (!converged || m < k)
    throw Error(ErrorCode::eigensolver, "Lanczos did not converge within " + std::to_string(max_dim) + " vectors");
  values = tri.eigenvalues().head(k);
  vectors = q.leftCols(m) * tri.eigenvectors().leftCols(k);
}

}  // namespace detail

/// Eigenvectors of L_N for its k smallest eigenvalues, computed through the
/// similar symmetric matrix I - A^{-1/2} W A^{-1/2} and mapped back by A^{-1/2}.
inline SpectralEmbedding spectral_embedding(const WeightedGraph& g, const DegreeMatrix& a, int k,
                                            const SpectralOptions& opts = {}) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (k < 1 || k > n)
    throw Error(ErrorCode::invalid_argument, "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  if (a.a.size() != n) throw Error(ErrorCode::invalid_argument, "degree vector size mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(a.a(i) > 0.0))
      throw Error(ErrorCode::zero_degree, "bus " + std::to_string(g.bus_index().id_at(static_cast<std::size_t>(i))));
  const Eigen::VectorXd d = a.a.cwiseSqrt().cwiseInverse();

  Eigen::VectorXd values;
  Eigen::MatrixXd u;
  if (static_cast<std::size_t>(n) <= opts.dense_limit) {
    Eigen::MatrixXd sym = -(d.asDiagonal() * g.dense() * d.asDiagonal());
    sym.diagonal().array() += 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::eigensolver, "dense symmetric eigensolver failed");
    values = es.eigenvalues().head(k);
    u = es.eigenvectors().leftCols(k);
  } else {
    Eigen::SparseMatrix<double> sym = -(d.asDiagonal() * g.sparse() * d.asDiagonal());
    Eigen::SparseMatrix<double> eye(n, n);
    eye.setIdentity();
    sym += eye;
    detail::lanczos_smallest(sym, k, opts, values, u);
  }

  SpectralEmbedding emb;
  emb.eigenvalues = values;
  emb.symmetric_vectors = u;
  emb.vectors = d.asDiagonal() * u;
  for (int c = 0; c < k; ++c) {
    emb.vectors.col(c).normalize();
    detail::fix_sign(emb.vectors.col(c));
    emb.symmetric_vectors.col(c).normalize();
    if (emb.symmetric_vectors.col(c).dot(a.a.cwiseSqrt().asDiagonal() * emb.vectors.col(c)) < 0)
      emb.symmetric_vectors.col(c) *= -1.0;
  }

  // Residual check against L_N applied through W.
  const Eigen::SparseMatrix<double> w = g.sparse();
  for (int c = 0; c < k; ++c) {
    const Eigen::VectorXd v = emb.vectors.col(c);
    const Eigen::VectorXd lv = v - a.a.cwiseInverse().asDiagonal() * (w * v);
    const double res = (lv - values(c) * v).lpNorm<Eigen::Infinity>();
    if (!(res <= opts.residual_tolerance))
      throw Error(ErrorCode::eigensolver, "eigenpair " + std::to_string(c) + " residual " + std::to_string(res) +
                                              " exceeds tolerance");
  }
  return emb;
}

/// Points handed to k-means: rows of the random-walk eigenvectors, or the
/// row-normalized symmetric-form eigenvectors when `row_normalize` is set.
inline Eigen::MatrixXd embedding_points(const SpectralEmbedding& emb, bool row_normalize) {
  if (!row_normalize) return emb.vectors;
  Eigen::MatrixXd pts = emb.symmetric_vectors;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double nrm = pts.row(i).norm();
    if (nrm > 0.0) pts.row(i) /= nrm;
  }
  return pts;
}

}  // namespace islanding

#endif  // ISLANDING_SPECTRAL_HPP
