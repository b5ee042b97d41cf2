#ifndef ISLANDING_GRID_MODEL_HPP
#define ISLANDING_GRID_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "islanding/error.hpp"
#include "islanding/json_fields.hpp"

namespace islanding {

using BusId = int;
using Complex = std::complex<double>;

/// Closed interval [min, max] in per-unit.
struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v) const { return v >= min && v <= max; }
  bool operator==(const Range&) const = default;
};

enum class BusKind { load, generator, vsc_terminal };
enum class BranchKind { ac_line, vsc_dc_link };

struct Bus {
  BusId id = 0;
  BusKind kind = BusKind::load;
  std::optional<Range> voltage_limits;
  /// Shunt admittance to ground, per-unit.
  Complex shunt{0.0, 0.0};

  bool operator==(const Bus&) const = default;
};

/// Identifies a physical branch; parallel circuits differ by `circuit`.
struct BranchKey {
  BusId from = 0;
  BusId to = 0;
  int circuit = 1;

  auto operator<=>(const BranchKey&) const = default;
};

inline std::string to_string(const BranchKey& k) {
  return "L" + std::to_string(k.from) + "-" + std::to_string(k.to) + "(" + std::to_string(k.circuit) + ")";
}

struct Branch {
  BusId from = 0;
  BusId to = 0;
  int circuit = 1;
  Complex impedance{0.0, 0.0};
  BranchKind kind = BranchKind::ac_line;

  BranchKey key() const { return {from, to, circuit}; }
  bool is_dc() const { return kind == BranchKind::vsc_dc_link; }
  bool operator==(const Branch&) const = default;
};

struct Generator {
  BusId bus = 0;
  Range p;
  Range q;

  bool operator==(const Generator&) const = default;
};

/// PQ-capability annulus: r_min^2 <= (P - p0)^2 + (Q - q0)^2 <= r_max^2.
struct PqCircle {
  double p0 = 0.0;
  double q0 = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;

  bool operator==(const PqCircle&) const = default;
};

struct VscLink {
  BusId terminal1 = 0;
  BusId terminal2 = 0;
  Range p_s;
  Range q_s;
  Range u_dc;
  Range i_dc;
  std::optional<PqCircle> pq_circle;

  bool connects(BusId a, BusId b) const {
    return (a == terminal1 && b == terminal2) || (a == terminal2 && b == terminal1);
  }
  bool operator==(const VscLink&) const = default;
};

/// Bijection between bus ids and dense row indices (ascending id order).
class BusIndex {
 public:
  BusIndex() = default;
  explicit BusIndex(std::vector<BusId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    for (std::size_t i = 0; i < ids_.size(); ++i) pos_.emplace(ids_[i], i);
  }

  std::size_t size() const { return ids_.size(); }
  bool contains(BusId id) const { return pos_.count(id) != 0; }
  BusId id_at(std::size_t i) const { return ids_.at(i); }
  const std::vector<BusId>& ids() const { return ids_; }

  std::size_t index_of(BusId id) const {
    auto it = pos_.find(id);
    if (it == pos_.end()) throw Error(ErrorCode::dangling_reference, "bus " + std::to_string(id) + " is not indexed");
    return it->second;
  }

  bool operator==(const BusIndex& o) const { return ids_ == o.ids_; }

 private:
  std::vector<BusId> ids_;
  std::unordered_map<BusId, std::size_t> pos_;
};

/// Static grid description. Validated on construction and immutable afterwards.
class Network {
 public:
  static constexpr double kDefaultGroundShunt = 1e-6;

  Network(double base_mva, std::vector<Bus> buses, std::vector<Branch> branches,
          std::vector<Generator> generators, std::vector<VscLink> vsc_links,
          double ground_shunt_epsilon = kDefaultGroundShunt)
      : base_mva_(base_mva),
        buses_(std::move(buses)),
        branches_(std::move(branches)),
        generators_(std::move(generators)),
        vsc_links_(std::move(vsc_links)),
        ground_shunt_epsilon_(ground_shunt_epsilon) {
    validate();
  }

  double base_mva() const { return base_mva_; }
  const std::vector<Bus>& buses() const { return buses_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<VscLink>& vsc_links() const { return vsc_links_; }
  double ground_shunt_epsilon() const { return ground_shunt_epsilon_; }
  const BusIndex& bus_index() const { return index_; }
  std::size_t bus_count() const { return buses_.size(); }

  const Bus& bus(BusId id) const { return buses_.at(bus_pos_.at(index_.index_of(id))); }

  bool hosts_generator(BusId id) const { return gen_buses_.count(id) != 0; }
  const std::set<BusId>& generator_buses() const { return gen_buses_; }

  bool is_vsc_terminal(BusId id) const {
    return std::any_of(vsc_links_.begin(), vsc_links_.end(),
                       [id](const VscLink& v) { return v.terminal1 == id || v.terminal2 == id; });
  }

  const VscLink* find_vsc_link(BusId a, BusId b) const {
    for (const auto& v : vsc_links_)
      if (v.connects(a, b)) return &v;
    return nullptr;
  }

  /// Branch by key, accepting either endpoint order. Second member is true
  /// when the lookup key is reversed relative to the stored branch.
  std::pair<const Branch*, bool> find_branch(BranchKey key) const {
    for (const auto& b : branches_) {
      if (b.circuit != key.circuit) continue;
      if (b.from == key.from && b.to == key.to) return {&b, false};
      if (b.from == key.to && b.to == key.from) return {&b, true};
    }
    return {nullptr, false};
  }

  bool operator==(const Network& o) const {
    return base_mva_ == o.base_mva_ && buses_ == o.buses_ && branches_ == o.branches_ &&
           generators_ == o.generators_ && vsc_links_ == o.vsc_links_ &&
           ground_shunt_epsilon_ == o.ground_shunt_epsilon_;
  }

 private:
  void validate() {
    if (!(base_mva_ > 0.0)) throw Error(ErrorCode::invariant, "base_mva must be positive");
    if (!(ground_shunt_epsilon_ >= 0.0)) throw Error(ErrorCode::invariant, "ground_shunt_epsilon must be >= 0");
    if (buses_.empty()) throw Error(ErrorCode::invariant, "network has no buses");

    std::vector<BusId> ids;
    for (const auto& b : buses_) {
      ids.push_back(b.id);
      if (b.voltage_limits && !(b.voltage_limits->min < b.voltage_limits->max))
        throw Error(ErrorCode::bad_limits, "bus " + std::to_string(b.id) + ": u_min must be < u_max");
    }
    index_ = BusIndex(ids);
    if (index_.size() != buses_.size()) {
      std::sort(ids.begin(), ids.end());
      auto dup = std::adjacent_find(ids.begin(), ids.end());
      throw Error(ErrorCode::invariant, "duplicate bus id " + std::to_string(*dup));
    }
    bus_pos_.assign(buses_.size(), 0);
    for (std::size_t i = 0; i < buses_.size(); ++i) bus_pos_[index_.index_of(buses_[i].id)] = i;

    auto require_bus = [&](BusId id, const std::string& who) {
      if (!index_.contains(id))
        throw Error(ErrorCode::dangling_reference, who + " references missing bus " + std::to_string(id));
    };

    std::set<BranchKey> keys;
    for (const auto& br : branches_) {
      const std::string who = "branch " + to_string(br.key());
      require_bus(br.from, who);
      require_bus(br.to, who);
      if (br.from == br.to) throw Error(ErrorCode::invariant, who + " connects a bus to itself");
      BranchKey canon{std::min(br.from, br.to), std::max(br.from, br.to), br.circuit};
      if (!keys.insert(canon).second) throw Error(ErrorCode::invariant, "duplicate " + who);
      if (!std::isfinite(br.impedance.real()) || !std::isfinite(br.impedance.imag()))
        throw Error(ErrorCode::invariant, who + " has a non-finite impedance");
      if (br.kind == BranchKind::ac_line && std::abs(br.impedance) <= 0.0)
        throw Error(ErrorCode::zero_impedance, who + " has zero impedance");
    }

    auto check_range = [](const Range& r, const std::string& what) {
      if (!(r.min <= r.max)) throw Error(ErrorCode::bad_limits, what + ": min must be <= max");
    };
    for (const auto& g : generators_) {
      const std::string who = "generator at bus " + std::to_string(g.bus);
      require_bus(g.bus, who);
      check_range(g.p, who + " p");
      check_range(g.q, who + " q");
      gen_buses_.insert(g.bus);
    }
    for (const auto& v : vsc_links_) {
      const std::string who = "vsc link " + std::to_string(v.terminal1) + "-" + std::to_string(v.terminal2);
      require_bus(v.terminal1, who);
      require_bus(v.terminal2, who);
      if (v.terminal1 == v.terminal2) throw Error(ErrorCode::invariant, who + " has identical terminals");
      check_range(v.p_s, who + " p_s");
      check_range(v.q_s, who + " q_s");
      check_range(v.u_dc, who + " u_dc");
      check_range(v.i_dc, who + " i_dc");
      if (v.pq_circle && !(0.0 <= v.pq_circle->r_min && v.pq_circle->r_min <= v.pq_circle->r_max))
        throw Error(ErrorCode::bad_limits, who + " pq circle: need 0 <= r_min <= r_max");
    }

    // AC connectivity (DC links excluded).
    const std::size_t n = index_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& br : branches_)
      if (br.kind == BranchKind::ac_line) parent[find(index_.index_of(br.from))] = find(index_.index_of(br.to));
    for (std::size_t i = 1; i < n; ++i)
      if (find(i) != find(0))
        throw Error(ErrorCode::disconnected_network,
                    "bus " + std::to_string(index_.id_at(i)) + " is not AC-connected to bus " +
                        std::to_string(index_.id_at(0)));
  }

  double base_mva_;
  std::vector<Bus> buses_;
  std::vector<Branch> branches_;
  std::vector<Generator> generators_;
  std::vector<VscLink> vsc_links_;
  double ground_shunt_epsilon_;
  BusIndex index_;
  std::vector<std::size_t> bus_pos_;
  std::set<BusId> gen_buses_;
};

struct DirectedFlow {
  double p_ij = 0.0;
  double p_ji = 0.0;
};

struct Injection {
  double p = 0.0;
  double q = 0.0;
};

struct VscOperatingPoint {
  double p_s = 0.0;
  double q_s = 0.0;
  std::optional<double> u_dc;
  std::optional<double> i_dc;
};

struct WeightOverride {
  BusId from = 0;
  BusId to = 0;
  double w = 0.0;
};

/// Solved operating point. Flow keys are stored in the network branch orientation.
struct Snapshot {
  std::string timestamp;
  std::map<BranchKey, DirectedFlow> branch_flows;
  std::map<BusId, Injection> bus_injections;
  std::map<BusId, double> bus_voltages;
  std::map<BusId, Injection> generation;
  std::map<BusId, VscOperatingPoint> vsc_points;
  std::vector<WeightOverride> weight_overrides;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline BusKind parse_bus_kind(const Field& f) {
  const std::string s = f.string();
  if (s == "load") return BusKind::load;
  if (s == "generator") return BusKind::generator;
  if (s == "vsc-terminal") return BusKind::vsc_terminal;
  f.fail("unknown bus kind '" + s + "'");
}

inline const char* bus_kind_name(BusKind k) {
  switch (k) {
    case BusKind::load: return "load";
    case BusKind::generator: return "generator";
    case BusKind::vsc_terminal: return "vsc-terminal";
  }
  return "load";
}

inline BranchKind parse_branch_kind(const Field& f) {
  const std::string s = f.string();
  if (s == "ac-line") return BranchKind::ac_line;
  if (s == "vsc-dc-link") return BranchKind::vsc_dc_link;
  f.fail("unknown branch kind '" + s + "'");
}

inline Range read_range(const Field& f, const std::string& stem) {
  return {f.at(stem + "_min").number(), f.at(stem + "_max").number()};
}

}  // namespace detail

inline Network network_from_json(const detail::json& doc) {
  using detail::Field;
  Field root(doc, "");
  if (!doc.is_object()) root.fail("network file must be an object");

  std::vector<Bus> buses;
  Field bus_list = root.at("buses");
  for (std::size_t i = 0; i < bus_list.size(); ++i) {
    Field b = bus_list[i];
    Bus bus;
    bus.id = b.at("id").integer();
    bus.kind = detail::parse_bus_kind(b.at("kind"));
    const bool has_min = b.has("u_min"), has_max = b.has("u_max");
    if (has_min != has_max) b.fail("u_min and u_max must be given together");
    if (has_min) bus.voltage_limits = Range{b.at("u_min").number(), b.at("u_max").number()};
    bus.shunt = Complex(b.number_or("gs", 0.0), b.number_or("bs", 0.0));
    buses.push_back(bus);
  }

  std::vector<Branch> branches;
  Field branch_list = root.at("branches");
  for (std::size_t i = 0; i < branch_list.size(); ++i) {
    Field b = branch_list[i];
    Branch br;
    br.from = b.at("from").integer();
    br.to = b.at("to").integer();
    br.circuit = b.has("circuit") ? b.at("circuit").integer() : 1;
    br.impedance = Complex(b.at("r").number(), b.at("x").number());
    br.kind = detail::parse_branch_kind(b.at("kind"));
    branches.push_back(br);
  }

  std::vector<Generator> generators;
  if (auto gl = root.maybe("generators")) {
    for (std::size_t i = 0; i < gl->size(); ++i) {
      Field g = (*gl)[i];
      generators.push_back({g.at("bus").integer(), detail::read_range(g, "p"), detail::read_range(g, "q")});
    }
  }

  std::vector<VscLink> links;
  if (auto vl = root.maybe("vsc_links")) {
    for (std::size_t i = 0; i < vl->size(); ++i) {
      Field v = (*vl)[i];
      VscLink link;
      link.terminal1 = v.at("t1").integer();
      link.terminal2 = v.at("t2").integer();
      link.p_s = detail::read_range(v, "p_s");
      link.q_s = detail::read_range(v, "q_s");
      link.u_dc = detail::read_range(v, "u_dc");
      link.i_dc = detail::read_range(v, "i_dc");
      if (auto c = v.maybe("circle"))
        link.pq_circle = PqCircle{c->at("p0").number(), c->at("q0").number(), c->at("r_min").number(),
                                  c->at("r_max").number()};
      links.push_back(link);
    }
  }

  const double eps = root.number_or("ground_shunt_epsilon", Network::kDefaultGroundShunt);
  return Network(root.at("base_mva").number(), std::move(buses), std::move(branches), std::move(generators),
                 std::move(links), eps);
}

/// Parses a network file (JSON syntax) and validates every invariant.
inline Network parse_network(std::string_view text) {
  return network_from_json(detail::parse_json_text(text, "network file"));
}

inline detail::json network_to_json(const Network& net) {
  using detail::json;
  json doc = json::object();
  doc["base_mva"] = net.base_mva();
  doc["ground_shunt_epsilon"] = net.ground_shunt_epsilon();
  json buses = json::array();
  for (const auto& b : net.buses()) {
    json jb = {{"id", b.id}, {"kind", detail::bus_kind_name(b.kind)}};
    if (b.voltage_limits) {
      jb["u_min"] = b.voltage_limits->min;
      jb["u_max"] = b.voltage_limits->max;
    }
    if (b.shunt.real() != 0.0) jb["gs"] = b.shunt.real();
    if (b.shunt.imag() != 0.0) jb["bs"] = b.shunt.imag();
    buses.push_back(jb);
  }
  doc["buses"] = buses;
  json branches = json::array();
  for (const auto& br : net.branches())
    branches.push_back({{"from", br.from},
                        {"to", br.to},
                        {"circuit", br.circuit},
                        {"r", br.impedance.real()},
                        {"x", br.impedance.imag()},
                        {"kind", br.is_dc() ? "vsc-dc-link" : "ac-line"}});
  doc["branches"] = branches;
  json gens = json::array();
  for (const auto& g : net.generators())
    gens.push_back({{"bus", g.bus}, {"p_min", g.p.min}, {"p_max", g.p.max}, {"q_min", g.q.min}, {"q_max", g.q.max}});
  doc["generators"] = gens;
  json links = json::array();
  for (const auto& v : net.vsc_links()) {
    json jv = {{"t1", v.terminal1},      {"t2", v.terminal2},      {"p_s_min", v.p_s.min},
               {"p_s_max", v.p_s.max},   {"q_s_min", v.q_s.min},   {"q_s_max", v.q_s.max},
               {"u_dc_min", v.u_dc.min}, {"u_dc_max", v.u_dc.max}, {"i_dc_min", v.i_dc.min},
               {"i_dc_max", v.i_dc.max}};
    if (v.pq_circle)
      jv["circle"] = {{"p0", v.pq_circle->p0},
                      {"q0", v.pq_circle->q0},
                      {"r_min", v.pq_circle->r_min},
                      {"r_max", v.pq_circle->r_max}};
    links.push_back(jv);
  }
  doc["vsc_links"] = links;
  return doc;
}

inline std::string serialize_network(const Network& net) { return network_to_json(net).dump(2) + "\n"; }

/// Parses a snapshot file against an already-validated network.
inline Snapshot parse_snapshot(std::string_view text, const Network& net) {
  using detail::Field;
  const auto doc = detail::parse_json_text(text, "snapshot file");
  Field root(doc, "");
  if (!doc.is_object()) root.fail("snapshot file must be an object");

  auto require_bus = [&](const Field& f) {
    const BusId id = f.integer();
    if (!net.bus_index().contains(id))
      throw Error(ErrorCode::dangling_reference, "field " + f.path() + " references missing bus " + std::to_string(id));
    return id;
  };

  Snapshot snap;
  if (root.has("timestamp")) snap.timestamp = root.at("timestamp").string();

  Field flows = root.at("flows");
  for (std::size_t i = 0; i < flows.size(); ++i) {
    Field f = flows[i];
    BranchKey key{f.at("from").integer(), f.at("to").integer(), f.has("circuit") ? f.at("circuit").integer() : 1};
    auto [branch, reversed] = net.find_branch(key);
    if (!branch) throw Error(ErrorCode::unknown_branch, "field " + f.path() + ": no branch " + to_string(key));
    if (!f.has("p_ij") || !f.has("p_ji"))
      throw Error(ErrorCode::missing_direction,
                  "field " + f.path() + ": branch " + to_string(key) + " needs both p_ij and p_ji");
    DirectedFlow flow{f.at("p_ij").number(), f.at("p_ji").number()};
    if (reversed) std::swap(flow.p_ij, flow.p_ji);
    if (!snap.branch_flows.emplace(branch->key(), flow).second)
      f.fail("duplicate flow for branch " + to_string(branch->key()));
  }

  if (auto inj = root.maybe("injections")) {
    for (std::size_t i = 0; i < inj->size(); ++i) {
      Field f = (*inj)[i];
      snap.bus_injections[require_bus(f.at("bus"))] = {f.at("p").number(), f.number_or("q", 0.0)};
    }
  }
  if (auto gen = root.maybe("generation")) {
    for (std::size_t i = 0; i < gen->size(); ++i) {
      Field f = (*gen)[i];
      const BusId id = require_bus(f.at("bus"));
      if (!net.hosts_generator(id)) f.fail("bus " + std::to_string(id) + " hosts no generator");
      snap.generation[id] = {f.at("p").number(), f.number_or("q", 0.0)};
    }
  }
  if (auto volts = root.maybe("voltages")) {
    for (std::size_t i = 0; i < volts->size(); ++i) {
      Field f = (*volts)[i];
      snap.bus_voltages[require_bus(f.at("bus"))] = f.at("u").number();
    }
  }
  if (auto vsc = root.maybe("vsc")) {
    for (std::size_t i = 0; i < vsc->size(); ++i) {
      Field f = (*vsc)[i];
      const BusId id = require_bus(f.at("bus"));
      if (!net.is_vsc_terminal(id)) f.fail("bus " + std::to_string(id) + " is not a VSC terminal");
      VscOperatingPoint op{f.at("p_s").number(), f.at("q_s").number(), std::nullopt, std::nullopt};
      if (f.has("u_dc")) op.u_dc = f.at("u_dc").number();
      if (f.has("i_dc")) op.i_dc = f.at("i_dc").number();
      snap.vsc_points[id] = op;
    }
  }
  if (auto ws = root.maybe("weights")) {
    for (std::size_t i = 0; i < ws->size(); ++i) {
      Field f = (*ws)[i];
      WeightOverride w{require_bus(f.at("from")), require_bus(f.at("to")), f.at("w").number()};
      if (w.w < 0.0) f.fail("weight must be nonnegative");
      if (w.from == w.to) f.fail("weight override on a self pair");
      snap.weight_overrides.push_back(w);
    }
  }
  return snap;
}

// ---------------------------------------------------------------------------
// Admittance / impedance

/// Dense complex bus admittance matrix over AC lines. DC links are excluded;
/// every diagonal gets the network's grounding shunt plus the bus shunt.
inline Eigen::MatrixXcd build_ybus(const Network& net) {
  const auto& idx = net.bus_index();
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& br : net.branches()) {
    if (br.is_dc()) continue;
    if (std::abs(br.impedance) <= 0.0) throw Error(ErrorCode::zero_impedance, to_string(br.key()));
    const Complex adm = 1.0 / br.impedance;
    const auto i = static_cast<Eigen::Index>(idx.index_of(br.from));
    const auto j = static_cast<Eigen::Index>(idx.index_of(br.to));
    y(i, j) -= adm;
    y(j, i) -= adm;
    y(i, i) += adm;
    y(j, j) += adm;
  }
  for (const auto& b : net.buses()) {
    const auto i = static_cast<Eigen::Index>(idx.index_of(b.id));
    y(i, i) += b.shunt + Complex(net.ground_shunt_epsilon(), 0.0);
  }
  return y;
}

struct ImpedanceMatrix {
  Eigen::MatrixXcd z;
  BusIndex bus_index;
};

/// Reciprocal condition estimates below this are treated as singular.
inline constexpr double kSingularRcond = 1e-13;

inline ImpedanceMatrix build_zbus(const Eigen::MatrixXcd& ybus, BusIndex index) {
  if (ybus.rows() != ybus.cols() || static_cast<std::size_t>(ybus.rows()) != index.size())
    throw Error(ErrorCode::invalid_argument, "Y-bus shape does not match the bus index");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ybus);
  const double rcond = lu.rcond();
  if (!(rcond > kSingularRcond))
    throw Error(ErrorCode::singular_ybus,
                "reciprocal condition " + std::to_string(rcond) +
                    "; increase ground_shunt_epsilon (uniform diagonal grounding admittance) above zero");
  Eigen::MatrixXcd z = lu.inverse();
  z = (0.5 * (z + z.transpose())).eval();
  return {std::move(z), std::move(index)};
}

inline ImpedanceMatrix build_zbus(const Network& net) { return build_zbus(build_ybus(net), net.bus_index()); }

/// Which real quantity of the two-port input impedance serves as distance.
enum class DistanceMode { magnitude, resistance, reactance };

inline constexpr double kDistanceFloor = 1e-9;

/// Two-port input impedance |Z_ii + Z_jj - 2 Z_ij| between buses i and j.
inline double electrical_distance(const ImpedanceMatrix& zbus, BusId i, BusId j,
                                  DistanceMode mode = DistanceMode::magnitude) {
  if (i == j) throw Error(ErrorCode::invalid_argument, "electrical distance of bus " + std::to_string(i) + " to itself");
  const auto a = static_cast<Eigen::Index>(zbus.bus_index.index_of(i));
  const auto b = static_cast<Eigen::Index>(zbus.bus_index.index_of(j));
  const Complex zin = zbus.z(a, a) + zbus.z(b, b) - zbus.z(a, b) - zbus.z(b, a);
  double d = 0.0;
  switch (mode) {
    case DistanceMode::magnitude: d = std::abs(zin); break;
    case DistanceMode::resistance: d = std::abs(zin.real()); break;
    case DistanceMode::reactance: d = std::abs(zin.imag()); break;
  }
  if (!(d >= kDistanceFloor))
    throw Error(ErrorCode::degenerate_distance,
                "D(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(d) + " is below the floor");
  return d;
}

}  // namespace islanding

#endif  // ISLANDING_GRID_MODEL_HPP
