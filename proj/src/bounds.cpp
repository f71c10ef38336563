#include "frhyper/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "combinations.hpp"
#include "frhyper/error.hpp"

namespace frhyper {

std::string to_string(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string_view to_string(ExistenceVerdict verdict) noexcept {
  switch (verdict) {
    case ExistenceVerdict::NecessaryFail: return "NecessaryFail";
    case ExistenceVerdict::SufficientPass: return "SufficientPass";
    case ExistenceVerdict::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

namespace {

Index choose2(Index x) { return x < 2 ? 0 : x * (x - 1) / 2; }

Rational binomial_q(Index n, Index k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int result = 1;
  for (Index i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return Rational(result);
}

// Constraint 2 on descending `rows` against column capacities `cols`, for
// every m < rows.size().
bool dominance_holds(const std::vector<Index>& rows_desc, const std::vector<Index>& cols) {
  Index prefix = 0;
  for (Index m = 1; m < rows_desc.size(); ++m) {
    prefix += rows_desc[m - 1];
    Index capacity = 0;
    for (Index c : cols) capacity += std::min(c, m);
    if (capacity < prefix) return false;
  }
  return true;
}

}  // namespace

void validate_sequence(const DegreeSequencePair& seq) {
  if (seq.alpha.empty() || seq.rho.empty()) {
    throw Error(ErrorCode::InvalidSequence, "degree sequences must be non-empty");
  }
  for (Index i = 0; i < seq.alpha.size(); ++i) {
    if (seq.alpha[i] == 0) {
      throw Error(ErrorCode::InvalidSequence,
                  "alpha_" + std::to_string(i + 1) + " must be at least 1", i + 1);
    }
  }
  for (Index j = 0; j < seq.rho.size(); ++j) {
    if (seq.rho[j] == 0 || seq.rho[j] > seq.alpha.size()) {
      throw Error(ErrorCode::InvalidSequence,
                  "rho_" + std::to_string(j + 1) + " must lie in 1..n = " +
                      std::to_string(seq.alpha.size()),
                  j + 1);
    }
  }
}

ExistenceVerdict existence_check(const DegreeSequencePair& seq) {
  validate_sequence(seq);
  const Index alpha_sum = std::accumulate(seq.alpha.begin(), seq.alpha.end(), Index{0});
  const Index rho_sum = std::accumulate(seq.rho.begin(), seq.rho.end(), Index{0});
  if (alpha_sum != rho_sum) return ExistenceVerdict::NecessaryFail;
  std::vector<Index> alpha = seq.alpha;
  std::sort(alpha.begin(), alpha.end(), std::greater<>());
  return dominance_holds(alpha, seq.rho) ? ExistenceVerdict::SufficientPass
                                         : ExistenceVerdict::Indeterminate;
}

namespace {

class Realizer {
 public:
  explicit Realizer(const DegreeSequencePair& seq)
      : alpha_(seq.alpha), capacity_(seq.rho), order_(seq.alpha.size()),
        rows_(seq.alpha.size()) {
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Index a, Index b) { return alpha_[a] > alpha_[b]; });
  }

  bool run() { return place(0); }
  std::vector<IdSet> take_rows() { return std::move(rows_); }

 private:
  bool place(Index r) {
    if (r == order_.size()) {
      return std::all_of(capacity_.begin(), capacity_.end(), [](Index c) { return c == 0; });
    }
    const Index row = order_[r];
    const Index need = alpha_[row];

    std::vector<Index> open;
    for (Index c = 0; c < capacity_.size(); ++c) {
      if (capacity_[c] > 0) open.push_back(c);
    }
    if (open.size() < need) return false;
    std::stable_sort(open.begin(), open.end(),
                     [&](Index a, Index b) { return capacity_[a] > capacity_[b]; });

    const Index rows_left = order_.size() - r - 1;
    return detail::for_each_combination(open.size(), need, [&](const std::vector<Index>& pick) {
      for (Index p : pick) --capacity_[open[p]];
      if (residual_feasible(r + 1, rows_left) && place(r + 1)) {
        IdSet chosen;
        for (Index p : pick) chosen.push_back(open[p]);
        std::sort(chosen.begin(), chosen.end());
        rows_[row] = std::move(chosen);
        return true;
      }
      for (Index p : pick) ++capacity_[open[p]];
      return false;
    });
  }

  bool residual_feasible(Index next, Index rows_left) const {
    for (Index c : capacity_) {
      if (c > rows_left) return false;
    }
    std::vector<Index> remaining;
    for (Index r = next; r < order_.size(); ++r) remaining.push_back(alpha_[order_[r]]);
    return dominance_holds(remaining, capacity_);
  }

  std::vector<Index> alpha_;
  std::vector<Index> capacity_;
  std::vector<Index> order_;
  std::vector<IdSet> rows_;
};

}  // namespace

FRCode realize(const DegreeSequencePair& seq) {
  if (existence_check(seq) == ExistenceVerdict::NecessaryFail) {
    throw Error(ErrorCode::Unrealizable, "sum of alpha differs from sum of rho");
  }
  Realizer realizer(seq);
  if (!realizer.run()) {
    throw Error(ErrorCode::Unrealizable, "no 0/1 placement matches the degree sequences");
  }
  return validate_fr(realizer.take_rows(), seq.rho.size());
}

// ---------------------------------------------------------------------------

const BoundEntry* BoundReport::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool BoundReport::all_satisfied() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const BoundEntry& e) { return !e.applicable || e.satisfied; });
}

namespace {

struct EntryBuilder {
  BoundReport& report;

  void gated(std::string id, std::string statement, std::string reason) {
    BoundEntry e;
    e.id = std::move(id);
    e.statement = std::move(statement);
    e.reason = std::move(reason);
    report.entries.push_back(std::move(e));
  }

  void evaluated(std::string id, std::string statement, Rational lhs, Relation rel, Rational rhs) {
    BoundEntry e;
    e.id = std::move(id);
    e.statement = std::move(statement);
    e.applicable = true;
    e.relation = rel;
    switch (rel) {
      case Relation::LessEqual: e.satisfied = lhs <= rhs; break;
      case Relation::GreaterEqual: e.satisfied = lhs >= rhs; break;
      case Relation::MultipleOf: {
        const Rational ratio = lhs / rhs;
        e.satisfied = boost::multiprecision::denominator(ratio) == 1;
        break;
      }
    }
    e.tight = lhs == rhs;
    e.lhs = std::move(lhs);
    e.rhs = std::move(rhs);
    report.entries.push_back(std::move(e));
  }

  // Evaluates or records the first failing gate.
  template <class Evaluate>
  void entry(const std::string& id, const std::string& statement,
             std::initializer_list<std::pair<bool, const char*>> gates, Evaluate&& evaluate) {
    for (const auto& [ok, why] : gates) {
      if (!ok) {
        gated(id, statement, why);
        return;
      }
    }
    evaluate();
  }
};

bool antichain(const FRCode& code) {
  const auto& nodes = code.nodes();
  for (Index a = 0; a < nodes.size(); ++a) {
    for (Index b = 0; b < nodes.size(); ++b) {
      if (a != b && is_subset(nodes[a], nodes[b])) return false;
    }
  }
  return true;
}

// min over k-vertex subsets of the number of edges meeting the subset.
Index min_induced_edges(const Hypergraph& h, Index k, const EnumerationGuard& guard) {
  guard.check(h.num_vertices(), binomial(h.num_vertices(), k), "induced sub-hypergraph bound");
  Index best = h.num_edges();
  detail::for_each_combination(h.num_vertices(), k, [&](const std::vector<Index>& subset) {
    Index met = 0;
    for (const auto& e : h.edges()) {
      bool hit = std::any_of(subset.begin(), subset.end(), [&](Index v) {
        return std::binary_search(e.begin(), e.end(), v);
      });
      if (hit) ++met;
    }
    best = std::min(best, met);
    return false;
  });
  return best;
}

}  // namespace

BoundReport check_bounds(const FRCode& code, std::optional<Index> k, const EnumerationGuard& guard) {
  BoundReport report;
  EntryBuilder b{report};

  const Index n = code.num_nodes();
  const Index theta = code.num_packets();
  const auto alpha = code.storage_vector();
  const auto rho = code.replication_vector();
  const Index alpha_max = code.max_storage();
  const Index rho_max = code.max_replication();
  const Index total = std::accumulate(alpha.begin(), alpha.end(), Index{0});

  const Hypergraph h = fr_to_hypergraph(code);
  const ClassificationFlags flags = classify(h);
  const bool linear = flags.linear;
  const bool rho_uniform = flags.uniform();
  const bool alpha_regular = flags.regular();

  const char* kNotUniform = "replication factors are not all equal";
  const char* kNotConnected = "hypergraph is not connected";
  const char* kNotLinear = "two nodes share more than one packet";

  b.entry("uniform.divisible", "sum(alpha) is a multiple of rho",
          {{rho_uniform, kNotUniform}, {flags.connected, kNotConnected}},
          [&] { b.evaluated("uniform.divisible", "sum(alpha) is a multiple of rho", total,
                            Relation::MultipleOf, rho_max); });
  b.entry("uniform.total", "sum(alpha) >= rho(n-1)/(rho-1)",
          {{rho_uniform, kNotUniform}, {flags.connected, kNotConnected}, {rho_max >= 2, "rho < 2"}},
          [&] {
            b.evaluated("uniform.total", "sum(alpha) >= rho(n-1)/(rho-1)", total,
                        Relation::GreaterEqual, Rational(rho_max * (n - 1), rho_max - 1));
          });
  b.entry("uniform.max_capacity", "alpha <= sum(alpha)/rho",
          {{rho_uniform, kNotUniform}, {flags.connected, kNotConnected}}, [&] {
            b.evaluated("uniform.max_capacity", "alpha <= sum(alpha)/rho", alpha_max, Relation::LessEqual,
                        Rational(total, rho_max));
          });

  const bool sperner = antichain(code);
  const char* kNested = "some node is contained in another";
  b.entry("antichain.lym", "sum_i 1/C(theta, alpha_i) <= 1", {{sperner, kNested}}, [&] {
    Rational lym = 0;
    for (Index a : alpha) lym += 1 / binomial_q(theta, a);
    b.evaluated("antichain.lym", "sum_i 1/C(theta, alpha_i) <= 1", lym, Relation::LessEqual, 1);
  });
  b.entry("antichain.sperner", "n <= C(theta, floor(theta/2))", {{sperner, kNested}}, [&] {
    b.evaluated("antichain.sperner", "n <= C(theta, floor(theta/2))", n, Relation::LessEqual,
                binomial_q(theta, theta / 2));
  });

  b.entry("linear.node_pairs", "sum_j C(rho_j, 2) <= C(n, 2)", {{linear, kNotLinear}}, [&] {
    Index lhs = 0;
    for (Index r : rho) lhs += choose2(r);
    b.evaluated("linear.node_pairs", "sum_j C(rho_j, 2) <= C(n, 2)", lhs, Relation::LessEqual, choose2(n));
  });
  b.entry("linear.packet_pairs", "sum_i C(alpha_i, 2) <= C(theta, 2)", {{linear, kNotLinear}}, [&] {
    Index lhs = 0;
    for (Index a : alpha) lhs += choose2(a);
    b.evaluated("linear.packet_pairs", "sum_i C(alpha_i, 2) <= C(theta, 2)", lhs, Relation::LessEqual,
                choose2(theta));
  });
  b.entry("linear.regular_nodes", "n <= theta(theta-1)/(alpha(alpha-1))",
          {{linear, kNotLinear},
           {alpha_regular, "node capacities are not all equal"},
           {alpha_max >= 2, "alpha < 2"}},
          [&] {
            b.evaluated("linear.regular_nodes", "n <= theta(theta-1)/(alpha(alpha-1))", n, Relation::LessEqual,
                        Rational(theta * (theta - 1), alpha_max * (alpha_max - 1)));
          });
  b.entry("linear.uniform_packets", "theta <= n(n-1)/(rho(rho-1))",
          {{linear, kNotLinear}, {rho_uniform, kNotUniform}, {rho_max >= 2, "rho < 2"}}, [&] {
            b.evaluated("linear.uniform_packets", "theta <= n(n-1)/(rho(rho-1))", theta, Relation::LessEqual,
                        Rational(n * (n - 1), rho_max * (rho_max - 1)));
          });
  b.entry("linear.edge_count", "|E| >= sum_v |E(v)| - C(|V|, 2)", {{linear, kNotLinear}}, [&] {
    b.evaluated("linear.edge_count", "|E| >= sum_v |E(v)| - C(|V|, 2)", theta, Relation::GreaterEqual,
                Rational(static_cast<long long>(total)) - static_cast<long long>(choose2(n)));
  });

  if (k) {
    if (*k < 1 || *k > n) {
      throw Error(ErrorCode::KOutOfRange,
                  "k = " + std::to_string(*k) + " outside 1.." + std::to_string(n));
    }
    std::vector<Index> ascending = alpha;
    std::sort(ascending.begin(), ascending.end());
    const long long smallest =
        std::accumulate(ascending.begin(), ascending.begin() + *k, 0LL);
    const long long largest = std::accumulate(ascending.end() - *k, ascending.end(), 0LL);
    const long long pairs = static_cast<long long>(choose2(*k));

    b.entry("linear.induced_edges", "min_{|V'|=k} |E'| >= sum_{i<=k} |E(v_i)| - C(k, 2)", {{linear, kNotLinear}},
            [&] {
              b.evaluated("linear.induced_edges", "min_{|V'|=k} |E'| >= sum_{i<=k} |E(v_i)| - C(k, 2)",
                          min_induced_edges(h, *k, guard), Relation::GreaterEqual,
                          smallest - pairs);
            });
    const Index mk = max_file_size(code, *k, guard);
    b.entry("flexible.lower", "M(k) >= (k smallest alpha) - C(k, 2)", {{linear, kNotLinear}},
            [&] {
              b.evaluated("flexible.lower", "M(k) >= (k smallest alpha) - C(k, 2)", mk,
                          Relation::GreaterEqual, smallest - pairs);
            });
    b.evaluated("flexible.upper", "M(k) <= k largest alpha", mk, Relation::LessEqual, largest);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

void validate_pairing(const FRCode& code, const PacketPairing& pairing) {
  const Index theta = code.num_packets();
  if (theta % 2 != 0) {
    throw Error(ErrorCode::OddTheta, "theta = " + std::to_string(theta) + " is odd");
  }
  if (pairing.size() != theta / 2) {
    throw Error(ErrorCode::InvalidPairing, "a pairing needs exactly theta/2 pairs");
  }
  std::vector<bool> used(theta, false);
  for (const auto& [a, b] : pairing) {
    for (Index p : {a, b}) {
      if (p >= theta || used[p]) {
        throw Error(ErrorCode::InvalidPairing,
                    "packet " + std::to_string(p + 1) + " is out of range or paired twice", p + 1);
      }
      used[p] = true;
    }
  }
}

bool pairing_hypothesis(const std::vector<IdSet>& where, const PacketPairing& pairing) {
  for (Index i = 0; i < pairing.size(); ++i) {
    for (Index j = 0; j < pairing.size(); ++j) {
      bool disjoint = intersection_size(where[pairing[i].first], where[pairing[j].second]) == 0;
      if (disjoint != (i == j)) return false;
    }
  }
  return true;
}

}  // namespace

PairingResult check_pairing_bound(const FRCode& code, const PacketPairing& pairing) {
  validate_pairing(code, pairing);
  const auto where = code.packet_locations();
  PairingResult result;
  result.hypothesis_holds = pairing_hypothesis(where, pairing);
  if (result.hypothesis_holds) {
    Rational sum = 0;
    for (const auto& [a, b] : pairing) {
      sum += 1 / binomial_q(where[a].size() + where[b].size(), where[a].size());
    }
    result.satisfied = sum <= 1;
    result.sum = std::move(sum);
  }
  return result;
}

std::optional<PacketPairing> find_pairing(const FRCode& code) {
  const Index theta = code.num_packets();
  if (theta % 2 != 0) {
    throw Error(ErrorCode::OddTheta, "theta = " + std::to_string(theta) + " is odd");
  }
  if (theta > 12) {
    throw Error(ErrorCode::InstanceTooLarge, "pairing search is limited to theta <= 12");
  }
  const auto where = code.packet_locations();
  PacketPairing current;
  std::vector<bool> used(theta, false);

  // Pairs are generated with the smallest unused packet first; both
  // orientations are tried.
  auto search = [&](auto&& self) -> bool {
    Index first = 0;
    while (first < theta && used[first]) ++first;
    if (first == theta) return pairing_hypothesis(where, current);
    used[first] = true;
    for (Index second = first + 1; second < theta; ++second) {
      if (used[second]) continue;
      used[second] = true;
      for (bool flip : {false, true}) {
        current.emplace_back(flip ? second : first, flip ? first : second);
        if (self(self)) return true;
        current.pop_back();
      }
      used[second] = false;
    }
    used[first] = false;
    return false;
  };
  if (search(search)) return current;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

}  // namespace

DistanceBounds distance_bounds(const FRCode& code, Index k, const EnumerationGuard& guard) {
  DistanceBounds out;
  const long long n = static_cast<long long>(code.num_nodes());
  const long long alpha = static_cast<long long>(code.max_storage());
  out.file_size = max_file_size(code, k, guard);
  const long long mk = static_cast<long long>(out.file_size);
  out.singleton_like = n - ceil_div(mk, alpha) + 1;
  out.observed = min_distance(code, out.file_size, guard);
  out.satisfied = static_cast<long long>(out.observed) <= out.singleton_like;
  try {
    const long long d = static_cast<long long>(max_repair_degree(code, guard));
    out.locally_repairable = n - ceil_div(mk, alpha) - ceil_div(mk, d * alpha) + 2;
    out.locally_repairable_code = static_cast<long long>(k) > d;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IrreparableNode) throw;
  }
  return out;
}

GfrCheck gfr_bound_check(const FRCode& code, Index k, const EnumerationGuard& guard) {
  GfrCheck out;
  out.lhs = max_file_size(code, k, guard);
  std::vector<Index> degrees;
  try {
    for (Index i = 0; i < code.num_nodes(); ++i) {
      degrees.push_back(repair_degree(code, i, guard).degree);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IrreparableNode) throw;
    out.reason = e.what();
    return out;
  }
  std::sort(degrees.begin(), degrees.end());
  out.applicable = true;
  out.rhs = std::accumulate(degrees.begin(), degrees.begin() + k, 0LL) -
            static_cast<long long>(choose2(k));
  out.satisfied = static_cast<long long>(out.lhs) >= out.rhs;
  out.tight = static_cast<long long>(out.lhs) == out.rhs;
  return out;
}

}  // namespace frhyper
