#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frhyper/analysis.hpp"
#include "frhyper/model.hpp"

namespace frhyper {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" for integral values.
std::string to_string(const Rational& value);

// ---------------------------------------------------------------------------
// Degree sequences

struct DegreeSequencePair {
  std::vector<Index> alpha;  // node capacities
  std::vector<Index> rho;    // replication factors
};

/// Throws InvalidSequence unless both vectors are non-empty, every entry is
/// at least 1 and every rho_j <= n.
void validate_sequence(const DegreeSequencePair& seq);

enum class ExistenceVerdict { NecessaryFail, SufficientPass, Indeterminate };

std::string_view to_string(ExistenceVerdict verdict) noexcept;

/// NecessaryFail when the sums differ. Otherwise SufficientPass iff, with
/// alpha sorted descending, sum_j min(rho_j, m) >= alpha_1 + ... + alpha_m for
/// every m < n; Indeterminate when only that second condition fails.
ExistenceVerdict existence_check(const DegreeSequencePair& seq);

/// Builds a code with exactly these vectors. Nodes are filled largest first,
/// each preferring the packets with the most remaining copies, with
/// backtracking. Throws Unrealizable when no code exists.
FRCode realize(const DegreeSequencePair& seq);

// ---------------------------------------------------------------------------
// Bound report

enum class Relation { LessEqual, GreaterEqual, MultipleOf };

struct BoundEntry {
  std::string id;
  std::string statement;
  bool applicable = false;
  std::string reason;  // failed gate, when not applicable
  Rational lhs;
  Rational rhs;
  Relation relation = Relation::LessEqual;
  bool satisfied = false;
  bool tight = false;
};

struct BoundReport {
  std::vector<BoundEntry> entries;

  const BoundEntry* find(std::string_view id) const;
  /// No applicable entry is violated.
  bool all_satisfied() const;
};

/// Evaluates the gated parameter bounds. Entry ids:
///   uniform.divisible, uniform.total,           rho-uniform and connected
///     uniform.max_capacity
///   antichain.lym, antichain.sperner            no node contained in another
///   linear.node_pairs, linear.packet_pairs,     linear
///     linear.edge_count
///   linear.regular_nodes                        linear, alpha-regular, alpha >= 2
///   linear.uniform_packets                      linear, rho-uniform, rho >= 2
/// With k given, also:
///   linear.induced_edges  linear: min induced edge count over k vertices
///   flexible.lower        linear: M(k) >= (k smallest alpha) - C(k,2)
///   flexible.upper        M(k) <= k largest alpha
BoundReport check_bounds(const FRCode& code, std::optional<Index> k = std::nullopt,
                         const EnumerationGuard& guard = {});

// ---------------------------------------------------------------------------
// Paired-packet bound

/// (j, j') pairs of 0-based packet ids that partition 0..theta-1.
using PacketPairing = std::vector<std::pair<Index, Index>>;

struct PairingResult {
  bool hypothesis_holds = false;  // F_i and F'_j disjoint iff i == j
  std::optional<Rational> sum;    // sum_j 1 / C(|F_j| + |F'_j|, |F_j|), when it holds
  std::optional<bool> satisfied;  // sum <= 1, when it holds
};

PairingResult check_pairing_bound(const FRCode& code, const PacketPairing& pairing);

/// Exhaustive search (theta <= 12) for an oriented pairing satisfying the
/// hypothesis; nullopt if none exists.
std::optional<PacketPairing> find_pairing(const FRCode& code);

// ---------------------------------------------------------------------------
// Distance and repair-degree bounds

struct DistanceBounds {
  Index file_size = 0;                          // M(k)
  long long singleton_like = 0;                 // n - ceil(M(k)/alpha) + 1
  std::optional<long long> locally_repairable;  // needs every node repairable
  bool locally_repairable_code = false;         // k > d
  Index observed = 0;                           // d_min for file size M(k)
  bool satisfied = false;                       // observed <= singleton_like
};

DistanceBounds distance_bounds(const FRCode& code, Index k, const EnumerationGuard& guard = {});

struct GfrCheck {
  bool applicable = false;
  std::string reason;
  Index lhs = 0;      // M(k)
  long long rhs = 0;  // d_1 + ... + d_k - C(k,2), d ascending
  bool satisfied = false;
  bool tight = false;
};

GfrCheck gfr_bound_check(const FRCode& code, Index k, const EnumerationGuard& guard = {});

}  // namespace frhyper
