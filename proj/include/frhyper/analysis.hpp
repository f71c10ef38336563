#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "frhyper/model.hpp"

namespace frhyper {

/// Limits for the exact subset enumerations. Above n = 28 nodes, or above
/// 2^26 subsets for a single enumeration, the call throws InstanceTooLarge
/// unless `force` is set.
struct EnumerationGuard {
  static constexpr Index kMaxNodes = 28;
  static constexpr std::uint64_t kMaxSubsets = std::uint64_t{1} << 26;

  bool force = false;

  void check(Index universe, std::uint64_t subsets, std::string_view what) const;

  /// `force` is also switched on by FRC_GUARD_OVERRIDE=1 in the environment.
  static EnumerationGuard from_environment(bool force_flag = false);
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// M(k): minimum over all k-node subsets of the number of distinct packets
/// they hold.
Index max_file_size(const FRCode& code, Index k, const EnumerationGuard& guard = {});

/// M(1), ..., M(n); entry k-1 holds M(k).
std::vector<Index> file_size_table(const FRCode& code, const EnumerationGuard& guard = {});

/// Smallest k with M(k) >= file_size.
Index reconstruction_degree(const FRCode& code, Index file_size,
                            const EnumerationGuard& guard = {});

struct RepairResult {
  Index degree = 0;
  IdSet helpers;  // 0-based node ids, ascending
};

/// Minimum number of other nodes whose union covers the failed node, with the
/// lexicographically first helper set of that size.
RepairResult repair_degree(const FRCode& code, Index failed, const EnumerationGuard& guard = {});

/// d = max_i d_i. Throws IrreparableNode if some node cannot be rebuilt.
Index max_repair_degree(const FRCode& code, const EnumerationGuard& guard = {});

/// Smallest |S| such that the nodes outside S hold fewer than file_size
/// distinct packets.
Index min_distance(const FRCode& code, Index file_size, const EnumerationGuard& guard = {});

/// Nodes in removed_nodes are dropped, packets in removed_packets are stripped
/// from the surviving nodes. Both sets use 0-based ids.
struct AdaptationSpec {
  IdSet removed_nodes;
  IdSet removed_packets;
  friend bool operator==(const AdaptationSpec&, const AdaptationSpec&) = default;
};

/// Applies the spec and renumbers the surviving nodes and packets densely,
/// keeping their relative order.
FRCode adapt(const FRCode& code, const AdaptationSpec& spec);

/// Searches for a spec with adapt(larger, spec) == smaller. Returns the first
/// one found (removed node sets in lexicographic order), or nullopt.
std::optional<AdaptationSpec> is_adaptation_of(const FRCode& smaller, const FRCode& larger,
                                               const EnumerationGuard& guard = {});

struct AnalysisReport {
  std::vector<Index> file_size_table;  // entry k-1 holds M(k)
  Index file_size = 0;
  Index reconstruction_degree = 0;
  std::vector<std::optional<RepairResult>> repairs;  // nullopt: node irreparable
  std::optional<Index> max_repair_degree;            // set iff every node is repairable
  Index min_distance = 0;
};

AnalysisReport analyze(const FRCode& code, Index file_size, const EnumerationGuard& guard = {});

}  // namespace frhyper
