#include "frhyper/analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "combinations.hpp"
#include "frhyper/error.hpp"

namespace frhyper {

using PacketMask = boost::dynamic_bitset<std::uint64_t>;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

void EnumerationGuard::check(Index universe, std::uint64_t subsets, std::string_view what) const {
  if (force) return;
  if (universe > kMaxNodes || subsets > kMaxSubsets) {
    throw Error(ErrorCode::InstanceTooLarge,
                std::string(what) + " would enumerate " + std::to_string(subsets) +
                    " subsets of " + std::to_string(universe) +
                    " items (limit: 28 items, 2^26 subsets); pass --force or set "
                    "FRC_GUARD_OVERRIDE=1");
  }
}

EnumerationGuard EnumerationGuard::from_environment(bool force_flag) {
  EnumerationGuard guard;
  guard.force = force_flag;
  if (const char* env = std::getenv("FRC_GUARD_OVERRIDE"); env && std::string(env) == "1") {
    guard.force = true;
  }
  return guard;
}

namespace {

std::vector<PacketMask> node_masks(const FRCode& code) {
  std::vector<PacketMask> masks;
  masks.reserve(code.num_nodes());
  for (const auto& node : code.nodes()) {
    PacketMask mask(code.num_packets());
    for (Index p : node) mask.set(p);
    masks.push_back(std::move(mask));
  }
  return masks;
}

// Depth-first search over k-subsets of `masks` keeping a running union per
// depth. A subtree is skipped once its partial union is no smaller than the
// best leaf found so far, since unions only grow.
class UnionSearch {
 public:
  UnionSearch(const std::vector<PacketMask>& masks, Index k, Index width)
      : masks_(masks), k_(k), stack_(k + 1, PacketMask(width)) {}

  // Minimum union size over all k-subsets.
  Index minimum() {
    best_ = std::numeric_limits<Index>::max();
    stop_below_ = 0;
    descend(0, 0);
    return best_;
  }

  // True iff some k-subset has union size < threshold.
  bool exists_below(Index threshold) {
    best_ = threshold;
    stop_below_ = threshold;
    descend(0, 0);
    return best_ < threshold;
  }

 private:
  bool descend(Index depth, Index start) {
    if (depth == k_) {
      Index size = stack_[depth].count();
      if (size < best_) best_ = size;
      return stop_below_ > 0 && best_ < stop_below_;
    }
    for (Index i = start; i + (k_ - depth) <= masks_.size(); ++i) {
      stack_[depth + 1] = stack_[depth];
      stack_[depth + 1] |= masks_[i];
      if (stack_[depth + 1].count() >= best_) continue;
      if (descend(depth + 1, i + 1)) return true;
    }
    return false;
  }

  const std::vector<PacketMask>& masks_;
  Index k_;
  std::vector<PacketMask> stack_;
  Index best_ = 0;
  Index stop_below_ = 0;
};

void require_file_size(const FRCode& code, Index file_size) {
  if (file_size == 0) {
    throw Error(ErrorCode::InvalidArgument, "file size must be at least 1");
  }
  if (file_size > code.num_packets()) {
    throw Error(ErrorCode::FileTooLarge,
                "file size " + std::to_string(file_size) + " exceeds theta = " +
                    std::to_string(code.num_packets()));
  }
}

}  // namespace

Index max_file_size(const FRCode& code, Index k, const EnumerationGuard& guard) {
  const Index n = code.num_nodes();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::KOutOfRange,
                "k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  guard.check(n, binomial(n, k), "M(k)");
  auto masks = node_masks(code);
  return UnionSearch(masks, k, code.num_packets()).minimum();
}

std::vector<Index> file_size_table(const FRCode& code, const EnumerationGuard& guard) {
  std::vector<Index> table;
  table.reserve(code.num_nodes());
  for (Index k = 1; k <= code.num_nodes(); ++k) table.push_back(max_file_size(code, k, guard));
  return table;
}

Index reconstruction_degree(const FRCode& code, Index file_size, const EnumerationGuard& guard) {
  require_file_size(code, file_size);
  for (Index k = 1; k <= code.num_nodes(); ++k) {
    if (max_file_size(code, k, guard) >= file_size) return k;
  }
  // M(n) = theta >= file_size, so the loop always returns.
  return code.num_nodes();
}

RepairResult repair_degree(const FRCode& code, Index failed, const EnumerationGuard& guard) {
  const Index n = code.num_nodes();
  if (failed >= n) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + std::to_string(failed + 1) + " outside 1.." + std::to_string(n));
  }
  const IdSet& lost = code.node(failed);

  // Helper candidates and, for each, the bits of `lost` it can supply.
  std::vector<Index> candidates;
  std::vector<PacketMask> supplies;
  PacketMask reachable(lost.size());
  for (Index i = 0; i < n; ++i) {
    if (i == failed) continue;
    PacketMask mask(lost.size());
    for (Index pos = 0; pos < lost.size(); ++pos) {
      if (std::binary_search(code.node(i).begin(), code.node(i).end(), lost[pos])) mask.set(pos);
    }
    if (mask.any()) {
      candidates.push_back(i);
      reachable |= mask;
      supplies.push_back(std::move(mask));
    }
  }
  if (!reachable.all()) {
    Index pos = 0;
    while (reachable.test(pos)) ++pos;
    throw Error(ErrorCode::IrreparableNode,
                "packet P_" + std::to_string(lost[pos] + 1) + " of node U_" +
                    std::to_string(failed + 1) + " is stored nowhere else",
                lost[pos] + 1);
  }

  for (Index size = 1; size <= candidates.size(); ++size) {
    guard.check(candidates.size(), binomial(candidates.size(), size), "repair degree");
    RepairResult result;
    bool found = detail::for_each_combination(
        candidates.size(), size, [&](const std::vector<Index>& pick) {
          PacketMask covered(lost.size());
          for (Index c : pick) covered |= supplies[c];
          if (!covered.all()) return false;
          result.degree = size;
          for (Index c : pick) result.helpers.push_back(candidates[c]);
          return true;
        });
    if (found) return result;
  }
  // `reachable.all()` means the full candidate set covers.
  throw Error(ErrorCode::IrreparableNode, "unreachable");
}

Index max_repair_degree(const FRCode& code, const EnumerationGuard& guard) {
  Index d = 0;
  for (Index i = 0; i < code.num_nodes(); ++i) {
    d = std::max(d, repair_degree(code, i, guard).degree);
  }
  return d;
}

Index min_distance(const FRCode& code, Index file_size, const EnumerationGuard& guard) {
  require_file_size(code, file_size);
  const Index n = code.num_nodes();
  auto masks = node_masks(code);
  // Removing s nodes leaves n - s survivors; look for survivors holding
  // fewer than file_size packets, smallest s first.
  for (Index removed = 1; removed < n; ++removed) {
    guard.check(n, binomial(n, removed), "minimum distance");
    if (UnionSearch(masks, n - removed, code.num_packets()).exists_below(file_size)) {
      return removed;
    }
  }
  // With every node gone nothing survives, and file_size >= 1.
  return n;
}

namespace {

IdSet checked_id_set(const IdSet& ids, Index limit, const char* what) {
  IdSet sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Index id : sorted) {
    if (id >= limit) {
      throw Error(ErrorCode::IdOutOfRange,
                  std::string(what) + " id " + std::to_string(id + 1) + " exceeds " +
                      std::to_string(limit),
                  id + 1);
    }
  }
  return sorted;
}

}  // namespace

FRCode adapt(const FRCode& code, const AdaptationSpec& spec) {
  IdSet drop_nodes = checked_id_set(spec.removed_nodes, code.num_nodes(), "node");
  IdSet drop_packets = checked_id_set(spec.removed_packets, code.num_packets(), "packet");
  if (drop_nodes.size() == code.num_nodes()) {
    throw Error(ErrorCode::EmptyNodeAfterAdapt, "adaptation removes every node");
  }
  if (drop_packets.size() == code.num_packets()) {
    throw Error(ErrorCode::OrphanPacketAfterAdapt, "adaptation removes every packet");
  }

  constexpr Index kGone = std::numeric_limits<Index>::max();
  std::vector<Index> packet_map(code.num_packets(), kGone);
  {
    Index next = 0;
    auto it = drop_packets.begin();
    for (Index p = 0; p < code.num_packets(); ++p) {
      if (it != drop_packets.end() && *it == p) {
        ++it;
      } else {
        packet_map[p] = next++;
      }
    }
  }

  std::vector<IdSet> nodes;
  std::vector<bool> seen(code.num_packets() - drop_packets.size(), false);
  for (Index i = 0; i < code.num_nodes(); ++i) {
    if (std::binary_search(drop_nodes.begin(), drop_nodes.end(), i)) continue;
    IdSet node;
    for (Index p : code.node(i)) {
      if (packet_map[p] != kGone) {
        node.push_back(packet_map[p]);
        seen[packet_map[p]] = true;
      }
    }
    if (node.empty()) {
      throw Error(ErrorCode::EmptyNodeAfterAdapt,
                  "node U_" + std::to_string(i + 1) + " would be left empty", i + 1);
    }
    nodes.push_back(std::move(node));
  }
  for (Index p = 0; p < code.num_packets(); ++p) {
    if (packet_map[p] != kGone && !seen[packet_map[p]]) {
      throw Error(ErrorCode::OrphanPacketAfterAdapt,
                  "packet P_" + std::to_string(p + 1) + " would be stored on no node", p + 1);
    }
  }
  return validate_fr(std::move(nodes), code.num_packets() - drop_packets.size());
}

std::optional<AdaptationSpec> is_adaptation_of(const FRCode& smaller, const FRCode& larger,
                                               const EnumerationGuard& guard) {
  if (smaller.num_nodes() > larger.num_nodes() ||
      smaller.num_packets() > larger.num_packets()) {
    return std::nullopt;
  }
  const Index drop_n = larger.num_nodes() - smaller.num_nodes();
  const Index drop_p = larger.num_packets() - smaller.num_packets();
  const std::uint64_t node_choices = binomial(larger.num_nodes(), drop_n);
  const std::uint64_t packet_choices = binomial(larger.num_packets(), drop_p);
  const std::uint64_t total =
      packet_choices != 0 && node_choices > std::numeric_limits<std::uint64_t>::max() / packet_choices
          ? std::numeric_limits<std::uint64_t>::max()
          : node_choices * packet_choices;
  // Only the (T, S) pair count is limited here, not the node count.
  guard.check(0, total, "adaptation search");

  auto locations = larger.packet_locations();
  std::optional<AdaptationSpec> witness;
  detail::for_each_combination(larger.num_nodes(), drop_n, [&](const std::vector<Index>& t) {
    // Packets whose every holder is removed must be stripped too.
    IdSet forced;
    IdSet optional;
    for (Index p = 0; p < larger.num_packets(); ++p) {
      bool survives = std::any_of(locations[p].begin(), locations[p].end(), [&](Index holder) {
        return !std::binary_search(t.begin(), t.end(), holder);
      });
      (survives ? optional : forced).push_back(p);
    }
    if (forced.size() > drop_p) return false;
    return detail::for_each_combination(
        optional.size(), drop_p - forced.size(), [&](const std::vector<Index>& pick) {
          AdaptationSpec spec{IdSet(t.begin(), t.end()), forced};
          for (Index c : pick) spec.removed_packets.push_back(optional[c]);
          std::sort(spec.removed_packets.begin(), spec.removed_packets.end());
          try {
            if (adapt(larger, spec) == smaller) {
              witness = std::move(spec);
              return true;
            }
          } catch (const Error&) {
            // inadmissible spec, keep searching
          }
          return false;
        });
  });
  return witness;
}

AnalysisReport analyze(const FRCode& code, Index file_size, const EnumerationGuard& guard) {
  AnalysisReport report;
  report.file_size_table = file_size_table(code, guard);
  report.file_size = file_size;
  report.reconstruction_degree = reconstruction_degree(code, file_size, guard);
  report.min_distance = min_distance(code, file_size, guard);

  bool all_repairable = true;
  Index d = 0;
  for (Index i = 0; i < code.num_nodes(); ++i) {
    try {
      auto repair = repair_degree(code, i, guard);
      d = std::max(d, repair.degree);
      report.repairs.emplace_back(std::move(repair));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrreparableNode) throw;
      report.repairs.emplace_back(std::nullopt);
      all_repairable = false;
    }
  }
  if (all_repairable) report.max_repair_degree = d;
  return report;
}

}  // namespace frhyper
