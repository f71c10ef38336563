#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "frhyper/model.hpp"

namespace frhyper {

enum class Strategy { DeterministicGreedy, SeededRandom };

struct StrategySpec {
  Strategy kind = Strategy::DeterministicGreedy;
  std::uint64_t seed = 0;

  static StrategySpec greedy() { return {}; }
  static StrategySpec random(std::uint64_t seed) { return {Strategy::SeededRandom, seed}; }
};

enum class StepKind {
  Initial,
  AddHyperedge,       // new packet on existing nodes
  AddVertexWithEdge,  // new node together with a new packet
  ExtendHyperedge,    // higher replication for an existing packet
};

std::string_view to_string(StepKind kind) noexcept;

struct HistoryEntry {
  Index step = 0;  // 1-based
  StepKind kind = StepKind::Initial;
  Index edge = 0;        // 0-based index of the added or replaced edge
  bool relaxed = false;  // edge smaller than rho_min (fallback)
  Hypergraph snapshot;   // hypergraph after the step
};

/// A linear hypergraph grown one accepted edit at a time. Every edit checks
/// the pairwise intersection condition first and leaves the state untouched
/// when it throws.
class ConstructionState {
 public:
  /// Starts from V = {v_1..v_rho_min}, E_1 = V.
  explicit ConstructionState(Index rho_min, StrategySpec strategy = {});

  /// Starts from an existing linear hypergraph. rho_min only constrains the
  /// edges added afterwards.
  ConstructionState(Hypergraph initial, Index rho_min, StrategySpec strategy = {});

  const Hypergraph& current() const noexcept { return current_; }
  Index rho_min() const noexcept { return rho_min_; }
  const StrategySpec& strategy() const noexcept { return strategy_; }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }
  /// True if some step had to emit an edge smaller than rho_min.
  bool relaxed() const noexcept { return relaxed_; }

  /// Appends `edge` (vertex ids, |edge| >= rho_min) if it meets every
  /// existing edge in at most one vertex. Throws LinearityViolation otherwise.
  void add_hyperedge(IdSet edge);

  /// Appends a new vertex v and the edge base + {v}, if base meets every
  /// existing edge in at most one vertex. |base| >= max(1, rho_min - 1).
  void add_vertex_with_edge(IdSet base);

  /// Replaces edge `target` by a strict superset of it, if the superset meets
  /// every other edge in at most one vertex.
  void extend_hyperedge(Index target, IdSet superset);

 private:
  friend ConstructionState grow_linear(Index, Index, StrategySpec, std::optional<Index>);

  IdSet checked_vertices(IdSet ids, const char* what) const;
  // Index of the first edge (other than `skip`) meeting `ids` in >= 2 vertices.
  std::optional<Index> conflict(const IdSet& ids, std::optional<Index> skip = std::nullopt) const;
  void record(StepKind kind, Index edge, bool relaxed);
  void push_vertex_with_edge(IdSet base, bool relaxed);

  Hypergraph current_;
  Index rho_min_ = 2;
  StrategySpec strategy_;
  std::vector<HistoryEntry> history_;
  bool relaxed_ = false;
};

/// Grows a linear hypergraph on n vertices by repeated vertex-with-edge
/// steps, starting from one edge of size rho_min. With theta_target, extra
/// edges of size rho_min are added as soon as they fit, until the final edge
/// count equals theta_target. Throws TargetInfeasible (index = best edge
/// count reached) if that count cannot be reached.
ConstructionState grow_linear(Index n, Index rho_min, StrategySpec strategy = {},
                             std::optional<Index> theta_target = std::nullopt);

}  // namespace frhyper
