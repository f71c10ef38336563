#include "frhyper/construct.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "combinations.hpp"
#include "frhyper/error.hpp"

namespace frhyper {

std::string_view to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::Initial: return "initial";
    case StepKind::AddHyperedge: return "add-hyperedge";
    case StepKind::AddVertexWithEdge: return "add-vertex-with-edge";
    case StepKind::ExtendHyperedge: return "extend-hyperedge";
  }
  return "unknown";
}

namespace {

std::string edge_name(Index j) { return "E_" + std::to_string(j + 1); }

}  // namespace

ConstructionState::ConstructionState(Index rho_min, StrategySpec strategy)
    : rho_min_(rho_min), strategy_(strategy) {
  if (rho_min < 2) {
    throw Error(ErrorCode::InvalidArgument, "rho_min must be at least 2");
  }
  IdSet first(rho_min);
  std::iota(first.begin(), first.end(), Index{0});
  current_ = Hypergraph(rho_min, {std::move(first)});
  record(StepKind::Initial, 0, false);
}

ConstructionState::ConstructionState(Hypergraph initial, Index rho_min, StrategySpec strategy)
    : current_(std::move(initial)), rho_min_(rho_min), strategy_(strategy) {
  if (rho_min < 2) {
    throw Error(ErrorCode::InvalidArgument, "rho_min must be at least 2");
  }
  // Only linearity is required of a starting point; rho_min applies to edges
  // added later.
  for (Index j = 0; j < current_.num_edges(); ++j) {
    if (auto other = conflict(current_.edge(j), j); other && *other > j) {
      throw Error(ErrorCode::LinearityViolation,
                  "initial hypergraph is not linear: " + edge_name(j) + " and " +
                      edge_name(*other) + " share two vertices",
                  *other + 1);
    }
  }
  record(StepKind::Initial, 0, false);
}

IdSet ConstructionState::checked_vertices(IdSet ids, const char* what) const {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorCode::InvalidEdge, std::string(what) + " repeats a vertex");
  }
  for (Index v : ids) {
    if (v >= current_.num_vertices()) {
      throw Error(ErrorCode::InvalidEdge,
                  std::string(what) + " uses unknown vertex v_" + std::to_string(v + 1), v + 1);
    }
  }
  return ids;
}

std::optional<Index> ConstructionState::conflict(const IdSet& ids, std::optional<Index> skip) const {
  for (Index j = 0; j < current_.num_edges(); ++j) {
    if (skip && *skip == j) continue;
    if (intersection_size(ids, current_.edge(j)) > 1) return j;
  }
  return std::nullopt;
}

void ConstructionState::record(StepKind kind, Index edge, bool relaxed) {
  relaxed_ = relaxed_ || relaxed;
  history_.push_back({history_.size() + 1, kind, edge, relaxed, current_});
}

void ConstructionState::add_hyperedge(IdSet edge) {
  edge = checked_vertices(std::move(edge), "edge");
  if (edge.size() < rho_min_) {
    throw Error(ErrorCode::InvalidEdge, "edge has " + std::to_string(edge.size()) +
                                            " vertices, rho_min is " + std::to_string(rho_min_));
  }
  if (auto j = conflict(edge)) {
    throw Error(ErrorCode::LinearityViolation,
                "new edge shares two or more vertices with " + edge_name(*j), *j + 1);
  }
  auto edges = current_.edges();
  edges.push_back(std::move(edge));
  current_ = Hypergraph(current_.num_vertices(), std::move(edges));
  record(StepKind::AddHyperedge, current_.num_edges() - 1, false);
}

void ConstructionState::push_vertex_with_edge(IdSet base, bool relaxed) {
  const Index v = current_.num_vertices();
  base.push_back(v);
  auto edges = current_.edges();
  edges.push_back(std::move(base));
  current_ = Hypergraph(v + 1, std::move(edges));
  record(StepKind::AddVertexWithEdge, current_.num_edges() - 1, relaxed);
}

void ConstructionState::add_vertex_with_edge(IdSet base) {
  base = checked_vertices(std::move(base), "base");
  if (base.size() + 1 < rho_min_) {
    throw Error(ErrorCode::InvalidEdge, "base has " + std::to_string(base.size()) +
                                            " vertices, need at least rho_min - 1 = " +
                                            std::to_string(rho_min_ - 1));
  }
  if (auto j = conflict(base)) {
    throw Error(ErrorCode::LinearityViolation,
                "base shares two or more vertices with " + edge_name(*j), *j + 1);
  }
  push_vertex_with_edge(std::move(base), false);
}

void ConstructionState::extend_hyperedge(Index target, IdSet superset) {
  if (target >= current_.num_edges()) {
    throw Error(ErrorCode::InvalidEdge, "no edge " + edge_name(target), target + 1);
  }
  superset = checked_vertices(std::move(superset), "superset");
  const IdSet& old = current_.edge(target);
  if (superset.size() <= old.size() || !is_subset(old, superset)) {
    throw Error(ErrorCode::NotASuperset,
                "replacement is not a strict superset of " + edge_name(target), target + 1);
  }
  if (auto j = conflict(superset, target)) {
    throw Error(ErrorCode::LinearityViolation,
                "extended edge shares two or more vertices with " + edge_name(*j), *j + 1);
  }
  auto edges = current_.edges();
  edges[target] = std::move(superset);
  current_ = Hypergraph(current_.num_vertices(), std::move(edges));
  record(StepKind::ExtendHyperedge, target, false);
}

namespace {

template <class Rng>
Index uniform_index(Rng& rng, Index size) {
  return std::uniform_int_distribution<Index>(0, size - 1)(rng);
}

}  // namespace

ConstructionState grow_linear(Index n, Index rho_min, StrategySpec strategy,
                             std::optional<Index> theta_target) {
  if (rho_min < 2 || n < rho_min) {
    throw Error(ErrorCode::InvalidArgument, "need n >= rho_min >= 2");
  }
  const Index base_edges = n - rho_min + 1;
  if (theta_target && *theta_target < base_edges) {
    throw Error(ErrorCode::TargetInfeasible,
                "growth alone already creates " + std::to_string(base_edges) + " edges",
                base_edges);
  }

  ConstructionState state(rho_min, strategy);
  std::mt19937_64 rng(strategy.seed);
  const bool greedy = strategy.kind == Strategy::DeterministicGreedy;

  auto edges_left_to_grow = [&] { return n - state.current().num_vertices(); };

  // One extra edge of size rho_min on the current vertices; false if none fits.
  auto add_one_edge = [&]() -> bool {
    const Index nv = state.current().num_vertices();
    std::vector<IdSet> fits;
    detail::for_each_combination(nv, rho_min, [&](const std::vector<Index>& cand) {
      if (state.conflict(cand)) return false;
      fits.push_back(cand);
      return greedy;
    });
    if (fits.empty()) return false;
    state.add_hyperedge(fits[greedy ? 0 : uniform_index(rng, fits.size())]);
    return true;
  };

  auto densify = [&] {
    if (!theta_target) return;
    while (state.current().num_edges() + edges_left_to_grow() < *theta_target) {
      if (!add_one_edge()) break;
    }
  };

  densify();
  while (state.current().num_vertices() < n) {
    // Vertices by (degree, index); bases are enumerated over this order.
    const auto deg = state.current().degrees();
    std::vector<Index> order(deg.size());
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return deg[a] < deg[b]; });

    std::vector<IdSet> fits;
    detail::for_each_combination(order.size(), rho_min - 1, [&](const std::vector<Index>& pick) {
      IdSet base;
      for (Index p : pick) base.push_back(order[p]);
      std::sort(base.begin(), base.end());
      if (state.conflict(base)) return false;
      fits.push_back(std::move(base));
      return greedy;
    });
    if (fits.empty()) {
      state.push_vertex_with_edge({order.front()}, rho_min > 2);
    } else {
      state.push_vertex_with_edge(fits[greedy ? 0 : uniform_index(rng, fits.size())], false);
    }
    densify();
  }

  if (theta_target && state.current().num_edges() != *theta_target) {
    const Index best = state.current().num_edges();
    throw Error(ErrorCode::TargetInfeasible,
                "could reach only " + std::to_string(best) + " of " +
                    std::to_string(*theta_target) + " edges without breaking linearity",
                best);
  }
  return state;
}

}  // namespace frhyper
