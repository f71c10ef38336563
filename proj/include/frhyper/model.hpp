#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace frhyper {

using Index = std::size_t;

// Sorted, duplicate-free list of 0-based ids.
using IdSet = std::vector<Index>;

/// Fractional repetition code: n storage nodes, each holding a set of the
/// theta distinct packets. Ids are 0-based internally; every external format
/// and error message uses 1-based ids (node i is U_{i+1}, packet j is P_{j+1}).
///
/// Instances are only produced by validate_fr (or operations that call it),
/// so every FRCode satisfies: n >= 1, theta >= 1, no empty node, every packet
/// stored somewhere.
class FRCode {
 public:
  Index num_nodes() const noexcept { return nodes_.size(); }
  Index num_packets() const noexcept { return theta_; }

  const std::vector<IdSet>& nodes() const noexcept { return nodes_; }
  const IdSet& node(Index i) const { return nodes_.at(i); }

  /// alpha_i = |U_i|.
  std::vector<Index> storage_vector() const;
  /// rho_j = number of nodes holding P_j.
  std::vector<Index> replication_vector() const;
  Index max_storage() const;
  Index max_replication() const;

  /// F_j: the nodes holding packet j, ascending.
  std::vector<IdSet> packet_locations() const;

  friend bool operator==(const FRCode&, const FRCode&) = default;

 private:
  FRCode(std::vector<IdSet> nodes, Index theta) : nodes_(std::move(nodes)), theta_(theta) {}
  friend FRCode validate_fr(std::vector<IdSet> node_contents, Index theta);

  std::vector<IdSet> nodes_;
  Index theta_ = 0;
};

/// Validates raw node contents (0-based packet ids, any order) and returns the
/// canonical code with every node sorted ascending. Node order is kept.
FRCode validate_fr(std::vector<IdSet> node_contents, Index theta);

/// Same as validate_fr, but packet ids are 1-based as in P_1..P_theta.
FRCode fr_from_one_based(const std::vector<std::vector<Index>>& node_contents, Index theta);

/// A raw hypergraph. Edges may be empty and vertices may be isolated; only id
/// range and per-edge duplicates are rejected. Edge order is significant.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(Index num_vertices, std::vector<IdSet> edges);

  Index num_vertices() const noexcept { return num_vertices_; }
  Index num_edges() const noexcept { return edges_.size(); }
  const std::vector<IdSet>& edges() const noexcept { return edges_; }
  const IdSet& edge(Index j) const { return edges_.at(j); }

  /// |E(v)| for every vertex.
  std::vector<Index> degrees() const;
  std::vector<Index> edge_sizes() const;
  /// E(v): indices of the edges containing v, ascending.
  IdSet incident_edges(Index v) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  Index num_vertices_ = 0;
  std::vector<IdSet> edges_;
};

/// Bijection from edge index to dual-vertex index. The dual keeps the edge
/// order, so this is always the identity; it is returned explicitly so that
/// callers never have to assume it.
struct DualMap {
  std::vector<Index> forward;
};

struct ClassificationFlags {
  std::optional<Index> uniform_size;    // set iff every edge has this size
  std::optional<Index> regular_degree;  // set iff every vertex has this degree
  bool linear = false;
  bool intersecting = false;
  bool connected = false;

  bool uniform() const noexcept { return uniform_size.has_value(); }
  bool regular() const noexcept { return regular_degree.has_value(); }
  friend bool operator==(const ClassificationFlags&, const ClassificationFlags&) = default;
};

/// Node i becomes vertex i, packet j becomes edge j.
Hypergraph fr_to_hypergraph(const FRCode& code);

/// Inverse of fr_to_hypergraph. Throws EmptyEdge / IsolatedVertex when the
/// hypergraph has no FR counterpart.
FRCode hypergraph_to_fr(const Hypergraph& h);

/// Incidence transpose: dual edge j collects the edges of h containing v_j.
std::pair<Hypergraph, DualMap> dual(const Hypergraph& h);

/// The dual FR code: theta nodes and n packets; node j holds {i : P_j in U_i}.
FRCode dual(const FRCode& code);

ClassificationFlags classify(const Hypergraph& h);

/// |U_i intersect U_j| <= 1 for every pair of nodes.
bool is_universally_good(const FRCode& code);

/// Exact subset test on sorted id lists.
bool is_subset(const IdSet& a, const IdSet& b);
Index intersection_size(const IdSet& a, const IdSet& b);

}  // namespace frhyper
