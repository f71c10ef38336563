#include "frhyper/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "frhyper/error.hpp"

namespace frhyper {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::OrphanPacket: return "OrphanPacket";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::DuplicatePacketInNode: return "DuplicatePacketInNode";
    case ErrorCode::EmptyEdge: return "EmptyEdge";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::FileTooLarge: return "FileTooLarge";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::IrreparableNode: return "IrreparableNode";
    case ErrorCode::EmptyNodeAfterAdapt: return "EmptyNodeAfterAdapt";
    case ErrorCode::OrphanPacketAfterAdapt: return "OrphanPacketAfterAdapt";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::Unrealizable: return "Unrealizable";
    case ErrorCode::OddTheta: return "OddTheta";
    case ErrorCode::InvalidPairing: return "InvalidPairing";
    case ErrorCode::InvalidEdge: return "InvalidEdge";
    case ErrorCode::LinearityViolation: return "LinearityViolation";
    case ErrorCode::NotASuperset: return "NotASuperset";
    case ErrorCode::TargetInfeasible: return "TargetInfeasible";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

// Sorts `ids` and checks range/duplicates. `owner` is the 0-based index of the
// node or edge, used for messages.
void canonicalize(IdSet& ids, Index limit, Index owner, const char* owner_name,
                  const char* id_name) {
  std::sort(ids.begin(), ids.end());
  for (Index pos = 0; pos < ids.size(); ++pos) {
    if (ids[pos] >= limit) {
      throw Error(ErrorCode::IdOutOfRange,
                  std::string(id_name) + " id " + std::to_string(ids[pos] + 1) + " in " +
                      owner_name + " " + std::to_string(owner + 1) + " exceeds " +
                      std::to_string(limit),
                  ids[pos] + 1);
    }
    if (pos > 0 && ids[pos] == ids[pos - 1]) {
      throw Error(ErrorCode::DuplicatePacketInNode,
                  std::string(id_name) + " id " + std::to_string(ids[pos] + 1) +
                      " repeated in " + owner_name + " " + std::to_string(owner + 1),
                  owner + 1);
    }
  }
}

}  // namespace

FRCode validate_fr(std::vector<IdSet> node_contents, Index theta) {
  if (node_contents.empty()) {
    throw Error(ErrorCode::InvalidArgument, "an FR code needs at least one node");
  }
  if (theta == 0) {
    throw Error(ErrorCode::InvalidArgument, "an FR code needs at least one packet");
  }
  std::vector<bool> used(theta, false);
  for (Index i = 0; i < node_contents.size(); ++i) {
    auto& node = node_contents[i];
    if (node.empty()) {
      throw Error(ErrorCode::EmptyNode, "node U_" + std::to_string(i + 1) + " stores no packet",
                  i + 1);
    }
    canonicalize(node, theta, i, "node", "packet");
    for (Index p : node) used[p] = true;
  }
  for (Index j = 0; j < theta; ++j) {
    if (!used[j]) {
      throw Error(ErrorCode::OrphanPacket,
                  "packet P_" + std::to_string(j + 1) + " is stored on no node", j + 1);
    }
  }
  return FRCode(std::move(node_contents), theta);
}

FRCode fr_from_one_based(const std::vector<std::vector<Index>>& node_contents, Index theta) {
  std::vector<IdSet> nodes;
  nodes.reserve(node_contents.size());
  for (Index i = 0; i < node_contents.size(); ++i) {
    IdSet node;
    node.reserve(node_contents[i].size());
    for (Index id : node_contents[i]) {
      if (id == 0) {
        throw Error(ErrorCode::IdOutOfRange,
                    "packet ids are 1-based; got 0 in node U_" + std::to_string(i + 1), 0);
      }
      node.push_back(id - 1);
    }
    nodes.push_back(std::move(node));
  }
  return validate_fr(std::move(nodes), theta);
}

std::vector<Index> FRCode::storage_vector() const {
  std::vector<Index> alpha;
  alpha.reserve(nodes_.size());
  for (const auto& node : nodes_) alpha.push_back(node.size());
  return alpha;
}

std::vector<Index> FRCode::replication_vector() const {
  std::vector<Index> rho(theta_, 0);
  for (const auto& node : nodes_) {
    for (Index p : node) ++rho[p];
  }
  return rho;
}

Index FRCode::max_storage() const {
  auto alpha = storage_vector();
  return *std::max_element(alpha.begin(), alpha.end());
}

Index FRCode::max_replication() const {
  auto rho = replication_vector();
  return *std::max_element(rho.begin(), rho.end());
}

std::vector<IdSet> FRCode::packet_locations() const {
  std::vector<IdSet> where(theta_);
  for (Index i = 0; i < nodes_.size(); ++i) {
    for (Index p : nodes_[i]) where[p].push_back(i);
  }
  return where;
}

Hypergraph::Hypergraph(Index num_vertices, std::vector<IdSet> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  for (Index j = 0; j < edges_.size(); ++j) {
    canonicalize(edges_[j], num_vertices_, j, "edge", "vertex");
  }
}

std::vector<Index> Hypergraph::degrees() const {
  std::vector<Index> deg(num_vertices_, 0);
  for (const auto& e : edges_) {
    for (Index v : e) ++deg[v];
  }
  return deg;
}

std::vector<Index> Hypergraph::edge_sizes() const {
  std::vector<Index> sizes;
  sizes.reserve(edges_.size());
  for (const auto& e : edges_) sizes.push_back(e.size());
  return sizes;
}

IdSet Hypergraph::incident_edges(Index v) const {
  IdSet out;
  for (Index j = 0; j < edges_.size(); ++j) {
    if (std::binary_search(edges_[j].begin(), edges_[j].end(), v)) out.push_back(j);
  }
  return out;
}

namespace {

// Shared transpose of an incidence list: row r lists columns; result lists,
// per column, the rows containing it.
std::vector<IdSet> transpose(const std::vector<IdSet>& rows, Index num_columns) {
  std::vector<IdSet> cols(num_columns);
  for (Index r = 0; r < rows.size(); ++r) {
    for (Index c : rows[r]) cols[c].push_back(r);
  }
  return cols;
}

void require_fr_equivalent(const Hypergraph& h) {
  for (Index j = 0; j < h.num_edges(); ++j) {
    if (h.edge(j).empty()) {
      throw Error(ErrorCode::EmptyEdge, "edge E_" + std::to_string(j + 1) + " is empty", j + 1);
    }
  }
  auto deg = h.degrees();
  for (Index v = 0; v < deg.size(); ++v) {
    if (deg[v] == 0) {
      throw Error(ErrorCode::IsolatedVertex,
                  "vertex v_" + std::to_string(v + 1) + " lies in no edge", v + 1);
    }
  }
}

}  // namespace

Hypergraph fr_to_hypergraph(const FRCode& code) {
  return Hypergraph(code.num_nodes(), transpose(code.nodes(), code.num_packets()));
}

FRCode hypergraph_to_fr(const Hypergraph& h) {
  if (h.num_vertices() == 0) {
    throw Error(ErrorCode::InvalidArgument, "hypergraph has no vertices");
  }
  if (h.num_edges() == 0) {
    throw Error(ErrorCode::InvalidArgument, "hypergraph has no edges");
  }
  require_fr_equivalent(h);
  return validate_fr(transpose(h.edges(), h.num_vertices()), h.num_edges());
}

std::pair<Hypergraph, DualMap> dual(const Hypergraph& h) {
  require_fr_equivalent(h);
  DualMap map;
  map.forward.resize(h.num_edges());
  std::iota(map.forward.begin(), map.forward.end(), Index{0});
  return {Hypergraph(h.num_edges(), transpose(h.edges(), h.num_vertices())), std::move(map)};
}

FRCode dual(const FRCode& code) {
  return validate_fr(code.packet_locations(), code.num_nodes());
}

bool is_subset(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Index intersection_size(const IdSet& a, const IdSet& b) {
  Index count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(Index n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Index a, Index b) { parent[find(a)] = find(b); }
  std::vector<Index> parent;
};

}  // namespace

ClassificationFlags classify(const Hypergraph& h) {
  ClassificationFlags flags;

  auto sizes = h.edge_sizes();
  if (!sizes.empty() && std::all_of(sizes.begin(), sizes.end(),
                                    [&](Index s) { return s == sizes.front(); })) {
    flags.uniform_size = sizes.front();
  }
  auto deg = h.degrees();
  if (!deg.empty() &&
      std::all_of(deg.begin(), deg.end(), [&](Index d) { return d == deg.front(); })) {
    flags.regular_degree = deg.front();
  }

  flags.linear = true;
  flags.intersecting = true;
  const auto& edges = h.edges();
  for (Index a = 0; a < edges.size(); ++a) {
    for (Index b = a + 1; b < edges.size(); ++b) {
      Index common = intersection_size(edges[a], edges[b]);
      if (common > 1) flags.linear = false;
      if (common == 0) flags.intersecting = false;
    }
  }

  // u ~ w iff some edge contains both.
  DisjointSets sets(h.num_vertices());
  for (const auto& e : edges) {
    for (Index pos = 1; pos < e.size(); ++pos) sets.unite(e[0], e[pos]);
  }
  Index components = 0;
  for (Index v = 0; v < h.num_vertices(); ++v) {
    if (sets.find(v) == v) ++components;
  }
  flags.connected = components == 1;
  return flags;
}

bool is_universally_good(const FRCode& code) {
  const auto& nodes = code.nodes();
  for (Index a = 0; a < nodes.size(); ++a) {
    for (Index b = a + 1; b < nodes.size(); ++b) {
      if (intersection_size(nodes[a], nodes[b]) > 1) return false;
    }
  }
  return true;
}

}  // namespace frhyper
