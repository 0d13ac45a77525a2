// Directed multigraph core: vertices and named parallel edges with explicit
// source/range maps, plus the structural queries the rest of the library is
// built on (adjacency matrices, SCCs, simple cycles, isomorphism testing).
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace meteor {

using VertexId = int;
using EdgeId = int;
using BigInt = boost::multiprecision::cpp_int;

/// A single directed edge; parallel edges are distinct by id.
struct Edge {
  EdgeId id = 0;
  VertexId src = 0;  ///< source vertex s(e)
  VertexId dst = 0;  ///< range vertex r(e)

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.id == b.id && a.src == b.src && a.dst == b.dst;
  }
};

/// Thrown when graph data (or data derived from it) is structurally invalid.
class graph_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable directed multigraph. Vertices and edges are identified by
/// integer ids; optional string labels carry human-readable names through
/// constructions. Out- and in-edge lists are indexed at construction.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<VertexId> vertices, std::vector<Edge> edges,
        std::map<VertexId, std::string> vertex_labels = {},
        std::map<EdgeId, std::string> edge_labels = {});

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const { return vertex_index_.count(v) != 0; }
  bool has_edge(EdgeId e) const { return edge_index_.count(e) != 0; }
  const Edge& edge(EdgeId e) const;

  /// s^{-1}(v): ids of edges emitted by v, ascending.
  const std::vector<EdgeId>& out_edges(VertexId v) const;
  /// r^{-1}(v): ids of edges received by v, ascending.
  const std::vector<EdgeId>& in_edges(VertexId v) const;

  int out_degree(VertexId v) const { return static_cast<int>(out_edges(v).size()); }
  int in_degree(VertexId v) const { return static_cast<int>(in_edges(v).size()); }

  bool is_sink(VertexId v) const { return out_degree(v) == 0; }
  bool is_source(VertexId v) const { return in_degree(v) == 0; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Label of a vertex; falls back to "v<id>".
  std::string vertex_label(VertexId v) const;
  /// Label of an edge; falls back to "e<id>".
  std::string edge_label(EdgeId e) const;
  const std::map<VertexId, std::string>& vertex_labels() const { return vertex_labels_; }
  const std::map<EdgeId, std::string>& edge_labels() const { return edge_labels_; }

  /// Position of v in the ascending vertex list (useful for matrix indexing).
  int vertex_position(VertexId v) const;

  VertexId max_vertex_id() const;
  EdgeId max_edge_id() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> vertices_;  // ascending
  std::vector<Edge> edges_;         // ascending by id
  std::map<VertexId, std::string> vertex_labels_;
  std::map<EdgeId, std::string> edge_labels_;
  std::map<VertexId, int> vertex_index_;
  std::map<EdgeId, int> edge_index_;
  std::map<VertexId, std::vector<EdgeId>> out_;
  std::map<VertexId, std::vector<EdgeId>> in_;
};

/// Dense matrix of nonnegative arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, BigInt fill = 0);
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& at(int r, int c);
  const BigInt& at(int r, int c) const;

  bool is_square() const { return rows_ == cols_; }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// a^k for square a, k >= 0 (a^0 = identity).
IntMatrix matrix_power(const IntMatrix& a, int k);

/// A simple cycle as a closed edge path. `vertex_order[i]` is the source of
/// `edges[i]`; the rotation is canonical (minimal vertex id first).
struct Cycle {
  std::vector<EdgeId> edges;
  std::vector<VertexId> vertex_order;
  int length() const { return static_cast<int>(edges.size()); }
};

/// Strongly connected components plus the induced condensation.
struct SccDecomposition {
  std::vector<std::vector<VertexId>> components;   ///< each sorted ascending; listed in topological order
  std::map<VertexId, int> component_of;            ///< vertex -> index into components
  std::set<std::pair<int, int>> condensation_edges;  ///< (from component, to component), no self loops
};

/// Adjacency matrix: entry (i, j) counts edges from the i-th to the j-th
/// vertex in ascending id order.
IntMatrix adjacency_matrix(const Graph& g);

/// Graph with vertices 0..n-1 realizing a square nonnegative matrix; edge
/// ids run sequentially through the entries in row-major order.
Graph graph_from_matrix(const IntMatrix& m);

/// True when the graph has no sinks and no sources.
bool is_essential(const Graph& g);

SccDecomposition scc_decomposition(const Graph& g);

/// All simple cycles (no repeated vertices; parallel edges give distinct
/// cycles), each in canonical rotation.
std::vector<Cycle> simple_cycles(const Graph& g);

/// Vertex bijection g -> h preserving edge multiplicities, if one exists.
std::optional<std::map<VertexId, VertexId>> is_isomorphic(const Graph& g, const Graph& h);

/// True when `map` is a vertex bijection g -> h preserving all edge
/// multiplicities.
bool verify_isomorphism(const Graph& g, const Graph& h,
                        const std::map<VertexId, VertexId>& map);

/// Extends a vertex bijection g -> h to an edge bijection (parallel edges
/// paired ascending by id). Throws graph_error if the map is not an
/// isomorphism.
std::map<EdgeId, EdgeId> edge_bijection(const Graph& g, const Graph& h,
                                        const std::map<VertexId, VertexId>& vertex_map);

/// Same vertices and edge ids with source and range swapped.
Graph transpose(const Graph& g);

/// Vertices reachable from `starts` by directed paths (includes `starts`).
std::set<VertexId> reachable_from(const Graph& g, const std::set<VertexId>& starts);

/// True when the underlying undirected graph is connected (empty graph counts
/// as connected).
bool is_weakly_connected(const Graph& g);

}  // namespace meteor
