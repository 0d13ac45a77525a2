// talented.hpp
//
// The graded refinement of the graph monoid: generators are vertices tagged
// with an integer level, and a regular vertex at level i rewrites to the
// ranges of its outgoing edges at level i + 1.  The integers act by shifting
// levels.  A finite window of levels is materialised as an ordinary layered
// graph (the covering graph), which lets the plain monoid machinery run
// level-aware searches.  Also home to the order-theoretic vertex-set
// operators (leaf sets, hereditary and saturated sets) and minimal periodic
// orbits.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meteor/graph.hpp"
#include "meteor/monoid.hpp"

namespace meteor {

/// A level-graded element: finitely supported map from (vertex id, level) to
/// positive multiplicities.  The empty map is zero.
using TalentedElement = std::map<std::pair<VertexId, int>, long long>;

/// A set of vertices closed under the leaf-set operator (see leaf_set).
using LeafSet = std::set<VertexId>;

/// A finite stack of level layers of a graph, materialised as one graph.
/// Layer i holds a copy (v, i) of every vertex v; every edge e gives one
/// copy (e, i) from (s(e), i) to (r(e), i+1) for each i with both layers in
/// the window.  Vertex and edge labels carry the layer as "name@i".
struct CoveringGraph {
    Graph graph;       ///< the layered graph
    int lo = 0;        ///< lowest layer (inclusive)
    int hi = 0;        ///< highest layer (inclusive)
    int base_vertex_count = 0;
    int base_edge_count = 0;
    std::vector<VertexId> base_vertices;  ///< ascending base vertex ids
    std::vector<EdgeId> base_edges;       ///< ascending base edge ids

    /// Id of the copy of base vertex v in layer i.  Throws graph_error if v
    /// is not a base vertex or i lies outside the window.
    VertexId vertex_at(VertexId v, int layer) const;

    /// Base vertex and layer of a covering-graph vertex id.
    std::pair<VertexId, int> base_of(VertexId covering_vertex) const;
};

/// Builds the covering graph of g over the inclusive layer window [lo, hi].
/// Throws graph_error if lo > hi.
CoveringGraph covering_graph(const Graph& g, int lo, int hi);

/// Replaces one occurrence of v at level i in x by the ranges of v's
/// outgoing edges at level i + 1.  Throws graph_error if (v, i) has no
/// occurrence or v is a sink.
TalentedElement talented_flow_step(const Graph& g, const TalentedElement& x,
                                   VertexId v, int level);

/// The level action: every (v, i) in x becomes (v, i + n).
TalentedElement shift(const TalentedElement& x, int n);

/// Parses a literal like "2*v(0) + w(-3)" against the graph's vertex
/// labels; every term must carry a parenthesised integer level.  "0"
/// denotes zero.  Throws graph_error on malformed syntax or unknown labels.
TalentedElement parse_talented_element(const Graph& g, const std::string& text);

/// Renders an element in the same literal syntax, terms ordered by
/// (vertex id, level); "0" for zero.
std::string talented_element_to_string(const Graph& g,
                                       const TalentedElement& x);

/// The set of base vertices occurring in x at any level.
std::set<VertexId> support_vertices(const TalentedElement& x);

/// Reinterprets x as a plain monoid element of the covering graph (each
/// occurrence of (v, i) becomes the layer-i copy of v).  Throws graph_error
/// if some level of x lies outside the window.
MonoidElement element_in_covering(const CoveringGraph& cov,
                                  const TalentedElement& x);

/// One application of the leaf operator: ranges of all edges leaving A,
/// together with the sinks of A.
std::set<VertexId> one_step_leaf(const Graph& g, const std::set<VertexId>& a);

/// The eventual range of the leaf operator: iterating one_step_leaf from A
/// eventually enters a cycle of sets; leaf_set returns the union of the sets
/// on that cycle.  Fixed points of one_step_leaf are exactly the sets of
/// this form.
LeafSet leaf_set(const Graph& g, const std::set<VertexId>& a);

/// True when every edge leaving H lands in H.
bool is_hereditary(const Graph& g, const std::set<VertexId>& h);

/// The smallest set containing X that is hereditary (closed under edge
/// ranges) and saturated (contains every non-sink vertex all of whose edge
/// ranges it contains).
std::set<VertexId> saturation(const Graph& g, const std::set<VertexId>& x);

/// The leaf set of the support of x; the class of zero is the empty set.
LeafSet archimedean_class(const Graph& g, const TalentedElement& x);

/// All cycles no vertex of which has an edge leaving the cycle's vertex set
/// elsewhere — equivalently, every vertex on the cycle has out-degree one.
std::vector<Cycle> minimal_periodic_orbits(const Graph& g);

}  // namespace meteor
