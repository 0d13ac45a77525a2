// monoid.hpp
//
// The commutative monoid attached to a directed graph: formal nonnegative
// integer combinations of vertices, modulo the relation that identifies a
// regular (non-sink) vertex with the multiset of ranges of its outgoing
// edges.  Equality of two combinations is semi-decided by a bounded
// confluence search over one-step flow rewrites.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "meteor/graph.hpp"

namespace meteor {

/// A monoid element: finitely supported map from vertex ids to positive
/// multiplicities.  The empty map is the zero element.  Entries must be
/// strictly positive; operations below never store a zero entry.
using MonoidElement = std::map<VertexId, long long>;

/// Verdict of a bounded equality search.
enum class MonoidVerdict {
    equal,                 ///< confluence witness found: the elements are equal
    unequal_within_bound,  ///< both rewrite closures stabilised without meeting
    unknown,               ///< search budget exhausted before a decision
};

/// Human-readable name of a verdict ("equal", "unequal_within_bound",
/// "unknown").
std::string monoid_verdict_name(MonoidVerdict v);

/// Returns x + y.
MonoidElement monoid_add(const MonoidElement& x, const MonoidElement& y);

/// Parses a literal like "2*v + w" against the graph's vertex labels.
/// Terms are separated by '+'; each term is an optional positive integer
/// multiplier, '*', and a vertex label (the multiplier and '*' may be
/// omitted).  "0" denotes the zero element.  Throws graph_error on a label
/// that names no vertex or on malformed syntax.
MonoidElement parse_monoid_element(const Graph& g, const std::string& text);

/// Renders an element in the same literal syntax, terms in ascending vertex
/// id order ("0" for the zero element).
std::string monoid_element_to_string(const Graph& g, const MonoidElement& x);

/// Replaces one occurrence of vertex v in x by the ranges of v's outgoing
/// edges (with multiplicity).  Throws graph_error if v has no occurrence in
/// x or if v is a sink (sinks admit no rewrite).
MonoidElement flow_step(const Graph& g, const MonoidElement& x, VertexId v);

/// All elements reachable from x by at most `depth` single-vertex flow
/// steps, x itself included, deduplicated and sorted.
std::vector<MonoidElement> flow_successors(const Graph& g,
                                           const MonoidElement& x,
                                           int depth);

/// Bounded equality test.  Equality holds exactly when the rewrite closures
/// of the two elements intersect; the search explores both closures to
/// `depth` rewrite sweeps.  Returns:
///  - equal                 as soon as the closures share an element;
///  - unequal_within_bound  if both closures stopped growing strictly below
///                          the depth budget without meeting (for a general
///                          graph this is certainty only when every element
///                          of both closures was fully expanded);
///  - unknown               otherwise.
/// Zero is handled up front: zero equals only zero.
MonoidVerdict monoid_equal(const Graph& g, const MonoidElement& a,
                           const MonoidElement& b, int depth);

}  // namespace meteor
