// meteor.hpp
//
// Recognition and classification of meteor graphs: essential, weakly
// connected graphs whose cycle structure is exactly one source cycle (all
// in-degrees one) and one sink cycle (all out-degrees one), joined by
// trails.  The trail-length residue profile is a complete invariant for
// conjugacy; this header exposes the profile, normal forms reached by
// recorded elementary moves, equivalence witnesses, and exact equality of
// level-graded elements via a two-generator reduced form.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meteor/graph.hpp"
#include "meteor/moves.hpp"
#include "meteor/talented.hpp"

namespace meteor {

/// Why a graph failed meteor recognition.
enum class MeteorReason {
    none,                   ///< recognition succeeded
    not_essential,          ///< a sink or source vertex exists
    not_connected,          ///< not weakly connected
    wrong_cycle_count,      ///< number of nontrivial strong components != 2
    scc_not_simple_cycle,   ///< a nontrivial strong component is not a cycle
    stranded_vertex,        ///< a vertex misses the source-to-sink flow
};

std::string meteor_reason_name(MeteorReason r);

/// The anatomy of a recognised meteor graph.
struct MeteorStructure {
    Cycle source_cycle;               ///< every vertex has in-degree one
    Cycle sink_cycle;                 ///< every vertex has out-degree one
    std::vector<VertexId> interior;   ///< vertices on neither cycle, ascending
    int p = 0;                        ///< source cycle length
    int q = 0;                        ///< sink cycle length

    /// Default basepoints: the minimal-id vertex on each cycle (the cycles
    /// are stored in canonical rotation, so it is the first one).
    VertexId basepoint_v() const { return source_cycle.vertex_order.front(); }
    VertexId basepoint_w() const { return sink_cycle.vertex_order.front(); }
};

struct RecognitionResult {
    bool is_meteor = false;
    MeteorReason reason = MeteorReason::none;
    std::string detail;                        ///< human-readable explanation
    std::optional<MeteorStructure> structure;  ///< present when is_meteor
};

/// Decides whether g is a meteor graph; on success the structure is filled
/// in, otherwise the first failed condition is reported.
RecognitionResult recognize(const Graph& g);

/// A maximal source-to-sink path: first vertex on the source cycle, last on
/// the sink cycle, all vertices between strictly interior.
struct Trail {
    std::vector<EdgeId> edges;
    std::vector<VertexId> vertices;  ///< edges.size() + 1 entries

    int length() const { return static_cast<int>(edges.size()); }
    VertexId source() const { return vertices.front(); }
    VertexId target() const { return vertices.back(); }
};

/// All trails of a recognised meteor graph, ordered lexicographically by
/// edge-id sequence.
std::vector<Trail> trails(const Graph& g, const MeteorStructure& ms);

/// Forward distance from one cycle vertex to another (0 when equal).
/// Throws graph_error if either vertex is not on the cycle.
int cycle_distance(const Cycle& c, VertexId from, VertexId to);

/// The complete conjugacy invariant: cycle lengths and, per residue class
/// of gcd(p, q), the number of trails of that through-length residue,
/// rotated to the lexicographically minimal cyclic shift so the vector does
/// not depend on the choice of cycle basepoints.
struct MeteorProfile {
    int p = 0;
    int q = 0;
    int period = 0;                   ///< gcd(p, q)
    std::vector<long long> counts;    ///< size == period

    bool operator==(const MeteorProfile& o) const = default;
};

/// Through-length of one trail: distance from the source basepoint to the
/// trail's source, plus the trail length, plus the distance from the
/// trail's target to the sink basepoint.
long long through_length(const MeteorStructure& ms, const Trail& t,
                         VertexId base_v, VertexId base_w);

/// Through-lengths of all trails with both basepoints taken as the
/// smallest vertex id on the respective cycle, sorted ascending.
std::vector<long long> through_lengths(const Graph& g);

/// Raw residue counts (no basepoint-free rotation) with both basepoints
/// taken as the smallest vertex id on the respective cycle.
std::vector<long long> residue_counts(const Graph& g);

/// The basepoint-free profile.  Throws graph_error on a non-meteor input.
MeteorProfile profile(const Graph& g);

/// Profile equality — the decision procedure for conjugacy of meteor
/// graphs.  Throws graph_error (with the recognition reason) when either
/// input is not a meteor graph.
bool equivalent(const Graph& g1, const Graph& g2);

/// Outcome of comparing a meteor graph against an arbitrary second graph.
/// Meteor graphs are closed under conjugacy, so an essential non-meteor
/// second graph yields a definitive negative; a non-essential second graph
/// yields no verdict at all.
struct ClosureReport {
    bool g2_essential = false;
    bool g2_meteor = false;
    std::string g2_detail;     ///< recognition detail for g2
    bool definitive = false;   ///< when true, `equivalent` below is the verdict
    bool equivalent = false;
    std::string message;
};

/// Compares meteor g1 against arbitrary g2 (see ClosureReport).  Throws
/// graph_error if g1 is not a meteor graph.
ClosureReport closure_check(const Graph& g1, const Graph& g2);

/// A graph together with the recorded elementary moves that produced it.
struct NormalizeResult {
    Graph graph;
    std::vector<MoveRecord> moves;
};

/// Shortens every trail to a single edge using out-moves only.  Requires a
/// meteor graph in which every interior vertex has in-degree one; first
/// separates interior vertices with several outgoing edges by out-splits,
/// then absorbs each trail into the source cycle by out-amalgamations.
/// Replaying the returned moves on the input yields the returned graph.
NormalizeResult quasi_normalize(const Graph& g);

/// Drives any meteor graph to a normal form: all trails have length one and
/// share a single source-cycle vertex.  Replaying the returned moves on the
/// input yields the returned graph exactly.
NormalizeResult normalize(const Graph& g);

/// Drives any meteor graph to the canonical representative of its
/// equivalence class: the normal form whose trail attachment points realise
/// the rotated profile counts.  The returned graph is rebuilt from the
/// profile alone (so equivalent inputs get equal outputs); replaying the
/// returned moves on the input yields a graph isomorphic to it.
NormalizeResult canonicalize(const Graph& g);

/// A verified equivalence certificate: replaying `moves` on the first graph
/// produces the second graph up to `isomorphism` (vertex map).
struct Witness {
    std::vector<MoveRecord> moves;
    std::map<VertexId, VertexId> isomorphism;
};

/// Produces a certificate when the two meteor graphs are equivalent
/// (std::nullopt otherwise).  The construction routes both graphs through
/// the canonical representative; the result is verified by replay before it
/// is returned.  Throws graph_error on non-meteor inputs.
std::optional<Witness> witness(const Graph& g1, const Graph& g2);

/// Reduced two-generator presentation of a level-graded element of a meteor
/// graph: a combination of the source basepoint v at the p consecutive
/// levels j, j-1, ..., j-p+1 and the sink basepoint w at levels modulo q.
/// a[i] is the coefficient of v(j - i); b[s] the coefficient of w(s) for
/// s in [0, q).  When a is nonzero, a[0] > 0 (j is the top occupied level);
/// when a is zero, j is 0 by convention.
struct VWForm {
    int j = 0;
    std::vector<BigInt> a;
    std::vector<BigInt> b;

    bool operator==(const VWForm& o) const = default;
};

/// Rewrites x into its reduced two-generator form.  Basepoints are the
/// smallest vertex ids on the two cycles.  Throws graph_error on a
/// non-meteor graph or an x mentioning unknown vertices.
VWForm vw_form(const Graph& g, const TalentedElement& x);

/// Exact equality of level-graded elements over a meteor graph, decided by
/// comparing reduced forms over a common level window.  Total (never
/// undecided).  Throws graph_error on a non-meteor graph.
bool talented_equal(const Graph& g, const TalentedElement& x,
                    const TalentedElement& y);

}  // namespace meteor
