// support.hpp — shared fixtures, random generators, and reference oracles
// used by the unit suites and the acceptance harness.  Everything here is
// deliberately independent of the library's internals: oracles recompute
// expected answers from first principles so the suites compare two separate
// derivations.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meteor/graph.hpp"
#include "meteor/meteor.hpp"
#include "meteor/monoid.hpp"
#include "meteor/moves.hpp"
#include "meteor/talented.hpp"

namespace testsupport {

using namespace meteor;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---------------------------------------------------------------- fixtures

/// Loop at v, edge v -> w, loop at w.  Adjacency [[1,1],[0,1]]; the smallest
/// meteor graph (p = q = 1, one trail).
inline Graph dumbbell() {
    return Graph({0, 1}, {{0, 0, 0}, {1, 0, 1}, {2, 1, 1}},
                 {{0, "v"}, {1, "w"}});
}

/// The 6-cycle/4-cycle example: source cycle a1..a6 (ids 0..5, a1 -> a2 ->
/// ... -> a6 -> a1), sink cycle b1..b4 (ids 6..9, b1 -> b2 -> b3 -> b4 ->
/// b1), interior u = 10, v1 = 11, v2 = 12.  Seven trails; through-length
/// multiset {2,3,3,3,4,4,5} at the minimal-id basepoints (a1, b1).
inline Graph six_four() {
    std::vector<VertexId> vs = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    std::vector<Edge> es = {
        {0, 0, 1},   {1, 1, 2},   {2, 2, 3},   {3, 3, 4},  {4, 4, 5},
        {5, 5, 0},   {6, 6, 7},   {7, 7, 8},   {8, 8, 9},  {9, 9, 6},
        {10, 0, 10},                // a1 -> u
        {11, 1, 11},                // a2 -> v1
        {12, 10, 11},               // u  -> v1
        {13, 10, 12},               // u  -> v2
        {14, 10, 6},                // u  -> b1
        {15, 10, 7},                // u  -> b2
        {16, 11, 9},                // v1 -> b4
        {17, 11, 6},                // v1 -> b1
        {18, 12, 6},                // v2 -> b1
    };
    std::map<VertexId, std::string> labels = {
        {0, "a1"}, {1, "a2"},  {2, "a3"},  {3, "a4"}, {4, "a5"},
        {5, "a6"}, {6, "b1"},  {7, "b2"},  {8, "b3"}, {9, "b4"},
        {10, "u"}, {11, "v1"}, {12, "v2"}};
    return Graph(vs, es, labels);
}

/// Essential connected graph with three cycle components (lengths 3, 2, 4)
/// chained by single edges — everything a meteor needs except the count of
/// nontrivial strongly connected components.
inline Graph three_cycles() {
    std::vector<VertexId> vs = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<Edge> es = {
        {0, 0, 1}, {1, 1, 2}, {2, 2, 0},            // 3-cycle
        {3, 3, 4}, {4, 4, 3},                        // 2-cycle
        {5, 5, 6}, {6, 6, 7}, {7, 7, 8}, {8, 8, 5},  // 4-cycle
        {9, 0, 3}, {10, 3, 5},                       // connectors
    };
    return Graph(vs, es);
}

/// p = q = 2 meteor whose two trails are parallel edges 0 -> 2: residue
/// counts (0, 2) at the minimal-id basepoints.
inline Graph counts_zero_two() {
    return Graph({0, 1, 2, 3}, {{0, 0, 1},
                                {1, 1, 0},
                                {2, 2, 3},
                                {3, 3, 2},
                                {4, 0, 2},
                                {5, 0, 2}});
}

/// p = q = 2 meteor with trails 0 -> 2 and 0 -> 3: residue counts (1, 1).
inline Graph counts_one_one() {
    return Graph({0, 1, 2, 3}, {{0, 0, 1},
                                {1, 1, 0},
                                {2, 2, 3},
                                {3, 3, 2},
                                {4, 0, 2},
                                {5, 0, 3}});
}

/// p = q = 2 meteor with the single trail 0 -> 2 (length one).
inline Graph trail_length_one() {
    return Graph({0, 1, 2, 3},
                 {{0, 0, 1}, {1, 1, 0}, {2, 2, 3}, {3, 3, 2}, {4, 0, 2}});
}

/// p = q = 2 meteor with the single trail 0 -> 4 -> 2 (length two);
/// equivalent to trail_length_one() with the counts rotated by one.
inline Graph trail_length_two() {
    return Graph({0, 1, 2, 3, 4}, {{0, 0, 1},
                                   {1, 1, 0},
                                   {2, 2, 3},
                                   {3, 3, 2},
                                   {4, 0, 4},
                                   {5, 4, 2}});
}

// -------------------------------------------------------------- generators

/// Random meteor graph with at most max_v vertices: a source cycle, a sink
/// cycle, and a DAG of interior vertices each lying on a source-to-sink
/// trail.  Interior in-degrees may exceed one (shared trail prefixes).
inline Graph random_meteor(Rng& rng, int max_v = 10) {
    int p = pick(rng, 1, std::min(4, max_v - 1));
    int q = pick(rng, 1, std::min(4, max_v - p));
    int m = pick(rng, 0, std::min(3, max_v - p - q));

    std::vector<VertexId> vs(p + q + m);
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<Edge> es;
    EdgeId ne = 0;
    for (int i = 0; i < p; ++i) es.push_back({ne++, i, (i + 1) % p});
    for (int i = 0; i < q; ++i) es.push_back({ne++, p + i, p + (i + 1) % q});
    // Interior vertices in topological order: each points at later
    // interiors or the sink cycle, so the interior part is acyclic and
    // every interior vertex reaches the sink cycle.
    for (int k = 0; k < m; ++k) {
        VertexId z = p + q + k;
        int outs = pick(rng, 1, 2);
        for (int t = 0; t < outs; ++t) {
            int later = m - k - 1;
            int c = pick(rng, 0, later + q - 1);
            VertexId dst = c < later ? z + 1 + c : p + (c - later);
            es.push_back({ne++, z, dst});
        }
    }
    // Every interior vertex needs an incoming edge; the earliest one always
    // gets it from the source cycle, so the source side reaches the sink.
    std::map<VertexId, int> indeg;
    for (const Edge& e : es) indeg[e.dst]++;
    for (int k = 0; k < m; ++k) {
        VertexId z = p + q + k;
        if (indeg[z] == 0) es.push_back({ne++, pick(rng, 0, p - 1), z});
    }
    int direct = pick(rng, m == 0 ? 1 : 0, 2);
    for (int t = 0; t < direct; ++t)
        es.push_back({ne++, pick(rng, 0, p - 1), p + pick(rng, 0, q - 1)});
    return Graph(vs, es);
}

/// Arbitrary random digraph (sinks, sources, parallel edges, and isolated
/// vertices all permitted).
inline Graph random_digraph(Rng& rng, int max_v = 6) {
    int n = pick(rng, 1, max_v);
    std::vector<VertexId> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<Edge> es;
    int m = pick(rng, 0, 2 * n);
    for (int e = 0; e < m; ++e)
        es.push_back({e, pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
    return Graph(vs, es);
}

/// Splits a list of edge ids randomly into exactly two nonempty classes.
/// Requires at least two edges.
inline std::vector<std::vector<EdgeId>> random_two_classes(
    Rng& rng, const std::vector<EdgeId>& edges) {
    while (true) {
        std::vector<std::vector<EdgeId>> classes(2);
        for (EdgeId e : edges) classes[pick(rng, 0, 1)].push_back(e);
        if (!classes[0].empty() && !classes[1].empty()) return classes;
    }
}

/// All two-vertex amalgamation candidates: pairs with identical out-edge
/// range multisets (for in-amalgamation) or identical in-edge source
/// multisets (for out-amalgamation).
inline std::vector<std::vector<VertexId>> amalgamation_pairs(const Graph& g,
                                                             bool in_kind) {
    std::map<VertexId, std::map<VertexId, int>> sig;
    for (VertexId v : g.vertices()) {
        std::map<VertexId, int> m;
        if (in_kind)
            for (EdgeId e : g.out_edges(v)) m[g.edge(e).dst]++;
        else
            for (EdgeId e : g.in_edges(v)) m[g.edge(e).src]++;
        sig[v] = std::move(m);
    }
    std::vector<std::vector<VertexId>> out;
    const auto& vs = g.vertices();
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (!sig[vs[i]].empty() && sig[vs[i]] == sig[vs[j]])
                out.push_back({vs[i], vs[j]});
    return out;
}

/// One random valid move on g: a two-class in/out-split at a vertex of
/// degree >= 2, or a two-vertex in/out-amalgamation where a matching pair
/// exists.  Candidates failing validation are skipped; nullopt when nothing
/// applies.
inline std::optional<MoveResult> random_move(Rng& rng, const Graph& g) {
    struct Cand {
        int kind;  // 0 in_split, 1 out_split, 2 in_amalg, 3 out_amalg
        VertexId site = 0;
        std::vector<VertexId> pair;
    };
    std::vector<Cand> cands;
    for (VertexId v : g.vertices()) {
        if (g.in_degree(v) >= 2) cands.push_back({0, v, {}});
        if (g.out_degree(v) >= 2) cands.push_back({1, v, {}});
    }
    for (auto& pr : amalgamation_pairs(g, true)) cands.push_back({2, 0, pr});
    for (auto& pr : amalgamation_pairs(g, false)) cands.push_back({3, 0, pr});
    std::shuffle(cands.begin(), cands.end(), rng);
    for (const Cand& c : cands) {
        try {
            switch (c.kind) {
                case 0:
                    return in_split(
                        g, {{c.site, random_two_classes(rng, g.in_edges(c.site))}});
                case 1:
                    return out_split(
                        g,
                        {{c.site, random_two_classes(rng, g.out_edges(c.site))}});
                case 2:
                    return in_amalgamate(g, {c.pair});
                default:
                    return out_amalgamate(g, {c.pair});
            }
        } catch (const move_error&) {
            // candidate failed a precondition — try the next one
        }
    }
    return std::nullopt;
}

/// Two equivalent meteor graphs: independent random move walks from one
/// random seed.
inline std::pair<Graph, Graph> random_equivalent_pair(Rng& rng, int max_v = 8,
                                                      int walk = 3) {
    Graph seed = random_meteor(rng, max_v);
    Graph g1 = seed, g2 = seed;
    for (int i = 0; i < walk; ++i)
        if (auto m = random_move(rng, g1)) g1 = m->graph;
    for (int i = 0; i < walk; ++i)
        if (auto m = random_move(rng, g2)) g2 = m->graph;
    return {g1, g2};
}

/// Random level-graded element over g's vertices.
inline TalentedElement random_talented(Rng& rng, const Graph& g,
                                       int max_terms = 3, int max_level = 3,
                                       int max_coeff = 2) {
    TalentedElement x;
    int terms = pick(rng, 0, max_terms);
    const auto& vs = g.vertices();
    for (int t = 0; t < terms; ++t) {
        VertexId v = vs[pick(rng, 0, static_cast<int>(vs.size()) - 1)];
        x[{v, pick(rng, -max_level, max_level)}] += pick(rng, 1, max_coeff);
    }
    return x;
}

// ------------------------------------------------------- leaf-set oracles

/// Characterisation 1: B is a fixed point of the one-step leaf operator.
inline bool leaf_fixed_point(const Graph& g, const std::set<VertexId>& b) {
    return one_step_leaf(g, b) == b;
}

/// Characterisation 2: B is its own leaf set.
inline bool leaf_own_leafset(const Graph& g, const std::set<VertexId>& b) {
    return leaf_set(g, b) == b;
}

/// Characterisation 3: B occurs as the leaf set of some vertex subset
/// (exhaustive over all subsets; callers precompute the image).
inline std::vector<std::set<VertexId>> leaf_image(const Graph& g) {
    const auto& vs = g.vertices();
    int n = static_cast<int>(vs.size());
    std::vector<std::set<VertexId>> image;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::set<VertexId> a;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) a.insert(vs[i]);
        image.push_back(leaf_set(g, a));
    }
    return image;
}

/// Characterisation 4: B is the forward-reachability closure of its
/// recurrent part (members that are sinks or lie on a simple cycle).
inline bool leaf_recurrent_closure(const Graph& g,
                                   const std::set<VertexId>& b) {
    std::set<VertexId> recurrent;
    for (VertexId v : b)
        if (g.is_sink(v)) recurrent.insert(v);
    for (const Cycle& c : simple_cycles(g))
        for (VertexId v : c.vertex_order)
            if (b.count(v)) recurrent.insert(v);
    return reachable_from(g, recurrent) == b;
}

// --------------------------------------- level-window confluence oracle

enum class OracleVerdict { equal, unequal, undecided };

/// Confluence oracle for level-graded equality, independent of the reduced
/// two-generator forms.  It works in a layered covering window tall enough
/// for verdicts to be final: inside the window each occurrence below the
/// top rim has exactly one applicable rewrite (flow one layer up through
/// the vertex's out-edges), so flowing is confluent, every element has a
/// unique normal form supported on the rim, and equality is equality of
/// normal forms.  The rim image of a difference vector is a row of an
/// adjacency power, and kernels of those powers stop growing once the
/// exponent reaches the vertex count, so a window that much taller than
/// the occupied levels makes both verdicts stable under any further
/// enlargement — the oracle always decides.  Requires a sink-free graph
/// (meteor graphs qualify).
inline OracleVerdict window_oracle(const Graph& g, const TalentedElement& x,
                                   const TalentedElement& y) {
    for (VertexId v : g.vertices())
        if (g.out_edges(v).empty())
            throw graph_error("window_oracle needs a sink-free graph");
    if (x.empty() && y.empty()) return OracleVerdict::equal;
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto* e : {&x, &y})
        for (const auto& [key, c] : *e) {
            lo = any ? std::min(lo, key.second) : key.second;
            hi = any ? std::max(hi, key.second) : key.second;
            any = true;
        }
    int height = (hi - lo) + static_cast<int>(g.vertex_count()) + 2;
    CoveringGraph cov = covering_graph(g, lo, lo + height);
    auto normal = [&](const TalentedElement& e) {
        std::map<VertexId, BigInt> coeff;
        for (const auto& [key, c] : e)
            if (c != 0) coeff[cov.vertex_at(key.first, key.second)] += c;
        for (int round = 0; round < height; ++round) {
            std::map<VertexId, BigInt> next;
            for (const auto& [v, c] : coeff) {
                const std::vector<EdgeId>& outs = cov.graph.out_edges(v);
                if (outs.empty()) {
                    next[v] += c;  // top rim: mass parks here
                } else {
                    for (EdgeId eid : outs)
                        next[cov.graph.edge(eid).dst] += c;
                }
            }
            coeff = std::move(next);
        }
        return coeff;
    };
    return normal(x) == normal(y) ? OracleVerdict::equal
                                  : OracleVerdict::unequal;
}

// ------------------------------------------------- reduced-form helpers

inline TalentedElement talented_add(const TalentedElement& x,
                                    const TalentedElement& y) {
    TalentedElement z = x;
    for (const auto& [key, c] : y) z[key] += c;
    return z;
}

inline bool all_zero(const std::vector<BigInt>& v) {
    for (const BigInt& c : v)
        if (c != 0) return false;
    return true;
}

/// Raises a reduced form's window one level with the basepoint relation
/// v(l) = v(l + p) + sum over trails of w(l + D): the bottom source
/// coefficient wraps to the new top and feeds the sink residues.
inline VWForm raise_form(const VWForm& f, int p, int q,
                         const std::vector<long long>& lens) {
    VWForm out;
    out.j = f.j + 1;
    out.b = f.b;
    out.a.assign(p, BigInt(0));
    out.a[0] = f.a[p - 1];
    for (int i = 1; i < p; ++i) out.a[i] = f.a[i - 1];
    for (long long d : lens) {
        long long r = (f.j - p + 1 + d) % q;
        out.b[static_cast<int>((r + q) % q)] += f.a[p - 1];
    }
    return out;
}

/// Outcome of the order oracle: when `leq` holds, `fx`/`fy` are the two
/// reduced forms raised to a common window where fy dominates fx
/// componentwise, so fy - fx is the form of a difference element.
struct LeqWitness {
    bool leq = false;
    VWForm fx, fy;
};

/// Decides x <= y in the natural algebraic order (some z with x + z = y).
/// x <= y exactly when, at some common window, fy dominates fx
/// componentwise: the difference form is then realizable by an actual
/// element, and conversely x + z = y forces domination at the window
/// containing every level in play.  Raising rotates both source parts in
/// lockstep, so the source comparison is window-invariant and is checked
/// once; the sink parts then grow by a pattern with period lcm(p, q), so
/// either every deficit shrinks within each full period or it never will,
/// which bounds the search.
inline LeqWitness form_leq_witness(const Graph& g, const TalentedElement& x,
                                   const TalentedElement& y) {
    RecognitionResult rec = recognize(g);
    int p = rec.structure->p, q = rec.structure->q;
    std::vector<long long> lens = through_lengths(g);
    VWForm fx = vw_form(g, x), fy = vw_form(g, y);
    while (fx.j < fy.j) fx = raise_form(fx, p, q, lens);
    while (fy.j < fx.j) fy = raise_form(fy, p, q, lens);
    for (int i = 0; i < p; ++i)
        if (fx.a[i] > fy.a[i]) return {};

    BigInt deficit = 0;
    for (int d = 0; d < q; ++d)
        if (fx.b[d] > fy.b[d]) deficit += fx.b[d] - fy.b[d];
    long long period = std::lcm(p, q);
    long long cap =
        period * (2 + (deficit > 1000000 ? 1000000
                                         : deficit.convert_to<long long>()));
    for (long long step = 0; step <= cap; ++step) {
        bool dominated = true;
        for (int d = 0; d < q; ++d)
            if (fx.b[d] > fy.b[d]) { dominated = false; break; }
        if (dominated) return {true, fx, fy};
        fx = raise_form(fx, p, q, lens);
        fy = raise_form(fy, p, q, lens);
    }
    return {};
}

inline bool form_leq(const Graph& g, const TalentedElement& x,
                     const TalentedElement& y) {
    return form_leq_witness(g, x, y).leq;
}

inline std::set<VertexId> to_set(const std::vector<VertexId>& v) {
    return std::set<VertexId>(v.begin(), v.end());
}

}  // namespace testsupport
