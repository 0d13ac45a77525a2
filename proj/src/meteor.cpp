// meteor.cpp — recognition, profiles, normal forms, witnesses, and reduced
// two-generator forms for meteor graphs.

#include "meteor/meteor.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace meteor {

namespace {

int floor_mod(long long x, int m) {
    long long r = x % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

std::string vertex_desc(const Graph& g, VertexId v) {
    return "'" + g.vertex_label(v) + "' (id " + std::to_string(v) + ")";
}

/// Builds the unique internal cycle of a strong component in which every
/// vertex has exactly one internal out-edge, starting from the smallest id.
/// Returns std::nullopt if the walk fails to close over the whole component.
std::optional<Cycle> walk_component_cycle(const Graph& g,
                                          const std::set<VertexId>& comp) {
    Cycle c;
    VertexId start = *comp.begin();
    VertexId cur = start;
    do {
        EdgeId internal = -1;
        for (EdgeId e : g.out_edges(cur))
            if (comp.count(g.edge(e).dst)) {
                internal = e;
                break;
            }
        if (internal < 0) return std::nullopt;
        c.vertex_order.push_back(cur);
        c.edges.push_back(internal);
        cur = g.edge(internal).dst;
    } while (cur != start && c.edges.size() <= comp.size());
    if (cur != start || c.vertex_order.size() != comp.size())
        return std::nullopt;
    return c;
}

MeteorStructure require_structure(const Graph& g, const std::string& who) {
    RecognitionResult rr = recognize(g);
    if (!rr.is_meteor)
        throw graph_error(who + ": not a meteor graph (" +
                          meteor_reason_name(rr.reason) + "): " + rr.detail);
    return *rr.structure;
}

/// Topological order of the interior vertices (which induce an acyclic
/// subgraph), sources first.
std::vector<VertexId> interior_topo_order(const Graph& g,
                                          const std::set<VertexId>& interior) {
    std::map<VertexId, int> indeg;
    for (VertexId v : interior) indeg[v] = 0;
    for (VertexId v : interior)
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).dst;
            if (interior.count(w)) ++indeg[w];
        }
    std::deque<VertexId> ready;
    for (const auto& [v, d] : indeg)
        if (d == 0) ready.push_back(v);
    std::vector<VertexId> order;
    while (!ready.empty()) {
        VertexId v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).dst;
            if (interior.count(w) && --indeg[w] == 0) ready.push_back(w);
        }
    }
    if (order.size() != interior.size())
        throw graph_error("internal: interior subgraph is not acyclic");
    return order;
}

std::set<VertexId> to_set(const std::vector<VertexId>& v) {
    return {v.begin(), v.end()};
}

/// Applies one move, appends its record, and returns the fresh structure of
/// the new graph (meteor-ness is an invariant of all four moves).
MeteorStructure step(Graph& g, std::vector<MoveRecord>& moves, MoveResult mr,
                     const std::string& who) {
    g = std::move(mr.graph);
    moves.push_back(std::move(mr.record));
    return require_structure(g, who + " (after an elementary move)");
}

/// Splits every interior vertex with two or more outgoing edges into
/// out-degree-one copies, processing sink-closest vertices first so each
/// vertex needs one visit.  Shared by quasi_normalize and normalize.
void split_interior_multisources(Graph& g, std::vector<MoveRecord>& moves,
                                 const std::string& who) {
    MeteorStructure ms = require_structure(g, who);
    std::vector<VertexId> order =
        interior_topo_order(g, to_set(ms.interior));
    std::reverse(order.begin(), order.end());
    for (VertexId u : order) {
        if (!g.has_vertex(u)) continue;
        std::vector<EdgeId> outs = g.out_edges(u);
        if (outs.size() < 2) continue;
        std::map<VertexId, std::vector<std::vector<EdgeId>>> partition;
        for (EdgeId e : outs) partition[u].push_back({e});
        ms = step(g, moves, out_split(g, partition), who);
    }
}

/// Splits every interior vertex with two or more incoming edges into
/// in-degree-one copies, processing source-closest vertices first.
void split_interior_multitargets(Graph& g, std::vector<MoveRecord>& moves,
                                 const std::string& who) {
    MeteorStructure ms = require_structure(g, who);
    std::vector<VertexId> order =
        interior_topo_order(g, to_set(ms.interior));
    for (VertexId u : order) {
        if (!g.has_vertex(u)) continue;
        std::vector<EdgeId> ins = g.in_edges(u);
        if (ins.size() < 2) continue;
        std::map<VertexId, std::vector<std::vector<EdgeId>>> partition;
        for (EdgeId e : ins) partition[u].push_back({e});
        ms = step(g, moves, in_split(g, partition), who);
    }
}

Trail find_trail_by_head(const Graph& g, const MeteorStructure& ms,
                         EdgeId head) {
    for (const Trail& t : trails(g, ms))
        if (t.edges.front() == head) return t;
    throw graph_error("internal: lost track of a trail (head edge " +
                      std::to_string(head) + ")");
}

VertexId cycle_pred(const Cycle& c, VertexId v) {
    int n = static_cast<int>(c.vertex_order.size());
    for (int i = 0; i < n; ++i)
        if (c.vertex_order[i] == v)
            return c.vertex_order[(i + n - 1) % n];
    throw graph_error("internal: vertex " + std::to_string(v) +
                      " is not on the cycle");
}

/// One sink-side shortening: merges the cycle predecessor of the trail's
/// endpoint with the trail's last interior vertex.  The trail's head edge id
/// is unchanged.  Returns the fresh structure.
MeteorStructure shorten_at_sink(Graph& g, std::vector<MoveRecord>& moves,
                                const MeteorStructure& ms, const Trail& t,
                                const std::string& who) {
    VertexId b = t.target();
    VertexId z = t.vertices[t.length() - 1];
    VertexId a = cycle_pred(ms.sink_cycle, b);
    return step(g, moves, in_amalgamate(g, {{a, z}}), who);
}

/// The canonical representative of a profile: source cycle 0..p-1 with the
/// trail source at 0, sink cycle p..p+q-1 with the basepoint at p and the
/// vertex at forward distance d from the basepoint at id p+d, and
/// counts[(d+1) mod period] parallel single-edge trails attached at each
/// distance d in [0, period).
Graph canonical_graph(const MeteorProfile& pr) {
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    std::map<VertexId, std::string> vlabels;
    std::map<EdgeId, std::string> elabels;
    for (int i = 0; i < pr.p; ++i) {
        vs.push_back(i);
        vlabels[i] = "v" + std::to_string(i);
    }
    for (int d = 0; d < pr.q; ++d) {
        vs.push_back(pr.p + d);
        vlabels[pr.p + d] = "w" + std::to_string(d);
    }
    for (int i = 0; i < pr.p; ++i) {
        es.push_back(Edge{i, i, (i + 1) % pr.p});
        elabels[i] = "c" + std::to_string(i);
    }
    // Sink-cycle edges run toward the basepoint: p+d -> p+d-1.
    for (int d = 1; d < pr.q; ++d) {
        es.push_back(Edge{pr.p + d - 1, pr.p + d, pr.p + d - 1});
        elabels[pr.p + d - 1] = "s" + std::to_string(d);
    }
    es.push_back(Edge{pr.p + pr.q - 1, pr.p, pr.p + pr.q - 1});
    elabels[pr.p + pr.q - 1] = "s0";
    EdgeId next = pr.p + pr.q;
    for (int d = 0; d < pr.period; ++d) {
        long long count = pr.counts[(d + 1) % pr.period];
        for (long long k = 0; k < count; ++k) {
            es.push_back(Edge{next, 0, pr.p + d});
            elabels[next] = "t" + std::to_string(next - pr.p - pr.q);
            ++next;
        }
    }
    return Graph(vs, es, vlabels, elabels);
}

/// Raw residue counts of a normalised graph relative to explicit basepoints.
std::vector<long long> raw_counts_at(const Graph& g, const MeteorStructure& ms,
                                     VertexId base_v, VertexId base_w) {
    int period = std::gcd(ms.p, ms.q);
    std::vector<long long> counts(period, 0);
    for (const Trail& t : trails(g, ms))
        ++counts[floor_mod(through_length(ms, t, base_v, base_w), period)];
    return counts;
}

}  // namespace

std::string meteor_reason_name(MeteorReason r) {
    switch (r) {
        case MeteorReason::none: return "none";
        case MeteorReason::not_essential: return "not_essential";
        case MeteorReason::not_connected: return "not_connected";
        case MeteorReason::wrong_cycle_count: return "wrong_cycle_count";
        case MeteorReason::scc_not_simple_cycle: return "scc_not_simple_cycle";
        case MeteorReason::stranded_vertex: return "stranded_vertex";
    }
    return "none";
}

RecognitionResult recognize(const Graph& g) {
    RecognitionResult rr;
    auto fail = [&rr](MeteorReason reason, std::string detail) {
        rr.is_meteor = false;
        rr.reason = reason;
        rr.detail = std::move(detail);
        return rr;
    };

    if (g.vertex_count() == 0)
        return fail(MeteorReason::not_essential, "the graph is empty");
    for (VertexId v : g.vertices()) {
        if (g.is_sink(v))
            return fail(MeteorReason::not_essential,
                        "vertex " + vertex_desc(g, v) + " is a sink");
        if (g.is_source(v))
            return fail(MeteorReason::not_essential,
                        "vertex " + vertex_desc(g, v) + " is a source");
    }
    if (!is_weakly_connected(g))
        return fail(MeteorReason::not_connected,
                    "the graph is not weakly connected");

    SccDecomposition scc = scc_decomposition(g);
    std::vector<std::set<VertexId>> nontrivial;
    for (const auto& comp : scc.components) {
        if (comp.size() >= 2) {
            nontrivial.emplace_back(comp.begin(), comp.end());
            continue;
        }
        VertexId v = comp.front();
        for (EdgeId e : g.out_edges(v))
            if (g.edge(e).dst == v) {
                nontrivial.push_back({v});
                break;
            }
    }
    if (nontrivial.size() != 2)
        return fail(MeteorReason::wrong_cycle_count,
                    "found " + std::to_string(nontrivial.size()) +
                        " nontrivial strongly connected components, need "
                        "exactly 2");

    for (const auto& comp : nontrivial) {
        for (VertexId v : comp) {
            int internal = 0;
            for (EdgeId e : g.out_edges(v))
                if (comp.count(g.edge(e).dst)) ++internal;
            if (internal != 1)
                return fail(MeteorReason::scc_not_simple_cycle,
                            "vertex " + vertex_desc(g, v) + " has " +
                                std::to_string(internal) +
                                " out-edges inside its strong component, "
                                "need exactly 1");
        }
    }

    // Orientation: the source cycle reaches the sink cycle.
    std::set<VertexId> from_a = reachable_from(g, nontrivial[0]);
    std::set<VertexId> from_b = reachable_from(g, nontrivial[1]);
    int source_idx;
    if (from_a.count(*nontrivial[1].begin()))
        source_idx = 0;
    else if (from_b.count(*nontrivial[0].begin()))
        source_idx = 1;
    else
        return fail(MeteorReason::stranded_vertex,
                    "no directed path joins the two cycles");
    const std::set<VertexId>& c0 = nontrivial[source_idx];
    const std::set<VertexId>& c1 = nontrivial[1 - source_idx];
    const std::set<VertexId>& reach_fwd = source_idx == 0 ? from_a : from_b;

    // Every remaining vertex must lie on a source-to-sink path.
    std::set<VertexId> reach_bwd = reachable_from(transpose(g), c1);
    for (VertexId v : g.vertices()) {
        if (c0.count(v) || c1.count(v)) continue;
        if (!reach_fwd.count(v))
            return fail(MeteorReason::stranded_vertex,
                        "vertex " + vertex_desc(g, v) +
                            " is not reachable from the source cycle");
        if (!reach_bwd.count(v))
            return fail(MeteorReason::stranded_vertex,
                        "vertex " + vertex_desc(g, v) +
                            " does not reach the sink cycle");
    }

    auto cyc0 = walk_component_cycle(g, c0);
    auto cyc1 = walk_component_cycle(g, c1);
    if (!cyc0 || !cyc1)
        return fail(MeteorReason::scc_not_simple_cycle,
                    "a strong component's internal edges do not close into "
                    "one cycle");

    MeteorStructure ms;
    ms.source_cycle = *cyc0;
    ms.sink_cycle = *cyc1;
    ms.p = static_cast<int>(c0.size());
    ms.q = static_cast<int>(c1.size());
    for (VertexId v : g.vertices())
        if (!c0.count(v) && !c1.count(v)) ms.interior.push_back(v);
    rr.is_meteor = true;
    rr.reason = MeteorReason::none;
    rr.detail = "";
    rr.structure = std::move(ms);
    return rr;
}

std::vector<Trail> trails(const Graph& g, const MeteorStructure& ms) {
    std::set<VertexId> c0 = to_set(ms.source_cycle.vertex_order);
    std::set<VertexId> c1 = to_set(ms.sink_cycle.vertex_order);
    std::vector<Trail> out;
    Trail cur;

    auto extend = [&](auto&& self, VertexId at) -> void {
        if (c1.count(at)) {
            out.push_back(cur);
            return;
        }
        for (EdgeId e : g.out_edges(at)) {
            cur.edges.push_back(e);
            cur.vertices.push_back(g.edge(e).dst);
            self(self, g.edge(e).dst);
            cur.edges.pop_back();
            cur.vertices.pop_back();
        }
    };

    for (VertexId v : ms.source_cycle.vertex_order) {
        for (EdgeId e : g.out_edges(v)) {
            VertexId to = g.edge(e).dst;
            if (c0.count(to)) continue;  // the cycle edge itself
            cur = Trail{{e}, {v, to}};
            extend(extend, to);
        }
    }
    std::sort(out.begin(), out.end(), [](const Trail& x, const Trail& y) {
        return x.edges < y.edges;
    });
    return out;
}

int cycle_distance(const Cycle& c, VertexId from, VertexId to) {
    int n = static_cast<int>(c.vertex_order.size());
    int pf = -1, pt = -1;
    for (int i = 0; i < n; ++i) {
        if (c.vertex_order[i] == from) pf = i;
        if (c.vertex_order[i] == to) pt = i;
    }
    if (pf < 0 || pt < 0)
        throw graph_error("cycle_distance: a vertex is not on the cycle");
    return (pt - pf + n) % n;
}

long long through_length(const MeteorStructure& ms, const Trail& t,
                         VertexId base_v, VertexId base_w) {
    return cycle_distance(ms.source_cycle, base_v, t.source()) + t.length() +
           cycle_distance(ms.sink_cycle, t.target(), base_w);
}

std::vector<long long> through_lengths(const Graph& g) {
    MeteorStructure ms = require_structure(g, "through_lengths");
    VertexId base_v = ms.source_cycle.vertex_order[0];
    VertexId base_w = ms.sink_cycle.vertex_order[0];
    std::vector<long long> out;
    for (const Trail& t : trails(g, ms))
        out.push_back(through_length(ms, t, base_v, base_w));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long long> residue_counts(const Graph& g) {
    MeteorStructure ms = require_structure(g, "residue_counts");
    return raw_counts_at(g, ms, ms.source_cycle.vertex_order[0],
                         ms.sink_cycle.vertex_order[0]);
}

namespace {

/// Index of the lexicographically smallest cyclic rotation (smallest index
/// on ties).
int min_rotation_offset(const std::vector<long long>& counts) {
    int n = static_cast<int>(counts.size());
    int best = 0;
    for (int t = 1; t < n; ++t)
        for (int i = 0; i < n; ++i) {
            long long a = counts[(i + t) % n];
            long long b = counts[(i + best) % n];
            if (a != b) {
                if (a < b) best = t;
                break;
            }
        }
    return best;
}

}  // namespace

MeteorProfile profile(const Graph& g) {
    MeteorStructure ms = require_structure(g, "profile");
    MeteorProfile pr;
    pr.p = ms.p;
    pr.q = ms.q;
    pr.period = std::gcd(ms.p, ms.q);
    std::vector<long long> raw = raw_counts_at(
        g, ms, ms.source_cycle.vertex_order[0], ms.sink_cycle.vertex_order[0]);
    int t = min_rotation_offset(raw);
    pr.counts.resize(pr.period);
    for (int i = 0; i < pr.period; ++i)
        pr.counts[i] = raw[(i + t) % pr.period];
    return pr;
}

bool equivalent(const Graph& g1, const Graph& g2) {
    return profile(g1) == profile(g2);
}

ClosureReport closure_check(const Graph& g1, const Graph& g2) {
    require_structure(g1, "closure_check (first graph)");
    ClosureReport rep;
    rep.g2_essential = g2.vertex_count() > 0 && is_essential(g2);
    RecognitionResult r2 = recognize(g2);
    rep.g2_meteor = r2.is_meteor;
    rep.g2_detail = r2.is_meteor
                        ? ""
                        : meteor_reason_name(r2.reason) + ": " + r2.detail;
    if (!rep.g2_essential) {
        rep.definitive = false;
        rep.message =
            "no verdict: the second graph is not essential; remove sources "
            "and sinks before comparing";
        return rep;
    }
    if (!rep.g2_meteor) {
        rep.definitive = true;
        rep.equivalent = false;
        rep.message =
            "definitively not equivalent: the class of meteor graphs is "
            "closed under conjugacy and the essential second graph is not a "
            "meteor graph (" + rep.g2_detail + ")";
        return rep;
    }
    rep.definitive = true;
    rep.equivalent = equivalent(g1, g2);
    rep.message = rep.equivalent
                      ? "equivalent: both graphs are meteor graphs with the "
                        "same profile"
                      : "not equivalent: both graphs are meteor graphs but "
                        "their profiles differ";
    return rep;
}

NormalizeResult quasi_normalize(const Graph& g0) {
    const std::string who = "quasi_normalize";
    Graph g = g0;
    std::vector<MoveRecord> moves;
    MeteorStructure ms = require_structure(g, who);
    for (VertexId u : ms.interior)
        if (g.in_degree(u) != 1)
            throw graph_error(who + ": interior vertex " + vertex_desc(g, u) +
                              " has in-degree " +
                              std::to_string(g.in_degree(u)) +
                              ", need exactly 1");

    split_interior_multisources(g, moves, who);

    // Absorb each trail into the source cycle, one out-amalgamation per
    // interior vertex: merge the cycle successor of the trail's source with
    // the trail's first interior vertex.
    ms = require_structure(g, who);
    std::vector<EdgeId> heads;
    for (const Trail& t : trails(g, ms))
        if (t.length() >= 2) heads.push_back(t.edges.front());
    for (EdgeId head : heads) {
        while (true) {
            ms = require_structure(g, who);
            Trail t = find_trail_by_head(g, ms, head);
            if (t.length() <= 1) break;
            VertexId u = t.source();
            VertexId succ =
                g.edge(ms.source_cycle.edges[cycle_distance(
                           ms.source_cycle, ms.source_cycle.vertex_order[0],
                           u)])
                    .dst;
            VertexId z = t.vertices[1];
            EdgeId next_head = t.edges[1];
            step(g, moves, out_amalgamate(g, {{succ, z}}), who);
            head = next_head;
        }
    }
    return NormalizeResult{std::move(g), std::move(moves)};
}

NormalizeResult normalize(const Graph& g0) {
    const std::string who = "normalize";
    Graph g = g0;
    std::vector<MoveRecord> moves;
    require_structure(g, who);

    // Phase 1: interior vertices get out-degree one.
    split_interior_multisources(g, moves, who);
    // Phase 2: interior vertices get in-degree one; trails now have
    // pairwise disjoint interiors.
    split_interior_multitargets(g, moves, who);

    // Phase 3: move every trail's source to the common basepoint by
    // splitting the trail's head off its source vertex; the head becomes
    // sourced one step earlier on the cycle each time.
    MeteorStructure ms = require_structure(g, who);
    VertexId v_base = ms.source_cycle.vertex_order[0];
    std::vector<EdgeId> heads;
    for (const Trail& t : trails(g, ms)) heads.push_back(t.edges.front());
    for (EdgeId head : heads) {
        while (true) {
            ms = require_structure(g, who);
            Trail t = find_trail_by_head(g, ms, head);
            VertexId u = t.source();
            if (u == v_base) break;
            EdgeId cycle_in = g.in_edges(u).front();  // in-degree is one
            std::vector<EdgeId> rest;
            for (EdgeId e : g.out_edges(u))
                if (e != head) rest.push_back(e);
            std::map<VertexId, std::vector<std::vector<EdgeId>>> partition;
            partition[u] = {rest, {head}};
            MoveResult mr = out_split(g, partition);
            head = mr.record.edge_map.at(cycle_in)[1];
            step(g, moves, std::move(mr), who);
        }
    }

    // Phase 4: shorten every trail to a single edge by sink-side
    // amalgamations; head edge ids are stable here.
    ms = require_structure(g, who);
    heads.clear();
    for (const Trail& t : trails(g, ms)) heads.push_back(t.edges.front());
    for (EdgeId head : heads) {
        while (true) {
            ms = require_structure(g, who);
            Trail t = find_trail_by_head(g, ms, head);
            if (t.length() <= 1) break;
            ms = shorten_at_sink(g, moves, ms, t, who);
        }
    }
    return NormalizeResult{std::move(g), std::move(moves)};
}

NormalizeResult canonicalize(const Graph& g0) {
    const std::string who = "canonicalize";
    NormalizeResult nr = normalize(g0);
    Graph g = std::move(nr.graph);
    std::vector<MoveRecord> moves = std::move(nr.moves);

    MeteorStructure ms = require_structure(g, who);
    const int p = ms.p, q = ms.q;
    const int period = std::gcd(p, q);
    std::vector<Trail> ts = trails(g, ms);
    VertexId v_base = ts.front().source();  // the common trail source
    VertexId w_base = ms.sink_cycle.vertex_order[0];

    std::vector<long long> raw = raw_counts_at(g, ms, v_base, w_base);
    int t_star = min_rotation_offset(raw);

    // Smallest positive S with S = 0 (mod p) and S = period (mod q); the
    // composite of S source-side splits and S sink-side amalgamations moves
    // one trail's attachment forward-distance by +period while restoring
    // its length and source.
    long long S = p;
    while ((S - period) % q != 0) S += p;

    // Retune each trail to the attachment distance that realises the
    // minimal rotation of the counts.
    std::vector<EdgeId> heads;
    for (const Trail& t : ts) heads.push_back(t.edges.front());
    for (EdgeId head0 : heads) {
        EdgeId head = head0;
        ms = require_structure(g, who);
        Trail t = find_trail_by_head(g, ms, head);
        int d_cur = cycle_distance(ms.sink_cycle, t.target(), w_base);
        long long n = floor_mod(1 + d_cur, period);  // raw residue class
        int d_tgt = static_cast<int>(
            (t_star + floor_mod(n - 1 - t_star, period)) % q);
        int delta = floor_mod(d_tgt - d_cur, q);
        if (delta % period != 0)
            throw graph_error("internal: retune step is not a multiple of "
                              "the profile period");
        long long composites = delta / period;
        for (long long c = 0; c < composites; ++c) {
            // Lengthen: S splits walking the trail's source around the
            // source cycle back to where it started.
            for (long long s = 0; s < S; ++s) {
                ms = require_structure(g, who);
                t = find_trail_by_head(g, ms, head);
                VertexId u = t.source();
                EdgeId cycle_in = g.in_edges(u).front();
                std::vector<EdgeId> rest;
                for (EdgeId e : g.out_edges(u))
                    if (e != head) rest.push_back(e);
                std::map<VertexId, std::vector<std::vector<EdgeId>>> part;
                part[u] = {rest, {head}};
                MoveResult mr = out_split(g, part);
                head = mr.record.edge_map.at(cycle_in)[1];
                if (u == v_base) v_base = mr.record.vertex_map.at(u)[0];
                step(g, moves, std::move(mr), who);
            }
            // Shorten: S sink-side amalgamations move the attachment.
            for (long long s = 0; s < S; ++s) {
                ms = require_structure(g, who);
                t = find_trail_by_head(g, ms, head);
                VertexId b = t.target();
                VertexId z = t.vertices[t.length() - 1];
                VertexId a = cycle_pred(ms.sink_cycle, b);
                MoveResult mr = in_amalgamate(g, {{a, z}});
                w_base = mr.record.vertex_map.at(w_base)[0];
                step(g, moves, std::move(mr), who);
            }
        }
        ms = require_structure(g, who);
        t = find_trail_by_head(g, ms, head);
        if (cycle_distance(ms.sink_cycle, t.target(), w_base) != d_tgt ||
            t.length() != 1)
            throw graph_error("internal: retune did not reach its target");
    }

    MeteorProfile pr;
    pr.p = p;
    pr.q = q;
    pr.period = period;
    pr.counts.resize(period);
    for (int i = 0; i < period; ++i)
        pr.counts[i] = raw[(i + t_star) % period];
    Graph canon = canonical_graph(pr);
    if (!is_isomorphic(g, canon))
        throw graph_error("internal: retuned graph is not isomorphic to the "
                          "canonical representative");
    return NormalizeResult{std::move(canon), std::move(moves)};
}

std::optional<Witness> witness(const Graph& g1, const Graph& g2) {
    if (!equivalent(g1, g2)) return std::nullopt;

    Witness w;
    if (g1 == g2) {
        for (VertexId v : g2.vertices()) w.isomorphism[v] = v;
        return w;
    }

    NormalizeResult c1 = canonicalize(g1);
    NormalizeResult c2 = canonicalize(g2);
    Graph h1 = replay(g1, c1.moves);
    Graph h2 = replay(g2, c2.moves);
    std::optional<std::map<VertexId, VertexId>> phi = is_isomorphic(h1, h2);
    if (!phi)
        throw graph_error("internal: canonical replays are not isomorphic");

    w.moves = c1.moves;
    bool first = true;
    for (auto it = c2.moves.rbegin(); it != c2.moves.rend(); ++it) {
        MoveRecord inv = invert(*it);
        if (first) {
            // The first inverted record applies to h2; rewrite its pre side
            // onto h1's ids, so the whole sequence replays from g1.
            std::map<VertexId, VertexId> phi_inv;
            for (const auto& [a, b] : *phi) phi_inv[b] = a;
            std::map<EdgeId, EdgeId> eps_inv;
            for (const auto& [a, b] : edge_bijection(h1, h2, *phi))
                eps_inv[b] = a;
            inv = relabel_pre(inv, phi_inv, eps_inv);
            first = false;
        }
        w.moves.push_back(std::move(inv));
    }

    Graph final_graph = replay(g1, w.moves);
    if (c2.moves.empty()) {
        // No inverted records: the replay ends at the first graph's
        // canonical form, which is isomorphic to (but not equal to) g2.
        w.isomorphism = *phi;
        if (!verify_isomorphism(final_graph, g2, w.isomorphism))
            throw graph_error(
                "internal: witness replay does not reproduce the second "
                "graph");
    } else {
        // Inverted records reproduce their recorded ids, so the replay ends
        // at g2 itself and the certificate's map is the identity.
        for (VertexId v : g2.vertices()) w.isomorphism[v] = v;
        if (!(final_graph == g2))
            throw graph_error(
                "internal: witness replay does not reproduce the second "
                "graph");
    }
    return w;
}

namespace {

/// Shared reduction state for vw_form: per-level coefficients of the source
/// basepoint plus mod-q coefficients of the sink basepoint.
struct Reduced {
    std::map<int, BigInt> v_levels;
    std::vector<BigInt> b;  // size q
};

/// Rewrites x over the two basepoints: interior and non-basepoint cycle
/// occurrences are eliminated by exact defining relations.
Reduced reduce_element(const Graph& g, const MeteorStructure& ms,
                       VertexId v_base, VertexId w_base,
                       const TalentedElement& x) {
    std::set<VertexId> c1 = to_set(ms.sink_cycle.vertex_order);
    Reduced red;
    red.b.assign(ms.q, BigInt(0));
    std::map<std::pair<VertexId, int>, BigInt> work;
    for (const auto& [key, k] : x) {
        if (!g.has_vertex(key.first))
            throw graph_error("vw_form: unknown vertex " +
                              std::to_string(key.first));
        work[key] += k;
    }
    while (!work.empty()) {
        auto it = work.begin();
        auto [u, level] = it->first;
        BigInt k = it->second;
        work.erase(it);
        if (k == 0) continue;
        if (u == v_base) {
            red.v_levels[level] += k;
        } else if (c1.count(u)) {
            red.b[floor_mod(level + cycle_distance(ms.sink_cycle, u, w_base),
                            ms.q)] += k;
        } else {
            // Source-cycle (non-basepoint) and interior occurrences flow
            // forward one step; levels strictly increase toward the sink
            // or toward the basepoint, so this terminates.
            for (EdgeId e : g.out_edges(u))
                work[{g.edge(e).dst, level + 1}] += k;
        }
    }
    // Drop cancelled levels.
    for (auto it = red.v_levels.begin(); it != red.v_levels.end();)
        it = it->second == 0 ? red.v_levels.erase(it) : std::next(it);
    return red;
}

/// One application of the basepoint push relation
///   v(l) = v(l + p) + sum over trails alpha of w(l + D_alpha),
/// moving coefficient c from level l upward.
void push_level(std::map<int, BigInt>& v_levels, std::vector<BigInt>& b,
                int l, const std::vector<long long>& trail_lengths, int p,
                int q) {
    BigInt c = v_levels.at(l);
    v_levels.erase(l);
    v_levels[l + p] += c;
    for (long long d : trail_lengths) b[floor_mod(l + d, q)] += c;
}

/// Collapses every residue stream to a single level inside the window
/// topped at J (J must be >= every occupied level).
void window_levels(std::map<int, BigInt>& v_levels, std::vector<BigInt>& b,
                   int J, const std::vector<long long>& trail_lengths, int p,
                   int q) {
    while (!v_levels.empty()) {
        int l = v_levels.begin()->first;  // lowest occupied level
        if (l > J - p) break;             // all levels inside (J-p, J]
        push_level(v_levels, b, l, trail_lengths, p, q);
    }
}

VWForm form_from(const std::map<int, BigInt>& v_levels,
                 const std::vector<BigInt>& b, int J, int p) {
    VWForm f;
    f.b = b;
    f.a.assign(p, BigInt(0));
    if (v_levels.empty()) {
        f.j = 0;
        return f;
    }
    f.j = J;
    for (const auto& [l, c] : v_levels) f.a[J - l] += c;
    return f;
}

std::vector<long long> trail_through_lengths(const Graph& g,
                                             const MeteorStructure& ms,
                                             VertexId v_base,
                                             VertexId w_base) {
    std::vector<long long> out;
    for (const Trail& t : trails(g, ms))
        out.push_back(through_length(ms, t, v_base, w_base));
    return out;
}

}  // namespace

VWForm vw_form(const Graph& g, const TalentedElement& x) {
    MeteorStructure ms = require_structure(g, "vw_form");
    VertexId v_base = ms.source_cycle.vertex_order[0];
    VertexId w_base = ms.sink_cycle.vertex_order[0];
    std::vector<long long> lens =
        trail_through_lengths(g, ms, v_base, w_base);
    Reduced red = reduce_element(g, ms, v_base, w_base, x);
    int J = red.v_levels.empty() ? 0 : red.v_levels.rbegin()->first;
    window_levels(red.v_levels, red.b, J, lens, ms.p, ms.q);
    return form_from(red.v_levels, red.b, J, ms.p);
}

bool talented_equal(const Graph& g, const TalentedElement& x,
                    const TalentedElement& y) {
    MeteorStructure ms = require_structure(g, "talented_equal");
    VertexId v_base = ms.source_cycle.vertex_order[0];
    VertexId w_base = ms.sink_cycle.vertex_order[0];
    std::vector<long long> lens =
        trail_through_lengths(g, ms, v_base, w_base);

    Reduced rx = reduce_element(g, ms, v_base, w_base, x);
    Reduced ry = reduce_element(g, ms, v_base, w_base, y);
    if (rx.v_levels.empty() != ry.v_levels.empty()) return false;
    if (rx.v_levels.empty()) return rx.b == ry.b;
    int J = std::max(rx.v_levels.rbegin()->first,
                     ry.v_levels.rbegin()->first);
    window_levels(rx.v_levels, rx.b, J, lens, ms.p, ms.q);
    window_levels(ry.v_levels, ry.b, J, lens, ms.p, ms.q);
    return form_from(rx.v_levels, rx.b, J, ms.p) ==
           form_from(ry.v_levels, ry.b, J, ms.p);
}

}  // namespace meteor
