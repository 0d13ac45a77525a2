// talented.cpp — level-graded elements, covering graphs, leaf sets,
// hereditary/saturated closures, and minimal periodic orbits.

#include "meteor/talented.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace meteor {

namespace {

void add_term(TalentedElement& x, VertexId v, int level, long long k) {
    if (k == 0) return;
    auto key = std::make_pair(v, level);
    auto it = x.find(key);
    if (it == x.end()) {
        x.emplace(key, k);
    } else {
        it->second += k;
        if (it->second == 0) x.erase(it);
    }
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// Splits on '+' at parenthesis depth zero.
std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '+' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

VertexId CoveringGraph::vertex_at(VertexId v, int layer) const {
    if (layer < lo || layer > hi)
        throw graph_error("covering graph: layer " + std::to_string(layer) +
                          " outside window [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    auto it = std::lower_bound(base_vertices.begin(), base_vertices.end(), v);
    if (it == base_vertices.end() || *it != v)
        throw graph_error("covering graph: unknown base vertex " +
                          std::to_string(v));
    int pos = static_cast<int>(it - base_vertices.begin());
    return (layer - lo) * base_vertex_count + pos;
}

std::pair<VertexId, int> CoveringGraph::base_of(VertexId cv) const {
    int total = base_vertex_count * (hi - lo + 1);
    if (cv < 0 || cv >= total)
        throw graph_error("covering graph: unknown vertex " +
                          std::to_string(cv));
    int layer = lo + cv / base_vertex_count;
    int pos = cv % base_vertex_count;
    return {base_vertices[pos], layer};
}

CoveringGraph covering_graph(const Graph& g, int lo, int hi) {
    if (lo > hi)
        throw graph_error("covering graph: empty window [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    CoveringGraph cov;
    cov.lo = lo;
    cov.hi = hi;
    cov.base_vertices = g.vertices();
    for (const Edge& e : g.edges()) cov.base_edges.push_back(e.id);
    cov.base_vertex_count = static_cast<int>(cov.base_vertices.size());
    cov.base_edge_count = static_cast<int>(cov.base_edges.size());

    std::vector<VertexId> vs;
    std::vector<Edge> es;
    std::map<VertexId, std::string> vlabels;
    std::map<EdgeId, std::string> elabels;

    const int layers = hi - lo + 1;
    for (int li = 0; li < layers; ++li) {
        for (int pos = 0; pos < cov.base_vertex_count; ++pos) {
            VertexId id = li * cov.base_vertex_count + pos;
            vs.push_back(id);
            vlabels[id] = g.vertex_label(cov.base_vertices[pos]) + "@" +
                          std::to_string(lo + li);
        }
    }
    for (int li = 0; li + 1 < layers; ++li) {
        for (int pos = 0; pos < cov.base_edge_count; ++pos) {
            const Edge& e = g.edge(cov.base_edges[pos]);
            EdgeId id = li * cov.base_edge_count + pos;
            VertexId src = li * cov.base_vertex_count +
                           static_cast<int>(g.vertex_position(e.src));
            VertexId dst = (li + 1) * cov.base_vertex_count +
                           static_cast<int>(g.vertex_position(e.dst));
            es.push_back(Edge{id, src, dst});
            elabels[id] =
                g.edge_label(e.id) + "@" + std::to_string(lo + li);
        }
    }
    cov.graph = Graph(vs, es, vlabels, elabels);
    return cov;
}

TalentedElement talented_flow_step(const Graph& g, const TalentedElement& x,
                                   VertexId v, int level) {
    auto it = x.find({v, level});
    if (it == x.end() || it->second <= 0)
        throw graph_error("talented_flow_step: no occurrence of vertex " +
                          std::to_string(v) + " at level " +
                          std::to_string(level));
    if (g.is_sink(v))
        throw graph_error("talented_flow_step: vertex " + std::to_string(v) +
                          " is a sink and admits no rewrite");
    TalentedElement y = x;
    add_term(y, v, level, -1);
    for (EdgeId e : g.out_edges(v)) add_term(y, g.edge(e).dst, level + 1, 1);
    return y;
}

TalentedElement shift(const TalentedElement& x, int n) {
    TalentedElement y;
    for (const auto& [key, k] : x) y.emplace(std::make_pair(key.first, key.second + n), k);
    return y;
}

TalentedElement parse_talented_element(const Graph& g,
                                       const std::string& text) {
    const std::string whole = trim(text);
    if (whole.empty()) throw graph_error("empty graded expression");
    if (whole == "0") return {};

    std::map<std::string, std::vector<VertexId>> by_label;
    for (VertexId v : g.vertices()) by_label[g.vertex_label(v)].push_back(v);

    TalentedElement out;
    for (std::string term : split_terms(whole)) {
        term = trim(term);
        if (term.empty())
            throw graph_error("empty term in graded expression '" + whole +
                              "'");
        long long mult = 1;
        std::string body = term;
        size_t star = term.find('*');
        if (star != std::string::npos) {
            const std::string num = trim(term.substr(0, star));
            body = trim(term.substr(star + 1));
            if (num.empty() ||
                !std::all_of(num.begin(), num.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                }))
                throw graph_error("bad multiplier '" + num + "' in term '" +
                                  term + "'");
            mult = std::stoll(num);
            if (mult <= 0)
                throw graph_error("multiplier must be positive in term '" +
                                  term + "'");
        }
        if (body.empty() || body.back() != ')')
            throw graph_error("term '" + term +
                              "' must end with a parenthesised level");
        size_t open = body.rfind('(');
        if (open == std::string::npos)
            throw graph_error("term '" + term + "' is missing '('");
        const std::string label = trim(body.substr(0, open));
        const std::string level_str =
            trim(body.substr(open + 1, body.size() - open - 2));
        if (label.empty())
            throw graph_error("missing vertex label in term '" + term + "'");
        if (level_str.empty())
            throw graph_error("missing level in term '" + term + "'");
        int level = 0;
        try {
            size_t used = 0;
            level = std::stoi(level_str, &used);
            if (used != level_str.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw graph_error("bad level '" + level_str + "' in term '" +
                              term + "'");
        }

        auto it = by_label.find(label);
        if (it != by_label.end()) {
            if (it->second.size() > 1)
                throw graph_error("vertex label '" + label +
                                  "' is ambiguous");
            add_term(out, it->second.front(), level, mult);
            continue;
        }
        if (std::all_of(label.begin(), label.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            })) {
            VertexId v = std::stoi(label);
            if (g.has_vertex(v)) {
                add_term(out, v, level, mult);
                continue;
            }
        }
        throw graph_error("unknown vertex '" + label + "' in expression '" +
                          whole + "'");
    }
    return out;
}

std::string talented_element_to_string(const Graph& g,
                                       const TalentedElement& x) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [key, k] : x) {
        if (!out.empty()) out += " + ";
        if (k != 1) out += std::to_string(k) + "*";
        out += g.vertex_label(key.first) + "(" + std::to_string(key.second) +
               ")";
    }
    return out;
}

std::set<VertexId> support_vertices(const TalentedElement& x) {
    std::set<VertexId> out;
    for (const auto& [key, k] : x) out.insert(key.first);
    return out;
}

MonoidElement element_in_covering(const CoveringGraph& cov,
                                  const TalentedElement& x) {
    MonoidElement out;
    for (const auto& [key, k] : x)
        out[cov.vertex_at(key.first, key.second)] += k;
    return out;
}

std::set<VertexId> one_step_leaf(const Graph& g, const std::set<VertexId>& a) {
    std::set<VertexId> out;
    for (VertexId v : a) {
        if (g.is_sink(v)) {
            out.insert(v);
        } else {
            for (EdgeId e : g.out_edges(v)) out.insert(g.edge(e).dst);
        }
    }
    return out;
}

LeafSet leaf_set(const Graph& g, const std::set<VertexId>& a) {
    // Iterate the one-step operator; the orbit lives in a finite power set,
    // so it eventually enters a cycle.  Return the union over that cycle.
    std::map<std::set<VertexId>, int> index_of;
    std::vector<std::set<VertexId>> orbit;
    std::set<VertexId> cur = a;
    while (!index_of.count(cur)) {
        index_of.emplace(cur, static_cast<int>(orbit.size()));
        orbit.push_back(cur);
        cur = one_step_leaf(g, cur);
    }
    int start = index_of[cur];
    LeafSet out;
    for (size_t i = start; i < orbit.size(); ++i)
        out.insert(orbit[i].begin(), orbit[i].end());
    return out;
}

bool is_hereditary(const Graph& g, const std::set<VertexId>& h) {
    for (VertexId v : h)
        for (EdgeId e : g.out_edges(v))
            if (!h.count(g.edge(e).dst)) return false;
    return true;
}

std::set<VertexId> saturation(const Graph& g, const std::set<VertexId>& x) {
    std::set<VertexId> h = x;
    bool changed = true;
    while (changed) {
        changed = false;
        // Hereditary closure: add ranges of edges leaving the set.
        std::deque<VertexId> work(h.begin(), h.end());
        while (!work.empty()) {
            VertexId v = work.front();
            work.pop_front();
            for (EdgeId e : g.out_edges(v)) {
                VertexId w = g.edge(e).dst;
                if (h.insert(w).second) {
                    work.push_back(w);
                    changed = true;
                }
            }
        }
        // Saturation rule: a non-sink vertex all of whose edge ranges lie in
        // the set joins the set.
        for (VertexId v : g.vertices()) {
            if (h.count(v) || g.is_sink(v)) continue;
            bool all_in = true;
            for (EdgeId e : g.out_edges(v))
                if (!h.count(g.edge(e).dst)) {
                    all_in = false;
                    break;
                }
            if (all_in) {
                h.insert(v);
                changed = true;
            }
        }
    }
    return h;
}

LeafSet archimedean_class(const Graph& g, const TalentedElement& x) {
    return leaf_set(g, support_vertices(x));
}

std::vector<Cycle> minimal_periodic_orbits(const Graph& g) {
    std::vector<Cycle> out;
    for (const Cycle& c : simple_cycles(g)) {
        bool minimal = true;
        for (VertexId v : c.vertex_order)
            if (g.out_degree(v) != 1) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(c);
    }
    return out;
}

}  // namespace meteor
