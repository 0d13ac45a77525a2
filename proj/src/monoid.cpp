// monoid.cpp — graph monoid elements and the bounded confluence search.

#include "meteor/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace meteor {

namespace {

void add_term(MonoidElement& x, VertexId v, long long k) {
    if (k == 0) return;
    auto it = x.find(v);
    if (it == x.end()) {
        x.emplace(v, k);
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

/// Expands every element of `frontier` by all one-step flows, adding unseen
/// results to `seen` and replacing `frontier` with the newly added elements.
/// Returns true when nothing new was found (the closure is complete).
bool closure_sweep(const Graph& g, std::set<MonoidElement>& seen,
                   std::vector<MonoidElement>& frontier) {
    std::vector<MonoidElement> next;
    for (const MonoidElement& x : frontier) {
        for (const auto& [v, mult] : x) {
            if (g.is_sink(v)) continue;
            MonoidElement y = flow_step(g, x, v);
            if (seen.insert(y).second) next.push_back(std::move(y));
        }
    }
    frontier = std::move(next);
    return frontier.empty();
}

bool any_member_of(const std::vector<MonoidElement>& xs,
                   const std::set<MonoidElement>& s) {
    for (const MonoidElement& x : xs)
        if (s.count(x)) return true;
    return false;
}

}  // namespace

std::string monoid_verdict_name(MonoidVerdict v) {
    switch (v) {
        case MonoidVerdict::equal: return "equal";
        case MonoidVerdict::unequal_within_bound: return "unequal_within_bound";
        case MonoidVerdict::unknown: return "unknown";
    }
    return "unknown";
}

MonoidElement monoid_add(const MonoidElement& x, const MonoidElement& y) {
    MonoidElement out = x;
    for (const auto& [v, k] : y) add_term(out, v, k);
    return out;
}

MonoidElement parse_monoid_element(const Graph& g, const std::string& text) {
    const std::string whole = trim(text);
    if (whole.empty()) throw graph_error("empty monoid expression");
    if (whole == "0") return {};
    if (whole.back() == '+')  // getline would silently drop the empty tail
        throw graph_error("empty term in monoid expression '" + whole + "'");

    // Label -> id lookup; ambiguous labels are rejected at use.
    std::map<std::string, std::vector<VertexId>> by_label;
    for (VertexId v : g.vertices()) by_label[g.vertex_label(v)].push_back(v);

    MonoidElement out;
    std::stringstream ss(whole);
    std::string term;
    while (std::getline(ss, term, '+')) {
        term = trim(term);
        if (term.empty())
            throw graph_error("empty term in monoid expression '" + whole + "'");
        long long mult = 1;
        std::string label = term;
        size_t star = term.find('*');
        if (star != std::string::npos) {
            const std::string num = trim(term.substr(0, star));
            label = trim(term.substr(star + 1));
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
        } else {
            // Allow "2 v" (multiplier separated by whitespace).
            size_t sp = term.find_first_of(" \t");
            if (sp != std::string::npos) {
                const std::string head = term.substr(0, sp);
                if (std::all_of(head.begin(), head.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                    })) {
                    mult = std::stoll(head);
                    if (mult <= 0)
                        throw graph_error(
                            "multiplier must be positive in term '" + term +
                            "'");
                    label = trim(term.substr(sp + 1));
                }
            }
        }
        if (label.empty())
            throw graph_error("missing vertex label in term '" + term + "'");

        auto it = by_label.find(label);
        if (it != by_label.end()) {
            if (it->second.size() > 1)
                throw graph_error("vertex label '" + label + "' is ambiguous");
            add_term(out, it->second.front(), mult);
            continue;
        }
        // Fall back to a raw numeric vertex id.
        if (std::all_of(label.begin(), label.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
            })) {
            VertexId v = std::stoi(label);
            if (g.has_vertex(v)) {
                add_term(out, v, mult);
                continue;
            }
        }
        throw graph_error("unknown vertex '" + label + "' in expression '" +
                          whole + "'");
    }
    return out;
}

std::string monoid_element_to_string(const Graph& g, const MonoidElement& x) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [v, k] : x) {
        if (!out.empty()) out += " + ";
        if (k != 1) out += std::to_string(k) + "*";
        out += g.vertex_label(v);
    }
    return out;
}

MonoidElement flow_step(const Graph& g, const MonoidElement& x, VertexId v) {
    auto it = x.find(v);
    if (it == x.end() || it->second <= 0)
        throw graph_error("flow_step: vertex " + std::to_string(v) +
                          " does not occur in the element");
    if (g.is_sink(v))
        throw graph_error("flow_step: vertex " + std::to_string(v) +
                          " is a sink and admits no rewrite");
    MonoidElement y = x;
    add_term(y, v, -1);
    for (EdgeId e : g.out_edges(v)) add_term(y, g.edge(e).dst, 1);
    return y;
}

std::vector<MonoidElement> flow_successors(const Graph& g,
                                           const MonoidElement& x, int depth) {
    std::set<MonoidElement> seen{x};
    std::vector<MonoidElement> frontier{x};
    for (int step = 0; step < depth && !frontier.empty(); ++step)
        closure_sweep(g, seen, frontier);
    return {seen.begin(), seen.end()};
}

MonoidVerdict monoid_equal(const Graph& g, const MonoidElement& a,
                           const MonoidElement& b, int depth) {
    // The monoid is conical: zero is equal only to zero.
    if (a.empty() || b.empty())
        return (a.empty() && b.empty()) ? MonoidVerdict::equal
                                        : MonoidVerdict::unequal_within_bound;
    if (a == b) return MonoidVerdict::equal;

    std::set<MonoidElement> seen_a{a}, seen_b{b};
    std::vector<MonoidElement> frontier_a{a}, frontier_b{b};
    bool done_a = false, done_b = false;

    for (int sweep = 0; sweep < depth && !(done_a && done_b); ++sweep) {
        if (!done_a) {
            done_a = closure_sweep(g, seen_a, frontier_a);
            if (any_member_of(frontier_a, seen_b)) return MonoidVerdict::equal;
        }
        if (!done_b) {
            done_b = closure_sweep(g, seen_b, frontier_b);
            if (any_member_of(frontier_b, seen_a)) return MonoidVerdict::equal;
        }
    }
    // Both closures are complete and disjoint: genuinely distinct elements.
    if (done_a && done_b) return MonoidVerdict::unequal_within_bound;
    return MonoidVerdict::unknown;
}

}  // namespace meteor
