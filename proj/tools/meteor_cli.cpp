// meteor_cli.cpp — command-line front end.
//
// Subcommands: analyze, equiv, moves, normalize, canonicalize,
// witness-verify, sse, se, monoid.  Every run emits a report (human-readable
// by default, JSON with --json) that echoes the command, input digests, and
// the search bounds in effect.
//
// Exit codes: 0 = decided (either verdict), 2 = undecided at the given
// bounds, 1 = input error.

#include <chrono>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "meteor/graph.hpp"
#include "meteor/graph_io.hpp"
#include "meteor/matrix_dynamics.hpp"
#include "meteor/meteor.hpp"
#include "meteor/monoid.hpp"
#include "meteor/moves.hpp"
#include "meteor/serial.hpp"
#include "meteor/talented.hpp"

namespace {

using nlohmann::json;
using namespace meteor;

constexpr int kExitDecided = 0;
constexpr int kExitInputError = 1;
constexpr int kExitUndecided = 2;

/// Collects the pieces of one report while a command runs.
struct Run {
    std::string command;
    bool json_mode = false;
    std::optional<long long> seed;
    json inputs = json::array();
    json params = json::object();
    json result = json::object();
    std::vector<std::string> lines;  // human-readable output
    std::chrono::steady_clock::time_point started =
        std::chrono::steady_clock::now();

    /// Reads a file, recording its digest in the report.
    std::string slurp(const std::string& path) {
        std::string content = read_file(path);
        inputs.push_back(
            {{"path", path}, {"digest", content_digest(content)}});
        return content;
    }

    Graph load_graph(const std::string& path) {
        return parse_graph_auto(slurp(path));
    }

    IntMatrix load_matrix(const std::string& path) {
        return parse_matrix(slurp(path));
    }

    void say(const std::string& line) { lines.push_back(line); }

    int finish(int code) {
        auto elapsed = std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started);
        if (json_mode) {
            json report;
            report["command"] = command;
            report["inputs"] = inputs;
            if (seed) params["seed"] = *seed;
            report["params"] = params;
            report["result"] = result;
            report["elapsed_ms"] = elapsed.count();
            std::cout << report.dump(2) << "\n";
        } else {
            for (const std::string& line : lines) std::cout << line << "\n";
        }
        return code;
    }
};

std::string ids_to_string(const std::vector<VertexId>& ids) {
    std::string s = "{";
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(ids[i]);
    }
    return s + "}";
}

json profile_json(const MeteorProfile& pr) {
    return {{"p", pr.p},
            {"q", pr.q},
            {"period", pr.period},
            {"counts", pr.counts}};
}

std::string profile_string(const MeteorProfile& pr) {
    std::string s = "p=" + std::to_string(pr.p) + " q=" + std::to_string(pr.q) +
                    " period=" + std::to_string(pr.period) + " counts=[";
    for (size_t i = 0; i < pr.counts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(pr.counts[i]);
    }
    return s + "]";
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).convert_to<long long>());
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(Run& run, const std::string& path) {
    Graph g = run.load_graph(path);

    bool essential = is_essential(g);
    bool connected = is_weakly_connected(g);
    SccDecomposition scc = scc_decomposition(g);
    std::vector<Cycle> cycles = simple_cycles(g);
    RecognitionResult rec = recognize(g);

    run.result["vertices"] = g.vertex_count();
    run.result["edges"] = g.edge_count();
    run.result["essential"] = essential;
    run.result["weakly_connected"] = connected;
    json sccs = json::array();
    for (const auto& comp : scc.components) sccs.push_back(comp);
    run.result["sccs"] = std::move(sccs);
    json cyc = json::array();
    for (const Cycle& c : cycles) cyc.push_back(c.vertex_order);
    run.result["cycles"] = std::move(cyc);
    run.result["meteor"] = {{"is_meteor", rec.is_meteor},
                            {"reason", meteor_reason_name(rec.reason)},
                            {"detail", rec.detail}};

    run.say("vertices: " + std::to_string(g.vertex_count()) +
            ", edges: " + std::to_string(g.edge_count()));
    run.say(std::string("essential: ") + (essential ? "yes" : "no"));
    run.say(std::string("weakly connected: ") + (connected ? "yes" : "no"));
    run.say("strongly connected components: " +
            std::to_string(scc.components.size()));
    run.say("simple cycles: " + std::to_string(cycles.size()));

    if (rec.is_meteor) {
        MeteorProfile pr = profile(g);
        const MeteorStructure& ms = *rec.structure;
        run.result["profile"] = profile_json(pr);
        run.result["source_cycle"] = ms.source_cycle.vertex_order;
        run.result["sink_cycle"] = ms.sink_cycle.vertex_order;
        std::vector<long long> lengths = through_lengths(g);
        run.result["trail_count"] = lengths.size();
        run.result["through_lengths"] = lengths;
        run.say("meteor: yes (p=" + std::to_string(ms.p) +
                ", q=" + std::to_string(ms.q) + ")");
        run.say("profile: " + profile_string(pr));
        run.say("trails: " + std::to_string(lengths.size()));
    } else {
        run.say("meteor: no (" + meteor_reason_name(rec.reason) +
                "): " + rec.detail);
    }

    // Leaf sets of the singletons, and the count of distinct Archimedean
    // classes (order-ideal classes): the union-closure of the singleton leaf
    // sets, plus one for the zero class.
    json leaves = json::object();
    std::set<std::set<VertexId>> distinct;
    for (VertexId v : g.vertices()) {
        LeafSet ls = leaf_set(g, {v});
        leaves[std::to_string(v)] = std::vector<VertexId>(ls.begin(), ls.end());
        distinct.insert(ls);
        run.say("leaf set of " + g.vertex_label(v) + ": " +
                ids_to_string({ls.begin(), ls.end()}));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<VertexId>> have(distinct.begin(), distinct.end());
        for (const auto& a : have)
            for (const auto& b : have) {
                std::set<VertexId> u = a;
                u.insert(b.begin(), b.end());
                if (distinct.insert(u).second) grew = true;
            }
    }
    size_t classes = distinct.size() + 1;  // the zero class
    run.result["leaf_sets"] = std::move(leaves);
    run.result["archimedean_class_count"] = classes;
    run.say("archimedean classes (including zero): " +
            std::to_string(classes));

    return run.finish(kExitDecided);
}

// ------------------------------------------------------------------ equiv

int cmd_equiv(Run& run, const std::string& path1, const std::string& path2,
              const std::string& witness_out) {
    Graph g1 = run.load_graph(path1);
    Graph g2 = run.load_graph(path2);

    RecognitionResult r1 = recognize(g1);
    if (!r1.is_meteor) {
        std::cerr << "error: first graph is not a meteor graph ("
                  << meteor_reason_name(r1.reason) << "): " << r1.detail
                  << "\n";
        return kExitInputError;
    }
    run.result["profile1"] = profile_json(profile(g1));

    ClosureReport cr = closure_check(g1, g2);
    run.result["g2_essential"] = cr.g2_essential;
    run.result["g2_meteor"] = cr.g2_meteor;
    if (!cr.definitive) {
        std::cerr << "error: " << cr.message << "\n";
        return kExitInputError;
    }
    run.result["equivalent"] = cr.equivalent;
    run.result["message"] = cr.message;
    if (cr.g2_meteor) run.result["profile2"] = profile_json(profile(g2));
    run.say(std::string("equivalent: ") + (cr.equivalent ? "yes" : "no"));
    run.say(cr.message);

    if (!witness_out.empty()) {
        if (!cr.equivalent) {
            run.result["witness"] = nullptr;
            run.say("no witness: graphs are not equivalent");
        } else {
            std::optional<Witness> w = witness(g1, g2);
            if (!w)
                throw graph_error(
                    "internal inconsistency: equivalent graphs but no "
                    "witness");
            Graph replayed = replay(g1, w->moves);
            if (!verify_isomorphism(replayed, g2, w->isomorphism))
                throw graph_error(
                    "internal inconsistency: witness failed verification");
            write_file(witness_out, witness_to_json(*w));
            run.result["witness"] = {{"path", witness_out},
                                     {"moves", w->moves.size()},
                                     {"verified", true}};
            run.say("witness: " + std::to_string(w->moves.size()) +
                    " moves, replay verified, written to " + witness_out);
        }
    }
    return run.finish(kExitDecided);
}

// ------------------------------------------------------------------ moves

std::vector<MoveRecord> load_moves(const std::string& content) {
    json j = json::parse(content, nullptr, false);
    if (j.is_discarded()) throw parse_error("move file: not valid JSON");
    if (j.is_array()) {
        // A bare array of records: route through the witness parser.
        json wrapped;
        wrapped["moves"] = j;
        wrapped["isomorphism"] = json::object();
        return parse_witness_json(wrapped.dump()).moves;
    }
    return parse_witness_json(content).moves;
}

int cmd_moves(Run& run, const std::string& graph_path,
              const std::string& moves_path, bool check_profile,
              const std::string& out_path) {
    Graph g = run.load_graph(graph_path);
    std::vector<MoveRecord> records = load_moves(run.slurp(moves_path));
    run.params["check_profile"] = check_profile;

    std::optional<MeteorProfile> base;
    if (check_profile) base = profile(g);  // throws when not meteor

    Graph current = g;
    bool preserved = true;
    for (size_t i = 0; i < records.size(); ++i) {
        try {
            current = apply_record(current, records[i]).graph;
        } catch (const move_error& err) {
            std::cerr << "error: record " << i << ": " << err.what() << "\n";
            return kExitInputError;
        }
        if (check_profile) {
            std::string note;
            try {
                MeteorProfile pr = profile(current);
                if (!(pr == *base))
                    note = "profile changed to " + profile_string(pr);
            } catch (const graph_error& err) {
                note = err.what();
            }
            if (!note.empty()) {
                preserved = false;
                run.result["first_violation"] = {{"index", i},
                                                 {"detail", note}};
                run.say("profile violated at record " + std::to_string(i) +
                        ": " + note);
                break;
            }
        }
    }

    run.result["moves_applied"] =
        run.result.contains("first_violation")
            ? run.result["first_violation"]["index"].get<size_t>() + 1
            : records.size();
    if (check_profile) run.result["profile_preserved"] = preserved;
    run.result["graph"] = graph_to_text(current);
    if (!out_path.empty()) {
        write_file(out_path, graph_to_text(current));
        run.result["out"] = out_path;
    }
    run.say("applied " + std::to_string(records.size()) + " moves: " +
            std::to_string(current.vertex_count()) + " vertices, " +
            std::to_string(current.edge_count()) + " edges");
    if (check_profile && preserved)
        run.say("profile preserved by every move");
    return run.finish(kExitDecided);
}

// ------------------------------------------- normalize and canonicalize

int cmd_normalize(Run& run, const std::string& path, bool quasi,
                  const std::string& out_path, const std::string& moves_out) {
    Graph g = run.load_graph(path);
    run.params["quasi"] = quasi;
    NormalizeResult nr = quasi ? quasi_normalize(g) : normalize(g);

    run.result["moves"] = nr.moves.size();
    run.result["graph"] = graph_to_text(nr.graph);
    run.result["profile"] = profile_json(profile(nr.graph));
    if (!out_path.empty()) {
        write_file(out_path, graph_to_text(nr.graph));
        run.result["out"] = out_path;
    }
    if (!moves_out.empty()) {
        Witness w;
        w.moves = nr.moves;
        for (VertexId v : nr.graph.vertices()) w.isomorphism[v] = v;
        write_file(moves_out, witness_to_json(w));
        run.result["moves_out"] = moves_out;
    }
    run.say(std::string(quasi ? "quasi-normal" : "normal") + " form reached in " +
            std::to_string(nr.moves.size()) + " moves");
    run.say("result: " + std::to_string(nr.graph.vertex_count()) +
            " vertices, " + std::to_string(nr.graph.edge_count()) + " edges");
    return run.finish(kExitDecided);
}

int cmd_canonicalize(Run& run, const std::string& path,
                     const std::string& out_path,
                     const std::string& moves_out,
                     const std::string& profile_out) {
    Graph g = run.load_graph(path);
    NormalizeResult nr = canonicalize(g);
    MeteorProfile pr = profile(nr.graph);

    run.result["moves"] = nr.moves.size();
    run.result["graph"] = graph_to_text(nr.graph);
    run.result["profile"] = profile_json(pr);
    if (!out_path.empty()) {
        write_file(out_path, graph_to_text(nr.graph));
        run.result["out"] = out_path;
    }
    if (!moves_out.empty()) {
        Graph replayed = replay(g, nr.moves);
        std::optional<std::map<VertexId, VertexId>> iso =
            is_isomorphic(replayed, nr.graph);
        if (!iso)
            throw graph_error(
                "internal inconsistency: replay is not isomorphic to the "
                "canonical graph");
        Witness w;
        w.moves = nr.moves;
        w.isomorphism = *iso;
        write_file(moves_out, witness_to_json(w));
        run.result["moves_out"] = moves_out;
    }
    if (!profile_out.empty()) {
        write_file(profile_out, profile_to_json(pr));
        run.result["profile_out"] = profile_out;
    }
    run.say("canonical form reached in " + std::to_string(nr.moves.size()) +
            " moves");
    run.say("profile: " + profile_string(pr));
    return run.finish(kExitDecided);
}

// --------------------------------------------------------- witness-verify

int cmd_witness_verify(Run& run, const std::string& path1,
                       const std::string& path2,
                       const std::string& witness_path) {
    Graph g1 = run.load_graph(path1);
    Graph g2 = run.load_graph(path2);
    Witness w = parse_witness_json(run.slurp(witness_path));

    run.result["moves"] = w.moves.size();
    bool valid = true;
    std::string detail = "replay matches the second graph";
    Graph current = g1;
    for (size_t i = 0; i < w.moves.size(); ++i) {
        try {
            current = apply_record(current, w.moves[i]).graph;
        } catch (const move_error& err) {
            valid = false;
            detail = "record " + std::to_string(i) + ": " + err.what();
            break;
        }
    }
    if (valid && !verify_isomorphism(current, g2, w.isomorphism)) {
        valid = false;
        detail = "the recorded vertex map is not an isomorphism onto the "
                 "second graph";
    }
    run.result["valid"] = valid;
    run.result["detail"] = detail;
    run.say(std::string("witness: ") + (valid ? "valid" : "INVALID"));
    run.say(detail);
    return run.finish(kExitDecided);
}

// ---------------------------------------------------------------- sse / se

int cmd_sse(Run& run, const std::string& path1, const std::string& path2,
            int chain_bound, long long entry_bound, int inner_dim_bound,
            const std::string& out_path) {
    IntMatrix a = run.load_matrix(path1);
    IntMatrix b = run.load_matrix(path2);
    run.params["chain_bound"] = chain_bound;
    run.params["entry_bound"] = entry_bound;
    run.params["inner_dim_bound"] = inner_dim_bound;

    std::optional<std::vector<SsePair>> chain =
        sse_chain(a, b, chain_bound, entry_bound, inner_dim_bound);
    if (!chain) {
        run.result["found"] = false;
        run.result["verdict"] = "undecided_at_bound";
        run.say("no chain of elementary equivalences within bounds "
                "(chain <= " +
                std::to_string(chain_bound) + ", entries <= " +
                std::to_string(entry_bound) + ", inner dimension <= " +
                std::to_string(inner_dim_bound) + ")");
        return run.finish(kExitUndecided);
    }

    run.result["found"] = true;
    run.result["chain_length"] = chain->size();
    json links = json::array();
    for (const SsePair& pair : *chain)
        links.push_back({{"R", matrix_json(pair.R)},
                         {"S", matrix_json(pair.S)}});
    run.result["chain"] = std::move(links);
    if (!chain->empty()) {
        SeWitness composed = compose_chain(a, b, *chain);
        run.result["composed_lag"] = composed.lag;
    }
    if (!out_path.empty()) {
        write_file(out_path, sse_chain_to_json(*chain));
        run.result["out"] = out_path;
    }
    run.say("chain of " + std::to_string(chain->size()) +
            " elementary equivalences found and verified");
    return run.finish(kExitDecided);
}

int cmd_se(Run& run, const std::string& path1, const std::string& path2,
           int lag_bound, long long entry_bound, const std::string& out_path) {
    IntMatrix a = run.load_matrix(path1);
    IntMatrix b = run.load_matrix(path2);
    run.params["lag_bound"] = lag_bound;
    run.params["entry_bound"] = entry_bound;

    std::optional<SeWitness> w =
        shift_equivalent(a, b, lag_bound, entry_bound);
    if (!w) {
        run.result["found"] = false;
        run.result["verdict"] = "undecided_at_bound";
        run.say("no lagged witness within bounds (lag <= " +
                std::to_string(lag_bound) + ", entries <= " +
                std::to_string(entry_bound) + ")");
        return run.finish(kExitUndecided);
    }
    run.result["found"] = true;
    run.result["lag"] = w->lag;
    run.result["R"] = matrix_json(w->R);
    run.result["S"] = matrix_json(w->S);
    if (!out_path.empty()) {
        write_file(out_path, se_witness_to_json(*w));
        run.result["out"] = out_path;
    }
    run.say("witness found at lag " + std::to_string(w->lag));
    return run.finish(kExitDecided);
}

// ----------------------------------------------------------------- monoid

bool looks_talented(const std::string& expr) {
    return expr.find('(') != std::string::npos;
}

int cmd_monoid(Run& run, const std::string& path, const std::string& expr1,
               const std::string& expr2, int depth) {
    Graph g = run.load_graph(path);
    run.params["depth"] = depth;
    run.params["expr1"] = expr1;
    run.params["expr2"] = expr2;

    bool t1 = looks_talented(expr1), t2 = looks_talented(expr2);
    if (t1 != t2) {
        std::cerr << "error: cannot mix a level-graded expression with a "
                     "plain one\n";
        return kExitInputError;
    }

    if (t1) {
        RecognitionResult rec = recognize(g);
        if (!rec.is_meteor) {
            std::cerr << "error: exact comparison of level-graded "
                         "expressions needs a meteor graph ("
                      << meteor_reason_name(rec.reason) << "): " << rec.detail
                      << "\n";
            return kExitInputError;
        }
        TalentedElement x = parse_talented_element(g, expr1);
        TalentedElement y = parse_talented_element(g, expr2);
        bool eq = talented_equal(g, x, y);
        run.result["procedure"] = "graded_exact";
        run.result["verdict"] = eq ? "equal" : "unequal";
        run.say(std::string("verdict: ") + (eq ? "equal" : "unequal") +
                " (exact graded comparison)");
        return run.finish(kExitDecided);
    }

    MonoidElement a = parse_monoid_element(g, expr1);
    MonoidElement b = parse_monoid_element(g, expr2);
    MonoidVerdict v = monoid_equal(g, a, b, depth);
    run.result["procedure"] = "flow_confluence";
    run.result["verdict"] = monoid_verdict_name(v);
    run.say("verdict: " + monoid_verdict_name(v) + " (confluence search, depth " +
            std::to_string(depth) + ")");
    return run.finish(v == MonoidVerdict::unknown ? kExitUndecided
                                                  : kExitDecided);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Meteor-graph conjugacy toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after the subcommand too

    bool json_mode = false;
    long long seed_value = 0;
    app.add_flag("--json", json_mode, "emit the report as JSON");
    CLI::Option* seed_opt = app.add_option(
        "--seed", seed_value, "seed echoed into reports (for generators)");

    std::string g_path, g_path2, m_path, w_path, out_path, moves_out,
        profile_out, expr1, expr2;
    bool check_profile = false, quasi = false;
    int chain_bound = 3, lag_bound = 3, inner_dim_bound = 3, depth = 8;
    long long entry_bound = 3;

    CLI::App* analyze = app.add_subcommand("analyze", "structural report");
    analyze->add_option("graph", g_path, "graph file")->required();

    CLI::App* equiv = app.add_subcommand("equiv", "decide conjugacy");
    equiv->add_option("graph1", g_path, "first graph")->required();
    equiv->add_option("graph2", g_path2, "second graph")->required();
    equiv->add_option("--witness", w_path,
                      "write a replay-verified witness here");

    CLI::App* moves = app.add_subcommand("moves", "replay a move file");
    moves->add_option("graph", g_path, "graph file")->required();
    moves->add_option("moves", m_path, "move file (JSON)")->required();
    moves->add_flag("--check-profile", check_profile,
                    "assert the profile after every move");
    moves->add_option("--out", out_path, "write the resulting graph here");

    CLI::App* normalize = app.add_subcommand(
        "normalize", "drive to (quasi-)normal form with recorded moves");
    normalize->add_option("graph", g_path, "graph file")->required();
    normalize->add_flag("--quasi", quasi, "quasi-normal form (out-moves only)");
    normalize->add_option("--out", out_path, "write the resulting graph here");
    normalize->add_option("--moves-out", moves_out,
                          "write the move sequence here");

    CLI::App* canonicalize =
        app.add_subcommand("canonicalize", "canonical representative");
    canonicalize->add_option("graph", g_path, "graph file")->required();
    canonicalize->add_option("--out", out_path,
                             "write the canonical graph here");
    canonicalize->add_option("--moves-out", moves_out,
                             "write the move sequence here");
    canonicalize->add_option("--profile-out", profile_out,
                             "write the profile here");

    CLI::App* wverify =
        app.add_subcommand("witness-verify", "check a witness file");
    wverify->add_option("graph1", g_path, "first graph")->required();
    wverify->add_option("graph2", g_path2, "second graph")->required();
    wverify->add_option("witness", w_path, "witness file")->required();

    CLI::App* sse = app.add_subcommand(
        "sse", "bounded strong-shift-equivalence chain search");
    sse->add_option("matrix1", g_path, "first matrix file")->required();
    sse->add_option("matrix2", g_path2, "second matrix file")->required();
    sse->add_option("--chain-bound", chain_bound, "max chain length");
    sse->add_option("--entry-bound", entry_bound, "max matrix entry");
    sse->add_option("--inner-dim-bound", inner_dim_bound,
                    "max inner dimension");
    sse->add_option("--out", out_path, "write the chain witness here");

    CLI::App* se =
        app.add_subcommand("se", "bounded lagged shift-equivalence search");
    se->add_option("matrix1", g_path, "first matrix file")->required();
    se->add_option("matrix2", g_path2, "second matrix file")->required();
    se->add_option("--lag-bound", lag_bound, "max lag");
    se->add_option("--entry-bound", entry_bound, "max matrix entry");
    se->add_option("--out", out_path, "write the witness here");

    CLI::App* monoid =
        app.add_subcommand("monoid", "compare two monoid expressions");
    monoid->add_option("graph", g_path, "graph file")->required();
    monoid->add_option("expr1", expr1, "first expression")->required();
    monoid->add_option("expr2", expr2, "second expression")->required();
    monoid->add_option("--depth", depth, "flow-closure depth bound");

    CLI11_PARSE(app, argc, argv);

    Run run;
    run.json_mode = json_mode;
    if (*seed_opt) run.seed = seed_value;

    try {
        if (*analyze) {
            run.command = "analyze";
            return cmd_analyze(run, g_path);
        }
        if (*equiv) {
            run.command = "equiv";
            return cmd_equiv(run, g_path, g_path2, w_path);
        }
        if (*moves) {
            run.command = "moves";
            return cmd_moves(run, g_path, m_path, check_profile, out_path);
        }
        if (*normalize) {
            run.command = "normalize";
            return cmd_normalize(run, g_path, quasi, out_path, moves_out);
        }
        if (*canonicalize) {
            run.command = "canonicalize";
            return cmd_canonicalize(run, g_path, out_path, moves_out,
                                    profile_out);
        }
        if (*wverify) {
            run.command = "witness-verify";
            return cmd_witness_verify(run, g_path, g_path2, w_path);
        }
        if (*sse) {
            run.command = "sse";
            return cmd_sse(run, g_path, g_path2, chain_bound, entry_bound,
                           inner_dim_bound, out_path);
        }
        if (*se) {
            run.command = "se";
            return cmd_se(run, g_path, g_path2, lag_bound, entry_bound,
                          out_path);
        }
        if (*monoid) {
            run.command = "monoid";
            return cmd_monoid(run, g_path, expr1, expr2, depth);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitInputError;
}
