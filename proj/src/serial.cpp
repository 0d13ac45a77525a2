// serial.cpp — JSON round-trips for witnesses, profiles, and matrix pairs.

#include "meteor/serial.hpp"

#include <limits>

#include <nlohmann/json.hpp>

#include "meteor/graph_io.hpp"

namespace meteor {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw parse_error(std::string(what) + ": not valid JSON");
    return j;
}

int to_id(const json& v, const char* what) {
    if (!v.is_number_integer())
        throw parse_error(std::string(what) + ": expected an integer id");
    return v.get<int>();
}

int key_to_id(const std::string& key, const char* what) {
    try {
        size_t used = 0;
        int id = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
        return id;
    } catch (const std::exception&) {
        throw parse_error(std::string(what) + ": bad id key '" + key + "'");
    }
}

std::vector<int> to_id_list(const json& v, const char* what) {
    if (!v.is_array())
        throw parse_error(std::string(what) + ": expected an array of ids");
    std::vector<int> out;
    for (const json& x : v) out.push_back(to_id(x, what));
    return out;
}

json record_to_json(const MoveRecord& r) {
    json j;
    j["kind"] = move_kind_name(r.kind);
    j["site"] = r.site;
    json part = json::object();
    for (const auto& [v, classes] : r.partition)
        part[std::to_string(v)] = classes;
    j["partition"] = std::move(part);
    j["block_map"] = r.block_map;
    json vmap = json::object();
    for (const auto& [v, copies] : r.vertex_map)
        vmap[std::to_string(v)] = copies;
    j["vertex_map"] = std::move(vmap);
    json emap = json::object();
    for (const auto& [e, copies] : r.edge_map)
        emap[std::to_string(e)] = copies;
    j["edge_map"] = std::move(emap);
    json fmap = json::object();
    for (const auto& [e, members] : r.family_map)
        fmap[std::to_string(e)] = members;
    j["family_map"] = std::move(fmap);
    return j;
}

MoveRecord record_from_json(const json& j) {
    if (!j.is_object()) throw parse_error("move record: expected an object");
    MoveRecord r;
    try {
        r.kind = move_kind_from_name(j.value("kind", std::string()));
    } catch (const move_error& err) {
        throw parse_error(err.what());
    }
    if (j.contains("site")) r.site = to_id_list(j.at("site"), "site");
    if (j.contains("partition")) {
        const json& part = j.at("partition");
        if (!part.is_object())
            throw parse_error("move record: partition must be an object");
        for (auto it = part.begin(); it != part.end(); ++it) {
            VertexId v = key_to_id(it.key(), "partition");
            if (!it.value().is_array())
                throw parse_error("move record: partition classes must be "
                                  "an array");
            std::vector<std::vector<EdgeId>> classes;
            for (const json& c : it.value())
                classes.push_back(to_id_list(c, "partition class"));
            r.partition[v] = std::move(classes);
        }
    }
    if (j.contains("block_map")) {
        for (const json& b : j.at("block_map"))
            r.block_map.push_back(to_id_list(b, "block"));
    }
    if (j.contains("vertex_map")) {
        const json& m = j.at("vertex_map");
        for (auto it = m.begin(); it != m.end(); ++it)
            r.vertex_map[key_to_id(it.key(), "vertex_map")] =
                to_id_list(it.value(), "vertex_map");
    }
    if (j.contains("edge_map")) {
        const json& m = j.at("edge_map");
        for (auto it = m.begin(); it != m.end(); ++it)
            r.edge_map[key_to_id(it.key(), "edge_map")] =
                to_id_list(it.value(), "edge_map");
    }
    if (j.contains("family_map")) {
        const json& m = j.at("family_map");
        for (auto it = m.begin(); it != m.end(); ++it)
            r.family_map[key_to_id(it.key(), "family_map")] =
                to_id_list(it.value(), "family_map");
    }
    return r;
}

json matrix_to_json_rows(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const BigInt& x = m.at(i, j);
            if (x > std::numeric_limits<long long>::max())
                throw parse_error("matrix entry too large to serialize");
            row.push_back(static_cast<long long>(x));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json_rows(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw parse_error(std::string(what) +
                          ": expected a nonempty array of rows");
    int r = static_cast<int>(rows.size());
    if (!rows[0].is_array())
        throw parse_error(std::string(what) + ": rows must be arrays");
    int c = static_cast<int>(rows[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != c)
            throw parse_error(std::string(what) + ": ragged rows");
        for (int j = 0; j < c; ++j) {
            if (!row[j].is_number_integer() || row[j].get<long long>() < 0)
                throw parse_error(std::string(what) +
                                  ": entries must be nonnegative integers");
            m.at(i, j) = row[j].get<long long>();
        }
    }
    return m;
}

}  // namespace

std::string witness_to_json(const Witness& w) {
    json j;
    json moves = json::array();
    for (const MoveRecord& r : w.moves) moves.push_back(record_to_json(r));
    j["moves"] = std::move(moves);
    json iso = json::object();
    for (const auto& [a, b] : w.isomorphism) iso[std::to_string(a)] = b;
    j["isomorphism"] = std::move(iso);
    return j.dump(2) + "\n";
}

Witness parse_witness_json(const std::string& text) {
    json j = parse_or_throw(text, "witness");
    if (!j.is_object() || !j.contains("moves") || !j.contains("isomorphism"))
        throw parse_error("witness: expected {moves, isomorphism}");
    Witness w;
    if (!j.at("moves").is_array())
        throw parse_error("witness: moves must be an array");
    for (const json& r : j.at("moves")) w.moves.push_back(record_from_json(r));
    const json& iso = j.at("isomorphism");
    if (!iso.is_object())
        throw parse_error("witness: isomorphism must be an object");
    for (auto it = iso.begin(); it != iso.end(); ++it)
        w.isomorphism[key_to_id(it.key(), "isomorphism")] =
            to_id(it.value(), "isomorphism");
    return w;
}

std::string profile_to_json(const MeteorProfile& p) {
    json j;
    j["p"] = p.p;
    j["q"] = p.q;
    j["period"] = p.period;
    j["counts"] = p.counts;
    return j.dump(2) + "\n";
}

MeteorProfile parse_profile_json(const std::string& text) {
    json j = parse_or_throw(text, "profile");
    if (!j.is_object() || !j.contains("p") || !j.contains("q") ||
        !j.contains("period") || !j.contains("counts"))
        throw parse_error("profile: expected {p, q, period, counts}");
    MeteorProfile p;
    p.p = to_id(j.at("p"), "p");
    p.q = to_id(j.at("q"), "q");
    p.period = to_id(j.at("period"), "period");
    if (!j.at("counts").is_array())
        throw parse_error("profile: counts must be an array");
    for (const json& c : j.at("counts")) {
        if (!c.is_number_integer() || c.get<long long>() < 0)
            throw parse_error("profile: counts must be nonnegative integers");
        p.counts.push_back(c.get<long long>());
    }
    return p;
}

std::string se_witness_to_json(const SeWitness& w) {
    json j;
    j["R"] = matrix_to_json_rows(w.R);
    j["S"] = matrix_to_json_rows(w.S);
    j["lag"] = w.lag;
    return j.dump(2) + "\n";
}

SeWitness parse_se_witness_json(const std::string& text) {
    json j = parse_or_throw(text, "matrix witness");
    if (!j.is_object() || !j.contains("R") || !j.contains("S") ||
        !j.contains("lag"))
        throw parse_error("matrix witness: expected {R, S, lag}");
    SeWitness w;
    w.R = matrix_from_json_rows(j.at("R"), "R");
    w.S = matrix_from_json_rows(j.at("S"), "S");
    w.lag = to_id(j.at("lag"), "lag");
    if (w.lag < 1) throw parse_error("matrix witness: lag must be >= 1");
    return w;
}

std::string sse_chain_to_json(const std::vector<SsePair>& chain) {
    json j;
    json links = json::array();
    for (const SsePair& pair : chain) {
        json link;
        link["R"] = matrix_to_json_rows(pair.R);
        link["S"] = matrix_to_json_rows(pair.S);
        links.push_back(std::move(link));
    }
    j["chain"] = std::move(links);
    return j.dump(2) + "\n";
}

std::vector<SsePair> parse_sse_chain_json(const std::string& text) {
    json j = parse_or_throw(text, "chain witness");
    if (!j.is_object() || !j.contains("chain") || !j.at("chain").is_array())
        throw parse_error("chain witness: expected {chain: [...]}");
    std::vector<SsePair> chain;
    for (const json& link : j.at("chain")) {
        if (!link.is_object() || !link.contains("R") || !link.contains("S"))
            throw parse_error("chain witness: links must be {R, S}");
        SsePair pair;
        pair.R = matrix_from_json_rows(link.at("R"), "R");
        pair.S = matrix_from_json_rows(link.at("S"), "S");
        chain.push_back(std::move(pair));
    }
    return chain;
}

}  // namespace meteor
