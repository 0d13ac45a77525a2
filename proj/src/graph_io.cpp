#include "meteor/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace meteor {

namespace {

using nlohmann::json;

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Graph parse_graph_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, VertexId> ids;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, std::string> vlabels;
  std::map<EdgeId, std::string> elabels;
  std::map<std::string, int> edge_names;
  EdgeId next_edge = 0;

  while (std::getline(is, line)) {
    ++lineno;
    std::vector<std::string> tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 2) throw parse_error("expected 'vertex <name>'", lineno);
      if (ids.count(tok[1])) throw parse_error("duplicate vertex name '" + tok[1] + "'", lineno);
      VertexId id = static_cast<VertexId>(vertices.size());
      ids[tok[1]] = id;
      vertices.push_back(id);
      vlabels[id] = tok[1];
    } else if (tok[0] == "edge") {
      if (tok.size() != 5 || tok[3] != "->") {
        throw parse_error("expected 'edge <name> <src> -> <dst>'", lineno);
      }
      if (edge_names.count(tok[1])) {
        throw parse_error("duplicate edge name '" + tok[1] + "'", lineno);
      }
      auto s = ids.find(tok[2]);
      if (s == ids.end()) throw parse_error("unknown vertex '" + tok[2] + "'", lineno);
      auto d = ids.find(tok[4]);
      if (d == ids.end()) throw parse_error("unknown vertex '" + tok[4] + "'", lineno);
      edge_names[tok[1]] = 1;
      elabels[next_edge] = tok[1];
      edges.push_back(Edge{next_edge, s->second, d->second});
      ++next_edge;
    } else {
      throw parse_error("unknown declaration '" + tok[0] + "'", lineno);
    }
  }
  return Graph(std::move(vertices), std::move(edges), std::move(vlabels), std::move(elabels));
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  for (VertexId v : g.vertices()) os << "vertex " << g.vertex_label(v) << "\n";
  for (const Edge& e : g.edges()) {
    os << "edge " << g.edge_label(e.id) << " " << g.vertex_label(e.src) << " -> "
       << g.vertex_label(e.dst) << "\n";
  }
  return os.str();
}

Graph parse_graph_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw parse_error(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
    throw parse_error("graph JSON needs 'vertices' and 'edges' arrays");
  }
  std::map<std::string, VertexId> ids;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  std::map<VertexId, std::string> vlabels;
  std::map<EdgeId, std::string> elabels;
  for (const auto& item : doc["vertices"]) {
    if (!item.is_string()) throw parse_error("vertex entries must be names");
    std::string name = item.get<std::string>();
    if (ids.count(name)) throw parse_error("duplicate vertex name '" + name + "'");
    VertexId id = static_cast<VertexId>(vertices.size());
    ids[name] = id;
    vertices.push_back(id);
    vlabels[id] = name;
  }
  EdgeId next_edge = 0;
  std::set<std::string> edge_names;
  for (const auto& item : doc["edges"]) {
    if (!item.is_object() || !item.contains("src") || !item.contains("dst")) {
      throw parse_error("edge entries need 'src' and 'dst'");
    }
    std::string name = item.value("name", "e" + std::to_string(next_edge));
    if (!edge_names.insert(name).second) {
      throw parse_error("duplicate edge name '" + name + "'");
    }
    std::string src = item["src"].get<std::string>();
    std::string dst = item["dst"].get<std::string>();
    auto s = ids.find(src);
    if (s == ids.end()) throw parse_error("unknown vertex '" + src + "'");
    auto d = ids.find(dst);
    if (d == ids.end()) throw parse_error("unknown vertex '" + dst + "'");
    elabels[next_edge] = name;
    edges.push_back(Edge{next_edge, s->second, d->second});
    ++next_edge;
  }
  return Graph(std::move(vertices), std::move(edges), std::move(vlabels), std::move(elabels));
}

std::string graph_to_json(const Graph& g) {
  json doc;
  doc["vertices"] = json::array();
  for (VertexId v : g.vertices()) doc["vertices"].push_back(g.vertex_label(v));
  doc["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    doc["edges"].push_back({{"name", g.edge_label(e.id)},
                            {"src", g.vertex_label(e.src)},
                            {"dst", g.vertex_label(e.dst)}});
  }
  return doc.dump(2) + "\n";
}

Graph parse_graph_auto(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_graph_json(text);
    break;
  }
  return parse_graph_text(text);
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream is(text);
  long long n = 0;
  if (!(is >> n)) throw parse_error("matrix file must start with its dimension");
  if (n < 0 || n > 10000) throw parse_error("unreasonable matrix dimension");
  IntMatrix m(static_cast<int>(n), static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(is >> tok)) throw parse_error("matrix has too few entries");
      BigInt value;
      try {
        value = BigInt(tok);
      } catch (const std::runtime_error&) {
        throw parse_error("bad matrix entry '" + tok + "'");
      }
      if (value < 0) throw parse_error("matrix entries must be nonnegative");
      m.at(i, j) = std::move(value);
    }
  }
  std::string extra;
  if (is >> extra) throw parse_error("matrix has trailing data");
  return m;
}

std::string matrix_to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << m.at(i, j);
    }
    os << "\n";
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write file '" + path + "'");
  out << content;
}

std::string content_digest(const std::string& content) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace meteor
