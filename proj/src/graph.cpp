#include "meteor/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace meteor {

namespace {

std::string describe_id(const char* what, long long id) {
  std::ostringstream os;
  os << what << " " << id;
  return os.str();
}

}  // namespace

Graph::Graph(std::vector<VertexId> vertices, std::vector<Edge> edges,
             std::map<VertexId, std::string> vertex_labels,
             std::map<EdgeId, std::string> edge_labels)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      vertex_labels_(std::move(vertex_labels)),
      edge_labels_(std::move(edge_labels)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw graph_error("duplicate vertex id");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    vertex_index_[vertices_[i]] = i;
    out_[vertices_[i]];
    in_[vertices_[i]];
  }
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Edge& e = edges_[i];
    if (edge_index_.count(e.id)) throw graph_error(describe_id("duplicate edge id", e.id));
    if (!vertex_index_.count(e.src)) {
      throw graph_error(describe_id("edge source is not a vertex:", e.src));
    }
    if (!vertex_index_.count(e.dst)) {
      throw graph_error(describe_id("edge range is not a vertex:", e.dst));
    }
    edge_index_[e.id] = i;
    out_[e.src].push_back(e.id);
    in_[e.dst].push_back(e.id);
  }
}

const Edge& Graph::edge(EdgeId e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw graph_error(describe_id("unknown edge id", e));
  return edges_[it->second];
}

const std::vector<EdgeId>& Graph::out_edges(VertexId v) const {
  auto it = out_.find(v);
  if (it == out_.end()) throw graph_error(describe_id("unknown vertex id", v));
  return it->second;
}

const std::vector<EdgeId>& Graph::in_edges(VertexId v) const {
  auto it = in_.find(v);
  if (it == in_.end()) throw graph_error(describe_id("unknown vertex id", v));
  return it->second;
}

std::string Graph::vertex_label(VertexId v) const {
  auto it = vertex_labels_.find(v);
  if (it != vertex_labels_.end()) return it->second;
  return "v" + std::to_string(v);
}

std::string Graph::edge_label(EdgeId e) const {
  auto it = edge_labels_.find(e);
  if (it != edge_labels_.end()) return it->second;
  return "e" + std::to_string(e);
}

int Graph::vertex_position(VertexId v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw graph_error(describe_id("unknown vertex id", v));
  return it->second;
}

VertexId Graph::max_vertex_id() const {
  return vertices_.empty() ? -1 : vertices_.back();
}

EdgeId Graph::max_edge_id() const {
  return edges_.empty() ? -1 : edges_.back().id;
}

IntMatrix::IntMatrix(int rows, int cols, BigInt fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, std::move(fill)) {
  if (rows < 0 || cols < 0) throw graph_error("negative matrix dimension");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

BigInt& IntMatrix::at(int r, int c) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw graph_error("matrix index out of range");
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

const BigInt& IntMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw graph_error("matrix index out of range");
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw graph_error("matrix dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        c.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return c;
}

IntMatrix matrix_power(const IntMatrix& a, int k) {
  if (!a.is_square()) throw graph_error("matrix power of non-square matrix");
  if (k < 0) throw graph_error("negative matrix power");
  IntMatrix result = IntMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) result = result * a;
  return result;
}

IntMatrix adjacency_matrix(const Graph& g) {
  const int n = static_cast<int>(g.vertex_count());
  IntMatrix m(n, n);
  for (const Edge& e : g.edges()) {
    m.at(g.vertex_position(e.src), g.vertex_position(e.dst)) += 1;
  }
  return m;
}

Graph graph_from_matrix(const IntMatrix& m) {
  if (!m.is_square()) throw graph_error("adjacency matrix must be square");
  const int n = m.rows();
  std::vector<VertexId> vs(n);
  for (int i = 0; i < n; ++i) vs[i] = i;
  std::vector<Edge> es;
  EdgeId next = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const BigInt& count = m.at(i, j);
      if (count < 0) throw graph_error("adjacency matrix entry is negative");
      for (BigInt k = 0; k < count; ++k) {
        es.push_back(Edge{next++, i, j});
      }
    }
  }
  return Graph(std::move(vs), std::move(es));
}

bool is_essential(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  for (VertexId v : g.vertices()) {
    if (g.is_sink(v) || g.is_source(v)) return false;
  }
  return true;
}

SccDecomposition scc_decomposition(const Graph& g) {
  // Tarjan's algorithm, iterative; components come out in reverse topological
  // order and are reversed at the end.
  std::map<VertexId, int> index, low;
  std::map<VertexId, bool> on_stack;
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> comps;
  int next_index = 0;

  struct Frame {
    VertexId v;
    std::size_t edge_pos;
  };

  for (VertexId start : g.vertices()) {
    if (index.count(start)) continue;
    std::vector<Frame> frames{{start, 0}};
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::vector<EdgeId>& outs = g.out_edges(f.v);
      if (f.edge_pos < outs.size()) {
        VertexId w = g.edge(outs[f.edge_pos++]).dst;
        if (!index.count(w)) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        VertexId v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<VertexId> comp;
          while (true) {
            VertexId w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }

  std::reverse(comps.begin(), comps.end());  // topological order
  SccDecomposition out;
  out.components = std::move(comps);
  for (int i = 0; i < static_cast<int>(out.components.size()); ++i) {
    for (VertexId v : out.components[i]) out.component_of[v] = i;
  }
  for (const Edge& e : g.edges()) {
    int a = out.component_of[e.src];
    int b = out.component_of[e.dst];
    if (a != b) out.condensation_edges.insert({a, b});
  }
  return out;
}

namespace {

// Enumerates simple cycles whose minimal vertex is `start`, extending the
// current edge path; vertices other than `start` must have ids > start.
void cycle_search(const Graph& g, VertexId start, std::vector<EdgeId>& path,
                  std::vector<VertexId>& order, std::set<VertexId>& visited,
                  std::vector<Cycle>& out) {
  VertexId here = path.empty() ? start : g.edge(path.back()).dst;
  for (EdgeId e : g.out_edges(here)) {
    VertexId next = g.edge(e).dst;
    if (next == start) {
      path.push_back(e);
      order.push_back(here);
      out.push_back(Cycle{path, order});
      path.pop_back();
      order.pop_back();
      continue;
    }
    if (next < start || visited.count(next)) continue;
    path.push_back(e);
    order.push_back(here);
    visited.insert(next);
    cycle_search(g, start, path, order, visited, out);
    visited.erase(next);
    path.pop_back();
    order.pop_back();
  }
}

}  // namespace

std::vector<Cycle> simple_cycles(const Graph& g) {
  std::vector<Cycle> out;
  for (VertexId start : g.vertices()) {
    std::vector<EdgeId> path;
    std::vector<VertexId> order;
    std::set<VertexId> visited;
    cycle_search(g, start, path, order, visited, out);
  }
  return out;
}

namespace {

// Multiset of (in-degree, out-degree) refinable invariant used for pruning.
std::pair<int, int> degree_signature(const Graph& g, VertexId v) {
  return {g.in_degree(v), g.out_degree(v)};
}

int edge_multiplicity(const Graph& g, VertexId a, VertexId b) {
  int count = 0;
  for (EdgeId e : g.out_edges(a)) {
    if (g.edge(e).dst == b) ++count;
  }
  return count;
}

bool extend_isomorphism(const Graph& g, const Graph& h,
                        const std::vector<VertexId>& g_order, std::size_t pos,
                        std::map<VertexId, VertexId>& fwd, std::set<VertexId>& used) {
  if (pos == g_order.size()) return true;
  VertexId v = g_order[pos];
  auto sig = degree_signature(g, v);
  for (VertexId w : h.vertices()) {
    if (used.count(w)) continue;
    if (degree_signature(h, w) != sig) continue;
    bool ok = true;
    for (const auto& [u, u2] : fwd) {
      if (edge_multiplicity(g, v, u) != edge_multiplicity(h, w, u2) ||
          edge_multiplicity(g, u, v) != edge_multiplicity(h, u2, w)) {
        ok = false;
        break;
      }
    }
    if (edge_multiplicity(g, v, v) != edge_multiplicity(h, w, w)) ok = false;
    if (!ok) continue;
    fwd[v] = w;
    used.insert(w);
    if (extend_isomorphism(g, h, g_order, pos + 1, fwd, used)) return true;
    fwd.erase(v);
    used.erase(w);
  }
  return false;
}

}  // namespace

std::optional<std::map<VertexId, VertexId>> is_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) {
    return std::nullopt;
  }
  std::multiset<std::pair<int, int>> sig_g, sig_h;
  for (VertexId v : g.vertices()) sig_g.insert(degree_signature(g, v));
  for (VertexId v : h.vertices()) sig_h.insert(degree_signature(h, v));
  if (sig_g != sig_h) return std::nullopt;

  // Most-constrained-first: rare degree signatures and high degrees early.
  std::map<std::pair<int, int>, int> freq;
  for (const auto& s : sig_g) freq[s]++;
  std::vector<VertexId> order = g.vertices();
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    auto sa = degree_signature(g, a), sb = degree_signature(g, b);
    if (freq[sa] != freq[sb]) return freq[sa] < freq[sb];
    int da = sa.first + sa.second, db = sb.first + sb.second;
    if (da != db) return da > db;
    return a < b;
  });

  std::map<VertexId, VertexId> fwd;
  std::set<VertexId> used;
  if (extend_isomorphism(g, h, order, 0, fwd, used)) return fwd;
  return std::nullopt;
}

bool verify_isomorphism(const Graph& g, const Graph& h,
                        const std::map<VertexId, VertexId>& map) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() ||
      map.size() != g.vertex_count()) {
    return false;
  }
  std::set<VertexId> image;
  for (const auto& [u, v] : map) {
    if (!g.has_vertex(u) || !h.has_vertex(v)) return false;
    image.insert(v);
  }
  if (image.size() != map.size()) return false;
  std::map<std::pair<VertexId, VertexId>, int> mg, mh;
  for (const Edge& e : g.edges()) ++mg[{map.at(e.src), map.at(e.dst)}];
  for (const Edge& e : h.edges()) ++mh[{e.src, e.dst}];
  return mg == mh;
}

std::map<EdgeId, EdgeId> edge_bijection(const Graph& g, const Graph& h,
                                        const std::map<VertexId, VertexId>& vertex_map) {
  if (vertex_map.size() != g.vertex_count()) {
    throw graph_error("vertex map does not cover the graph");
  }
  // Group edges by endpoint pair on both sides and pair them ascending by id.
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> by_pair_h;
  for (const Edge& e : h.edges()) by_pair_h[{e.src, e.dst}].push_back(e.id);
  std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> by_pair_g;
  for (const Edge& e : g.edges()) by_pair_g[{e.src, e.dst}].push_back(e.id);

  std::map<EdgeId, EdgeId> out;
  for (auto& [pair, ids] : by_pair_g) {
    auto sit = vertex_map.find(pair.first);
    auto dit = vertex_map.find(pair.second);
    if (sit == vertex_map.end() || dit == vertex_map.end()) {
      throw graph_error("vertex map does not cover the graph");
    }
    auto hit = by_pair_h.find({sit->second, dit->second});
    if (hit == by_pair_h.end() || hit->second.size() != ids.size()) {
      throw graph_error("vertex map is not an isomorphism: edge multiplicity mismatch");
    }
    for (std::size_t i = 0; i < ids.size(); ++i) out[ids[i]] = hit->second[i];
  }
  if (out.size() != g.edge_count()) {
    throw graph_error("vertex map is not an isomorphism: edge count mismatch");
  }
  return out;
}

Graph transpose(const Graph& g) {
  std::vector<Edge> es;
  es.reserve(g.edge_count());
  for (const Edge& e : g.edges()) es.push_back(Edge{e.id, e.dst, e.src});
  return Graph(g.vertices(), std::move(es), g.vertex_labels(), g.edge_labels());
}

std::set<VertexId> reachable_from(const Graph& g, const std::set<VertexId>& starts) {
  std::set<VertexId> seen = starts;
  std::vector<VertexId> work(starts.begin(), starts.end());
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).dst;
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen;
}

bool is_weakly_connected(const Graph& g) {
  if (g.vertices().empty()) return true;
  std::set<VertexId> seen{g.vertices().front()};
  std::vector<VertexId> work{g.vertices().front()};
  while (!work.empty()) {
    VertexId v = work.back();
    work.pop_back();
    for (EdgeId e : g.out_edges(v)) {
      VertexId w = g.edge(e).dst;
      if (seen.insert(w).second) work.push_back(w);
    }
    for (EdgeId e : g.in_edges(v)) {
      VertexId w = g.edge(e).src;
      if (seen.insert(w).second) work.push_back(w);
    }
  }
  return seen.size() == g.vertex_count();
}

}  // namespace meteor
