#include "meteor/moves.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace meteor {

std::string move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::in_split: return "in_split";
    case MoveKind::out_split: return "out_split";
    case MoveKind::in_amalgamation: return "in_amalgamation";
    case MoveKind::out_amalgamation: return "out_amalgamation";
  }
  throw move_error("unknown move kind");
}

MoveKind move_kind_from_name(const std::string& name) {
  if (name == "in_split") return MoveKind::in_split;
  if (name == "out_split") return MoveKind::out_split;
  if (name == "in_amalgamation") return MoveKind::in_amalgamation;
  if (name == "out_amalgamation") return MoveKind::out_amalgamation;
  throw move_error("unknown move kind '" + name + "'");
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw move_error(msg); }

// Words used in error messages; splits over in-edges use {"incoming"},
// transposed applications (out-moves) use {"outgoing"}.
struct Side {
  const char* edges_word;
};

std::string vstr(VertexId v) { return std::to_string(v); }
std::string estr(EdgeId e) { return std::to_string(e); }

// Effective class lists for every vertex: explicit entries validated
// (classes nonempty, disjoint, covering the vertex's in-edges), all other
// vertices carried with the trivial single class.
std::map<VertexId, std::vector<std::vector<EdgeId>>> effective_classes(
    const Graph& g, const std::map<VertexId, std::vector<std::vector<EdgeId>>>& partition,
    const Side& side) {
  std::map<VertexId, std::vector<std::vector<EdgeId>>> classes;
  for (const auto& [v, cls] : partition) {
    if (!g.has_vertex(v)) fail("partition names unknown vertex " + vstr(v));
    const std::vector<EdgeId>& pool = g.in_edges(v);
    if (pool.empty()) {
      fail("partition names vertex " + vstr(v) + " which has no " + side.edges_word + " edges");
    }
    if (cls.empty()) fail("partition of vertex " + vstr(v) + " has no classes");
    std::set<EdgeId> pool_set(pool.begin(), pool.end());
    std::set<EdgeId> seen;
    std::size_t total = 0;
    for (const auto& c : cls) {
      if (c.empty()) fail("partition of vertex " + vstr(v) + " has an empty class");
      for (EdgeId e : c) {
        if (!pool_set.count(e)) {
          fail("edge " + estr(e) + " is not an " + side.edges_word + " edge of vertex " + vstr(v));
        }
        if (!seen.insert(e).second) {
          fail("edge " + estr(e) + " appears in two classes at vertex " + vstr(v));
        }
      }
      total += c.size();
    }
    if (total != pool.size()) {
      fail("partition of vertex " + vstr(v) + " does not cover its " + side.edges_word + " edges");
    }
    classes[v] = cls;
  }
  for (VertexId v : g.vertices()) {
    if (!classes.count(v)) {
      const std::vector<EdgeId>& pool = g.in_edges(v);
      classes[v] = {std::vector<EdgeId>(pool.begin(), pool.end())};
    }
  }
  return classes;
}

// Core of in_split / replayed in_split, operating on in-edges of `g`.
// When `fresh`, id maps are allocated (untouched ids kept, fresh ids
// ascending from the current maxima); otherwise the record's maps are
// validated and reproduced exactly.
MoveResult apply_in_split_core(const Graph& g, MoveRecord rec, bool fresh, const Side& side) {
  auto classes = effective_classes(g, rec.partition, side);
  std::map<EdgeId, int> class_at_dst;
  for (const auto& [v, cls] : classes) {
    for (int i = 0; i < static_cast<int>(cls.size()); ++i) {
      for (EdgeId e : cls[i]) class_at_dst[e] = i;
    }
  }
  auto copies_of = [&](VertexId v) { return static_cast<int>(classes.at(v).size()); };

  if (fresh) {
    rec.vertex_map.clear();
    rec.edge_map.clear();
    VertexId next_v = g.max_vertex_id() + 1;
    for (VertexId v : g.vertices()) {
      int m = copies_of(v);
      if (m == 1) {
        rec.vertex_map[v] = {v};
      } else {
        std::vector<VertexId> ids;
        for (int i = 0; i < m; ++i) ids.push_back(next_v++);
        rec.vertex_map[v] = std::move(ids);
      }
    }
    EdgeId next_e = g.max_edge_id() + 1;
    for (const Edge& e : g.edges()) {
      int k = copies_of(e.src);
      if (k == 1) {
        rec.edge_map[e.id] = {e.id};
      } else {
        std::vector<EdgeId> ids;
        for (int j = 0; j < k; ++j) ids.push_back(next_e++);
        rec.edge_map[e.id] = std::move(ids);
      }
    }
  } else {
    if (rec.vertex_map.size() != g.vertex_count()) {
      fail("record vertex map is not total on the graph's vertices");
    }
    for (VertexId v : g.vertices()) {
      auto it = rec.vertex_map.find(v);
      if (it == rec.vertex_map.end()) fail("record vertex map misses vertex " + vstr(v));
      if (static_cast<int>(it->second.size()) != copies_of(v)) {
        fail("record vertex map size disagrees with the partition at vertex " + vstr(v));
      }
    }
    if (rec.edge_map.size() != g.edge_count()) {
      fail("record edge map is not total on the graph's edges");
    }
    for (const Edge& e : g.edges()) {
      auto it = rec.edge_map.find(e.id);
      if (it == rec.edge_map.end()) fail("record edge map misses edge " + estr(e.id));
      if (static_cast<int>(it->second.size()) != copies_of(e.src)) {
        fail("record edge map size disagrees with the partition at edge " + estr(e.id));
      }
    }
  }

  std::set<VertexId> vertex_ids;
  for (const auto& [v, ids] : rec.vertex_map) {
    for (VertexId c : ids) {
      if (!vertex_ids.insert(c).second) fail("record produces duplicate vertex id " + vstr(c));
    }
  }
  std::set<EdgeId> edge_ids;
  for (const auto& [e, ids] : rec.edge_map) {
    for (EdgeId c : ids) {
      if (!edge_ids.insert(c).second) fail("record produces duplicate edge id " + estr(c));
    }
  }

  std::vector<VertexId> vs;
  std::map<VertexId, std::string> vlabels;
  for (VertexId v : g.vertices()) {
    const auto& ids = rec.vertex_map.at(v);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      vs.push_back(ids[i]);
      vlabels[ids[i]] = ids.size() == 1 ? g.vertex_label(v)
                                        : g.vertex_label(v) + "_" + std::to_string(i + 1);
    }
  }
  std::vector<Edge> es;
  std::map<EdgeId, std::string> elabels;
  for (const Edge& e : g.edges()) {
    const auto& ids = rec.edge_map.at(e.id);
    int i = class_at_dst.at(e.id);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      es.push_back(Edge{ids[j], rec.vertex_map.at(e.src)[j], rec.vertex_map.at(e.dst)[i]});
      elabels[ids[j]] = ids.size() == 1 ? g.edge_label(e.id)
                                        : g.edge_label(e.id) + "_" + std::to_string(j + 1);
    }
  }

  rec.site.clear();
  for (const auto& [v, cls] : classes) {
    if (cls.size() >= 2) rec.site.push_back(v);
  }
  std::sort(rec.site.begin(), rec.site.end());

  MoveResult out;
  out.graph = Graph(std::move(vs), std::move(es), std::move(vlabels), std::move(elabels));
  out.record = std::move(rec);
  return out;
}

std::multiset<VertexId> out_target_multiset(const Graph& g, VertexId v) {
  std::multiset<VertexId> out;
  for (EdgeId e : g.out_edges(v)) out.insert(g.edge(e).dst);
  return out;
}

// Core of in_amalgamate / replayed in-amalgamation, merging blocks whose
// members have identical out-target multisets. Families are matched by
// sorting each member's out-edges by (target, id) when fresh, or taken from
// the record's family_map on replay.
MoveResult apply_in_amalg_core(const Graph& g, MoveRecord rec, bool fresh, const Side& side,
                               const char* other_word) {
  std::map<VertexId, int> block_of;
  std::vector<std::vector<VertexId>> blocks;
  for (const auto& b : rec.block_map) {
    if (b.empty()) fail("empty block");
    for (VertexId v : b) {
      if (!g.has_vertex(v)) fail("block names unknown vertex " + vstr(v));
      if (block_of.count(v)) fail("vertex " + vstr(v) + " appears in two blocks");
      block_of[v] = static_cast<int>(blocks.size());
    }
    blocks.push_back(b);
  }
  for (VertexId v : g.vertices()) {
    if (!block_of.count(v)) {
      block_of[v] = static_cast<int>(blocks.size());
      blocks.push_back({v});
    }
  }

  for (const auto& b : blocks) {
    if (b.size() < 2) continue;
    std::multiset<VertexId> targets = out_target_multiset(g, b[0]);
    for (VertexId v : b) {
      if (g.in_edges(v).empty()) {
        fail("cannot amalgamate vertex " + vstr(v) + ": it has no " + side.edges_word +
             " edges to split back");
      }
      if (out_target_multiset(g, v) != targets) {
        fail("block containing vertex " + vstr(v) + " mixes different " + other_word +
             " targets; matched edges must share their target vertex");
      }
    }
  }

  if (fresh) {
    rec.vertex_map.clear();
    for (const auto& b : blocks) {
      VertexId merged = *std::min_element(b.begin(), b.end());
      for (VertexId v : b) rec.vertex_map[v] = {merged};
    }
  } else {
    if (rec.vertex_map.size() != g.vertex_count()) {
      fail("record vertex map is not total on the graph's vertices");
    }
    for (VertexId v : g.vertices()) {
      auto it = rec.vertex_map.find(v);
      if (it == rec.vertex_map.end()) fail("record vertex map misses vertex " + vstr(v));
      if (it->second.size() != 1) fail("amalgamation vertex map must be single-valued");
    }
    for (const auto& b : blocks) {
      VertexId merged = rec.vertex_map.at(b[0])[0];
      for (VertexId v : b) {
        if (rec.vertex_map.at(v)[0] != merged) {
          fail("record vertex map is not constant on the block of vertex " + vstr(v));
        }
      }
    }
  }

  // Families: merged edge id -> ordered pre-move member edges.
  std::map<EdgeId, std::vector<EdgeId>> families;
  if (fresh) {
    rec.edge_map.clear();
    for (const auto& b : blocks) {
      std::vector<std::vector<EdgeId>> sorted_outs;
      for (VertexId v : b) {
        std::vector<EdgeId> outs(g.out_edges(v).begin(), g.out_edges(v).end());
        std::sort(outs.begin(), outs.end(), [&](EdgeId x, EdgeId y) {
          auto kx = std::make_pair(g.edge(x).dst, x);
          auto ky = std::make_pair(g.edge(y).dst, y);
          return kx < ky;
        });
        sorted_outs.push_back(std::move(outs));
      }
      for (std::size_t t = 0; t < sorted_outs[0].size(); ++t) {
        std::vector<EdgeId> family;
        for (std::size_t j = 0; j < b.size(); ++j) family.push_back(sorted_outs[j][t]);
        EdgeId merged = *std::min_element(family.begin(), family.end());
        for (EdgeId e : family) rec.edge_map[e] = {merged};
        families[merged] = std::move(family);
      }
    }
    rec.family_map = families;
  } else {
    if (rec.family_map.empty() && !g.edges().empty()) {
      fail("amalgamation record lacks its family map");
    }
    families = rec.family_map;
    std::set<EdgeId> covered;
    for (const auto& [merged, members] : families) {
      if (members.empty()) fail("empty edge family");
      for (EdgeId e : members) {
        if (!g.has_edge(e)) fail("family member " + estr(e) + " is not an edge");
        if (!covered.insert(e).second) fail("edge " + estr(e) + " appears in two families");
        auto it = rec.edge_map.find(e);
        if (it == rec.edge_map.end() || it->second != std::vector<EdgeId>{merged}) {
          fail("edge map disagrees with family map at edge " + estr(e));
        }
      }
      const std::vector<VertexId>& src_block = blocks[block_of.at(g.edge(members[0]).src)];
      if (members.size() != src_block.size()) {
        fail("family of merged edge " + estr(merged) + " does not match its source block");
      }
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (g.edge(members[j]).src != src_block[j]) {
          fail("family of merged edge " + estr(merged) +
               " is not in source-block member order");
        }
      }
      VertexId dst = g.edge(members[0]).dst;
      for (EdgeId e : members) {
        if (g.edge(e).dst != dst) {
          fail("family of merged edge " + estr(merged) + " mixes target vertices");
        }
      }
    }
    if (covered.size() != g.edge_count()) fail("families do not cover every edge");
  }

  // Induced inverse-split classes: for each non-singleton block, the merged
  // in-edges grouped by which member they targeted, in block order.
  rec.partition.clear();
  for (const auto& b : blocks) {
    if (b.size() < 2) continue;
    VertexId merged = rec.vertex_map.at(b[0])[0];
    std::vector<std::vector<EdgeId>> cls;
    for (VertexId v : b) {
      std::set<EdgeId> ids;
      for (EdgeId e : g.in_edges(v)) ids.insert(rec.edge_map.at(e)[0]);
      cls.emplace_back(ids.begin(), ids.end());
    }
    rec.partition[merged] = std::move(cls);
  }

  // Build the merged graph.
  std::set<VertexId> vertex_ids;
  std::vector<VertexId> vs;
  std::map<VertexId, std::string> vlabels;
  for (const auto& b : blocks) {
    VertexId merged = rec.vertex_map.at(b[0])[0];
    if (!vertex_ids.insert(merged).second) {
      fail("two blocks merge to the same vertex id " + vstr(merged));
    }
    vs.push_back(merged);
    vlabels[merged] = g.vertex_label(b[0]);
  }
  std::vector<Edge> es;
  std::map<EdgeId, std::string> elabels;
  std::set<EdgeId> edge_ids;
  for (const auto& [merged, members] : families) {
    if (!edge_ids.insert(merged).second) {
      fail("two families merge to the same edge id " + estr(merged));
    }
    VertexId src = rec.vertex_map.at(g.edge(members[0]).src)[0];
    VertexId dst = rec.vertex_map.at(g.edge(members[0]).dst)[0];
    es.push_back(Edge{merged, src, dst});
    EdgeId label_source = *std::min_element(members.begin(), members.end());
    elabels[merged] = g.edge_label(label_source);
  }

  rec.site.clear();
  for (const auto& b : rec.block_map) {
    if (b.size() >= 2) {
      for (VertexId v : b) rec.site.push_back(v);
    }
  }

  MoveResult out;
  out.graph = Graph(std::move(vs), std::move(es), std::move(vlabels), std::move(elabels));
  out.record = std::move(rec);
  return out;
}

constexpr Side kInSide{"incoming"};
constexpr Side kOutSide{"outgoing"};

MoveResult apply_any(const Graph& g, MoveRecord rec, bool fresh) {
  switch (rec.kind) {
    case MoveKind::in_split:
      return apply_in_split_core(g, std::move(rec), fresh, kInSide);
    case MoveKind::out_split: {
      MoveResult r = apply_in_split_core(transpose(g), std::move(rec), fresh, kOutSide);
      r.graph = transpose(r.graph);
      return r;
    }
    case MoveKind::in_amalgamation:
      return apply_in_amalg_core(g, std::move(rec), fresh, kInSide, "outgoing");
    case MoveKind::out_amalgamation: {
      MoveResult r =
          apply_in_amalg_core(transpose(g), std::move(rec), fresh, kOutSide, "incoming");
      r.graph = transpose(r.graph);
      return r;
    }
  }
  fail("unknown move kind");
}

}  // namespace

MoveResult in_split(const Graph& g,
                    const std::map<VertexId, std::vector<std::vector<EdgeId>>>& partition) {
  MoveRecord rec;
  rec.kind = MoveKind::in_split;
  rec.partition = partition;
  return apply_any(g, std::move(rec), true);
}

MoveResult out_split(const Graph& g,
                     const std::map<VertexId, std::vector<std::vector<EdgeId>>>& partition) {
  MoveRecord rec;
  rec.kind = MoveKind::out_split;
  rec.partition = partition;
  return apply_any(g, std::move(rec), true);
}

MoveResult in_amalgamate(const Graph& g, const std::vector<std::vector<VertexId>>& blocks) {
  MoveRecord rec;
  rec.kind = MoveKind::in_amalgamation;
  rec.block_map = blocks;
  return apply_any(g, std::move(rec), true);
}

MoveResult out_amalgamate(const Graph& g, const std::vector<std::vector<VertexId>>& blocks) {
  MoveRecord rec;
  rec.kind = MoveKind::out_amalgamation;
  rec.block_map = blocks;
  return apply_any(g, std::move(rec), true);
}

MoveResult apply_record(const Graph& g, const MoveRecord& record) {
  return apply_any(g, record, false);
}

Graph replay(const Graph& g, const std::vector<MoveRecord>& records) {
  Graph current = g;
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      current = apply_record(current, records[i]).graph;
    } catch (const std::runtime_error& err) {
      throw move_error("record " + std::to_string(i) + ": " + err.what());
    }
  }
  return current;
}

MoveRecord invert(const MoveRecord& record) {
  MoveRecord out;
  switch (record.kind) {
    case MoveKind::in_split: out.kind = MoveKind::in_amalgamation; break;
    case MoveKind::out_split: out.kind = MoveKind::out_amalgamation; break;
    case MoveKind::in_amalgamation: out.kind = MoveKind::in_split; break;
    case MoveKind::out_amalgamation: out.kind = MoveKind::out_split; break;
  }

  if (record.kind == MoveKind::in_split || record.kind == MoveKind::out_split) {
    for (const auto& [v, copies] : record.vertex_map) {
      if (copies.size() >= 2) out.block_map.push_back(copies);
      for (VertexId c : copies) out.vertex_map[c] = {v};
    }
    for (const auto& [e, copies] : record.edge_map) {
      for (EdgeId c : copies) out.edge_map[c] = {e};
      out.family_map[e] = copies;
    }
    out.partition = record.partition;
    for (const auto& b : out.block_map) {
      for (VertexId v : b) out.site.push_back(v);
    }
  } else {
    out.partition = record.partition;
    std::set<VertexId> in_blocks;
    for (const auto& b : record.block_map) {
      for (VertexId v : b) in_blocks.insert(v);
      out.vertex_map[record.vertex_map.at(b[0])[0]] = b;
    }
    for (const auto& [v, merged] : record.vertex_map) {
      if (!in_blocks.count(v)) out.vertex_map[merged[0]] = {v};
    }
    for (const auto& [merged, members] : record.family_map) {
      out.edge_map[merged] = members;
    }
    for (const auto& b : record.block_map) {
      if (b.size() >= 2) out.site.push_back(record.vertex_map.at(b[0])[0]);
    }
    std::sort(out.site.begin(), out.site.end());
  }
  return out;
}

namespace {

VertexId map_vertex(const std::map<VertexId, VertexId>& vmap, VertexId v) {
  auto it = vmap.find(v);
  if (it == vmap.end()) fail("relabeling misses vertex " + vstr(v));
  return it->second;
}

EdgeId map_edge(const std::map<EdgeId, EdgeId>& emap, EdgeId e) {
  auto it = emap.find(e);
  if (it == emap.end()) fail("relabeling misses edge " + estr(e));
  return it->second;
}

}  // namespace

MoveRecord relabel_pre(const MoveRecord& record, const std::map<VertexId, VertexId>& vmap,
                       const std::map<EdgeId, EdgeId>& emap) {
  MoveRecord out;
  out.kind = record.kind;
  const bool is_split =
      record.kind == MoveKind::in_split || record.kind == MoveKind::out_split;

  for (VertexId v : record.site) out.site.push_back(map_vertex(vmap, v));
  std::sort(out.site.begin(), out.site.end());

  if (is_split) {
    // Split partitions live on the pre-move graph.
    for (const auto& [v, cls] : record.partition) {
      std::vector<std::vector<EdgeId>> mapped;
      for (const auto& c : cls) {
        std::vector<EdgeId> mc;
        for (EdgeId e : c) mc.push_back(map_edge(emap, e));
        mapped.push_back(std::move(mc));
      }
      out.partition[map_vertex(vmap, v)] = std::move(mapped);
    }
  } else {
    // Amalgamation partitions hold merged-side ids; leave them alone.
    out.partition = record.partition;
    for (const auto& b : record.block_map) {
      std::vector<VertexId> mb;
      for (VertexId v : b) mb.push_back(map_vertex(vmap, v));
      out.block_map.push_back(std::move(mb));
    }
    for (const auto& [merged, members] : record.family_map) {
      std::vector<EdgeId> mm;
      for (EdgeId e : members) mm.push_back(map_edge(emap, e));
      out.family_map[merged] = std::move(mm);
    }
  }

  for (const auto& [v, ids] : record.vertex_map) out.vertex_map[map_vertex(vmap, v)] = ids;
  for (const auto& [e, ids] : record.edge_map) out.edge_map[map_edge(emap, e)] = ids;
  return out;
}

}  // namespace meteor
