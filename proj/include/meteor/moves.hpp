// Graph moves: in/out-splits and their inverse amalgamations, recorded with
// explicit id maps so that sequences can be replayed bit-identically,
// inverted, and relabeled onto isomorphic graphs.
//
// An in-split partitions the incoming edges of each vertex and gives each
// class its own copy of the vertex; outgoing edges are duplicated to every
// copy. An out-split is the transpose-dual. Amalgamations undo them: an
// in-amalgamation merges blocks of vertices whose outgoing-edge target
// multisets agree, matching edges target-by-target into families that
// collapse to single edges.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "meteor/graph.hpp"

namespace meteor {

/// Thrown when a move's preconditions fail; the message states which one.
class move_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MoveKind { in_split, out_split, in_amalgamation, out_amalgamation };

std::string move_kind_name(MoveKind kind);
MoveKind move_kind_from_name(const std::string& name);

/// One applied move, with enough data to re-apply it deterministically:
/// the partition/blocks that define it and the total id maps it produced.
struct MoveRecord {
  MoveKind kind = MoveKind::in_split;

  /// Vertices the move acts on nontrivially (split into >= 2 copies, or
  /// members of non-singleton blocks). Metadata; apply uses the fields below.
  std::vector<VertexId> site;

  /// Splits: vertex -> ordered edge-id classes (in-edges for in_split,
  /// out-edges for out_split). Vertices absent from the map are carried with
  /// the trivial partition. Amalgamation records hold the induced
  /// inverse-split classes here (keyed by merged vertex, merged-side edge
  /// ids), so inversion is a pure record operation.
  std::map<VertexId, std::vector<std::vector<EdgeId>>> partition;

  /// Amalgamations: ordered non-singleton blocks of vertices to merge.
  /// Unmentioned vertices form implicit singleton blocks.
  std::vector<std::vector<VertexId>> block_map;

  /// Total on the pre-move vertex set. Splits: copy ids per class, in class
  /// order. Amalgamations: the single merged id.
  std::map<VertexId, std::vector<VertexId>> vertex_map;

  /// Total on the pre-move edge set. Splits: copy ids in class order of the
  /// partitioned endpoint. Amalgamations: the single merged-family id.
  std::map<EdgeId, std::vector<EdgeId>> edge_map;

  /// Amalgamations only: merged edge id -> the ordered pre-move edges it
  /// absorbed (one per source-block member, in block order; singleton
  /// families included). Lets invert() rebuild the split without the graph.
  std::map<EdgeId, std::vector<EdgeId>> family_map;
};

/// Result of applying one move.
struct MoveResult {
  Graph graph;
  MoveRecord record;
};

/// In-split at the given partition of in-edges. Vertices not mentioned get
/// the trivial partition; a vertex with no in-edges must not be mentioned.
/// Fresh ids are allocated only for vertices/edges actually multiplied, so a
/// fully trivial partition returns the graph unchanged.
MoveResult in_split(const Graph& g,
                    const std::map<VertexId, std::vector<std::vector<EdgeId>>>& partition);

/// Out-split (transpose-dual of in_split) at a partition of out-edges.
MoveResult out_split(const Graph& g,
                     const std::map<VertexId, std::vector<std::vector<EdgeId>>>& partition);

/// In-amalgamation of the given vertex blocks. Every block's members must
/// have identical outgoing-edge target multisets, and in non-singleton
/// blocks every member needs at least one in-edge; matched edges collapse
/// to one edge per family. Unmentioned vertices stay as singletons.
MoveResult in_amalgamate(const Graph& g, const std::vector<std::vector<VertexId>>& blocks);

/// Out-amalgamation (transpose-dual of in_amalgamate): members must have
/// identical incoming-edge source multisets.
MoveResult out_amalgamate(const Graph& g, const std::vector<std::vector<VertexId>>& blocks);

/// Re-applies a recorded move, reproducing the recorded output ids exactly.
/// Throws move_error when the record does not fit the graph.
MoveResult apply_record(const Graph& g, const MoveRecord& record);

/// Applies a whole sequence; error messages are prefixed with the failing
/// record's 0-based index.
Graph replay(const Graph& g, const std::vector<MoveRecord>& records);

/// The exact inverse record: applying `invert(r)` to the result of `r`
/// reproduces the pre-move graph, ids included.
MoveRecord invert(const MoveRecord& record);

/// Rewrites the pre-move side of a record (sites, partition, blocks, and the
/// id-map domains) through vertex/edge renamings, leaving output ids alone.
/// Use when replaying a record on an isomorphic copy of its original graph.
MoveRecord relabel_pre(const MoveRecord& record, const std::map<VertexId, VertexId>& vmap,
                       const std::map<EdgeId, EdgeId>& emap);

}  // namespace meteor
