// matrix_dynamics.hpp
//
// Nonnegative integer matrix factorizations connecting adjacency matrices:
// one-step factorization witnesses (A = RS, B = SR), bounded chains of such
// steps, bounded lag witnesses for the intertwining relations, and the
// translation of recorded graph moves into verified matrix pairs.  All
// searches are bounded and deterministic; exhausting a bound is reported as
// "no witness within the bound", never as a negative verdict.

#pragma once

#include <optional>
#include <vector>

#include "meteor/graph.hpp"
#include "meteor/moves.hpp"

namespace meteor {

/// One elementary step: R*S is the left matrix, S*R the right one.
struct SsePair {
    IntMatrix R;
    IntMatrix S;
};

/// A lag witness: A^lag = R*S, B^lag = S*R, A*R = R*B, S*A = B*S.
struct SeWitness {
    int lag = 1;
    IntMatrix R;
    IntMatrix S;
};

/// Searches for R (n x m), S (m x n) with R*S = A and S*R = B, all entries
/// in [0, entry_bound].  The inner dimension is forced to B's size m;
/// inner_dim_bound is part of the shared search-parameter set and does not
/// constrain this search.  Deterministic: the first witness in lexicographic
/// order of R's columns interleaved with S's rows.  std::nullopt means no
/// witness within the entry bound — which is not a proof that none exists.
std::optional<SsePair> elementary_sse(const IntMatrix& a, const IntMatrix& b,
                                      long long entry_bound,
                                      int inner_dim_bound);

/// Iterative-deepening search for a chain A = M0, M1, ..., Mc = B of
/// elementary steps (Mi-1 = R_i*S_i, Mi = S_i*R_i) with c <= chain_bound,
/// factor entries <= entry_bound and intermediate matrix dimensions
/// <= inner_dim_bound.  Equal inputs yield the empty chain.  Visited
/// matrices are memoised by canonical form.  std::nullopt means no chain
/// within the bounds.
std::optional<std::vector<SsePair>> sse_chain(const IntMatrix& a,
                                              const IntMatrix& b,
                                              int chain_bound,
                                              long long entry_bound,
                                              int inner_dim_bound);

/// Bounded search for a lag witness, lags 1..lag_bound in order.  For each
/// lag, R is enumerated first against the intertwining relation A*R = R*B
/// (the strongest pruner), then S column-by-column against R*S = A^lag with
/// partial-sum pruning; S*R = B^lag and S*A = B*S are checked last.  The
/// two matrices must be square but may differ in size.  std::nullopt means
/// no witness within the bounds.
std::optional<SeWitness> shift_equivalent(const IntMatrix& a,
                                          const IntMatrix& b, int lag_bound,
                                          long long entry_bound);

/// Translates one recorded move between graphs into its matrix pair:
/// R*S equals the adjacency matrix of g_before and S*R that of g_after
/// (rows and columns ordered by ascending vertex id).  For splits, one
/// factor is the 0/1 vertex-replication matrix and the other counts the
/// partitioned edges per class; amalgamations swap the two.  Throws
/// graph_error if the record does not connect the two graphs.
SsePair move_to_matrices(const MoveRecord& record, const Graph& g_before,
                         const Graph& g_after);

/// Applies the recorded moves from g_start, translating every step; each
/// returned pair is verified against the adjacency matrices it connects.
std::vector<SsePair> witness_to_chain(const Graph& g_start,
                                      const std::vector<MoveRecord>& moves);

/// Composes a verified chain from a to b into a single lag witness with
/// lag = chain length, R = R1*...*Rl and S = Sl*...*S1.  Every intermediate
/// factorization and all four final relations are re-checked exactly;
/// throws graph_error on any mismatch or on an empty chain.
SeWitness compose_chain(const IntMatrix& a, const IntMatrix& b,
                        const std::vector<SsePair>& chain);

/// The simultaneous row/column permutation of a square matrix that
/// minimises the row-major flattened entry sequence.
IntMatrix matrix_canonical_form(const IntMatrix& m);

}  // namespace meteor
