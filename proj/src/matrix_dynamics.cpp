// matrix_dynamics.cpp — bounded factorization searches and the translation
// of recorded graph moves into verified matrix pairs.

#include "meteor/matrix_dynamics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

namespace meteor {

namespace {

/// Backtracking enumerator for pairs R (n x m), S (m x n) with R*S == A,
/// entries in [0, bound], visiting assignments in lexicographic order of
/// (R column 0, S row 0, R column 1, S row 1, ...).  `sr_target`, when
/// non-null, additionally constrains S*R == *sr_target incrementally.
/// `emit` is called on every complete pair; returning true stops the search.
class PairEnumerator {
  public:
    PairEnumerator(const IntMatrix& a, const IntMatrix* sr_target, int m,
                   long long bound,
                   std::function<bool(const IntMatrix&, const IntMatrix&)> emit)
        : a_(a),
          sr_(sr_target),
          n_(a.rows()),
          m_(m),
          bound_(bound),
          r_(a.rows(), m),
          s_(m, a.rows()),
          partial_(a.rows(), a.rows()),
          emit_(std::move(emit)) {}

    bool run() { return place_pair(0); }

  private:
    bool place_pair(int k) {
        if (k == m_) return partial_ == a_ && emit_(r_, s_);
        return choose_r(k, 0);
    }

    bool choose_r(int k, int i) {
        if (i == n_) return choose_s(k, 0);
        for (long long v = 0; v <= bound_; ++v) {
            r_.at(i, k) = v;
            if (choose_r(k, i + 1)) return true;
        }
        r_.at(i, k) = 0;
        return false;
    }

    bool choose_s(int k, int j) {
        if (j == n_) {
            if (sr_ && !cross_ok(k)) return false;
            return place_pair(k + 1);
        }
        for (long long v = 0; v <= bound_; ++v) {
            s_.at(k, j) = v;
            bool fits = true;
            if (v > 0) {
                for (int i = 0; i < n_; ++i)
                    if (partial_.at(i, j) + r_.at(i, k) * v > a_.at(i, j)) {
                        fits = false;
                        break;
                    }
            }
            if (!fits) break;  // larger v only overshoots further
            for (int i = 0; i < n_; ++i)
                partial_.at(i, j) += r_.at(i, k) * v;
            if (choose_s(k, j + 1)) return true;
            for (int i = 0; i < n_; ++i)
                partial_.at(i, j) -= r_.at(i, k) * v;
        }
        s_.at(k, j) = 0;
        return false;
    }

    /// Entries (t, k) and (k, t) of S*R are determined once pair k is
    /// placed; check them against the target.
    bool cross_ok(int k) const {
        for (int t = 0; t <= k; ++t) {
            BigInt tk = 0, kt = 0;
            for (int i = 0; i < n_; ++i) {
                tk += s_.at(t, i) * r_.at(i, k);
                kt += s_.at(k, i) * r_.at(i, t);
            }
            if (tk != sr_->at(t, k) || kt != sr_->at(k, t)) return false;
        }
        return true;
    }

    const IntMatrix& a_;
    const IntMatrix* sr_;
    int n_, m_;
    long long bound_;
    IntMatrix r_, s_, partial_;
    std::function<bool(const IntMatrix&, const IntMatrix&)> emit_;
};

std::string matrix_key(const IntMatrix& m) {
    std::ostringstream os;
    os << m.rows() << 'x' << m.cols();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) os << ',' << m.at(i, j);
    return os.str();
}

void require_square(const IntMatrix& m, const char* who) {
    if (!m.is_square())
        throw graph_error(std::string(who) + ": matrix must be square");
}

/// Matrix pair of an in-split record: one factor counts partitioned
/// in-edges per class, the other replicates vertices.
SsePair in_split_matrices(const MoveRecord& rec, const Graph& g_before,
                          const Graph& g_after) {
    const int n = static_cast<int>(g_before.vertex_count());
    const int f = static_cast<int>(g_after.vertex_count());
    IntMatrix dist(n, f);  // edges of class i of w leaving u
    IntMatrix repl(f, n);  // copy -> base indicator
    for (const auto& [w, copies] : rec.vertex_map) {
        for (size_t i = 0; i < copies.size(); ++i) {
            int col = static_cast<int>(g_after.vertex_position(copies[i]));
            repl.at(col, static_cast<int>(g_before.vertex_position(w))) = 1;
            std::vector<EdgeId> cls;
            auto it = rec.partition.find(w);
            if (it != rec.partition.end())
                cls = it->second.at(i);
            else
                cls = g_before.in_edges(w);  // trivial single class
            for (EdgeId e : cls) {
                int row = static_cast<int>(
                    g_before.vertex_position(g_before.edge(e).src));
                dist.at(row, col) += 1;
            }
        }
    }
    return SsePair{dist, repl};
}

/// Matrix pair of an out-split record: the replication factor comes first.
SsePair out_split_matrices(const MoveRecord& rec, const Graph& g_before,
                           const Graph& g_after) {
    const int n = static_cast<int>(g_before.vertex_count());
    const int f = static_cast<int>(g_after.vertex_count());
    IntMatrix repl(n, f);  // base -> copy indicator
    IntMatrix dist(f, n);  // edges of class i of w arriving at u
    for (const auto& [w, copies] : rec.vertex_map) {
        for (size_t i = 0; i < copies.size(); ++i) {
            int row = static_cast<int>(g_after.vertex_position(copies[i]));
            repl.at(static_cast<int>(g_before.vertex_position(w)), row) = 1;
            std::vector<EdgeId> cls;
            auto it = rec.partition.find(w);
            if (it != rec.partition.end())
                cls = it->second.at(i);
            else
                cls = g_before.out_edges(w);  // trivial single class
            for (EdgeId e : cls) {
                int col = static_cast<int>(
                    g_before.vertex_position(g_before.edge(e).dst));
                dist.at(row, col) += 1;
            }
        }
    }
    return SsePair{repl, dist};
}

}  // namespace

std::optional<SsePair> elementary_sse(const IntMatrix& a, const IntMatrix& b,
                                      long long entry_bound,
                                      int /*inner_dim_bound*/) {
    require_square(a, "elementary_sse");
    require_square(b, "elementary_sse");
    std::optional<SsePair> out;
    PairEnumerator search(a, &b, b.rows(), entry_bound,
                          [&](const IntMatrix& r, const IntMatrix& s) {
                              out = SsePair{r, s};
                              return true;
                          });
    search.run();
    return out;
}

std::optional<std::vector<SsePair>> sse_chain(const IntMatrix& a,
                                              const IntMatrix& b,
                                              int chain_bound,
                                              long long entry_bound,
                                              int inner_dim_bound) {
    require_square(a, "sse_chain");
    require_square(b, "sse_chain");
    if (a == b) return std::vector<SsePair>{};

    // Memo of canonical forms that failed with at least `remaining` steps.
    std::map<std::string, int> failed_with;

    std::vector<SsePair> chain;
    std::function<bool(const IntMatrix&, int)> dfs = [&](const IntMatrix& m,
                                                         int remaining) {
        if (remaining == 1) {
            std::optional<SsePair> last =
                elementary_sse(m, b, entry_bound, inner_dim_bound);
            if (!last) return false;
            chain.push_back(std::move(*last));
            return true;
        }
        std::string key = matrix_key(matrix_canonical_form(m));
        auto memo = failed_with.find(key);
        if (memo != failed_with.end() && memo->second >= remaining)
            return false;

        // All one-step neighbours S*R over factorizations m = R*S, one
        // representative per canonical neighbour.
        std::map<std::string, SsePair> neighbours;
        for (int k = 1; k <= inner_dim_bound; ++k) {
            PairEnumerator all(m, nullptr, k, entry_bound,
                               [&](const IntMatrix& r, const IntMatrix& s) {
                                   IntMatrix next = s * r;
                                   std::string nk = matrix_key(
                                       matrix_canonical_form(next));
                                   neighbours.emplace(nk, SsePair{r, s});
                                   return false;  // keep enumerating
                               });
            all.run();
        }
        for (auto& [nk, pair] : neighbours) {
            chain.push_back(pair);
            if (dfs(pair.S * pair.R, remaining - 1)) return true;
            chain.pop_back();
        }
        auto it = failed_with.find(key);
        if (it == failed_with.end())
            failed_with.emplace(key, remaining);
        else
            it->second = std::max(it->second, remaining);
        return false;
    };

    for (int depth = 1; depth <= chain_bound; ++depth) {
        chain.clear();
        failed_with.clear();
        if (dfs(a, depth)) return chain;
    }
    return std::nullopt;
}

std::optional<SeWitness> shift_equivalent(const IntMatrix& a,
                                          const IntMatrix& b, int lag_bound,
                                          long long entry_bound) {
    require_square(a, "shift_equivalent");
    require_square(b, "shift_equivalent");
    const int n = a.rows(), m = b.rows();

    for (int lag = 1; lag <= lag_bound; ++lag) {
        IntMatrix al = matrix_power(a, lag);
        IntMatrix bl = matrix_power(b, lag);

        // Odometer over R entries in lexicographic (row-major) order.
        IntMatrix r(n, m);
        std::vector<long long> digits(static_cast<size_t>(n) * m, 0);
        bool exhausted = false;
        while (!exhausted) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j)
                    r.at(i, j) = digits[static_cast<size_t>(i) * m + j];

            if (a * r == r * b) {
                // Fill S column by column against R*S = A^lag.
                IntMatrix s(m, n);
                std::function<bool(int, int, std::vector<BigInt>&)> fill =
                    [&](int j, int k, std::vector<BigInt>& part) -> bool {
                    if (k == m) {
                        for (int i = 0; i < n; ++i)
                            if (part[i] != al.at(i, j)) return false;
                        if (j + 1 == n) {
                            if (s * r != bl) return false;
                            if (s * a != b * s) return false;
                            return true;
                        }
                        std::vector<BigInt> next(n, 0);
                        return fill(j + 1, 0, next);
                    }
                    for (long long v = 0; v <= entry_bound; ++v) {
                        bool fits = true;
                        if (v > 0) {
                            for (int i = 0; i < n; ++i)
                                if (part[i] + r.at(i, k) * v > al.at(i, j)) {
                                    fits = false;
                                    break;
                                }
                        }
                        if (!fits) break;
                        s.at(k, j) = v;
                        for (int i = 0; i < n; ++i)
                            part[i] += r.at(i, k) * v;
                        if (fill(j, k + 1, part)) return true;
                        for (int i = 0; i < n; ++i)
                            part[i] -= r.at(i, k) * v;
                    }
                    s.at(k, j) = 0;
                    return false;
                };
                std::vector<BigInt> part(n, 0);
                if (fill(0, 0, part)) return SeWitness{lag, r, s};
            }

            // Advance the odometer.
            size_t pos = digits.size();
            while (pos > 0) {
                --pos;
                if (digits[pos] < entry_bound) {
                    ++digits[pos];
                    std::fill(digits.begin() + pos + 1, digits.end(), 0);
                    break;
                }
                if (pos == 0) exhausted = true;
            }
            if (digits.empty()) exhausted = true;
        }
    }
    return std::nullopt;
}

SsePair move_to_matrices(const MoveRecord& record, const Graph& g_before,
                         const Graph& g_after) {
    SsePair pair;
    switch (record.kind) {
        case MoveKind::in_split:
            pair = in_split_matrices(record, g_before, g_after);
            break;
        case MoveKind::out_split:
            pair = out_split_matrices(record, g_before, g_after);
            break;
        case MoveKind::in_amalgamation:
        case MoveKind::out_amalgamation: {
            // An amalgamation is the inverse split read backwards: compute
            // the split's pair and swap the factors.
            SsePair split = move_to_matrices(invert(record), g_after, g_before);
            pair = SsePair{split.S, split.R};
            break;
        }
    }
    if (pair.R * pair.S != adjacency_matrix(g_before) ||
        pair.S * pair.R != adjacency_matrix(g_after))
        throw graph_error(
            "move_to_matrices: record is inconsistent with the two graphs");
    return pair;
}

std::vector<SsePair> witness_to_chain(const Graph& g_start,
                                      const std::vector<MoveRecord>& moves) {
    std::vector<SsePair> chain;
    Graph g = g_start;
    for (const MoveRecord& rec : moves) {
        Graph next = apply_record(g, rec).graph;
        chain.push_back(move_to_matrices(rec, g, next));
        g = std::move(next);
    }
    return chain;
}

SeWitness compose_chain(const IntMatrix& a, const IntMatrix& b,
                        const std::vector<SsePair>& chain) {
    if (chain.empty())
        throw graph_error("compose_chain: the chain is empty");
    IntMatrix m = a;
    for (const SsePair& pair : chain) {
        if (pair.R * pair.S != m)
            throw graph_error("compose_chain: a link does not factor its "
                              "left matrix");
        m = pair.S * pair.R;
    }
    if (m != b)
        throw graph_error("compose_chain: the chain does not end at the "
                          "right matrix");

    SeWitness w;
    w.lag = static_cast<int>(chain.size());
    w.R = chain.front().R;
    for (size_t i = 1; i < chain.size(); ++i) w.R = w.R * chain[i].R;
    w.S = chain.back().S;
    for (size_t i = chain.size() - 1; i-- > 0;) w.S = w.S * chain[i].S;

    if (matrix_power(a, w.lag) != w.R * w.S ||
        matrix_power(b, w.lag) != w.S * w.R || a * w.R != w.R * b ||
        w.S * a != b * w.S)
        throw graph_error("compose_chain: composed witness fails the "
                          "intertwining relations");
    return w;
}

IntMatrix matrix_canonical_form(const IntMatrix& m) {
    require_square(m, "matrix_canonical_form");
    const int n = m.rows();
    auto flatten = [n](const IntMatrix& x) {
        std::vector<BigInt> flat;
        flat.reserve(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat.push_back(x.at(i, j));
        return flat;
    };
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    IntMatrix best = m;
    std::vector<BigInt> best_flat = flatten(best);
    while (std::next_permutation(perm.begin(), perm.end())) {
        IntMatrix cand(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cand.at(i, j) = m.at(perm[i], perm[j]);
        std::vector<BigInt> cand_flat = flatten(cand);
        if (cand_flat < best_flat) {
            best = std::move(cand);
            best_flat = std::move(cand_flat);
        }
    }
    return best;
}

}  // namespace meteor
