#pragma once

#include "upex/oracle.hpp"

#include <json.hpp>

#include <memory>

namespace upex {

// Maximal monotone subpaths in traversal order. Consecutive runs share the
// junction vertex; orientations alternate. A fully monotone path (or a
// directed cycle) is a single run.
struct MonotoneRunPartition {
    std::vector<std::vector<VertexId>> runs;
    bool is_cycle = false;
};

MonotoneRunPartition partition_monotone_runs(const DirectedGraph& g);

// The four-index reachability table t(i,j,m,M) over a vertex sequence,
// packed as bits, plus the wildcard projections used by the O(1) case
// tests. Entries exist for i <= m,M <= j, i != j, m != M.
class DpTable {
  public:
    explicit DpTable(int n);

    bool get(int i, int j, int m, int M) const { return bits_[idx(i, j, m, M)]; }
    void set(int i, int j, int m, int M) { bits_[idx(i, j, m, M)] = true; }

    // t(lo,hi,hi,*): minimum at the right end, any maximum; and friends.
    bool min_right_any(int lo, int hi) const { return wild_[0][lo * n_ + hi]; }
    bool max_right_any(int lo, int hi) const { return wild_[1][lo * n_ + hi]; }
    bool min_left_any(int lo, int hi) const { return wild_[2][lo * n_ + hi]; }
    bool max_left_any(int lo, int hi) const { return wild_[3][lo * n_ + hi]; }
    void refresh_wildcards(int lo, int hi);

    int size() const { return n_; }

  private:
    size_t idx(int i, int j, int m, int M) const {
        return ((size_t(i) * n_ + j) * n_ + m) * n_ + M;
    }
    int n_;
    std::vector<bool> bits_;
    std::vector<std::vector<bool>> wild_;
};

// Maximum table side, half a gigabyte of bits at the default. Raiseable
// for machines that can take it.
int dp_size_cap();
void set_dp_size_cap(int cap);

struct PathFueResult {
    Decision decision = Decision::No;
    // The vertex sequence the table is indexed by and the filled table,
    // kept for cycle reuse and witness extraction.
    std::vector<VertexId> order;
    std::shared_ptr<DpTable> table;
};

// UPE-FUE for an embedded directed path with edgeless H and pairwise
// distinct pinned heights.
PathFueResult solve_path_fue(const UpeInstance& inst);

// UPE-FUE for an embedded directed cycle: doubled-path table plus the
// per-extreme-pair rotation test. On YES, `extremes` (when given) receives
// the accepted lowest/highest positions along the traversal.
Decision solve_cycle_fue(const UpeInstance& inst, std::pair<int, int>* extremes = nullptr);

// UPE for paths and cycles without an embedding: pinned heights must
// increase along every monotone run.
Decision solve_path_or_cycle_upe(const UpeInstance& inst);

// Structural witness: the recursion trace of the table entry, as nested
// JSON {entry:[i,j,m,M], rule:..., splits:[...]}.
nlohmann::ordered_json extract_decomposition(const UpeInstance& inst, const PathFueResult& res);

}  // namespace upex
