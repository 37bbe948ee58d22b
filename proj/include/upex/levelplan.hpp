#pragma once

#include "upex/oracle.hpp"
#include "upex/transforms_types.hpp"

namespace upex {

// A level graph with exactly one vertex per level, given as the bottom-up
// vertex order.
struct LevelGraphSingleton {
    DirectedGraph graph;
    std::vector<VertexId> by_level;  // by_level[i] is the vertex on level i+1
};

// Builds the singleton-level view of an ordered level graph. Returns
// nullopt when some level holds more than one vertex.
std::optional<LevelGraphSingleton> as_singleton_levels(const OrderedLevelGraph& olg);

// Level planarity with one vertex per level, via a backtracking sweep over
// the left-to-right sequence of open edges. Edges that do not ascend
// through the levels make the instance a NO.
Decision is_level_planar_singleton(const LevelGraphSingleton& lg);

// UPE for H = (V(G), {}) with pairwise distinct pinned y-coordinates:
// reduce to ordered level planarity with singleton levels and sweep.
Decision solve_upe_edgeless_distinct_y(const UpeInstance& inst);

}  // namespace upex
