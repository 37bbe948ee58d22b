#pragma once

#include "upex/instance.hpp"
#include "upex/transforms_types.hpp"

#include <utility>

namespace upex {

struct TransformResult {
    UpeInstance instance;
    ElementMap map;
};

// Replaces every H-edge by a monotone path of plain G-edges whose internal
// vertices are pinned along the old route, leaving H edgeless. Geometry of
// the insertion points follows the interesting-lines sweep; insertion
// cases: next to an H-vertex on its line, and on the lines adjacent to an
// edge's endpoints. Decision-equivalent to the input.
//
// With `quadratic_sweep` the per-line orders are recomputed from scratch on
// every line instead of being maintained incrementally; both paths must
// produce identical output (differential-tested).
TransformResult eliminate_partial_edges(const UpeInstance& inst, bool quadratic_sweep = false);

// Composes eliminate_partial_edges, then replaces each pinned vertex that
// shares its line with others by a short vertical pinned edge, after which
// no two H-vertices share a y-coordinate. Identity when the input is
// already edgeless with distinct pinned ys.
TransformResult make_distinct_y(const UpeInstance& inst);

// Equivalent ordered level graph for an instance with H = (V(G), {}).
// Throws on instances with H-edges or unpinned vertices.
// The result may violate l(u) < l(v) when the pinned drawing inverts an
// edge; consumers report those as NO.
OrderedLevelGraph upe_to_olp(const UpeInstance& inst);

// Inverse direction: v is placed at (xi_i(v), l(v)).
UpeInstance olp_to_upe(const OrderedLevelGraph& olg);

}  // namespace upex
