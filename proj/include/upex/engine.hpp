#pragma once

#include "upex/jsonio.hpp"
#include "upex/oracle.hpp"

namespace upex {

enum class EngineKind { Auto, StFue, StUpe, PathFue, CycleFue, PathUpe, Olp, Oracle };

const char* engine_name(EngineKind k);
EngineKind parse_engine(const std::string& name);

// Dispatch order: fixed-embedding st-graph, st-graph, embedded path/cycle
// (edgeless H, distinct pinned heights), path/cycle, full edgeless pin set
// with distinct heights, and finally the oracle under its cap.
EngineKind select_engine(const UpeInstance& inst, int oracle_cap);

struct DecideOutcome {
    Decision decision = Decision::No;
    EngineKind engine = EngineKind::Oracle;
    Json witness;  // engine-dependent; null when absent
};

DecideOutcome decide(const UpeInstance& inst, EngineKind kind, int oracle_cap,
                     bool want_witness = true);

// Runs every applicable polynomial engine plus the oracle when it fits and
// requires unanimous decisions. Used by tests and the --cross-check flag.
DecideOutcome decide_cross_checked(const UpeInstance& inst, int oracle_cap);

}  // namespace upex
