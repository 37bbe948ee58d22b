#pragma once

#include "upex/instance.hpp"

#include <cstdint>

namespace upex {

struct GenOptions {
    enum Kind { Path, Cycle, St };
    Kind kind = Path;
    int n = 6;
    uint64_t seed = 1;
    double pin_fraction = 0.5;
    bool embedded = true;
    // Pins are sampled from a constructed drawing (instance is a YES by
    // construction); adversarial shuffles the pinned heights afterwards.
    bool adversarial = false;
    int face_insertions = -1;  // st only; -1 picks a default
};

// Deterministic for a fixed option set.
UpeInstance generate_instance(const GenOptions& opt);

}  // namespace upex
