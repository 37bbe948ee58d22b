#pragma once

#include "upex/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace upex {

enum class Decision { Yes, No };

// One combinatorial guess: a vertical order of the vertices (as classes
// V_1..V_k of equal height) plus, per class, a left-to-right order of the
// class vertices and of the edges crossing its horizontal line.
struct CertElem {
    bool is_vertex = true;
    int id = -1;  // vertex id, or index into graph.edges

    bool operator==(const CertElem& o) const { return is_vertex == o.is_vertex && id == o.id; }
};

struct Certificate {
    std::vector<int> y_class;                   // per vertex: 0..k-1
    std::vector<std::vector<CertElem>> sigma;   // per class
};

struct CheckResult {
    bool pass = true;
    int failed_check = 0;  // 1..7 per the certificate checks; 8 = embedding consistency
    std::string detail;
};

// Runs the seven certificate checks in order and, when the instance
// prescribes an upward embedding, the rotation-consistency check (reported
// as check 8). Throws std::invalid_argument on structurally malformed
// certificates.
CheckResult check_certificate(const UpeInstance& inst, const Certificate& cert);

// Builds the drawing the certificate describes: classes on horizontal
// lines, free elements interleaved between the pinned ones, edges as
// per-strip segments. H-elements are reproduced bit-exactly. Requires a
// passing certificate.
FullDrawing materialize_certificate(const UpeInstance& inst, const Certificate& cert);

struct OracleOptions {
    int cap = 7;               // refuse instances with more vertices
    bool materialize = true;   // on YES, build and verify a drawing
};

struct OracleResult {
    Decision decision = Decision::No;
    std::optional<Certificate> certificate;  // on YES
    std::optional<FullDrawing> witness;      // on YES, when materialize is set
};

// Exhaustive decision by enumerating certificates (UPE-FUE when the
// instance carries an embedding, UPE otherwise). Throws when the vertex
// count exceeds the cap.
OracleResult brute_force_decide(const UpeInstance& inst, const OracleOptions& opt = {});

}  // namespace upex
