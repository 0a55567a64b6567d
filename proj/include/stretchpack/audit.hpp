#ifndef STRETCHPACK_AUDIT_HPP
#define STRETCHPACK_AUDIT_HPP

#include <string>
#include <vector>

#include "stretchpack/engine.hpp"
#include "stretchpack/model.hpp"
#include "stretchpack/oracle.hpp"

namespace stretchpack {

// A violated invariant clause. Violations are data, never exceptions.
struct Violation {
    std::string clause;      // "(i)".."(vi)", "lemma1-w", "lemma1-v", "run-*"
    std::vector<int> bins;   // offending bin ids, when bin-specific
    std::string detail;
};

// Invariant clauses (i)-(v) on a first-phase state. Types are recomputed
// from bin contents, so synthetic states built by tests are checked the
// same way as live engine states.
std::vector<Violation> check_phase1_state(const PackerState& state);

// Clause (vi): 3e <= r <= 3e+3 at a phase-1 termination (counts recomputed).
std::vector<Violation> check_phase1_termination(const PackerState& state);

// Weight/value accounting over a packing: sum w(A) <= 0 and sum v(A) <= 0
// with all m bins counted, empty ones included at w = -13, v = -3.
std::vector<Violation> check_lemma1(const std::vector<Item>& items, const Packing& packing,
                                    int m);

struct RunReport {
    std::vector<Violation> violations;
    bool ratio_available = false;
    Rat min_cap;   // valid iff ratio_available
    Rat ratio;     // max_load / min_cap, exact
};

// Checks a finished run: <= m bins touched, all loads <= 18, and no failure
// when the instance carries a verified witness. Reports the exact empirical
// ratio when the oracle can compute the offline optimum.
RunReport check_run(const RunResult& result, const Instance& instance,
                    const OracleConfig& cfg = {});

// A violation observed mid-run, attached to the placement it follows.
struct ViolationAt {
    int item_index;
    Violation violation;
};

struct AuditedRun {
    RunResult result;
    std::vector<ViolationAt> violations;
};

// Runs the engine with the invariant checkers wired in after every phase-1
// placement and at the phase transition.
AuditedRun audited_run(const Instance& instance, Algorithm algorithm);

}  // namespace stretchpack

#endif
