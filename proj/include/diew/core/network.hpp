// The 9-qubit multiple-entanglement-swapping protocol: three tripartite
// states are distributed over six parties, the three middle parties
// (A2, A3, A4) perform Bell-basis measurements on their qubit pairs, and
// the post-selected 3-qubit state on (A1, A5, A6) is phase-corrected and
// compared against the closed-form swapped family.
//
// Canonical layout:
//   rho1 -> qubits (0,1,2) held by (A1,A2,A3)
//   rho2 -> qubits (3,4,5) held by (A2,A3,A4)
//   rho3 -> qubits (6,7,8) held by (A4,A5,A6)
//   measured pairs: (1,3) at A2, (2,4) at A3, (5,6) at A4
//   output qubits: (0,7,8) ordered (A1,A5,A6)

#pragma once

#include "diew/core/cmatrix.hpp"
#include "diew/core/states.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace diew::network {

using states::BellKind;

struct NetworkLayout {
    std::array<std::vector<int>, 6> ownership;  // party index -> qubits held
    std::array<std::array<int, 2>, 3> measured_pairs;
    std::array<int, 3> output_qubits;

    static const NetworkLayout& canonical();
};

// One Bell label per measuring party (A2, A3, A4); 64 patterns total.
using OutcomePattern = std::array<BellKind, 3>;

std::string pattern_label(const OutcomePattern& pattern);
OutcomePattern pattern_from_label(const std::string& label);
OutcomePattern pattern_from_index(int index);  // canonical enumeration 0..63
int pattern_index(const OutcomePattern& pattern);

enum class PauliOp { identity, x, z, xz };
const char* pauli_op_label(PauliOp op);

enum class MatchedSign { plus, minus, none };
char matched_sign_char(MatchedSign s);

struct PhaseCorrection {
    qlin::CMatrix corrected;
    std::array<PauliOp, 3> correction;
    MatchedSign matched_sign = MatchedSign::none;
    double match_distance = 0.0;
};

struct SwapResult {
    OutcomePattern pattern;
    double probability = 0.0;
    std::optional<qlin::CMatrix> conditional;  // empty for zero-weight patterns
    std::optional<qlin::CMatrix> corrected;
    std::array<PauliOp, 3> correction = {PauliOp::identity, PauliOp::identity, PauliOp::identity};
    MatchedSign matched_sign = MatchedSign::none;
    double match_distance = 0.0;
};

// (r1 x r2 x r3) in the canonical layout; 512 x 512.
qlin::CMatrix build_joint(const qlin::CMatrix& r1, const qlin::CMatrix& r2,
                          const qlin::CMatrix& r3);

// Project the measured pairs of the joint state onto the pattern's Bell
// states, renormalize, and phase-correct against rho4_closed(p, theta, +-).
// p and theta only parameterize the closed-form target.
// Throws ZeroProbabilityOutcome when the pattern has weight <= eps.
SwapResult swap(const qlin::CMatrix& r1, const qlin::CMatrix& r2, const qlin::CMatrix& r3,
                const OutcomePattern& pattern, double p, double theta);

// All 64 patterns, sorted by probability (descending; canonical index
// breaks ties). Zero-weight patterns carry probability 0 and no state.
std::vector<SwapResult> outcome_distribution(const qlin::CMatrix& r1, const qlin::CMatrix& r2,
                                             const qlin::CMatrix& r3, double p, double theta);

// Search all 4^3 local Pauli corrections (qubit 0 varies fastest, sign +
// before -) for the one bringing `conditional` closest in Frobenius
// distance to rho4_closed(p, theta, sign). matched_sign is `none` when
// the best distance exceeds 1e-8.
PhaseCorrection phase_correct(const qlin::CMatrix& conditional, double p, double theta);

// p^succ = 1/2 p p1 (1 + p cos 2t) sin^2 t.
double success_probability(double p, double p1, double theta);

}  // namespace diew::network
