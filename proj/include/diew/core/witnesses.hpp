// Born-rule probabilities, correlators, and the five entanglement
// witnesses evaluated on 3-qubit states:
//
//   mermin      |<A1B0C0> + <A0B1C0> + <A0B0C1> - <A1B1C1>|            <= 2 sqrt(2)
//   uffink      (same bracket)^2 + (<A1B1C0>+<A0B1C1>+<A1B0C1>-<A0B0C0>)^2 <= 8
//   bancal      sqrt(3)/2 * (18-term 3-setting polynomial)              <= 9
//   liang       1/4 * (7 plus-terms - 3 <A1B1C1>)                       <= sqrt(2)
//   cavalcanti  1 - 0.1831 (<A3B3> + <A3Z> + <B3Z>)
//                 - 0.2582 (<A1B1X> - <A1B2Y> - <A2B1Y> - <A2B2X>)      >= 0
//
// The first four are device-independent (all parties untrusted); the
// last is the steering inequality with the third party trusted to
// measure Pauli X, Y, Z.

#pragma once

#include "diew/core/cmatrix.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace diew::witnesses {

struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

// Unit Bloch vector (sin t cos f, sin t sin f, cos t).
std::array<double, 3> bloch_vector(const BlochAngles& a);

// Per-party dichotomic observables given as Bloch angles. For the
// steering witness only parties 0 and 1 carry settings (three each);
// party 2 is the trusted side.
struct MeasurementScenario {
    std::array<std::vector<BlochAngles>, 3> settings;

    // Common settings count m; throws unless all three parties agree.
    int settings_per_party() const;
};

enum class WitnessKind { linear, sum_of_squares, steering };

struct WitnessSpec {
    std::string name;
    int m = 2;  // settings per party
    WitnessKind kind = WitnessKind::linear;
    // Flattened m^3 coefficient tensors, index (x*m + y)*m + z.
    // One tensor for linear witnesses, two (the brackets) for
    // sum-of-squares. Empty for the steering witness.
    std::vector<std::vector<double>> coeffs;
    bool absolute = false;  // report |value| (Mermin)
    double bound = 0.0;
    bool violation_above = true;  // false: violation when value < bound

    double coeff(int tensor, int x, int y, int z) const {
        return coeffs[tensor][(x * m + y) * m + z];
    }
    // Dimension of the optimization angle vector.
    int angle_count() const;
    bool violates(double value) const {
        return violation_above ? value > bound : value < bound;
    }
};

const WitnessSpec& mermin();
const WitnessSpec& uffink();
const WitnessSpec& bancal();
const WitnessSpec& liang();
const WitnessSpec& cavalcanti_spec();
const WitnessSpec& witness_by_name(std::string_view name);
const std::vector<const WitnessSpec*>& all_witnesses();

// p(abc|xyz) = tr[ M_{a|x} x M_{b|y} x M_{c|z} rho ], M = (I + a n.sigma)/2.
double joint_probability(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                         int x, int y, int z, int a, int b, int c);

// <A_x B_y C_z> = tr[ rho A_x x B_y x C_z ].
double correlator(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                  int x, int y, int z);

// All correlators a witness consumes. Full m^3 triples for the
// device-independent witnesses; the steering witness instead fills the
// trusted-slot tables (identity / X / Y / Z on party 2).
struct CorrelatorTable {
    int m = 0;
    std::vector<double> triple;                  // m^3, index (x*m+y)*m+z
    std::array<std::array<double, 3>, 3> ab{};   // <A_x B_y I>
    std::array<std::array<double, 3>, 3> ab_x{}; // <A_x B_y X>
    std::array<std::array<double, 3>, 3> ab_y{}; // <A_x B_y Y>
    std::array<double, 3> az{};                  // <A_x I Z>
    std::array<double, 3> bz{};                  // <I B_y Z>
};

// Pauli expectation tensor t[i][j][k] = Re tr[rho s_i x s_j x s_k],
// s_0 = I. Computing it once per state makes every correlator a cheap
// trigonometric contraction, which is what the optimizer iterates on.
class PauliCorrelators {
public:
    static PauliCorrelators from_state(const qlin::CMatrix& rho);

    double triple(const std::array<double, 3>& a, const std::array<double, 3>& b,
                  const std::array<double, 3>& c) const;
    double pair_ab(const std::array<double, 3>& a, const std::array<double, 3>& b,
                   int trusted /* 0 = I, 1 = X, 2 = Y, 3 = Z */) const;
    double a_z(const std::array<double, 3>& a) const;
    double b_z(const std::array<double, 3>& b) const;

    double t[4][4][4] = {};
};

// Born-rule route (definition) and tensor route (fast path). They agree
// to numerical precision; tests pin that down.
CorrelatorTable correlator_table(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                                 const WitnessSpec& spec);
CorrelatorTable correlator_table_fast(const PauliCorrelators& pauli,
                                      const MeasurementScenario& scenario,
                                      const WitnessSpec& spec);

// Witness value from an already-evaluated table.
double combine(const WitnessSpec& spec, const CorrelatorTable& table);

double evaluate(const WitnessSpec& spec, const qlin::CMatrix& rho,
                const MeasurementScenario& scenario);
double evaluate_fast(const WitnessSpec& spec, const PauliCorrelators& pauli,
                     const MeasurementScenario& scenario);

// The steering expression for explicit untrusted settings; negative
// values signal genuine multipartite steering.
double cavalcanti(const qlin::CMatrix& rho, const std::array<BlochAngles, 3>& a_settings,
                  const std::array<BlochAngles, 3>& b_settings);

// Uniformly random scenario of the shape the witness expects.
MeasurementScenario random_scenario(const WitnessSpec& spec, std::uint64_t seed);

// Build a scenario from a flat angle vector laid out party-major,
// setting-minor, (theta, phi) innermost; inverse of flatten_angles.
MeasurementScenario scenario_from_angles(const WitnessSpec& spec, const std::vector<double>& angles);
std::vector<double> flatten_angles(const WitnessSpec& spec, const MeasurementScenario& scenario);

}  // namespace diew::witnesses
