// Constructors for the tripartite state families, Bell/GHZ primitives,
// and a seeded sampler of biseparable mixtures.

#pragma once

#include "diew/core/cmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace diew::states {

// Mixing weights p (rho1/rho3), p1 (rho2) and the entanglement angle
// theta in [0, pi/4]. Validation is strict at the interval edges.
struct StateParams {
    double p = 1.0;
    double p1 = 1.0;
    double theta = 0.0;

    void validate() const;
};

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

const char* bell_label(BellKind kind);
BellKind bell_from_label(const std::string& label);

enum class Partition { a_bc, b_ac, c_ab };

struct BiseparableTerm {
    double weight;
    Partition partition;
    qlin::CMatrix single;  // 1 qubit
    qlin::CMatrix pair;    // 2 qubits
};

// Convex mixture of pure product terms, each across one bipartition.
struct BiseparableMixture {
    std::vector<BiseparableTerm> terms;
    qlin::CMatrix assemble() const;
};

// rho1 = p |psi_f><psi_f| + (1-p)|001><001|,
// psi_f = cos t |000> + sin t |111>.
qlin::CMatrix rho1(double p, double theta);

// rho2 = p1 |ghz+><ghz+| + (1-p1)|010><010|.
qlin::CMatrix rho2(double p1);

// rho3 = p |psi_l><psi_l| + (1-p)|100><100|,
// psi_l = sin t |000> + cos t |111>.
qlin::CMatrix rho3(double p, double theta);

// Final mixing weight of the swapped state: 2 p cos^2 t / (1 + p cos 2t).
double p_final(double p, double theta);

// rho4 = p_f |ghz(sign)><ghz(sign)| + (1-p_f)|100><100|, sign = +1 or -1.
qlin::CMatrix rho4_closed(double p, double theta, int sign);

// (|000> + sign |111>)/sqrt(2) as a projector.
qlin::CMatrix ghz(int sign);

qlin::CMatrix bell_state(BellKind kind);
Eigen::Vector4cd bell_vector(BellKind kind);

// Deterministic in the seed; every term is a pure product state across a
// uniformly chosen bipartition, weights Dirichlet-uniform.
BiseparableMixture random_biseparable(std::uint64_t seed, int n_terms);

}  // namespace diew::states
