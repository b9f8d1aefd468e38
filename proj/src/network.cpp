#include "diew/core/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diew::network {

namespace {

using qlin::CMatrix;
using qlin::Complex;

constexpr double kMatchThreshold = 1e-8;

// Bell bra/ket sandwich on qubit pair (qi, qj), removing both qubits:
// K = (<B|_{ij} x I) rho (|B>_{ij} x I), unnormalized; tr K is the
// outcome weight. Equivalent to projecting with |B><B| embedded at
// (qi, qj) and tracing the pair out, but quadratically cheaper.
CMatrix contract_pair(const CMatrix& rho, int qi, int qj, const Eigen::Vector4cd& bell) {
    const int n = rho.n_qubits();
    if (qi == qj || qi < 0 || qj < 0 || qi >= n || qj >= n) {
        throw std::out_of_range("contract_pair: bad qubit indices");
    }
    const int m = n - 2;
    std::vector<int> rest_shift;
    rest_shift.reserve(m);
    for (int q = 0; q < n; ++q) {
        if (q != qi && q != qj) rest_shift.push_back(n - 1 - q);
    }
    const int si = n - 1 - qi;
    const int sj = n - 1 - qj;

    const auto place = [&](Eigen::Index rest, int pair_bits) {
        Eigen::Index idx = 0;
        for (int j = 0; j < m; ++j) {
            idx |= ((rest >> (m - 1 - j)) & 1) << rest_shift[j];
        }
        idx |= Eigen::Index{(pair_bits >> 1) & 1} << si;
        idx |= Eigen::Index{pair_bits & 1} << sj;
        return idx;
    };

    const Eigen::Index dim_out = Eigen::Index{1} << m;
    qlin::EigenMatrix out(dim_out, dim_out);
    for (Eigen::Index r = 0; r < dim_out; ++r) {
        for (Eigen::Index c = 0; c < dim_out; ++c) {
            Complex acc{0.0, 0.0};
            for (int u = 0; u < 4; ++u) {
                if (bell(u) == Complex{0.0, 0.0}) continue;
                const Eigen::Index row = place(r, u);
                for (int v = 0; v < 4; ++v) {
                    if (bell(v) == Complex{0.0, 0.0}) continue;
                    acc += std::conj(bell(u)) * bell(v) * rho.mat()(row, place(c, v));
                }
            }
            out(r, c) = acc;
        }
    }
    return CMatrix::from_eigen(m, std::move(out));
}

const CMatrix& pauli_op_matrix(PauliOp op) {
    static const auto mats = [] {
        Eigen::Matrix2cd x, z;
        x << 0, 1, 1, 0;
        z << 1, 0, 0, -1;
        return std::array<CMatrix, 4>{
            CMatrix::identity(1),
            CMatrix::from_eigen(1, x),
            CMatrix::from_eigen(1, z),
            CMatrix::from_eigen(1, x * z),
        };
    }();
    return mats[static_cast<int>(op)];
}

void require_three_qubit_inputs(const CMatrix& r1, const CMatrix& r2, const CMatrix& r3) {
    if (r1.n_qubits() != 3 || r2.n_qubits() != 3 || r3.n_qubits() != 3) {
        throw std::invalid_argument("network inputs must be 3-qubit states");
    }
}

// Unnormalized post-selected output for one pattern. Sequential pair
// contractions; indices shift as measured qubits are consumed:
//   9 qubits, contract (1,3) -> survivors (0,2,4,5,6,7,8)
//   7 qubits, contract (1,2) [originally (2,4)] -> (0,5,6,7,8)
//   5 qubits, contract (1,2) [originally (5,6)] -> (0,7,8)
CMatrix unnormalized_output(const CMatrix& joint, const OutcomePattern& pattern) {
    CMatrix k = contract_pair(joint, 1, 3, states::bell_vector(pattern[0]));
    k = contract_pair(k, 1, 2, states::bell_vector(pattern[1]));
    return contract_pair(k, 1, 2, states::bell_vector(pattern[2]));
}

SwapResult summarize(const CMatrix& unnormalized, const OutcomePattern& pattern,
                     double p, double theta) {
    SwapResult result;
    result.pattern = pattern;
    const double weight = unnormalized.trace().real();
    if (weight <= qlin::kZeroOutcomeEps) {
        throw qlin::ZeroProbabilityOutcome(weight);
    }
    result.probability = weight;
    result.conditional = CMatrix::from_eigen(3, unnormalized.mat() / weight);
    PhaseCorrection pc = phase_correct(*result.conditional, p, theta);
    result.corrected = std::move(pc.corrected);
    result.correction = pc.correction;
    result.matched_sign = pc.matched_sign;
    result.match_distance = pc.match_distance;
    return result;
}

}  // namespace

const NetworkLayout& NetworkLayout::canonical() {
    static const NetworkLayout layout = [] {
        NetworkLayout l;
        l.ownership = {{{0}, {1, 3}, {2, 4}, {5, 6}, {7}, {8}}};
        l.measured_pairs = {{{1, 3}, {2, 4}, {5, 6}}};
        l.output_qubits = {0, 7, 8};
        return l;
    }();
    return layout;
}

std::string pattern_label(const OutcomePattern& pattern) {
    std::ostringstream out;
    out << states::bell_label(pattern[0]) << ',' << states::bell_label(pattern[1]) << ','
        << states::bell_label(pattern[2]);
    return out.str();
}

OutcomePattern pattern_from_label(const std::string& label) {
    std::array<std::string, 3> parts;
    size_t start = 0;
    for (int i = 0; i < 3; ++i) {
        const size_t comma = label.find(',', start);
        if ((comma == std::string::npos) != (i == 2)) {
            throw std::invalid_argument("pattern must be three comma-separated Bell labels");
        }
        parts[i] = label.substr(start, comma == std::string::npos ? comma : comma - start);
        start = comma + 1;
    }
    return {states::bell_from_label(parts[0]), states::bell_from_label(parts[1]),
            states::bell_from_label(parts[2])};
}

OutcomePattern pattern_from_index(int index) {
    if (index < 0 || index >= 64) throw std::out_of_range("pattern index must be 0..63");
    return {static_cast<BellKind>((index >> 4) & 3), static_cast<BellKind>((index >> 2) & 3),
            static_cast<BellKind>(index & 3)};
}

int pattern_index(const OutcomePattern& pattern) {
    return (static_cast<int>(pattern[0]) << 4) | (static_cast<int>(pattern[1]) << 2) |
           static_cast<int>(pattern[2]);
}

const char* pauli_op_label(PauliOp op) {
    switch (op) {
        case PauliOp::identity: return "I";
        case PauliOp::x: return "X";
        case PauliOp::z: return "Z";
        case PauliOp::xz: return "XZ";
    }
    throw std::invalid_argument("pauli_op_label: bad op");
}

char matched_sign_char(MatchedSign s) {
    switch (s) {
        case MatchedSign::plus: return '+';
        case MatchedSign::minus: return '-';
        case MatchedSign::none: return 'n';
    }
    throw std::invalid_argument("matched_sign_char: bad sign");
}

qlin::CMatrix build_joint(const qlin::CMatrix& r1, const qlin::CMatrix& r2,
                          const qlin::CMatrix& r3) {
    require_three_qubit_inputs(r1, r2, r3);
    return qlin::kron(qlin::kron(r1, r2), r3);
}

SwapResult swap(const qlin::CMatrix& r1, const qlin::CMatrix& r2, const qlin::CMatrix& r3,
                const OutcomePattern& pattern, double p, double theta) {
    const CMatrix joint = build_joint(r1, r2, r3);
    return summarize(unnormalized_output(joint, pattern), pattern, p, theta);
}

std::vector<SwapResult> outcome_distribution(const qlin::CMatrix& r1, const qlin::CMatrix& r2,
                                             const qlin::CMatrix& r3, double p, double theta) {
    const CMatrix joint = build_joint(r1, r2, r3);
    std::vector<SwapResult> results;
    results.reserve(64);
    for (int idx = 0; idx < 64; ++idx) {
        const OutcomePattern pattern = pattern_from_index(idx);
        const CMatrix k = unnormalized_output(joint, pattern);
        try {
            results.push_back(summarize(k, pattern, p, theta));
        } catch (const qlin::ZeroProbabilityOutcome&) {
            SwapResult zero;
            zero.pattern = pattern;
            zero.probability = 0.0;
            results.push_back(std::move(zero));
        }
    }
    std::stable_sort(results.begin(), results.end(), [](const SwapResult& a, const SwapResult& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return pattern_index(a.pattern) < pattern_index(b.pattern);
    });
    return results;
}

PhaseCorrection phase_correct(const qlin::CMatrix& conditional, double p, double theta) {
    if (conditional.n_qubits() != 3) {
        throw std::invalid_argument("phase_correct needs a 3-qubit state");
    }
    const std::array<CMatrix, 2> targets = {states::rho4_closed(p, theta, +1),
                                            states::rho4_closed(p, theta, -1)};

    PhaseCorrection best;
    double best_distance = std::numeric_limits<double>::infinity();
    for (int sign_idx = 0; sign_idx < 2; ++sign_idx) {
        for (int k = 0; k < 64; ++k) {
            // Qubit 0's correction varies fastest.
            const std::array<PauliOp, 3> ops = {static_cast<PauliOp>(k & 3),
                                                static_cast<PauliOp>((k >> 2) & 3),
                                                static_cast<PauliOp>((k >> 4) & 3)};
            const CMatrix u = qlin::kron(
                qlin::kron(pauli_op_matrix(ops[0]), pauli_op_matrix(ops[1])), pauli_op_matrix(ops[2]));
            const Eigen::MatrixXcd candidate = u.mat() * conditional.mat() * u.mat().adjoint();
            const double distance = (candidate - targets[sign_idx].mat()).norm();
            if (distance < best_distance) {
                best_distance = distance;
                best.corrected = CMatrix::from_eigen(3, candidate);
                best.correction = ops;
                best.matched_sign = sign_idx == 0 ? MatchedSign::plus : MatchedSign::minus;
                best.match_distance = distance;
            }
        }
    }
    if (best.match_distance > kMatchThreshold) {
        best.matched_sign = MatchedSign::none;
    }
    return best;
}

double success_probability(double p, double p1, double theta) {
    states::StateParams params{p, p1, theta};
    params.validate();
    const double st = std::sin(theta);
    return 0.5 * p * p1 * (1.0 + p * std::cos(2.0 * theta)) * st * st;
}

}  // namespace diew::network
