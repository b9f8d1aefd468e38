// Dense complex linear algebra over multi-qubit operators.
//
// Index convention used throughout the library: qubit 0 is the most
// significant bit of the computational-basis index, so for an n-qubit
// operator the basis state |q0 q1 ... q_{n-1}> has index
// sum_k q_k << (n-1-k).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <set>
#include <stdexcept>
#include <utility>

namespace diew::qlin {

using Complex = std::complex<double>;
using EigenMatrix = Eigen::MatrixXcd;

// Weights at or below this are treated as a zero-probability outcome.
// Far below any physical weight on the scanned parameter grids.
inline constexpr double kZeroOutcomeEps = 1e-12;

// Thrown when a projection (or post-selection pattern) has no weight.
class ZeroProbabilityOutcome : public std::runtime_error {
public:
    explicit ZeroProbabilityOutcome(double weight)
        : std::runtime_error("projection weight below zero-outcome threshold"),
          weight_(weight) {}
    double weight() const { return weight_; }

private:
    double weight_;
};

// Square complex matrix over n qubits (dimension 2^n). Entries are
// validated to be finite on construction; instances are immutable and
// safe to share across threads.
class CMatrix {
public:
    CMatrix() : n_qubits_(0), mat_(EigenMatrix::Zero(1, 1)) {}

    static CMatrix zero(int n_qubits);
    static CMatrix identity(int n_qubits);

    // Wraps an Eigen matrix, checking dimension 2^n_qubits and finiteness.
    static CMatrix from_eigen(int n_qubits, EigenMatrix m);

    // |psi><psi| from a (not necessarily normalized) state vector.
    static CMatrix from_pure(int n_qubits, const Eigen::VectorXcd& psi);

    int n_qubits() const { return n_qubits_; }
    Eigen::Index dim() const { return mat_.rows(); }
    const EigenMatrix& mat() const { return mat_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }
    Complex trace() const { return mat_.trace(); }

    bool is_hermitian(double tol) const;

    // Hermitian, trace ~ 1, eigenvalues >= -tol.
    bool is_density(double tol) const;

private:
    CMatrix(int n_qubits, EigenMatrix m) : n_qubits_(n_qubits), mat_(std::move(m)) {}

    int n_qubits_;
    EigenMatrix mat_;
};

// Tensor product with a on the high-order qubits.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Trace out the qubits in `discard`; ordering of the survivors is preserved.
CMatrix partial_trace(const CMatrix& rho, const std::set<int>& discard);

// Project rho onto proj (idempotent to 1e-10) and renormalize:
// returns (Tr[P rho P], P rho P / weight). Throws ZeroProbabilityOutcome
// when the weight is at or below kZeroOutcomeEps.
std::pair<double, CMatrix> project(const CMatrix& rho, const CMatrix& proj);

// Dichotomic qubit observable n.sigma for the Bloch direction
// (sin t cos f, sin t sin f, cos t): hermitian, traceless, eigenvalues +-1.
CMatrix bloch_observable(double theta, double phi);

// Embed a 2-qubit operator so it acts on qubits (qi, qj) of an n-qubit
// space, identity elsewhere. qi supplies the high bit of the operator's
// own 2-qubit index.
CMatrix embed_two_qubit(const CMatrix& op, int qi, int qj, int n_qubits);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

// Pauli matrices and the identity, in the {I, X, Y, Z} order used by the
// correlator machinery.
const CMatrix& pauli(int which);

}  // namespace diew::qlin
