#include "diew/core/cmatrix.hpp"
#include "diew/core/rng.hpp"
#include "diew/core/states.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace diew;
using qlin::CMatrix;
using qlin::Complex;

namespace {

CMatrix random_operator(rng::Stream& stream, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    qlin::EigenMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = stream.complex_normal();
    }
    return CMatrix::from_eigen(n_qubits, std::move(m));
}

CMatrix random_density(rng::Stream& stream, int n_qubits) {
    const CMatrix g = random_operator(stream, n_qubits);
    qlin::EigenMatrix m = g.mat() * g.mat().adjoint();
    m /= m.trace();
    return CMatrix::from_eigen(n_qubits, std::move(m));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a.mat() - b.mat()).cwiseAbs().maxCoeff();
}

CMatrix diag2(double d0, double d1) {
    qlin::EigenMatrix m = qlin::EigenMatrix::Zero(2, 2);
    m(0, 0) = d0;
    m(1, 1) = d1;
    return CMatrix::from_eigen(1, std::move(m));
}

}  // namespace

TEST_CASE("kron of identities and basis diagonals fixes the ordering convention") {
    const CMatrix i2 = CMatrix::identity(1);
    CHECK(max_abs_diff(qlin::kron(i2, i2), CMatrix::identity(2)) == 0.0);

    // kron(diag(1,0), diag(0,1)) = diag(0,1,0,0): qubit 0 is the high bit.
    const CMatrix k = qlin::kron(diag2(1, 0), diag2(0, 1));
    for (int i = 0; i < 4; ++i) {
        CHECK(k(i, i) == Complex{i == 1 ? 1.0 : 0.0, 0.0});
    }
}

TEST_CASE("kron(sigma_z, sigma_x) has the +-sigma_x block structure") {
    const CMatrix k = qlin::kron(qlin::pauli(3), qlin::pauli(1));
    CHECK(k(0, 1) == Complex{1.0, 0.0});
    CHECK(k(1, 0) == Complex{1.0, 0.0});
    CHECK(k(2, 3) == Complex{-1.0, 0.0});
    CHECK(k(3, 2) == Complex{-1.0, 0.0});
    CHECK(k(0, 0) == Complex{0.0, 0.0});
    CHECK(k(0, 3) == Complex{0.0, 0.0});
}

TEST_CASE("kron is associative and multiplicative over traces") {
    rng::Stream stream(7);
    for (int rep = 0; rep < 8; ++rep) {
        const CMatrix a = random_operator(stream, 1);
        const CMatrix b = random_operator(stream, 1);
        const CMatrix c = random_operator(stream, 2);
        CHECK(max_abs_diff(qlin::kron(qlin::kron(a, b), c), qlin::kron(a, qlin::kron(b, c))) <
              1e-12);
        const Complex lhs = qlin::kron(a, b).trace();
        const Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("partial trace of a product state recovers the factor") {
    rng::Stream stream(11);
    const CMatrix a = random_density(stream, 1);
    const CMatrix b = random_density(stream, 2);
    const CMatrix joint = qlin::kron(a, b);
    CHECK(max_abs_diff(qlin::partial_trace(joint, {1, 2}), a) < 1e-12);
    CHECK(max_abs_diff(qlin::partial_trace(joint, {0}), b) < 1e-12);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    const CMatrix bell = states::bell_state(states::BellKind::psi_plus);
    const CMatrix reduced = qlin::partial_trace(bell, {1});
    CHECK(max_abs_diff(reduced, CMatrix::from_eigen(1, 0.5 * qlin::EigenMatrix::Identity(2, 2))) <
          1e-12);
}

TEST_CASE("partial trace of GHZ over one qubit is the classical 00/11 mixture") {
    const CMatrix reduced = qlin::partial_trace(states::ghz(+1), {2});
    qlin::EigenMatrix expected = qlin::EigenMatrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    CHECK(max_abs_diff(reduced, CMatrix::from_eigen(2, expected)) < 1e-12);
}

TEST_CASE("partial trace composes and preserves the trace") {
    rng::Stream stream(13);
    const CMatrix rho = random_density(stream, 4);
    const CMatrix two_step = qlin::partial_trace(qlin::partial_trace(rho, {1}), {2});
    // After removing qubit 1, original qubit 3 sits at index 2.
    const CMatrix one_step = qlin::partial_trace(rho, {1, 3});
    CHECK(max_abs_diff(two_step, one_step) < 1e-12);
    CHECK(std::abs(one_step.trace() - Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("partial trace rejects out-of-range qubits") {
    CHECK_THROWS_AS(qlin::partial_trace(CMatrix::identity(2), {2}), std::out_of_range);
}

TEST_CASE("project handles the unit, orthogonal and maximally mixed cases") {
    const CMatrix bell = states::bell_state(states::BellKind::psi_plus);

    auto [w_same, cond_same] = qlin::project(bell, bell);
    CHECK(w_same == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs_diff(cond_same, bell) < 1e-12);

    qlin::EigenMatrix zz = qlin::EigenMatrix::Zero(4, 4);
    zz(0, 0) = 1.0;
    const CMatrix ket00 = CMatrix::from_eigen(2, zz);
    CHECK_THROWS_AS(qlin::project(ket00, bell), qlin::ZeroProbabilityOutcome);

    const CMatrix mixed = CMatrix::from_eigen(2, 0.25 * qlin::EigenMatrix::Identity(4, 4));
    auto [w_mixed, cond_mixed] = qlin::project(mixed, bell);
    CHECK(w_mixed == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(max_abs_diff(cond_mixed, bell) < 1e-12);
}

TEST_CASE("project validates projector idempotency") {
    rng::Stream stream(17);
    const CMatrix not_projector = random_density(stream, 1);
    CHECK_THROWS_AS(qlin::project(CMatrix::identity(1), not_projector), std::invalid_argument);
}

TEST_CASE("projection weights over a complete orthogonal set sum to one") {
    rng::Stream stream(19);
    const CMatrix rho = random_density(stream, 2);
    double total = 0.0;
    for (const auto kind : {states::BellKind::phi_plus, states::BellKind::phi_minus,
                            states::BellKind::psi_plus, states::BellKind::psi_minus}) {
        try {
            total += qlin::project(rho, states::bell_state(kind)).first;
        } catch (const qlin::ZeroProbabilityOutcome& e) {
            total += e.weight();
        }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bloch observable reproduces the Pauli axes and squares to identity") {
    const double half_pi = std::numbers::pi / 2;
    CHECK(max_abs_diff(qlin::bloch_observable(0, 0), qlin::pauli(3)) < 1e-15);
    CHECK(max_abs_diff(qlin::bloch_observable(half_pi, 0), qlin::pauli(1)) < 1e-15);
    CHECK(max_abs_diff(qlin::bloch_observable(half_pi, half_pi), qlin::pauli(2)) < 1e-15);

    rng::Stream stream(23);
    for (int rep = 0; rep < 16; ++rep) {
        const CMatrix obs = qlin::bloch_observable(stream.uniform(0, std::numbers::pi),
                                                   stream.uniform(0, 2 * std::numbers::pi));
        CHECK(obs.is_hermitian(1e-12));
        CHECK(std::abs(obs.trace()) < 1e-12);
        CHECK(max_abs_diff(CMatrix::from_eigen(1, obs.mat() * obs.mat()), CMatrix::identity(1)) <
              1e-12);
    }
}

TEST_CASE("embed_two_qubit agrees with kron on adjacent pairs") {
    rng::Stream stream(29);
    const CMatrix op = random_operator(stream, 2);
    const CMatrix direct = qlin::kron(op, CMatrix::identity(1));
    CHECK(max_abs_diff(qlin::embed_two_qubit(op, 0, 1, 3), direct) < 1e-12);

    const CMatrix tail = qlin::kron(CMatrix::identity(1), op);
    CHECK(max_abs_diff(qlin::embed_two_qubit(op, 1, 2, 3), tail) < 1e-12);
}

TEST_CASE("matrices with non-finite entries are rejected") {
    qlin::EigenMatrix bad = qlin::EigenMatrix::Identity(2, 2);
    bad(0, 1) = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(CMatrix::from_eigen(1, bad), std::invalid_argument);
}

TEST_CASE("is_density accepts states and rejects non-states") {
    rng::Stream stream(31);
    CHECK(random_density(stream, 2).is_density(1e-10));
    CHECK_FALSE(CMatrix::identity(2).is_density(1e-10));           // trace 4
    CHECK_FALSE(random_operator(stream, 1).is_density(1e-10));     // not hermitian
    qlin::EigenMatrix neg = qlin::EigenMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_FALSE(CMatrix::from_eigen(1, neg).is_density(1e-10));    // negative eigenvalue
}
