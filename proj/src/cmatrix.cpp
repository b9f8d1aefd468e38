#include "diew/core/cmatrix.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace diew::qlin {

namespace {

Eigen::Index pow2(int n) { return Eigen::Index{1} << n; }

void check_qubit_count(int n_qubits) {
    if (n_qubits < 0 || n_qubits > 30) {
        throw std::invalid_argument("qubit count out of range");
    }
}

}  // namespace

CMatrix CMatrix::zero(int n_qubits) {
    check_qubit_count(n_qubits);
    return CMatrix(n_qubits, EigenMatrix::Zero(pow2(n_qubits), pow2(n_qubits)));
}

CMatrix CMatrix::identity(int n_qubits) {
    check_qubit_count(n_qubits);
    return CMatrix(n_qubits, EigenMatrix::Identity(pow2(n_qubits), pow2(n_qubits)));
}

CMatrix CMatrix::from_eigen(int n_qubits, EigenMatrix m) {
    check_qubit_count(n_qubits);
    if (m.rows() != pow2(n_qubits) || m.cols() != pow2(n_qubits)) {
        throw std::invalid_argument("matrix dimension is not 2^n_qubits");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("matrix entries must be finite");
    }
    return CMatrix(n_qubits, std::move(m));
}

CMatrix CMatrix::from_pure(int n_qubits, const Eigen::VectorXcd& psi) {
    if (psi.size() != pow2(n_qubits)) {
        throw std::invalid_argument("state vector dimension is not 2^n_qubits");
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("cannot project a zero state vector");
    }
    Eigen::VectorXcd unit = psi / norm;
    return from_eigen(n_qubits, unit * unit.adjoint());
}

bool CMatrix::is_hermitian(double tol) const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool CMatrix::is_density(double tol) const {
    if (!is_hermitian(tol)) return false;
    if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > tol) return false;
    Eigen::SelfAdjointEigenSolver<EigenMatrix> es(
        (mat_ + mat_.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index da = a.dim();
    const Eigen::Index db = b.dim();
    EigenMatrix out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.mat()(i, j) * b.mat();
        }
    }
    return CMatrix::from_eigen(a.n_qubits() + b.n_qubits(), std::move(out));
}

CMatrix partial_trace(const CMatrix& rho, const std::set<int>& discard) {
    const int n = rho.n_qubits();
    for (int q : discard) {
        if (q < 0 || q >= n) throw std::out_of_range("partial_trace: qubit index out of range");
    }
    std::vector<int> keep;
    for (int q = 0; q < n; ++q) {
        if (!discard.count(q)) keep.push_back(q);
    }
    const int m = static_cast<int>(keep.size());
    const int k = n - m;

    // Bit placements of kept and discarded qubits inside the full index.
    std::vector<int> keep_shift(m), disc_shift(k);
    for (int j = 0; j < m; ++j) keep_shift[j] = n - 1 - keep[j];
    int dj = 0;
    for (int q : discard) disc_shift[dj++] = n - 1 - q;

    const auto expand = [&](Eigen::Index kept_bits, Eigen::Index traced_bits) {
        Eigen::Index idx = 0;
        for (int j = 0; j < m; ++j) {
            idx |= ((kept_bits >> (m - 1 - j)) & 1) << keep_shift[j];
        }
        for (int j = 0; j < k; ++j) {
            idx |= ((traced_bits >> (k - 1 - j)) & 1) << disc_shift[j];
        }
        return idx;
    };

    const Eigen::Index dim_out = Eigen::Index{1} << m;
    const Eigen::Index dim_tr = Eigen::Index{1} << k;
    EigenMatrix out = EigenMatrix::Zero(dim_out, dim_out);
    for (Eigen::Index r = 0; r < dim_out; ++r) {
        for (Eigen::Index c = 0; c < dim_out; ++c) {
            Complex acc{0.0, 0.0};
            for (Eigen::Index t = 0; t < dim_tr; ++t) {
                acc += rho.mat()(expand(r, t), expand(c, t));
            }
            out(r, c) = acc;
        }
    }
    return CMatrix::from_eigen(m, std::move(out));
}

std::pair<double, CMatrix> project(const CMatrix& rho, const CMatrix& proj) {
    if (rho.dim() != proj.dim()) {
        throw std::invalid_argument("project: dimension mismatch");
    }
    if ((proj.mat() * proj.mat() - proj.mat()).norm() > 1e-10) {
        throw std::invalid_argument("project: operator is not idempotent");
    }
    EigenMatrix sandwich = proj.mat() * rho.mat() * proj.mat();
    const double weight = sandwich.trace().real();
    if (weight <= kZeroOutcomeEps) {
        throw ZeroProbabilityOutcome(weight);
    }
    return {weight, CMatrix::from_eigen(rho.n_qubits(), sandwich / weight)};
}

CMatrix bloch_observable(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("bloch_observable: angles must be finite");
    }
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    EigenMatrix m(2, 2);
    m(0, 0) = Complex{ct, 0.0};
    m(0, 1) = Complex{st * std::cos(phi), -st * std::sin(phi)};
    m(1, 0) = Complex{st * std::cos(phi), st * std::sin(phi)};
    m(1, 1) = Complex{-ct, 0.0};
    return CMatrix::from_eigen(1, std::move(m));
}

CMatrix embed_two_qubit(const CMatrix& op, int qi, int qj, int n_qubits) {
    if (op.n_qubits() != 2) throw std::invalid_argument("embed_two_qubit: operator must act on 2 qubits");
    if (qi == qj || qi < 0 || qj < 0 || qi >= n_qubits || qj >= n_qubits) {
        throw std::out_of_range("embed_two_qubit: bad qubit indices");
    }
    const int m = n_qubits - 2;
    std::vector<int> rest_shift;
    rest_shift.reserve(m);
    for (int q = 0; q < n_qubits; ++q) {
        if (q != qi && q != qj) rest_shift.push_back(n_qubits - 1 - q);
    }
    const int si = n_qubits - 1 - qi;
    const int sj = n_qubits - 1 - qj;

    const auto place = [&](Eigen::Index rest, int pair_bits) {
        Eigen::Index idx = 0;
        for (int j = 0; j < m; ++j) {
            idx |= ((rest >> (m - 1 - j)) & 1) << rest_shift[j];
        }
        idx |= Eigen::Index{(pair_bits >> 1) & 1} << si;
        idx |= Eigen::Index{pair_bits & 1} << sj;
        return idx;
    };

    const Eigen::Index dim_rest = Eigen::Index{1} << m;
    EigenMatrix out = EigenMatrix::Zero(Eigen::Index{1} << n_qubits, Eigen::Index{1} << n_qubits);
    for (Eigen::Index rest = 0; rest < dim_rest; ++rest) {
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                out(place(rest, a), place(rest, b)) = op.mat()(a, b);
            }
        }
    }
    return CMatrix::from_eigen(n_qubits, std::move(out));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("frobenius_distance: dimension mismatch");
    return (a.mat() - b.mat()).norm();
}

const CMatrix& pauli(int which) {
    static const CMatrix mats[4] = {
        CMatrix::identity(1),
        CMatrix::from_eigen(1, (EigenMatrix(2, 2) << 0, 1, 1, 0).finished()),
        CMatrix::from_eigen(1, (EigenMatrix(2, 2) << Complex{0, 0}, Complex{0, -1},
                                Complex{0, 1}, Complex{0, 0}).finished()),
        CMatrix::from_eigen(1, (EigenMatrix(2, 2) << 1, 0, 0, -1).finished()),
    };
    if (which < 0 || which > 3) throw std::out_of_range("pauli: index must be 0..3");
    return mats[which];
}

}  // namespace diew::qlin
