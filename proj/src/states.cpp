#include "diew/core/states.hpp"

#include "diew/core/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace diew::states {

namespace {

using qlin::CMatrix;
using qlin::Complex;

// Slack absorbs decimal rounding of interval endpoints (e.g. pi/4 printed
// to 10 digits) while still rejecting genuinely out-of-range inputs.
constexpr double kParamSlack = 1e-9;

void check_unit(double v, const char* name) {
    if (!(v >= -kParamSlack && v <= 1.0 + kParamSlack)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void check_theta(double theta) {
    if (!(theta >= -kParamSlack && theta <= std::numbers::pi / 4 + kParamSlack)) {
        throw std::invalid_argument("theta must lie in [0, pi/4]");
    }
}

CMatrix two_component_mixture(double weight, const Eigen::VectorXcd& psi, int noise_ket) {
    // weight |psi><psi| + (1-weight) |noise_ket><noise_ket| on 3 qubits
    Eigen::MatrixXcd m = weight * (psi * psi.adjoint());
    m(noise_ket, noise_ket) += Complex{1.0 - weight, 0.0};
    return CMatrix::from_eigen(3, std::move(m));
}

CMatrix random_pure(rng::Stream& stream, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) psi(i) = stream.complex_normal();
    return CMatrix::from_pure(n_qubits, psi);
}

}  // namespace

void StateParams::validate() const {
    check_unit(p, "p");
    check_unit(p1, "p1");
    check_theta(theta);
}

const char* bell_label(BellKind kind) {
    switch (kind) {
        case BellKind::phi_plus: return "phi+";
        case BellKind::phi_minus: return "phi-";
        case BellKind::psi_plus: return "psi+";
        case BellKind::psi_minus: return "psi-";
    }
    throw std::invalid_argument("bell_label: bad kind");
}

BellKind bell_from_label(const std::string& label) {
    if (label == "phi+") return BellKind::phi_plus;
    if (label == "phi-") return BellKind::phi_minus;
    if (label == "psi+") return BellKind::psi_plus;
    if (label == "psi-") return BellKind::psi_minus;
    throw std::invalid_argument("unknown Bell label: " + label);
}

qlin::CMatrix rho1(double p, double theta) {
    check_unit(p, "p");
    check_theta(theta);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = std::cos(theta);
    psi(7) = std::sin(theta);
    return two_component_mixture(p, psi, 0b001);
}

qlin::CMatrix rho2(double p1) {
    check_unit(p1, "p1");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = psi(7) = 1.0 / std::numbers::sqrt2;
    return two_component_mixture(p1, psi, 0b010);
}

qlin::CMatrix rho3(double p, double theta) {
    check_unit(p, "p");
    check_theta(theta);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = std::sin(theta);
    psi(7) = std::cos(theta);
    return two_component_mixture(p, psi, 0b100);
}

double p_final(double p, double theta) {
    check_unit(p, "p");
    check_theta(theta);
    const double c = std::cos(theta);
    return 2.0 * p * c * c / (1.0 + p * std::cos(2.0 * theta));
}

qlin::CMatrix rho4_closed(double p, double theta, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const double pf = p_final(p, theta);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = 1.0 / std::numbers::sqrt2;
    psi(7) = sign / std::numbers::sqrt2;
    return two_component_mixture(pf, psi, 0b100);
}

qlin::CMatrix ghz(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
    psi(0) = 1.0 / std::numbers::sqrt2;
    psi(7) = sign / std::numbers::sqrt2;
    return CMatrix::from_pure(3, psi);
}

Eigen::Vector4cd bell_vector(BellKind kind) {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (kind) {
        case BellKind::phi_plus: v(0) = s; v(3) = s; break;
        case BellKind::phi_minus: v(0) = s; v(3) = -s; break;
        case BellKind::psi_plus: v(1) = s; v(2) = s; break;
        case BellKind::psi_minus: v(1) = s; v(2) = -s; break;
    }
    return v;
}

qlin::CMatrix bell_state(BellKind kind) {
    return CMatrix::from_pure(2, bell_vector(kind));
}

qlin::CMatrix BiseparableMixture::assemble() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(8, 8);
    for (const auto& term : terms) {
        const auto& s = term.single.mat();
        const auto& d = term.pair.mat();
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                const int ra = (r >> 2) & 1, rb = (r >> 1) & 1, rc = r & 1;
                const int ca = (c >> 2) & 1, cb = (c >> 1) & 1, cc = c & 1;
                Complex v;
                switch (term.partition) {
                    case Partition::a_bc: v = s(ra, ca) * d(2 * rb + rc, 2 * cb + cc); break;
                    case Partition::b_ac: v = s(rb, cb) * d(2 * ra + rc, 2 * ca + cc); break;
                    case Partition::c_ab: v = s(rc, cc) * d(2 * ra + rb, 2 * ca + cb); break;
                }
                out(r, c) += term.weight * v;
            }
        }
    }
    return CMatrix::from_eigen(3, std::move(out));
}

BiseparableMixture random_biseparable(std::uint64_t seed, int n_terms) {
    if (n_terms < 1) throw std::invalid_argument("n_terms must be >= 1");
    rng::Stream stream(seed);

    // Exponential draws normalized to the simplex give Dirichlet(1,..,1).
    std::vector<double> weights(n_terms);
    double total = 0.0;
    for (auto& w : weights) {
        w = -std::log(1.0 - stream.uniform());
        total += w;
    }

    BiseparableMixture mix;
    mix.terms.reserve(n_terms);
    for (int i = 0; i < n_terms; ++i) {
        BiseparableTerm term;
        term.weight = weights[i] / total;
        term.partition = static_cast<Partition>(stream.below(3));
        term.single = random_pure(stream, 1);
        term.pair = random_pure(stream, 2);
        mix.terms.push_back(std::move(term));
    }
    return mix;
}

}  // namespace diew::states
