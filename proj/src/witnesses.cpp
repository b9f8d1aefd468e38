#include "diew/core/witnesses.hpp"

#include "diew/core/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace diew::witnesses {

namespace {

using qlin::CMatrix;
using qlin::Complex;

constexpr double kCavalcantiPairCoeff = 0.1831;
constexpr double kCavalcantiTripleCoeff = 0.2582;

struct Term {
    int x, y, z;
    double c;
};

std::vector<double> tensor_from_terms(int m, const std::vector<Term>& terms, double prefactor) {
    std::vector<double> t(m * m * m, 0.0);
    for (const auto& term : terms) {
        t[(term.x * m + term.y) * m + term.z] = prefactor * term.c;
    }
    return t;
}

WitnessSpec make_mermin() {
    WitnessSpec w;
    w.name = "mermin";
    w.m = 2;
    w.kind = WitnessKind::linear;
    w.coeffs = {tensor_from_terms(2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, -1}}, 1.0)};
    w.absolute = true;
    w.bound = 2.0 * std::numbers::sqrt2;
    return w;
}

WitnessSpec make_uffink() {
    WitnessSpec w;
    w.name = "uffink";
    w.m = 2;
    w.kind = WitnessKind::sum_of_squares;
    w.coeffs = {
        tensor_from_terms(2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, -1}}, 1.0),
        tensor_from_terms(2, {{1, 1, 0, 1}, {0, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 0, -1}}, 1.0),
    };
    w.bound = 8.0;
    return w;
}

WitnessSpec make_bancal() {
    WitnessSpec w;
    w.name = "bancal";
    w.m = 3;
    w.kind = WitnessKind::linear;
    w.coeffs = {tensor_from_terms(3,
                                  {
                                      {0, 0, 0, 1},  {2, 0, 0, -1}, {1, 1, 0, -1},
                                      {2, 1, 0, -1}, {0, 2, 0, -1}, {1, 2, 0, -1},
                                      {1, 0, 1, -1}, {2, 0, 1, -1}, {0, 1, 1, -1},
                                      {1, 1, 1, -1}, {0, 2, 1, -1}, {2, 2, 1, 1},
                                      {0, 0, 2, -1}, {1, 0, 2, -1}, {0, 1, 2, -1},
                                      {2, 1, 2, 1},  {1, 2, 2, 1},  {2, 2, 2, 1},
                                  },
                                  std::sqrt(3.0) / 2.0)};
    w.bound = 9.0;
    return w;
}

WitnessSpec make_liang() {
    WitnessSpec w;
    w.name = "liang";
    w.m = 2;
    w.kind = WitnessKind::linear;
    w.coeffs = {tensor_from_terms(2,
                                  {
                                      {0, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1},
                                      {1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, -3},
                                  },
                                  0.25)};
    w.bound = std::numbers::sqrt2;
    return w;
}

WitnessSpec make_cavalcanti() {
    WitnessSpec w;
    w.name = "cavalcanti";
    w.m = 3;
    w.kind = WitnessKind::steering;
    w.bound = 0.0;
    w.violation_above = false;
    return w;
}

// 8x8 sigma_i x sigma_j x sigma_k, cached for the tensor computation.
const Eigen::MatrixXcd& pauli_triple(int i, int j, int k) {
    static const auto cache = [] {
        std::array<Eigen::MatrixXcd, 64> out;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                for (int c = 0; c < 4; ++c) {
                    out[(a * 4 + b) * 4 + c] =
                        qlin::kron(qlin::kron(qlin::pauli(a), qlin::pauli(b)), qlin::pauli(c)).mat();
                }
            }
        }
        return out;
    }();
    return cache[(i * 4 + j) * 4 + k];
}

double real_trace_product(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
    // tr[rho op] without forming the product matrix.
    Complex acc{0.0, 0.0};
    for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        for (Eigen::Index c = 0; c < rho.cols(); ++c) {
            acc += rho(r, c) * op(c, r);
        }
    }
    return acc.real();
}

double trusted_slot_correlator(const CMatrix& rho, const CMatrix& a, const CMatrix& b,
                               int trusted) {
    const CMatrix op = qlin::kron(qlin::kron(a, b), qlin::pauli(trusted));
    return real_trace_product(rho.mat(), op.mat());
}

void require_three_qubits(const CMatrix& rho) {
    if (rho.n_qubits() != 3) throw std::invalid_argument("witness evaluation needs a 3-qubit state");
}

void check_scenario_shape(const WitnessSpec& spec, const MeasurementScenario& scenario) {
    if (spec.kind == WitnessKind::steering) {
        if (scenario.settings[0].size() != 3 || scenario.settings[1].size() != 3) {
            throw std::invalid_argument("steering witness needs 3 settings for each untrusted party");
        }
        return;
    }
    if (scenario.settings_per_party() != spec.m) {
        throw std::invalid_argument("scenario settings count does not match witness");
    }
}

}  // namespace

std::array<double, 3> bloch_vector(const BlochAngles& a) {
    const double st = std::sin(a.theta);
    return {st * std::cos(a.phi), st * std::sin(a.phi), std::cos(a.theta)};
}

int MeasurementScenario::settings_per_party() const {
    const auto m = settings[0].size();
    if (settings[1].size() != m || settings[2].size() != m) {
        throw std::invalid_argument("parties have differing numbers of settings");
    }
    return static_cast<int>(m);
}

int WitnessSpec::angle_count() const {
    return kind == WitnessKind::steering ? 2 * 2 * 3 : 2 * 3 * m;
}

const WitnessSpec& mermin() {
    static const WitnessSpec w = make_mermin();
    return w;
}
const WitnessSpec& uffink() {
    static const WitnessSpec w = make_uffink();
    return w;
}
const WitnessSpec& bancal() {
    static const WitnessSpec w = make_bancal();
    return w;
}
const WitnessSpec& liang() {
    static const WitnessSpec w = make_liang();
    return w;
}
const WitnessSpec& cavalcanti_spec() {
    static const WitnessSpec w = make_cavalcanti();
    return w;
}

const std::vector<const WitnessSpec*>& all_witnesses() {
    static const std::vector<const WitnessSpec*> all = {&mermin(), &uffink(), &bancal(), &liang(),
                                                        &cavalcanti_spec()};
    return all;
}

const WitnessSpec& witness_by_name(std::string_view name) {
    for (const auto* w : all_witnesses()) {
        if (w->name == name) return *w;
    }
    throw std::invalid_argument("unknown witness: " + std::string(name));
}

double joint_probability(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                         int x, int y, int z, int a, int b, int c) {
    require_three_qubits(rho);
    if (a * a != 1 || b * b != 1 || c * c != 1) {
        throw std::invalid_argument("outcomes must be +1 or -1");
    }
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    const auto effect = [&](int party, int setting, int outcome) {
        const auto& angles = scenario.settings[party].at(setting);
        return ((id + static_cast<double>(outcome) *
                          qlin::bloch_observable(angles.theta, angles.phi).mat()) /
                2.0)
            .eval();
    };
    const Eigen::MatrixXcd ma = effect(0, x, a);
    const Eigen::MatrixXcd mb = effect(1, y, b);
    const Eigen::MatrixXcd mc = effect(2, z, c);
    const CMatrix big = qlin::kron(
        qlin::kron(CMatrix::from_eigen(1, ma), CMatrix::from_eigen(1, mb)),
        CMatrix::from_eigen(1, mc));
    return real_trace_product(rho.mat(), big.mat());
}

double correlator(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                  int x, int y, int z) {
    require_three_qubits(rho);
    const auto& sa = scenario.settings[0].at(x);
    const auto& sb = scenario.settings[1].at(y);
    const auto& sc = scenario.settings[2].at(z);
    const CMatrix op = qlin::kron(
        qlin::kron(qlin::bloch_observable(sa.theta, sa.phi), qlin::bloch_observable(sb.theta, sb.phi)),
        qlin::bloch_observable(sc.theta, sc.phi));
    return real_trace_product(rho.mat(), op.mat());
}

PauliCorrelators PauliCorrelators::from_state(const qlin::CMatrix& rho) {
    require_three_qubits(rho);
    PauliCorrelators out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                out.t[i][j][k] = real_trace_product(rho.mat(), pauli_triple(i, j, k));
            }
        }
    }
    return out;
}

double PauliCorrelators::triple(const std::array<double, 3>& a, const std::array<double, 3>& b,
                                const std::array<double, 3>& c) const {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (a[i] == 0.0) continue;
        for (int j = 0; j < 3; ++j) {
            double inner = 0.0;
            for (int k = 0; k < 3; ++k) inner += c[k] * t[i + 1][j + 1][k + 1];
            acc += a[i] * b[j] * inner;
        }
    }
    return acc;
}

double PauliCorrelators::pair_ab(const std::array<double, 3>& a, const std::array<double, 3>& b,
                                 int trusted) const {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) acc += a[i] * b[j] * t[i + 1][j + 1][trusted];
    }
    return acc;
}

double PauliCorrelators::a_z(const std::array<double, 3>& a) const {
    return a[0] * t[1][0][3] + a[1] * t[2][0][3] + a[2] * t[3][0][3];
}

double PauliCorrelators::b_z(const std::array<double, 3>& b) const {
    return b[0] * t[0][1][3] + b[1] * t[0][2][3] + b[2] * t[0][3][3];
}

CorrelatorTable correlator_table(const qlin::CMatrix& rho, const MeasurementScenario& scenario,
                                 const WitnessSpec& spec) {
    check_scenario_shape(spec, scenario);
    CorrelatorTable table;
    if (spec.kind == WitnessKind::steering) {
        table.m = 3;
        std::array<CMatrix, 3> a_ops, b_ops;
        for (int s = 0; s < 3; ++s) {
            const auto& aa = scenario.settings[0][s];
            const auto& bb = scenario.settings[1][s];
            a_ops[s] = qlin::bloch_observable(aa.theta, aa.phi);
            b_ops[s] = qlin::bloch_observable(bb.theta, bb.phi);
        }
        const CMatrix id1 = CMatrix::identity(1);
        for (int x = 0; x < 3; ++x) {
            for (int y = 0; y < 3; ++y) {
                table.ab[x][y] = trusted_slot_correlator(rho, a_ops[x], b_ops[y], 0);
                table.ab_x[x][y] = trusted_slot_correlator(rho, a_ops[x], b_ops[y], 1);
                table.ab_y[x][y] = trusted_slot_correlator(rho, a_ops[x], b_ops[y], 2);
            }
            table.az[x] = trusted_slot_correlator(rho, a_ops[x], id1, 3);
            table.bz[x] = trusted_slot_correlator(rho, id1, b_ops[x], 3);
        }
        return table;
    }
    const int m = spec.m;
    table.m = m;
    table.triple.resize(m * m * m);
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            for (int z = 0; z < m; ++z) {
                table.triple[(x * m + y) * m + z] = correlator(rho, scenario, x, y, z);
            }
        }
    }
    return table;
}

CorrelatorTable correlator_table_fast(const PauliCorrelators& pauli,
                                      const MeasurementScenario& scenario,
                                      const WitnessSpec& spec) {
    check_scenario_shape(spec, scenario);
    CorrelatorTable table;
    if (spec.kind == WitnessKind::steering) {
        table.m = 3;
        std::array<std::array<double, 3>, 3> av, bv;
        for (int s = 0; s < 3; ++s) {
            av[s] = bloch_vector(scenario.settings[0][s]);
            bv[s] = bloch_vector(scenario.settings[1][s]);
        }
        for (int x = 0; x < 3; ++x) {
            for (int y = 0; y < 3; ++y) {
                table.ab[x][y] = pauli.pair_ab(av[x], bv[y], 0);
                table.ab_x[x][y] = pauli.pair_ab(av[x], bv[y], 1);
                table.ab_y[x][y] = pauli.pair_ab(av[x], bv[y], 2);
            }
            table.az[x] = pauli.a_z(av[x]);
            table.bz[x] = pauli.b_z(bv[x]);
        }
        return table;
    }
    const int m = spec.m;
    table.m = m;
    table.triple.resize(m * m * m);
    std::vector<std::array<double, 3>> av(m), bv(m), cv(m);
    for (int s = 0; s < m; ++s) {
        av[s] = bloch_vector(scenario.settings[0][s]);
        bv[s] = bloch_vector(scenario.settings[1][s]);
        cv[s] = bloch_vector(scenario.settings[2][s]);
    }
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            for (int z = 0; z < m; ++z) {
                table.triple[(x * m + y) * m + z] = pauli.triple(av[x], bv[y], cv[z]);
            }
        }
    }
    return table;
}

double combine(const WitnessSpec& spec, const CorrelatorTable& table) {
    switch (spec.kind) {
        case WitnessKind::linear: {
            double v = 0.0;
            for (size_t i = 0; i < spec.coeffs[0].size(); ++i) {
                v += spec.coeffs[0][i] * table.triple[i];
            }
            return spec.absolute ? std::abs(v) : v;
        }
        case WitnessKind::sum_of_squares: {
            double b1 = 0.0, b2 = 0.0;
            for (size_t i = 0; i < spec.coeffs[0].size(); ++i) {
                b1 += spec.coeffs[0][i] * table.triple[i];
                b2 += spec.coeffs[1][i] * table.triple[i];
            }
            return b1 * b1 + b2 * b2;
        }
        case WitnessKind::steering: {
            const double pair_part = table.ab[2][2] + table.az[2] + table.bz[2];
            const double triple_part =
                table.ab_x[0][0] - table.ab_y[0][1] - table.ab_y[1][0] - table.ab_x[1][1];
            return 1.0 - kCavalcantiPairCoeff * pair_part - kCavalcantiTripleCoeff * triple_part;
        }
    }
    throw std::logic_error("combine: bad witness kind");
}

double evaluate(const WitnessSpec& spec, const qlin::CMatrix& rho,
                const MeasurementScenario& scenario) {
    return combine(spec, correlator_table(rho, scenario, spec));
}

double evaluate_fast(const WitnessSpec& spec, const PauliCorrelators& pauli,
                     const MeasurementScenario& scenario) {
    return combine(spec, correlator_table_fast(pauli, scenario, spec));
}

double cavalcanti(const qlin::CMatrix& rho, const std::array<BlochAngles, 3>& a_settings,
                  const std::array<BlochAngles, 3>& b_settings) {
    MeasurementScenario scenario;
    scenario.settings[0].assign(a_settings.begin(), a_settings.end());
    scenario.settings[1].assign(b_settings.begin(), b_settings.end());
    return evaluate(cavalcanti_spec(), rho, scenario);
}

MeasurementScenario random_scenario(const WitnessSpec& spec, std::uint64_t seed) {
    rng::Stream stream(seed);
    MeasurementScenario scenario;
    const int parties = spec.kind == WitnessKind::steering ? 2 : 3;
    const int m = spec.kind == WitnessKind::steering ? 3 : spec.m;
    for (int party = 0; party < parties; ++party) {
        scenario.settings[party].resize(m);
        for (int s = 0; s < m; ++s) {
            // Uniform directions on the sphere.
            scenario.settings[party][s].theta = std::acos(1.0 - 2.0 * stream.uniform());
            scenario.settings[party][s].phi = 2.0 * std::numbers::pi * stream.uniform();
        }
    }
    return scenario;
}

MeasurementScenario scenario_from_angles(const WitnessSpec& spec, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != spec.angle_count()) {
        throw std::invalid_argument("angle vector has the wrong length");
    }
    MeasurementScenario scenario;
    const int parties = spec.kind == WitnessKind::steering ? 2 : 3;
    const int m = spec.kind == WitnessKind::steering ? 3 : spec.m;
    size_t at = 0;
    for (int party = 0; party < parties; ++party) {
        scenario.settings[party].resize(m);
        for (int s = 0; s < m; ++s) {
            scenario.settings[party][s].theta = angles[at++];
            scenario.settings[party][s].phi = angles[at++];
        }
    }
    return scenario;
}

std::vector<double> flatten_angles(const WitnessSpec& spec, const MeasurementScenario& scenario) {
    check_scenario_shape(spec, scenario);
    std::vector<double> out;
    out.reserve(spec.angle_count());
    const int parties = spec.kind == WitnessKind::steering ? 2 : 3;
    const int m = spec.kind == WitnessKind::steering ? 3 : spec.m;
    for (int party = 0; party < parties; ++party) {
        for (int s = 0; s < m; ++s) {
            out.push_back(scenario.settings[party][s].theta);
            out.push_back(scenario.settings[party][s].phi);
        }
    }
    return out;
}

}  // namespace diew::witnesses
