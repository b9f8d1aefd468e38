#include "diew/core/optimize.hpp"

#include "diew/core/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace diew::optimize {

namespace detail {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double step, int max_iters,
                          double value_tol) {
    const size_t n = start.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, f(start)});
    for (size_t i = 0; i < n; ++i) {
        std::vector<double> x = start;
        x[i] += step;
        simplex.push_back({x, f(x)});
    }

    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    std::sort(simplex.begin(), simplex.end(), by_value);

    SimplexResult result;
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        if (simplex.back().fx - simplex.front().fx < value_tol) break;

        // Centroid of all but the worst vertex.
        std::vector<double> centroid(n, 0.0);
        for (size_t v = 0; v < n; ++v) {
            for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
        }
        for (auto& c : centroid) c /= static_cast<double>(n);

        const auto along = [&](double t) {
            std::vector<double> x(n);
            for (size_t i = 0; i < n; ++i) {
                x[i] = centroid[i] + t * (simplex.back().x[i] - centroid[i]);
            }
            return x;
        };

        const std::vector<double> reflected = along(-1.0);
        const double fr = f(reflected);
        if (fr < simplex.front().fx) {
            const std::vector<double> expanded = along(-2.0);
            const double fe = f(expanded);
            simplex.back() = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
        } else if (fr < simplex[n - 1].fx) {
            simplex.back() = {reflected, fr};
        } else {
            const bool outside = fr < simplex.back().fx;
            const std::vector<double> contracted = along(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            if (fc < (outside ? fr : simplex.back().fx)) {
                simplex.back() = {contracted, fc};
            } else {
                // Shrink toward the best vertex.
                for (size_t v = 1; v <= n; ++v) {
                    for (size_t i = 0; i < n; ++i) {
                        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                    }
                    simplex[v].fx = f(simplex[v].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_value);
    }
    result.value = simplex.front().fx;
    result.point = simplex.front().x;
    result.iterations = iter;
    return result;
}

}  // namespace detail

MaximizeResult maximize_witness(const qlin::CMatrix& rho, const witnesses::WitnessSpec& witness,
                                const OptimizerConfig& config) {
    if (config.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    if (config.value_tol <= 0.0) throw std::invalid_argument("value_tol must be > 0");

    const auto pauli = witnesses::PauliCorrelators::from_state(rho);
    const int dim = witness.angle_count();

    // Internally always minimized; sign flips for bound-from-above
    // witnesses so "more violating" is always downhill.
    const double orientation = witness.violation_above ? -1.0 : 1.0;
    const auto objective = [&](const std::vector<double>& angles) {
        return orientation *
               witnesses::evaluate_fast(witness, pauli, witnesses::scenario_from_angles(witness, angles));
    };

    constexpr double kInitialStep = 0.45;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_point;
    int best_restart = -1;
    for (int k = 0; k < config.restarts; ++k) {
        rng::Stream stream(config.seed + static_cast<std::uint64_t>(k));
        std::vector<double> start(dim);
        for (auto& a : start) a = stream.uniform(0.0, 2.0 * std::numbers::pi);
        const auto local = detail::nelder_mead(objective, start, kInitialStep, config.max_iters,
                                               config.value_tol);
        if (local.value < best_obj) {
            best_obj = local.value;
            best_point = local.point;
            best_restart = k;
        }
    }

    // Polish the winner with a tighter tolerance.
    const auto polished = detail::nelder_mead(objective, best_point, 0.02, config.max_iters,
                                              std::min(config.value_tol, 1e-12));
    if (polished.value < best_obj) {
        best_obj = polished.value;
        best_point = polished.point;
    }

    MaximizeResult result;
    result.scenario = witnesses::scenario_from_angles(witness, best_point);
    result.fast_value = orientation * best_obj;
    result.value = witnesses::evaluate(witness, rho, result.scenario);
    result.best_restart = best_restart;
    return result;
}

AnalyticMerminParams AnalyticMerminParams::from(double p, double theta) {
    return {-1.0 + p + p * std::cos(2.0 * theta), p * std::sin(2.0 * theta)};
}

double mermin_max_rho1_analytic(double p, double theta) {
    const auto [x, y] = AnalyticMerminParams::from(p, theta);
    const double hyp = std::hypot(x, y);
    const double stationary = hyp > 0.0 ? (2.0 * x * x + y * y) / hyp : 0.0;
    return std::max(stationary, 4.0 * std::abs(y));
}

Family family_by_name(const std::string& name) {
    if (name == "rho1") return Family::rho1;
    if (name == "rho2") return Family::rho2;
    if (name == "rho3") return Family::rho3;
    if (name == "rho4") return Family::rho4;
    throw std::invalid_argument("unknown state family: " + name);
}

const char* family_name(Family family) {
    switch (family) {
        case Family::rho1: return "rho1";
        case Family::rho2: return "rho2";
        case Family::rho3: return "rho3";
        case Family::rho4: return "rho4";
    }
    throw std::invalid_argument("family_name: bad family");
}

double table1_threshold(const witnesses::WitnessSpec& witness, Family family, double theta) {
    // Threshold for the GHZ+noise mixture family (rho2's shape); the
    // rho1/rho3 and rho4 thresholds follow from it.
    double ghz_threshold;
    if (witness.name == "mermin" || witness.name == "uffink") {
        ghz_threshold = 1.0 / std::numbers::sqrt2;
    } else if (witness.name == "bancal") {
        ghz_threshold = 2.0 / 3.0;
    } else if (witness.name == "liang") {
        ghz_threshold = 3.0 * std::numbers::sqrt2 / 5.0;
    } else if (witness.name == "cavalcanti") {
        ghz_threshold = 0.670236;  // printed numeric threshold
        if (family == Family::rho1 || family == Family::rho3) {
            throw std::invalid_argument(
                "no closed-form cavalcanti threshold for rho1/rho3; use numeric mode");
        }
    } else {
        throw std::invalid_argument("no closed-form threshold for witness " + witness.name);
    }

    switch (family) {
        case Family::rho2:
            return ghz_threshold;
        case Family::rho1:
        case Family::rho3:
            return ghz_threshold / std::sin(2.0 * theta);
        case Family::rho4: {
            // p_final(p, theta) > t  <=>  p > 1 / ((2/t - 2) cos^2 t + 1).
            const double c = std::cos(theta);
            return 1.0 / ((2.0 / ghz_threshold - 2.0) * c * c + 1.0);
        }
    }
    throw std::invalid_argument("table1_threshold: bad family");
}

ThresholdResult bisect_threshold(const witnesses::WitnessSpec& witness, Family family,
                                 ScanParam scan_param, const states::StateParams& fixed,
                                 double tol, const OptimizerConfig& config) {
    fixed.validate();
    if (tol <= 0.0) throw std::invalid_argument("tol must be > 0");
    const ScanParam expected = family == Family::rho2 ? ScanParam::p1 : ScanParam::p;
    if (scan_param != expected) {
        throw std::invalid_argument("scan parameter does not match the state family");
    }

    const auto state_at = [&](double v) {
        switch (family) {
            case Family::rho1: return states::rho1(v, fixed.theta);
            case Family::rho2: return states::rho2(v);
            case Family::rho3: return states::rho3(v, fixed.theta);
            case Family::rho4: return states::rho4_closed(v, fixed.theta, +1);
        }
        throw std::invalid_argument("bisect_threshold: bad family");
    };
    const auto violates = [&](double v) {
        return witness.violates(maximize_witness(state_at(v), witness, config).value);
    };

    // Coarse scan validates that violation is an up-set before trusting
    // bisection with it.
    constexpr int kCoarseSamples = 17;
    std::array<bool, kCoarseSamples> coarse{};
    for (int i = 0; i < kCoarseSamples; ++i) {
        coarse[i] = violates(static_cast<double>(i) / (kCoarseSamples - 1));
    }
    for (int i = 1; i < kCoarseSamples; ++i) {
        if (coarse[i - 1] && !coarse[i]) throw NonMonotone();
    }
    if (!coarse[kCoarseSamples - 1]) throw NoViolation();

    int first_violating = 0;
    while (!coarse[first_violating]) ++first_violating;
    double lo = first_violating == 0 ? 0.0 : (first_violating - 1) / double(kCoarseSamples - 1);
    double hi = first_violating / double(kCoarseSamples - 1);

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (violates(mid) ? hi : lo) = mid;
    }

    ThresholdResult result;
    result.parameter = scan_param == ScanParam::p ? "p" : "p1";
    result.threshold = 0.5 * (lo + hi);
    result.bracket_width = hi - lo;
    result.witness = witness.name;
    result.monotonicity_ok = true;
    return result;
}

}  // namespace diew::optimize
