// Maximization of witness values over measurement angles, threshold
// recovery by bisection, and the closed-form reference results used for
// cross-validation.

#pragma once

#include "diew/core/states.hpp"
#include "diew/core/witnesses.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace diew::optimize {

struct OptimizerConfig {
    int restarts = 200;
    int max_iters = 2000;      // simplex iterations per restart
    double value_tol = 1e-9;   // convergence tolerance on the value spread
    std::uint64_t seed = 0;    // restart k draws its start from seed + k
};

struct MaximizeResult {
    // Most-violating witness value, recomputed through the Born-rule
    // evaluate() at the returned scenario. For witnesses violated from
    // below (cavalcanti) this is the minimum.
    double value = 0.0;
    witnesses::MeasurementScenario scenario;
    double fast_value = 0.0;  // tensor-path value at the optimum
    int best_restart = -1;
};

MaximizeResult maximize_witness(const qlin::CMatrix& rho, const witnesses::WitnessSpec& witness,
                                const OptimizerConfig& config);

// X = -1 + p + p cos 2t, Y = p sin 2t.
struct AnalyticMerminParams {
    double x = 0.0;
    double y = 0.0;
    static AnalyticMerminParams from(double p, double theta);
};

// Closed-form Mermin maximum over measurement angles for rho1:
// max[ (2X^2 + Y^2)/sqrt(X^2 + Y^2), 4|Y| ].
double mermin_max_rho1_analytic(double p, double theta);

enum class Family { rho1, rho2, rho3, rho4 };
Family family_by_name(const std::string& name);
const char* family_name(Family family);

// Printed closed-form violation threshold for the (witness, family)
// combination; thresholds for rho1/rho3/rho4 depend on theta, rho2
// thresholds are in p1 and theta-independent. Throws for combinations
// without a usable closed form (cavalcanti with rho1/rho3).
double table1_threshold(const witnesses::WitnessSpec& witness, Family family, double theta);

enum class ScanParam { p, p1 };

struct ThresholdResult {
    std::string parameter;    // "p" or "p1"
    double threshold = 0.0;   // bracket midpoint
    double bracket_width = 0.0;
    std::string witness;
    bool monotonicity_ok = false;
};

class NonMonotone : public std::runtime_error {
public:
    NonMonotone() : std::runtime_error("violation is not monotone in the scanned parameter") {}
};
class NoViolation : public std::runtime_error {
public:
    NoViolation() : std::runtime_error("no violation anywhere in the scanned range") {}
};

// Smallest scanned-parameter value at which maximize_witness crosses the
// witness bound, located by bisection after a 17-sample monotonicity
// check. `fixed` supplies the parameters that are not scanned.
ThresholdResult bisect_threshold(const witnesses::WitnessSpec& witness, Family family,
                                 ScanParam scan_param, const states::StateParams& fixed,
                                 double tol, const OptimizerConfig& config);

namespace detail {

struct SimplexResult {
    double value = 0.0;
    std::vector<double> point;
    int iterations = 0;
};

// Nelder-Mead minimization; stops when the simplex value spread drops
// below value_tol or after max_iters iterations.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double step, int max_iters,
                          double value_tol);

}  // namespace detail

}  // namespace diew::optimize
