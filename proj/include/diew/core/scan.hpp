// Parameter sweeps over (theta, p) at fixed p1, classifying each grid
// point by which states violate the chosen witness and whether the
// swapped state is the only violator (the "enhanced" region).

#pragma once

#include "diew/core/optimize.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace diew::scan {

enum class ScanMode { analytic, numeric };
ScanMode mode_by_name(const std::string& name);

struct RegionPoint {
    double theta = 0.0;
    double p = 0.0;
    double p1 = 0.0;
    // Violation flags for rho1..rho4 (rho4 evaluated at p_final(p, theta)).
    std::array<bool, 4> violated{};
    bool enhanced = false;
    // Witness maxima per state; filled in numeric mode only.
    std::optional<std::array<double, 4>> values;
};

struct GridAxis {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double at(int i) const;
};

struct GridSpec {
    GridAxis theta;
    GridAxis p;
    double p1 = 0.0;
    ScanMode mode = ScanMode::analytic;

    void validate() const;
};

RegionPoint classify_point(double theta, double p, double p1,
                           const witnesses::WitnessSpec& witness, ScanMode mode,
                           const optimize::OptimizerConfig& config);

// Row-major traversal: theta outer, p inner.
std::vector<RegionPoint> sweep(const GridSpec& grid, const witnesses::WitnessSpec& witness,
                               const optimize::OptimizerConfig& config);

// CSV columns, in order:
//   theta,p,p1,v_rho1,v_rho2,v_rho3,v_rho4,enhanced[,val_rho1..val_rho4]
// Booleans as 0/1, reals with 9 significant digits, one header line.
void write_csv(std::ostream& out, const std::vector<RegionPoint>& points);
std::vector<RegionPoint> parse_csv(std::istream& in);

}  // namespace diew::scan
