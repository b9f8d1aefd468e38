#include "diew/core/scan.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace diew::scan {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_real(const std::string& s) {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad CSV number: " + s);
    return v;
}

bool parse_flag(const std::string& s) {
    if (s == "0") return false;
    if (s == "1") return true;
    throw std::invalid_argument("bad CSV flag: " + s);
}

}  // namespace

ScanMode mode_by_name(const std::string& name) {
    if (name == "analytic") return ScanMode::analytic;
    if (name == "numeric") return ScanMode::numeric;
    throw std::invalid_argument("unknown scan mode: " + name);
}

double GridAxis::at(int i) const {
    return start + (stop - start) * static_cast<double>(i) / (count - 1);
}

void GridSpec::validate() const {
    for (const auto* axis : {&theta, &p}) {
        if (axis->count < 2) throw std::invalid_argument("grid axis needs count >= 2");
        if (!(axis->start < axis->stop)) throw std::invalid_argument("grid axis needs start < stop");
    }
    states::StateParams{p.start, p1, theta.start}.validate();
    states::StateParams{p.stop, p1, theta.stop}.validate();
}

RegionPoint classify_point(double theta, double p, double p1,
                           const witnesses::WitnessSpec& witness, ScanMode mode,
                           const optimize::OptimizerConfig& config) {
    states::StateParams{p, p1, theta}.validate();
    RegionPoint point;
    point.theta = theta;
    point.p = p;
    point.p1 = p1;

    if (mode == ScanMode::analytic) {
        point.violated[0] = p > optimize::table1_threshold(witness, optimize::Family::rho1, theta);
        point.violated[1] = p1 > optimize::table1_threshold(witness, optimize::Family::rho2, theta);
        point.violated[2] = p > optimize::table1_threshold(witness, optimize::Family::rho3, theta);
        point.violated[3] = p > optimize::table1_threshold(witness, optimize::Family::rho4, theta);
    } else {
        const std::array<qlin::CMatrix, 4> rhos = {
            states::rho1(p, theta),
            states::rho2(p1),
            states::rho3(p, theta),
            states::rho4_closed(p, theta, +1),
        };
        std::array<double, 4> values{};
        for (int i = 0; i < 4; ++i) {
            values[i] = optimize::maximize_witness(rhos[i], witness, config).value;
            point.violated[i] = witness.violates(values[i]);
        }
        point.values = values;
    }
    point.enhanced =
        !point.violated[0] && !point.violated[1] && !point.violated[2] && point.violated[3];
    return point;
}

std::vector<RegionPoint> sweep(const GridSpec& grid, const witnesses::WitnessSpec& witness,
                               const optimize::OptimizerConfig& config) {
    grid.validate();
    const ScanMode mode = grid.mode;
    std::vector<RegionPoint> points;
    points.reserve(static_cast<size_t>(grid.theta.count) * grid.p.count);
    for (int it = 0; it < grid.theta.count; ++it) {
        for (int ip = 0; ip < grid.p.count; ++ip) {
            points.push_back(
                classify_point(grid.theta.at(it), grid.p.at(ip), grid.p1, witness, mode, config));
        }
    }
    return points;
}

void write_csv(std::ostream& out, const std::vector<RegionPoint>& points) {
    const bool with_values = !points.empty() && points.front().values.has_value();
    out << "theta,p,p1,v_rho1,v_rho2,v_rho3,v_rho4,enhanced";
    if (with_values) out << ",val_rho1,val_rho2,val_rho3,val_rho4";
    out << '\n';
    for (const auto& pt : points) {
        if (pt.values.has_value() != with_values) {
            throw std::invalid_argument("write_csv: mixed presence of value columns");
        }
        out << fmt9(pt.theta) << ',' << fmt9(pt.p) << ',' << fmt9(pt.p1);
        for (const bool v : pt.violated) out << ',' << (v ? '1' : '0');
        out << ',' << (pt.enhanced ? '1' : '0');
        if (with_values) {
            for (const double v : *pt.values) out << ',' << fmt9(v);
        }
        out << '\n';
    }
}

std::vector<RegionPoint> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
    const bool with_values = split_commas(line).size() == 12;

    std::vector<RegionPoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != (with_values ? 12u : 8u)) {
            throw std::invalid_argument("bad CSV row: " + line);
        }
        RegionPoint pt;
        pt.theta = parse_real(fields[0]);
        pt.p = parse_real(fields[1]);
        pt.p1 = parse_real(fields[2]);
        for (int i = 0; i < 4; ++i) pt.violated[i] = parse_flag(fields[3 + i]);
        pt.enhanced = parse_flag(fields[7]);
        if (with_values) {
            std::array<double, 4> values{};
            for (int i = 0; i < 4; ++i) values[i] = parse_real(fields[8 + i]);
            pt.values = values;
        }
        points.push_back(pt);
    }
    return points;
}

}  // namespace diew::scan
