// Command-line front end for the diew library. Talks to the core purely
// through the C API in diew/diew.h.
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <diew/diew.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPiOver4 = 0.785398163397448309616;

struct GridArg {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

GridArg parse_grid(const std::string& text) {
    GridArg grid;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &grid.start, &grid.stop, &grid.count,
                    &trailing) != 3) {
        throw CLI::ValidationError("grid must have the form START:STOP:COUNT");
    }
    return grid;
}

int fail(const char* what) {
    std::cerr << "error: " << what << ": " << diew_last_error() << "\n";
    return 1;
}

bool write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

using MatrixPtr = std::unique_ptr<diew_matrix, decltype(&diew_matrix_free)>;

MatrixPtr load_state_arg(const std::string& state_file, const std::string& name, double p,
                         double p1, double theta, char sign, diew_status* status) {
    diew_matrix* m = nullptr;
    if (!state_file.empty()) {
        std::ifstream in(state_file);
        if (!in) {
            *status = DIEW_ERR_IO;
            std::cerr << "error: cannot read " << state_file << "\n";
            return {nullptr, &diew_matrix_free};
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        *status = diew_matrix_from_json(buffer.str().c_str(), &m);
    } else {
        *status = diew_state_create(name.c_str(), p, p1, theta, sign, &m);
    }
    return {m, &diew_matrix_free};
}

void print_summary_line(const diew_swap_summary& s) {
    std::printf("%-18s p=%-12.9g", s.pattern, s.probability);
    if (s.probability > 0.0) {
        std::printf("  correction=%-8s sign=%c  distance=%.3g", s.correction,
                    s.matched_sign, s.match_distance);
    }
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"device-independent entanglement witness toolkit"};
    app.require_subcommand(1);

    // --- state ---------------------------------------------------------
    std::string state_name, state_out;
    double p = 1.0, p1 = 1.0, theta = kPiOver4;
    std::string sign = "+";
    auto* state_cmd = app.add_subcommand("state", "construct a state and emit it as JSON");
    state_cmd->add_option("--name", state_name, "rho1|rho2|rho3|rho4")->required();
    state_cmd->add_option("--p", p, "mixing weight of rho1/rho3");
    state_cmd->add_option("--p1", p1, "mixing weight of rho2");
    state_cmd->add_option("--theta", theta, "entanglement angle, radians in [0, pi/4]");
    state_cmd->add_option("--sign", sign, "GHZ sign for rho4")->check(CLI::IsMember({"+", "-"}));
    state_cmd->add_option("--out", state_out, "output file (stdout when omitted)");

    // --- swap ----------------------------------------------------------
    std::string swap_pattern = "psi+,psi+,psi+", swap_out;
    bool swap_all = false, swap_embed = false;
    auto* swap_cmd = app.add_subcommand("swap", "run the entanglement-swapping network");
    swap_cmd->add_option("--p", p, "mixing weight of rho1/rho3");
    swap_cmd->add_option("--p1", p1, "mixing weight of rho2");
    swap_cmd->add_option("--theta", theta, "entanglement angle");
    swap_cmd->add_option("--pattern", swap_pattern, "Bell outcome labels, e.g. psi+,psi+,psi-");
    swap_cmd->add_flag("--all", swap_all, "report all 64 outcome patterns");
    swap_cmd->add_flag("--embed-state", swap_embed, "embed the corrected state in JSON output");
    swap_cmd->add_option("--out", swap_out, "write a JSON report to this file");

    // --- maximize ------------------------------------------------------
    std::string witness, state_file;
    int restarts = 0, max_iters = 0;
    double value_tol = 0.0;
    std::uint64_t seed = 0;
    auto* max_cmd = app.add_subcommand("maximize", "maximize a witness over measurement angles");
    max_cmd->add_option("--witness", witness, "mermin|uffink|bancal|liang|cavalcanti")->required();
    max_cmd->add_option("--state-file", state_file, "JSON state file (n_qubits, re, im)");
    max_cmd->add_option("--name", state_name, "state family instead of --state-file");
    max_cmd->add_option("--p", p, "mixing weight of rho1/rho3");
    max_cmd->add_option("--p1", p1, "mixing weight of rho2");
    max_cmd->add_option("--theta", theta, "entanglement angle");
    max_cmd->add_option("--sign", sign, "GHZ sign for rho4")->check(CLI::IsMember({"+", "-"}));
    max_cmd->add_option("--restarts", restarts, "optimizer restarts (default 200)");
    max_cmd->add_option("--max-iters", max_iters, "simplex iterations per restart (default 2000)");
    max_cmd->add_option("--seed", seed, "optimizer seed (default 0)");

    // --- threshold -----------------------------------------------------
    std::string family, thr_mode = "numeric", scan_mode = "analytic";
    double tol = 1e-3;
    auto* thr_cmd = app.add_subcommand("threshold", "violation threshold for a state family");
    thr_cmd->add_option("--witness", witness, "mermin|uffink|bancal|liang|cavalcanti")->required();
    thr_cmd->add_option("--family", family, "rho1|rho2|rho3|rho4")->required();
    thr_cmd->add_option("--theta", theta, "entanglement angle (rho1/rho3/rho4)");
    thr_cmd->add_option("--tol", tol, "bisection bracket width (default 1e-3)");
    thr_cmd->add_option("--mode", thr_mode, "numeric (bisection, default) or analytic (closed form)")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    thr_cmd->add_option("--restarts", restarts, "optimizer restarts per evaluation");
    thr_cmd->add_option("--seed", seed, "optimizer seed");

    // --- scan ----------------------------------------------------------
    std::string theta_grid_text, p_grid_text, scan_out;
    auto* scan_cmd = app.add_subcommand("scan", "sweep (theta, p) and write the region CSV");
    scan_cmd->add_option("--witness", witness, "mermin|uffink|bancal|liang|cavalcanti")->required();
    scan_cmd->add_option("--theta-grid", theta_grid_text, "theta axis as START:STOP:COUNT")
        ->required();
    scan_cmd->add_option("--p-grid", p_grid_text, "p axis as START:STOP:COUNT")->required();
    scan_cmd->add_option("--p1", p1, "fixed mixing weight of rho2")->required();
    scan_cmd->add_option("--mode", scan_mode, "analytic (default) or numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    scan_cmd->add_option("--out", scan_out, "output CSV file")->required();
    scan_cmd->add_option("--restarts", restarts, "optimizer restarts (numeric mode)");
    scan_cmd->add_option("--seed", seed, "optimizer seed (numeric mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (state_cmd->parsed()) {
        diew_matrix* m = nullptr;
        if (diew_state_create(state_name.c_str(), p, p1, theta, sign[0], &m) != DIEW_OK) {
            return fail("state");
        }
        MatrixPtr holder(m, &diew_matrix_free);
        char* json = nullptr;
        if (diew_matrix_to_json(m, &json) != DIEW_OK) return fail("state");
        std::string text(json);
        diew_string_free(json);
        if (state_out.empty()) {
            std::cout << text << "\n";
        } else if (!write_text_file(state_out, text)) {
            std::cerr << "error: cannot write " << state_out << "\n";
            return 1;
        }
        return 0;
    }

    if (swap_cmd->parsed()) {
        if (swap_all) {
            std::vector<diew_swap_summary> all(64);
            if (diew_swap_all(p, p1, theta, all.data()) != DIEW_OK) return fail("swap");
            for (const auto& s : all) print_summary_line(s);
        } else {
            diew_swap_summary s{};
            if (diew_swap(p, p1, theta, swap_pattern.c_str(), &s, nullptr) != DIEW_OK) {
                return fail("swap");
            }
            print_summary_line(s);
        }
        if (!swap_out.empty()) {
            char* json = nullptr;
            if (diew_swap_to_json(p, p1, theta, swap_all ? nullptr : swap_pattern.c_str(),
                                  swap_embed ? 1 : 0, &json) != DIEW_OK) {
                return fail("swap");
            }
            const bool ok = write_text_file(swap_out, json);
            diew_string_free(json);
            if (!ok) {
                std::cerr << "error: cannot write " << swap_out << "\n";
                return 1;
            }
        }
        return 0;
    }

    if (max_cmd->parsed()) {
        if (state_file.empty() == state_name.empty()) {
            std::cerr << "error: give exactly one of --state-file or --name\n";
            return 2;
        }
        diew_status status = DIEW_OK;
        auto m = load_state_arg(state_file, state_name, p, p1, theta, sign[0], &status);
        if (!m) return status == DIEW_ERR_IO ? 1 : fail("maximize");
        double value = 0.0;
        std::vector<double> angles(18);
        int n_angles = static_cast<int>(angles.size());
        int violated = 0;
        if (diew_maximize(m.get(), witness.c_str(), restarts, max_iters, value_tol, seed, &value,
                          angles.data(), &n_angles, &violated) != DIEW_OK) {
            return fail("maximize");
        }
        double bound = 0.0;
        int above = 1;
        diew_witness_bound(witness.c_str(), &bound, &above);
        std::printf("witness   %s\n", witness.c_str());
        std::printf("value     %.9f\n", value);
        std::printf("bound     %.9f (%s)\n", bound, above ? "violation above" : "violation below");
        std::printf("violated  %s\n", violated ? "yes" : "no");
        const int parties = n_angles == 12 && witness == "cavalcanti" ? 2 : 3;
        const int per_party = n_angles / (2 * parties);
        int at = 0;
        for (int party = 0; party < parties; ++party) {
            std::printf("party %d  ", party);
            for (int s = 0; s < per_party; ++s) {
                std::printf(" (theta=%.6f, phi=%.6f)", angles[at], angles[at + 1]);
                at += 2;
            }
            std::printf("\n");
        }
        return 0;
    }

    if (thr_cmd->parsed()) {
        if (thr_mode == "analytic") {
            double value = 0.0;
            if (diew_table1_threshold(witness.c_str(), family.c_str(), theta, &value) != DIEW_OK) {
                return fail("threshold");
            }
            std::printf("%s threshold for %s on %s: %.9g (closed form)\n",
                        family == "rho2" ? "p1" : "p", witness.c_str(), family.c_str(), value);
        } else {
            double value = 0.0, width = 0.0;
            if (diew_bisect_threshold(witness.c_str(), family.c_str(), theta, tol, restarts,
                                      max_iters, seed, &value, &width) != DIEW_OK) {
                return fail("threshold");
            }
            std::printf("%s threshold for %s on %s: %.6f +- %.2g\n",
                        family == "rho2" ? "p1" : "p", witness.c_str(), family.c_str(), value,
                        width / 2.0);
        }
        return 0;
    }

    if (scan_cmd->parsed()) {
        GridArg theta_grid, p_grid;
        try {
            theta_grid = parse_grid(theta_grid_text);
            p_grid = parse_grid(p_grid_text);
        } catch (const CLI::ValidationError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        if (diew_scan_csv(witness.c_str(), scan_mode == "numeric" ? 1 : 0, theta_grid.start,
                          theta_grid.stop, theta_grid.count, p_grid.start, p_grid.stop,
                          p_grid.count, p1, restarts, seed, scan_out.c_str()) != DIEW_OK) {
            return fail("scan");
        }
        std::printf("wrote %s (%d x %d grid)\n", scan_out.c_str(), theta_grid.count, p_grid.count);
        return 0;
    }

    return 2;
}
