#include "diew/diew.h"

#include "diew/core/network.hpp"
#include "diew/core/optimize.hpp"
#include "diew/core/scan.hpp"
#include "diew/core/serialize.hpp"
#include "diew/core/states.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

struct diew_matrix {
    diew::qlin::CMatrix m;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename F>
diew_status wrap(F&& body) {
    try {
        return body();
    } catch (const diew::qlin::ZeroProbabilityOutcome& e) {
        set_error(e.what());
        return DIEW_ERR_ZERO_PROBABILITY;
    } catch (const diew::optimize::NonMonotone& e) {
        set_error(e.what());
        return DIEW_ERR_NON_MONOTONE;
    } catch (const diew::optimize::NoViolation& e) {
        set_error(e.what());
        return DIEW_ERR_NO_VIOLATION;
    } catch (const nlohmann::json::exception& e) {
        set_error(e.what());
        return DIEW_ERR_PARSE;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return DIEW_ERR_INVALID_ARGUMENT;
    } catch (const std::out_of_range& e) {
        set_error(e.what());
        return DIEW_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return DIEW_ERR_INTERNAL;
    }
}

diew_status require(bool condition, const char* message) {
    if (!condition) {
        set_error(message);
        return DIEW_ERR_INVALID_ARGUMENT;
    }
    return DIEW_OK;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill_summary(const diew::network::SwapResult& result, diew_swap_summary* out) {
    std::memset(out, 0, sizeof(*out));
    std::snprintf(out->pattern, sizeof(out->pattern), "%s",
                  diew::network::pattern_label(result.pattern).c_str());
    out->probability = result.probability;
    if (result.conditional.has_value()) {
        std::snprintf(out->correction, sizeof(out->correction), "%s,%s,%s",
                      diew::network::pauli_op_label(result.correction[0]),
                      diew::network::pauli_op_label(result.correction[1]),
                      diew::network::pauli_op_label(result.correction[2]));
        out->matched_sign = diew::network::matched_sign_char(result.matched_sign);
        out->match_distance = result.match_distance;
    } else {
        out->matched_sign = 'n';
        out->match_distance = 0.0;
    }
}

diew::optimize::OptimizerConfig make_config(int restarts, int max_iters, double value_tol,
                                            uint64_t seed) {
    diew::optimize::OptimizerConfig config;
    if (restarts > 0) config.restarts = restarts;
    if (max_iters > 0) config.max_iters = max_iters;
    if (value_tol > 0.0) config.value_tol = value_tol;
    config.seed = seed;
    return config;
}

std::array<diew::qlin::CMatrix, 3> network_inputs(double p, double p1, double theta) {
    return {diew::states::rho1(p, theta), diew::states::rho2(p1), diew::states::rho3(p, theta)};
}

}  // namespace

extern "C" {

const char* diew_status_name(diew_status status) {
    switch (status) {
        case DIEW_OK: return "ok";
        case DIEW_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case DIEW_ERR_ZERO_PROBABILITY: return "zero_probability_outcome";
        case DIEW_ERR_NON_MONOTONE: return "non_monotone";
        case DIEW_ERR_NO_VIOLATION: return "no_violation";
        case DIEW_ERR_PARSE: return "parse_error";
        case DIEW_ERR_IO: return "io_error";
        case DIEW_ERR_INTERNAL: return "internal_error";
    }
    return "unknown";
}

const char* diew_last_error(void) { return g_last_error.c_str(); }

diew_status diew_state_create(const char* name, double p, double p1, double theta, char sign,
                              diew_matrix** out) {
    if (auto rc = require(name && out, "name and out must be non-null")) return rc;
    return wrap([&] {
        const std::string which = name;
        diew::qlin::CMatrix m;
        if (which == "rho1") {
            m = diew::states::rho1(p, theta);
        } else if (which == "rho2") {
            m = diew::states::rho2(p1);
        } else if (which == "rho3") {
            m = diew::states::rho3(p, theta);
        } else if (which == "rho4") {
            if (sign != '+' && sign != '-') throw std::invalid_argument("sign must be '+' or '-'");
            m = diew::states::rho4_closed(p, theta, sign == '+' ? +1 : -1);
        } else {
            throw std::invalid_argument("unknown state name: " + which);
        }
        *out = new diew_matrix{std::move(m)};
        return DIEW_OK;
    });
}

void diew_matrix_free(diew_matrix* m) { delete m; }

int diew_matrix_n_qubits(const diew_matrix* m) { return m ? m->m.n_qubits() : -1; }

size_t diew_matrix_dim(const diew_matrix* m) {
    return m ? static_cast<size_t>(m->m.dim()) : 0;
}

diew_status diew_matrix_entry(const diew_matrix* m, size_t row, size_t col, double* re,
                              double* im) {
    if (auto rc = require(m && re && im, "arguments must be non-null")) return rc;
    if (auto rc = require(row < static_cast<size_t>(m->m.dim()) &&
                              col < static_cast<size_t>(m->m.dim()),
                          "entry index out of range")) {
        return rc;
    }
    const auto v = m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    *re = v.real();
    *im = v.imag();
    return DIEW_OK;
}

diew_status diew_matrix_to_json(const diew_matrix* m, char** out_json) {
    if (auto rc = require(m && out_json, "arguments must be non-null")) return rc;
    return wrap([&] {
        *out_json = copy_string(diew::serialize::cmatrix_to_json(m->m).dump());
        return DIEW_OK;
    });
}

diew_status diew_matrix_from_json(const char* json_text, diew_matrix** out) {
    if (auto rc = require(json_text && out, "arguments must be non-null")) return rc;
    return wrap([&] {
        const auto j = nlohmann::json::parse(json_text);
        *out = new diew_matrix{diew::serialize::cmatrix_from_json(j)};
        return DIEW_OK;
    });
}

void diew_string_free(char* s) { delete[] s; }

diew_status diew_p_final(double p, double theta, double* out) {
    if (auto rc = require(out != nullptr, "out must be non-null")) return rc;
    return wrap([&] {
        *out = diew::states::p_final(p, theta);
        return DIEW_OK;
    });
}

diew_status diew_swap(double p, double p1, double theta, const char* pattern,
                      diew_swap_summary* out, diew_matrix** corrected_out) {
    if (auto rc = require(pattern && out, "pattern and out must be non-null")) return rc;
    return wrap([&] {
        const auto inputs = network_inputs(p, p1, theta);
        const auto result = diew::network::swap(inputs[0], inputs[1], inputs[2],
                                                diew::network::pattern_from_label(pattern), p, theta);
        fill_summary(result, out);
        if (corrected_out) {
            *corrected_out = new diew_matrix{*result.corrected};
        }
        return DIEW_OK;
    });
}

diew_status diew_swap_all(double p, double p1, double theta, diew_swap_summary out[64]) {
    if (auto rc = require(out != nullptr, "out must be non-null")) return rc;
    return wrap([&] {
        const auto inputs = network_inputs(p, p1, theta);
        const auto results = diew::network::outcome_distribution(inputs[0], inputs[1], inputs[2],
                                                                 p, theta);
        for (size_t i = 0; i < results.size(); ++i) fill_summary(results[i], &out[i]);
        return DIEW_OK;
    });
}

diew_status diew_swap_to_json(double p, double p1, double theta, const char* pattern,
                              int embed_state, char** out_json) {
    if (auto rc = require(out_json != nullptr, "out_json must be non-null")) return rc;
    return wrap([&] {
        const auto inputs = network_inputs(p, p1, theta);
        nlohmann::json j;
        if (pattern) {
            const auto result = diew::network::swap(
                inputs[0], inputs[1], inputs[2], diew::network::pattern_from_label(pattern), p, theta);
            j = diew::serialize::swap_result_to_json(result, embed_state != 0);
        } else {
            j = nlohmann::json::array();
            for (const auto& result :
                 diew::network::outcome_distribution(inputs[0], inputs[1], inputs[2], p, theta)) {
                j.push_back(diew::serialize::swap_result_to_json(result, false));
            }
        }
        *out_json = copy_string(j.dump(2));
        return DIEW_OK;
    });
}

diew_status diew_success_probability(double p, double p1, double theta, double* out) {
    if (auto rc = require(out != nullptr, "out must be non-null")) return rc;
    return wrap([&] {
        *out = diew::network::success_probability(p, p1, theta);
        return DIEW_OK;
    });
}

diew_status diew_witness_bound(const char* witness, double* out_bound, int* out_violation_above) {
    if (auto rc = require(witness && out_bound, "witness and out_bound must be non-null")) return rc;
    return wrap([&] {
        const auto& spec = diew::witnesses::witness_by_name(witness);
        *out_bound = spec.bound;
        if (out_violation_above) *out_violation_above = spec.violation_above ? 1 : 0;
        return DIEW_OK;
    });
}

diew_status diew_maximize(const diew_matrix* rho, const char* witness, int restarts, int max_iters,
                          double value_tol, uint64_t seed, double* out_value, double* out_angles,
                          int* inout_n_angles, int* out_violated) {
    if (auto rc = require(rho && witness && out_value, "rho, witness, out_value must be non-null")) {
        return rc;
    }
    return wrap([&] {
        const auto& spec = diew::witnesses::witness_by_name(witness);
        const auto config = make_config(restarts, max_iters, value_tol, seed);
        const auto result = diew::optimize::maximize_witness(rho->m, spec, config);
        *out_value = result.value;
        if (out_angles && inout_n_angles) {
            const auto angles = diew::witnesses::flatten_angles(spec, result.scenario);
            if (*inout_n_angles < static_cast<int>(angles.size())) {
                throw std::invalid_argument("angle buffer too small (need 18 doubles)");
            }
            std::memcpy(out_angles, angles.data(), angles.size() * sizeof(double));
            *inout_n_angles = static_cast<int>(angles.size());
        }
        if (out_violated) *out_violated = spec.violates(result.value) ? 1 : 0;
        return DIEW_OK;
    });
}

diew_status diew_mermin_max_rho1_analytic(double p, double theta, double* out) {
    if (auto rc = require(out != nullptr, "out must be non-null")) return rc;
    return wrap([&] {
        diew::states::StateParams{p, 1.0, theta}.validate();
        *out = diew::optimize::mermin_max_rho1_analytic(p, theta);
        return DIEW_OK;
    });
}

diew_status diew_table1_threshold(const char* witness, const char* family, double theta,
                                  double* out) {
    if (auto rc = require(witness && family && out, "arguments must be non-null")) return rc;
    return wrap([&] {
        *out = diew::optimize::table1_threshold(diew::witnesses::witness_by_name(witness),
                                                diew::optimize::family_by_name(family), theta);
        return DIEW_OK;
    });
}

diew_status diew_bisect_threshold(const char* witness, const char* family, double theta,
                                  double tol, int restarts, int max_iters, uint64_t seed,
                                  double* out_threshold, double* out_bracket_width) {
    if (auto rc = require(witness && family && out_threshold, "arguments must be non-null")) {
        return rc;
    }
    return wrap([&] {
        const auto& spec = diew::witnesses::witness_by_name(witness);
        const auto fam = diew::optimize::family_by_name(family);
        const auto param = fam == diew::optimize::Family::rho2 ? diew::optimize::ScanParam::p1
                                                               : diew::optimize::ScanParam::p;
        diew::states::StateParams fixed;
        fixed.theta = theta;
        const auto config = make_config(restarts, max_iters, 0.0, seed);
        const auto result =
            diew::optimize::bisect_threshold(spec, fam, param, fixed, tol > 0 ? tol : 1e-3, config);
        *out_threshold = result.threshold;
        if (out_bracket_width) *out_bracket_width = result.bracket_width;
        return DIEW_OK;
    });
}

diew_status diew_classify_point(double theta, double p, double p1, const char* witness,
                                int numeric_mode, int restarts, uint64_t seed,
                                diew_region_point* out) {
    if (auto rc = require(witness && out, "witness and out must be non-null")) return rc;
    return wrap([&] {
        const auto& spec = diew::witnesses::witness_by_name(witness);
        const auto mode =
            numeric_mode ? diew::scan::ScanMode::numeric : diew::scan::ScanMode::analytic;
        const auto config = make_config(restarts, 0, 0.0, seed);
        const auto point = diew::scan::classify_point(theta, p, p1, spec, mode, config);
        *out = diew_region_point{};
        out->theta = point.theta;
        out->p = point.p;
        out->p1 = point.p1;
        out->v_rho1 = point.violated[0];
        out->v_rho2 = point.violated[1];
        out->v_rho3 = point.violated[2];
        out->v_rho4 = point.violated[3];
        out->enhanced = point.enhanced;
        if (point.values.has_value()) {
            out->has_values = 1;
            out->val_rho1 = (*point.values)[0];
            out->val_rho2 = (*point.values)[1];
            out->val_rho3 = (*point.values)[2];
            out->val_rho4 = (*point.values)[3];
        }
        return DIEW_OK;
    });
}

diew_status diew_scan_csv(const char* witness, int numeric_mode, double theta_start,
                          double theta_stop, int theta_count, double p_start, double p_stop,
                          int p_count, double p1, int restarts, uint64_t seed,
                          const char* csv_path) {
    if (auto rc = require(witness && csv_path, "witness and csv_path must be non-null")) return rc;
    return wrap([&] {
        const auto& spec = diew::witnesses::witness_by_name(witness);
        diew::scan::GridSpec grid;
        grid.theta = {theta_start, theta_stop, theta_count};
        grid.p = {p_start, p_stop, p_count};
        grid.p1 = p1;
        grid.mode = numeric_mode ? diew::scan::ScanMode::numeric : diew::scan::ScanMode::analytic;
        const auto config = make_config(restarts, 0, 0.0, seed);
        const auto points = diew::scan::sweep(grid, spec, config);
        std::ofstream out(csv_path);
        if (!out) {
            set_error(std::string("cannot open for writing: ") + csv_path);
            return DIEW_ERR_IO;
        }
        diew::scan::write_csv(out, points);
        out.flush();
        if (!out) {
            set_error(std::string("write failed: ") + csv_path);
            return DIEW_ERR_IO;
        }
        return DIEW_OK;
    });
}

}  // extern "C"
