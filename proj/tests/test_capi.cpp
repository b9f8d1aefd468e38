#include <diew/diew.h>

#include "diew/core/scan.hpp"
#include "diew/core/serialize.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4;

struct MatrixGuard {
    diew_matrix* m = nullptr;
    ~MatrixGuard() { diew_matrix_free(m); }
};

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { diew_string_free(s); }
};

}  // namespace

TEST_CASE("c api: state construction and entry access") {
    MatrixGuard m;
    REQUIRE(diew_state_create("rho1", 0.5, 0.0, std::numbers::pi / 6, '+', &m.m) == DIEW_OK);
    CHECK(diew_matrix_n_qubits(m.m) == 3);
    CHECK(diew_matrix_dim(m.m) == 8);
    double re = 0.0, im = 0.0;
    REQUIRE(diew_matrix_entry(m.m, 0, 0, &re, &im) == DIEW_OK);
    CHECK(re == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(im == 0.0);
    CHECK(diew_matrix_entry(m.m, 8, 0, &re, &im) == DIEW_ERR_INVALID_ARGUMENT);

    diew_matrix* bad = nullptr;
    CHECK(diew_state_create("rho9", 0.5, 0.0, 0.3, '+', &bad) == DIEW_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(diew_last_error()) > 0);
    CHECK(diew_state_create("rho1", 1.5, 0.0, 0.3, '+', &bad) == DIEW_ERR_INVALID_ARGUMENT);
    CHECK(diew_state_create("rho4", 0.5, 0.0, 0.3, 'x', &bad) == DIEW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: json round trip") {
    MatrixGuard m;
    REQUIRE(diew_state_create("rho4", 0.8, 0.0, 0.4, '-', &m.m) == DIEW_OK);
    StringGuard json;
    REQUIRE(diew_matrix_to_json(m.m, &json.s) == DIEW_OK);

    MatrixGuard back;
    REQUIRE(diew_matrix_from_json(json.s, &back.m) == DIEW_OK);
    REQUIRE(diew_matrix_dim(back.m) == 8);
    for (size_t r = 0; r < 8; ++r) {
        for (size_t c = 0; c < 8; ++c) {
            double re1, im1, re2, im2;
            diew_matrix_entry(m.m, r, c, &re1, &im1);
            diew_matrix_entry(back.m, r, c, &re2, &im2);
            CHECK(re1 == re2);
            CHECK(im1 == im2);
        }
    }

    diew_matrix* bad = nullptr;
    CHECK(diew_matrix_from_json("{not json", &bad) == DIEW_ERR_PARSE);
    CHECK(diew_matrix_from_json("{\"n_qubits\": 2, \"re\": [[1]], \"im\": [[0]]}", &bad) ==
          DIEW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: p_final and success probability") {
    double v = 0.0;
    REQUIRE(diew_p_final(0.8, std::numbers::pi / 6, &v) == DIEW_OK);
    CHECK(v == doctest::Approx(1.2 / 1.4).epsilon(1e-12));
    CHECK(diew_p_final(1.2, 0.3, &v) == DIEW_ERR_INVALID_ARGUMENT);

    REQUIRE(diew_success_probability(1.0, 1.0, kQuarterPi, &v) == DIEW_OK);
    CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("c api: single swap and the GHZ case") {
    diew_swap_summary summary{};
    MatrixGuard corrected;
    REQUIRE(diew_swap(1.0, 1.0, kQuarterPi, "psi+,psi+,psi+", &summary, &corrected.m) == DIEW_OK);
    CHECK(std::string(summary.pattern) == "psi+,psi+,psi+");
    CHECK(summary.probability == doctest::Approx(1.0 / 32).epsilon(1e-10));
    CHECK(summary.match_distance < 1e-10);
    CHECK((summary.matched_sign == '+' || summary.matched_sign == '-'));
    CHECK(diew_matrix_n_qubits(corrected.m) == 3);

    CHECK(diew_swap(0.0, 0.0, 0.3, "psi+,psi+,psi+", &summary, nullptr) ==
          DIEW_ERR_ZERO_PROBABILITY);
    CHECK(diew_swap(0.5, 0.5, 0.3, "psi+,psi+", &summary, nullptr) == DIEW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: full outcome distribution") {
    diew_swap_summary all[64];
    REQUIRE(diew_swap_all(0.8, 0.6, 0.5, all) == DIEW_OK);
    double total = 0.0;
    for (const auto& s : all) total += s.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 1; i < 64; ++i) CHECK(all[i - 1].probability >= all[i].probability);
}

TEST_CASE("c api: swap json report") {
    StringGuard json;
    REQUIRE(diew_swap_to_json(1.0, 1.0, kQuarterPi, "psi+,psi+,psi+", 1, &json.s) == DIEW_OK);
    const auto j = nlohmann::json::parse(json.s);
    CHECK(j.at("probability").get<double>() == doctest::Approx(1.0 / 32).epsilon(1e-10));
    CHECK(j.at("pattern").size() == 3);
    CHECK(j.contains("corrected"));
    const auto corrected = diew::serialize::cmatrix_from_json(j.at("corrected"));
    CHECK(corrected.is_density(1e-10));

    StringGuard array_json;
    REQUIRE(diew_swap_to_json(0.8, 0.6, 0.5, nullptr, 0, &array_json.s) == DIEW_OK);
    const auto arr = nlohmann::json::parse(array_json.s);
    REQUIRE(arr.is_array());
    CHECK(arr.size() == 64);
    CHECK_FALSE(arr.at(0).contains("corrected"));
}

TEST_CASE("c api: witness bounds") {
    double bound = 0.0;
    int above = 0;
    REQUIRE(diew_witness_bound("bancal", &bound, &above) == DIEW_OK);
    CHECK(bound == 9.0);
    CHECK(above == 1);
    REQUIRE(diew_witness_bound("cavalcanti", &bound, &above) == DIEW_OK);
    CHECK(bound == 0.0);
    CHECK(above == 0);
    CHECK(diew_witness_bound("chsh", &bound, &above) == DIEW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: maximize on GHZ") {
    MatrixGuard ghz;
    REQUIRE(diew_state_create("rho2", 0.0, 1.0, 0.0, '+', &ghz.m) == DIEW_OK);
    double value = 0.0;
    double angles[18];
    int n_angles = 18;
    int violated = 0;
    REQUIRE(diew_maximize(ghz.m, "mermin", 60, 0, 0.0, 1, &value, angles, &n_angles, &violated) ==
            DIEW_OK);
    CHECK(value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(n_angles == 12);
    CHECK(violated == 1);

    int too_small = 4;
    CHECK(diew_maximize(ghz.m, "mermin", 8, 0, 0.0, 1, &value, angles, &too_small, &violated) ==
          DIEW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: analytic values and thresholds") {
    double v = 0.0;
    REQUIRE(diew_mermin_max_rho1_analytic(0.9, kQuarterPi, &v) == DIEW_OK);
    CHECK(v == doctest::Approx(3.6).epsilon(1e-12));
    CHECK(diew_mermin_max_rho1_analytic(1.5, 0.3, &v) == DIEW_ERR_INVALID_ARGUMENT);

    REQUIRE(diew_table1_threshold("bancal", "rho2", 0.0, &v) == DIEW_OK);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(diew_table1_threshold("cavalcanti", "rho1", 0.5, &v) == DIEW_ERR_INVALID_ARGUMENT);

    double width = 0.0;
    REQUIRE(diew_bisect_threshold("mermin", "rho1", kQuarterPi, 1e-3, 32, 0, 1, &v, &width) ==
            DIEW_OK);
    CHECK(v == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(2e-3));
    CHECK(width <= 1e-3);

    // Mermin needs p sin(2 theta) > 1/sqrt(2); unreachable at small theta.
    CHECK(diew_bisect_threshold("mermin", "rho1", 0.3, 1e-3, 16, 0, 1, &v, &width) ==
          DIEW_ERR_NO_VIOLATION);
}

TEST_CASE("c api: classify and scan to CSV") {
    diew_region_point point{};
    REQUIRE(diew_classify_point(std::numbers::pi / 6, 0.65, 0.6, "bancal", 0, 0, 0, &point) ==
            DIEW_OK);
    CHECK(point.enhanced == 1);
    CHECK(point.v_rho4 == 1);
    CHECK(point.has_values == 0);

    REQUIRE(diew_classify_point(std::numbers::pi / 6, 0.65, 0.6, "bancal", 1, 24, 1, &point) ==
            DIEW_OK);
    CHECK(point.enhanced == 1);
    CHECK(point.has_values == 1);
    CHECK(point.val_rho4 > 9.0);
    CHECK(point.val_rho1 < 9.0);

    const auto path = std::filesystem::temp_directory_path() / "diew_capi_scan.csv";
    REQUIRE(diew_scan_csv("bancal", 0, 0.1, kQuarterPi, 6, 0.0, 1.0, 11, 0.6, 0, 0,
                          path.string().c_str()) == DIEW_OK);
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto points = diew::scan::parse_csv(in);
    CHECK(points.size() == 66);
    std::filesystem::remove(path);

    CHECK(diew_scan_csv("bancal", 0, 0.1, kQuarterPi, 6, 0.0, 1.0, 11, 0.6, 0, 0,
                        "/nonexistent-dir/out.csv") == DIEW_ERR_IO);
}

TEST_CASE("c api: status names cover the enum") {
    CHECK(std::string(diew_status_name(DIEW_OK)) == "ok");
    CHECK(std::string(diew_status_name(DIEW_ERR_ZERO_PROBABILITY)) == "zero_probability_outcome");
    CHECK(std::string(diew_status_name(DIEW_ERR_NO_VIOLATION)) == "no_violation");
    CHECK(std::string(diew_status_name(DIEW_ERR_IO)) == "io_error");
}
