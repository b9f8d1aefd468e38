#include "diew/core/states.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace diew;
using qlin::CMatrix;
using qlin::Complex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rho1 endpoints and mixed-weight arithmetic") {
    const CMatrix noise = states::rho1(0.0, 0.3);
    CHECK(noise(1, 1) == Complex{1.0, 0.0});  // |001><001|
    CHECK(std::abs(noise(0, 0)) == 0.0);

    const CMatrix pure = states::rho1(1.0, kPi / 4);
    CHECK(pure(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pure(0, 7).real() == doctest::Approx(0.5).epsilon(1e-12));

    // <000|rho|000> = 0.5 cos^2(pi/6) = 0.375
    CHECK(states::rho1(0.5, kPi / 6)(0, 0).real() == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("rho2 endpoints and off-diagonal arithmetic") {
    CHECK(states::rho2(1.0)(0, 7).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(states::rho2(0.0)(2, 2) == Complex{1.0, 0.0});  // |010><010|
    CHECK(states::rho2(0.6)(0, 7).real() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("rho3 endpoints and |111> weight arithmetic") {
    CHECK(states::rho3(0.0, 0.2)(4, 4) == Complex{1.0, 0.0});  // |100><100|
    CHECK(states::rho3(1.0, kPi / 4)(0, 7).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(states::rho3(0.5, kPi / 6)(7, 7).real() == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("p_final endpoints and arithmetic") {
    CHECK(states::p_final(1.0, kPi / 4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(states::p_final(0.0, 0.3) == 0.0);
    CHECK(states::p_final(0.8, kPi / 6) == doctest::Approx(1.2 / 1.4).epsilon(1e-12));
}

TEST_CASE("rho4_closed endpoints, sign, and rho2-shaped consistency") {
    const CMatrix top = states::rho4_closed(1.0, kPi / 4, +1);
    CHECK(top(0, 7).real() == doctest::Approx(0.5).epsilon(1e-12));

    const CMatrix bottom = states::rho4_closed(0.0, 0.4, -1);
    CHECK(bottom(4, 4) == Complex{1.0, 0.0});  // |100><100|

    CHECK(states::rho4_closed(0.8, kPi / 6, -1)(0, 7).real() ==
          doctest::Approx(-states::p_final(0.8, kPi / 6) / 2).epsilon(1e-12));

    // Same mixture as rho2 with p1 := p_final and noise ket |100>.
    for (const double p : {0.15, 0.5, 0.85}) {
        for (const double theta : {0.1, 0.5, kPi / 4}) {
            const double pf = states::p_final(p, theta);
            qlin::EigenMatrix expected = states::rho2(pf).mat();
            expected(2, 2) = 0.0;
            expected(4, 4) = Complex{1.0 - pf, 0.0};
            CHECK((states::rho4_closed(p, theta, +1).mat() - expected).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
}

TEST_CASE("every constructor output is a density matrix") {
    for (const double p : {0.0, 0.3, 1.0}) {
        for (const double theta : {0.0, 0.4, kPi / 4}) {
            CHECK(states::rho1(p, theta).is_density(1e-10));
            CHECK(states::rho3(p, theta).is_density(1e-10));
            CHECK(states::rho4_closed(p, theta, +1).is_density(1e-10));
            CHECK(states::rho4_closed(p, theta, -1).is_density(1e-10));
        }
        CHECK(states::rho2(p).is_density(1e-10));
    }
}

TEST_CASE("bell states are orthogonal rank-1 projectors with the right phases") {
    using states::BellKind;
    const auto kinds = {BellKind::phi_plus, BellKind::phi_minus, BellKind::psi_plus,
                        BellKind::psi_minus};
    CHECK(states::bell_state(BellKind::psi_plus)(1, 2).real() == doctest::Approx(0.5));
    CHECK(states::bell_state(BellKind::phi_plus)(0, 3).real() == doctest::Approx(0.5));
    for (const auto a : kinds) {
        for (const auto b : kinds) {
            const double overlap =
                (states::bell_state(a).mat() * states::bell_state(b).mat()).trace().real();
            CHECK(overlap == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("parameter validation is strict") {
    CHECK_THROWS_AS(states::rho1(1.0000001, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(states::rho1(-0.0000001, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(states::rho2(1.0000001), std::invalid_argument);
    CHECK_THROWS_AS(states::rho1(0.5, kPi / 4 + 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(states::rho4_closed(0.5, 0.3, 2), std::invalid_argument);
    // Decimal rounding of pi/4 must still be accepted.
    CHECK_NOTHROW(states::rho1(0.5, 0.7853981634));
}

TEST_CASE("single-term biseparable draw assembles to the kron of its parts") {
    const auto mix = states::random_biseparable(42, 1);
    REQUIRE(mix.terms.size() == 1);
    CHECK(mix.terms[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    const auto& term = mix.terms[0];
    if (term.partition == states::Partition::a_bc) {
        CHECK((mix.assemble().mat() - qlin::kron(term.single, term.pair).mat()).norm() < 1e-12);
    } else if (term.partition == states::Partition::c_ab) {
        CHECK((mix.assemble().mat() - qlin::kron(term.pair, term.single).mat()).norm() < 1e-12);
    }
}

TEST_CASE("biseparable sampler is deterministic in the seed") {
    const auto a = states::random_biseparable(123, 5);
    const auto b = states::random_biseparable(123, 5);
    REQUIRE(a.terms.size() == b.terms.size());
    CHECK((a.assemble().mat() - b.assemble().mat()).norm() == 0.0);
    for (size_t i = 0; i < a.terms.size(); ++i) {
        CHECK(a.terms[i].weight == b.terms[i].weight);
        CHECK(a.terms[i].partition == b.terms[i].partition);
    }

    const auto c = states::random_biseparable(124, 5);
    CHECK((a.assemble().mat() - c.assemble().mat()).norm() > 1e-6);
}

TEST_CASE("biseparable draws are density matrices with simplex weights") {
    for (const std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        const auto mix = states::random_biseparable(seed, 4);
        double total = 0.0;
        for (const auto& term : mix.terms) {
            CHECK(term.weight >= 0.0);
            total += term.weight;
            CHECK(term.single.is_density(1e-10));
            CHECK(term.pair.is_density(1e-10));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mix.assemble().is_density(1e-10));
    }
    CHECK_THROWS_AS(states::random_biseparable(1, 0), std::invalid_argument);
}
