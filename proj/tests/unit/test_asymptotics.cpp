#include "ldpcgm/asymptotics.hpp"
#include "ldpcgm/enumerator.hpp"
#include "ldpcgm/errors.hpp"
#include "ldpcgm/simulator.hpp"

#include <doctest.h>

#include <cmath>

using namespace ldpcgm;
using namespace ldpcgm::asymptotics;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Dense log-grid search of the infimum in the outer growth rate.
double w_o_grid_oracle(double j, int k, double a) {
    double best = INFINITY;
    const int points = 2000000;
    const double lo = std::log(1e-8), hi = std::log(1e8);
    for (int i = 0; i <= points; ++i) {
        const double u = lo + (hi - lo) * i / points;
        const double x = std::exp(u);
        const double v = std::log((std::pow(1 + x, k) + std::pow(1 - x, k)) / 2.0) - a * k * u;
        best = std::min(best, v);
    }
    return (j / k) * best - (j - 1.0) * binary_entropy(a);
}

const Degrees kMatrix[] = {{3, 6}, {4, 8}, {4, 12}, {6, 12}};

}  // namespace

TEST_CASE("binary entropy and its inverse") {
    CHECK(binary_entropy(0.5) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    const double d = entropy_inverse(0.5 * kLn2);
    CHECK(d == doctest::Approx(0.110028).epsilon(1e-5));
    CHECK(std::fabs(binary_entropy(d) - 0.5 * kLn2) < 1e-10);
    for (int i = 0; i <= 500; ++i) {
        const double a = 0.5 * i / 500;
        CHECK(std::fabs(entropy_inverse(binary_entropy(a)) - a) < 1e-10);
    }
    CHECK_THROWS_AS(binary_entropy(1.5), ValidationError);
    CHECK_THROWS_AS(entropy_inverse(1.0), ValidationError);
}

TEST_CASE("w_o at the midpoint and against a grid oracle") {
    for (const auto& deg : kMatrix) CHECK(std::fabs(w_o(deg, 0.5) - deg.outer_rate() * kLn2) < 1e-9);
    const double v = w_o({4, 8}, 0.01);
    CHECK(v < 0);
    CHECK(std::fabs(v - w_o_grid_oracle(4, 8, 0.01)) < 1e-7);
    for (double a : {0.03, 0.2, 0.37}) CHECK(std::fabs(w_o({3, 6}, a) - w_o_grid_oracle(3, 6, a)) < 1e-7);
    CHECK(w_o({4, 8}, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Lemma 1 bound dominates w_o") {
    for (const auto& deg : kMatrix) {
        for (int i = 1; i < 1000; ++i) {
            const double a = i / 1000.0;
            CHECK(w_o(deg, a) <= w_o_upper_bound(deg, a) + 1e-9);
        }
        CHECK(w_o_upper_bound(deg, 0.5) == doctest::Approx(deg.outer_rate() * kLn2).epsilon(1e-14));
    }
    // a = 0.25, k = 8, R = 0.5 evaluated in long double
    const long double a = 0.25L, r = 0.5L;
    const long double direct = (1 - r) * std::log(1 + std::pow(1 - 2 * a, 8.0L)) - a * std::log(a) -
                               (1 - a) * std::log(1 - a) - (1 - r) * std::log(2.0L);
    CHECK(std::fabs(w_o_upper_bound({4, 8}, 0.25) - static_cast<double>(direct)) < 1e-14);
}

TEST_CASE("delta_o") {
    const double gv = entropy_inverse(0.5 * kLn2);
    const double d = delta_o({4, 8});
    CHECK(d > 0);
    CHECK(d < gv);
    CHECK(std::fabs(w_o({4, 8}, d)) < 1e-8);

    const double d36 = delta_o({3, 6});
    CHECK(w_o({3, 6}, d36 / 2) < 0);
    CHECK(w_o({3, 6}, d36 * 1.01) > 0);

    const double d8 = delta_o({4, 8}), d16 = delta_o({8, 16}), d32 = delta_o({16, 32});
    CHECK(d8 < d16);
    CHECK(d16 < d32);
    CHECK(d32 < gv);

    CHECK_THROWS_AS(delta_o({2, 4}), std::runtime_error);  // no negative region for j = 2
}

TEST_CASE("k_min_for_delta") {
    // smallest k strictly above ln[1 - H(d)/((1-R) ln 2)] / ln(1 - 2d)
    const double ratio = std::log(1.0 - binary_entropy(0.1) / (0.5 * kLn2)) / std::log(0.8);
    CHECK(ratio > 12.0);
    CHECK(ratio < 13.0);
    CHECK(k_min_for_delta(0.1, 0.5) == 13);

    // the formula is not sufficient: at k = 13 the Lemma 1 bound is still positive at 0.1
    auto lemma1_at = [](int kk, double a) { return w_o_upper_bound(Degrees::from_rate(0.5, kk), a); };
    CHECK(lemma1_at(13, 0.1) > 0);
    CHECK(delta_o(Degrees::from_rate(0.5, 13)) < 0.1);
    int first_negative = 0;
    for (int kk = 4; kk < 40 && first_negative == 0; ++kk)
        if (lemma1_at(kk, 0.1) < 0) first_negative = kk;
    CHECK(first_negative == 15);
    CHECK(delta_o(Degrees::from_rate(0.5, 15)) > 0.1);

    // grows without bound as delta_l shrinks
    int previous = 0;
    for (double dl : {0.01, 1e-3, 1e-4, 1e-6, 1e-8}) {
        const int km = k_min_for_delta(dl, 0.5);
        CHECK(km > previous);
        previous = km;
    }
    CHECK(previous > 25);
    CHECK_THROWS_AS(k_min_for_delta(0.2, 0.5), ValidationError);
}

TEST_CASE("w_ub structure") {
    const Degrees deg{4, 8};
    CHECK(w_ub(deg, 0.0) <= 0.0);
    // the proof's direction: heavier weights grow no faster than their complements
    for (int i = 0; i <= 100; ++i) {
        const double a = 0.5 * i / 100;
        CHECK(w_ub(deg, 1.0 - a) <= w_ub(deg, a) + 1e-9);
    }
    // b = 1/2 is always admissible, so w_ub never drops below the random-coding curve
    for (double a : {0.0, 0.1, 0.3, 0.5, 0.8, 1.0})
        CHECK(w_ub(deg, a) >= binary_entropy(a) - 0.5 * kLn2 - 1e-12);
    const auto dp = delta_prime(deg);
    REQUIRE(dp.has_value());
    for (int i = 1; i <= 50; ++i) {
        const double a = *dp + (0.5 - *dp) * i / 50;
        CHECK(w_ub(deg, a) <= binary_entropy(a) - 0.5 * kLn2 + 1e-9);
    }
}

TEST_CASE("guaranteed rate and delta_prime") {
    CHECK(guaranteed_rate({4, 8}) == 0.5);
    CHECK(guaranteed_rate({2, 4}) <= 0.5);

    const auto dp = delta_prime({4, 8});
    REQUIRE(dp.has_value());
    const double gv = entropy_inverse(0.5 * kLn2);
    CHECK(*dp > 0);
    CHECK(*dp < gv);
    CHECK(w_ub({4, 8}, *dp * 0.99) < 0);
    CHECK(std::fabs(w_ub({4, 8}, *dp)) < 1e-7);

    for (int j = 3; j <= 6; ++j) {
        const Degrees deg(j, 2 * j);
        const auto d = delta_prime(deg);
        REQUIRE(d.has_value());
        CHECK(*d <= entropy_inverse((1.0 - guaranteed_rate(deg)) * kLn2) + 1e-10);
        CHECK(guaranteed_rate(deg) == deg.outer_rate());
    }
}

TEST_CASE("graphical complexity") {
    CHECK(graphical_complexity({4, 8}) == doctest::Approx(26.0).epsilon(1e-14));
    // edge count of a sampled (n, 4, 8) concatenated code per information bit
    const long n = 512;
    const auto inst = sim::sample_concatenated({n, 4, 8}, 11);
    const double edges = static_cast<double>(inst.edge_count() + inst.outer.cancelled_entries() +
                                             inst.inner.cancelled_entries());
    CHECK(edges == static_cast<double>(n * (4 + 8) + n));
    CHECK(edges / (0.5 * n) == doctest::Approx(graphical_complexity({4, 8})));
}

TEST_CASE("Bhattacharyya parameter") {
    CHECK(bhattacharyya(Channel::bec(0.3)) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(bhattacharyya(Channel::bsc(0.0)) == 0.0);
    CHECK(bhattacharyya(Channel::bsc(0.5)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bhattacharyya(Channel::bsc(0.1)) == doctest::Approx(2 * std::sqrt(0.09)).epsilon(1e-15));
    CHECK_THROWS_AS(bhattacharyya(Channel::bec(1.2)), ValidationError);
}

TEST_CASE("random coding exponent") {
    // BEC: E_0(rho) = -ln(q + (1-q) 2^-rho); at rate 0 the best rho is 1
    const double q = 0.3;
    CHECK(gallager_e0(Channel::bec(q), 1.0) == doctest::Approx(-std::log(q + (1 - q) / 2)).epsilon(1e-14));
    CHECK(random_coding_exponent(Channel::bec(q), 0.0) == doctest::Approx(-std::log(q + (1 - q) / 2)).epsilon(1e-9));
    CHECK(random_coding_exponent(Channel::bec(q), 1 - q) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(random_coding_exponent(Channel::bec(q), 0.3) > random_coding_exponent(Channel::bec(q), 0.5));
}

TEST_CASE("ML union bound") {
    const auto noiseless = ml_union_bound({128, 4, 8}, Channel::bsc(0.0));
    CHECK(noiseless.term1 == 0.0);

    const auto b128 = ml_union_bound({128, 4, 8}, Channel::bec(0.4));
    const auto b256 = ml_union_bound({256, 4, 8}, Channel::bec(0.4));
    CHECK(b128.bhattacharyya == doctest::Approx(0.4));
    CHECK(b256.term1 < b128.term1);

    const auto b512 = ml_union_bound({512, 4, 8}, Channel::bec(0.4));
    CHECK(b512.spectrum_excess <= 0.01);
    CHECK(b512.term2.has_value());
}

TEST_CASE("Theorem 1 certificate ingredients") {
    const Degrees deg{4, 8};
    const auto c = theorem1_certificate(deg, 0.05, 200);
    CHECK(c.curvature_value == doctest::Approx(8 * 8 * 7 * std::pow(0.9, 6)).epsilon(1e-12));
    CHECK(c.curvature_value > 4);
    CHECK_FALSE(c.curvature_ok);
    // k = 64 does not yet pass; the first passing k is 95
    CHECK(curvature_condition(64, 0.05) > 4);
    CHECK(curvature_condition(94, 0.05) >= 4);
    CHECK(curvature_condition(95, 0.05) < 4);
    CHECK(c.curvature_k == 95);
    // f(1/2) = w_o(1/2) - ln 2 = (R_o - 1) ln 2 exactly meets the limit
    CHECK(concat_exponent(deg, 0.0, 0.5) == doctest::Approx(-0.5 * kLn2).epsilon(1e-12));
    CHECK(c.exponent_limit == doctest::Approx(-0.5 * kLn2).epsilon(1e-15));
    CHECK_THROWS_AS(theorem1_certificate(deg, 0.05, 50), ValidationError);
}
