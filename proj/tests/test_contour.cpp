#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "feastlab/contour.hpp"
#include "oracles.hpp"

using namespace feastlab;

TEST_CASE("gauss_legendre analytic rules") {
    auto r1 = gauss_legendre(1);
    CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    auto r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-14));

    auto r3 = gauss_legendre(3);
    CHECK(r3.nodes[0] == doctest::Approx(-std::sqrt(3.0 / 5.0)).epsilon(1e-14));
    CHECK(r3.nodes[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-14));
    CHECK(r3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(r3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
    CHECK(r3.weights[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("gauss_legendre weight sum and symmetry across supported range") {
    for (int n : {1, 2, 3, 5, 8, 16, 33, 64}) {
        auto rule = gauss_legendre(n);
        double sum = 0.0;
        for (double w : rule.weights) sum += w;
        CHECK(std::abs(sum - 2.0) <= 1e-14);
        for (int k = 0; k < n; ++k) {
            CHECK(rule.nodes[k] == doctest::Approx(-rule.nodes[n - 1 - k]).epsilon(1e-14));
            CHECK(rule.weights[k] == doctest::Approx(rule.weights[n - 1 - k]).epsilon(1e-14));
        }
    }
}

TEST_CASE("gauss_legendre rejects out-of-range n") {
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(65), std::invalid_argument);
}

TEST_CASE("build_contour_rule single-node rule on (-1,1)") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 1);
    REQUIRE(rule.num_points() == 1);
    CHECK(std::abs(rule.nodes[0] - std::complex<double>(0, 1)) <= 1e-15);
    CHECK(std::abs(rule.weights[0] - std::complex<double>(0, 1)) <= 1e-15);
}

TEST_CASE("build_contour_rule mapping arithmetic on (0,4), n_c=2") {
    auto rule = build_contour_rule(SearchInterval(0, 4), 2);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(std::abs(rule.nodes[k] - 2.0) - 2.0) <= 1e-14 * 2.0);
        CHECK(rule.nodes[k].imag() > 0.0);
    }
    double theta0 = std::arg(rule.nodes[0] - 2.0);
    double theta1 = std::arg(rule.nodes[1] - 2.0);
    CHECK(theta0 == doctest::Approx(0.5 * pi * (1.0 - 1.0 / std::sqrt(3.0))).epsilon(1e-14));
    CHECK(theta1 == doctest::Approx(0.5 * pi * (1.0 + 1.0 / std::sqrt(3.0))).epsilon(1e-14));
}

TEST_CASE("contour rule invariants: upper half-plane, circle, unit center value") {
    for (int nc : {1, 3, 8, 16}) {
        SearchInterval I(-2.5, 0.75);
        auto rule = build_contour_rule(I, nc);
        for (const auto& z : rule.nodes) {
            CHECK(z.imag() > 0.0);
            CHECK(std::abs(std::abs(z - I.center()) - I.radius()) <= 1e-14 * I.radius());
        }
        CHECK(std::abs(filter_value(rule, I.center()) - 1.0) <= 1e-14);
    }
}

TEST_CASE("filter symmetry about the center") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 8);
    for (double d : {0.1, 0.5, 0.93, 1.7, 12.0})
        CHECK(std::abs(filter_value(rule, d) - filter_value(rule, -d)) <= 1e-14);
}

TEST_CASE("filter endpoint value is near one half") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 8);
    CHECK(std::abs(filter_value(rule, 1.0) - 0.5) <= 0.05);
    // the exact half-contour integral gives the principal value 1/2 at endpoints
    CHECK(oracles::exact_circle_filter(SearchInterval(-1, 1), 0.999999) ==
          doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("filter decay far from the interval") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 8);
    CHECK(std::abs(filter_value(rule, 1000.0)) <= 1e-4);
    auto rule3 = build_contour_rule(SearchInterval(2, 6), 3);
    CHECK(std::abs(filter_value(rule3, 4.0 + 1000.0 * 2.0)) <= 1e-4);
}

TEST_CASE("filter plateau inside the middle half of the interval") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 8);
    for (int i = 0; i < 100; ++i) {
        double lambda = -0.5 + 1.0 * i / 99.0;
        CHECK(std::abs(filter_value(rule, lambda) - 1.0) <= 1e-3);
    }
}

TEST_CASE("n_c=16 filter matches the adaptive-integration oracle away from endpoints") {
    SearchInterval I(-1, 1);
    auto rule = build_contour_rule(I, 16);
    for (double lambda : {0.0, 0.2, -0.35, 0.49, 1.5, -1.8, 2.5, 4.0, -7.0}) {
        double exact = oracles::exact_circle_filter(I, lambda);
        CHECK(std::abs(filter_value(rule, lambda) - exact) <= 1e-6);
    }
}

TEST_CASE("filter_sweep samples and symmetry") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 8);
    auto sweep = filter_sweep(rule, -1, 1, 3);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[1].first == doctest::Approx(0.0));
    CHECK(sweep[1].second == doctest::Approx(1.0).epsilon(1e-14));

    auto sym = filter_sweep(rule, -3, 3, 61);
    for (std::size_t i = 0; i < sym.size(); ++i)
        CHECK(std::abs(sym[i].second - sym[sym.size() - 1 - i].second) <= 1e-14);

    CHECK_THROWS_AS(filter_sweep(rule, 1, -1, 10), std::invalid_argument);
    CHECK_THROWS_AS(filter_sweep(rule, -1, 1, 1), std::invalid_argument);
}

TEST_CASE("filter_sweep csv format") {
    auto rule = build_contour_rule(SearchInterval(-1, 1), 3);
    std::ostringstream os;
    write_filter_sweep_csv(os, filter_sweep(rule, -1, 1, 3));
    std::string text = os.str();
    CHECK(text.substr(0, 11) == "lambda,rho\n");
    char expected[80];
    std::snprintf(expected, sizeof(expected), "0,%.17g\n", filter_value(rule, 0.0));
    CHECK(text.find(expected) != std::string::npos);
}

TEST_CASE("predicted_rate regimes") {
    SearchInterval I(-1, 1);
    auto rule = build_contour_rule(I, 8);

    // sparse regime: next unwanted eigenvalue far outside
    std::vector<double> sparse{-0.5, 0.0, 0.5, 5.0, 9.0, 14.0};
    CHECK(predicted_rate(rule, sparse, 3) < 0.01);

    // dense regime: next unwanted eigenvalue hugging the boundary
    std::vector<double> dense{-0.5, 0.0, 0.5, 1.001, 1.002, 1.003};
    CHECK(predicted_rate(rule, dense, 4) > 0.9);
}

TEST_CASE("predicted_rate matches direct filter evaluation") {
    SearchInterval I(-1, 1);
    auto rule = build_contour_rule(I, 8);
    std::vector<double> spectrum{-0.7, 0.1, 0.6, 2.4};
    // m0 = 3: ranks 3 and 4 by descending rho are lambda=-0.7 and lambda=2.4
    double expected = filter_value(rule, 2.4) / filter_value(rule, -0.7);
    CHECK(predicted_rate(rule, spectrum, 3) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(predicted_rate(rule, spectrum, 4), std::invalid_argument);
    CHECK_THROWS_AS(predicted_rate(rule, spectrum, 0), std::invalid_argument);
}

TEST_CASE("external node lists are accepted, lower half-plane rejected") {
    SearchInterval I(-1, 1);
    auto base = build_contour_rule(I, 4);
    auto wrapped = contour_rule_from_nodes(I, base.nodes, base.weights);
    CHECK(filter_value(wrapped, 0.3) == filter_value(base, 0.3));

    auto bad_nodes = base.nodes;
    bad_nodes[0] = std::conj(bad_nodes[0]);
    CHECK_THROWS_AS(contour_rule_from_nodes(I, bad_nodes, base.weights),
                    std::invalid_argument);
}

TEST_CASE("SearchInterval rejects degenerate bounds") {
    CHECK_THROWS_AS(SearchInterval(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SearchInterval(2.0, -1.0), std::invalid_argument);
    SearchInterval I(-1, 1);
    CHECK(I.contains(0.0));
    CHECK_FALSE(I.contains(1.0));  // open interval
    CHECK_FALSE(I.contains(-1.0));
}
