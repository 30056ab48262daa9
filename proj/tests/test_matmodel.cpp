#include <doctest.h>

#include <cmath>

#include "feastlab/matmodel.hpp"
#include "oracles.hpp"

using namespace feastlab;

namespace {

SpectrumLayout sparse_benchmark_layout(std::uint64_t seed = 42) {
    return SpectrumLayout{545,
                          SearchInterval(-1, 1),
                          50,
                          SearchInterval(1.01, 20.81),
                          495,
                          Placement::uniform,
                          1,
                          0.0,
                          seed};
}

}  // namespace

TEST_CASE("layout validation rejects inconsistent prescriptions") {
    SpectrumLayout overlap{10, SearchInterval(-1, 1), 5, SearchInterval(0.5, 3), 5,
                           Placement::uniform, 1, 0.0, 1};
    CHECK_THROWS_AS(generate_spectrum(overlap), std::invalid_argument);

    SpectrumLayout bad_counts{10, SearchInterval(-1, 1), 5, SearchInterval(2, 3), 6,
                              Placement::uniform, 1, 0.0, 1};
    CHECK_THROWS_AS(generate_spectrum(bad_counts), std::invalid_argument);
}

TEST_CASE("uniform placement includes both endpoints") {
    SpectrumLayout tiny{2, SearchInterval(-1, 1), 2, SearchInterval(2, 3), 0,
                        Placement::uniform, 1, 0.0, 7};
    auto decomp = generate_spectrum(tiny);
    REQUIRE(decomp.values.size() == 2);
    CHECK(decomp.values[0] == -1.0);
    CHECK(decomp.values[1] == 1.0);
    CHECK((decomp.vectors.transpose() * decomp.vectors - Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("generated Q is orthogonal and seeded runs are bit-identical") {
    SpectrumLayout layout{24, SearchInterval(-1, 1), 6, SearchInterval(1.5, 9), 18,
                          Placement::uniform, 1, 0.0, 123};
    auto a = generate_spectrum(layout);
    auto b = generate_spectrum(layout);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
    CHECK((a.vectors.transpose() * a.vectors - Eigen::MatrixXd::Identity(24, 24))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
    for (int i = 1; i < 24; ++i) CHECK(a.values[i] >= a.values[i - 1]);

    layout.seed = 124;
    auto c = generate_spectrum(layout);
    CHECK(a.vectors != c.vectors);
}

TEST_CASE("assemble_matrix trivial cases") {
    EigenDecomposition diag;
    diag.values = Eigen::Vector2d(2, 5);
    diag.vectors = Eigen::Matrix2d::Identity();
    auto A = assemble_matrix(diag);
    CHECK(A(0, 0) == 2.0);
    CHECK(A(1, 1) == 5.0);
    CHECK(A(0, 1) == 0.0);

    EigenDecomposition rot;
    rot.values = Eigen::Vector2d(0, 2);
    double c = std::cos(std::acos(-1.0) / 4);
    rot.vectors.resize(2, 2);
    rot.vectors << c, c, c, -c;
    auto B = assemble_matrix(rot);
    CHECK(B(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(B(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(B(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
    auto eig = oracles::dense_eig(B.mat());
    CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("assembled spectrum matches the dense eigensolver oracle") {
    SpectrumLayout layout{8, SearchInterval(-1, 1), 3, SearchInterval(2, 4), 5,
                          Placement::uniform, 1, 0.0, 99};
    auto decomp = generate_spectrum(layout);
    auto A = assemble_matrix(decomp);
    auto eig = oracles::dense_eig(A.mat());
    for (int i = 0; i < 8; ++i)
        CHECK(std::abs(eig.values[i] - decomp.values[i]) <= 1e-12 * 4.0);
}

TEST_CASE("assembled spectrum oracle agreement at n = 64") {
    SpectrumLayout layout{64, SearchInterval(-3, -1), 20, SearchInterval(0, 50), 44,
                          Placement::uniform, 1, 0.0, 7};
    auto decomp = generate_spectrum(layout);
    auto A = assemble_matrix(decomp);
    auto eig = oracles::dense_eig(A.mat());
    double scale = decomp.values.cwiseAbs().maxCoeff();
    for (int i = 0; i < 64; ++i)
        CHECK(std::abs(eig.values[i] - decomp.values[i]) <= 1e-10 * scale);
}

TEST_CASE("clustered placement groups the outside eigenvalues") {
    SpectrumLayout layout{50, SearchInterval(-1, 1), 10, SearchInterval(2, 10), 40,
                          Placement::clustered, 4, 0.2, 5};
    auto decomp = generate_spectrum(layout);
    // every outside value falls within 0.1 of one of the four cluster centers
    double c_lo = 2.1, c_hi = 9.9;
    int in_clusters = 0;
    for (int i = 0; i < 50; ++i) {
        double v = decomp.values[i];
        if (v < 1.5) continue;
        for (int g = 0; g < 4; ++g) {
            double center = c_lo + (c_hi - c_lo) * g / 3.0;
            if (std::abs(v - center) <= 0.1 + 1e-12) {
                ++in_clusters;
                break;
            }
        }
    }
    CHECK(in_clusters == 40);
}

TEST_CASE("true_count_in_interval counts the open interval") {
    EigenDecomposition d;
    d.values.resize(4);
    d.values << -1.5, 0.0, 0.5, 2.0;
    d.vectors = Eigen::MatrixXd::Identity(4, 4);
    CHECK(true_count_in_interval(d, SearchInterval(-1, 1)) == 2);
    // values exactly on an endpoint are outside
    Eigen::VectorXd v(3);
    v << -1.0, 0.0, 1.0;
    d.values = v;
    d.vectors = Eigen::MatrixXd::Identity(3, 3);
    CHECK(true_count_in_interval(d, SearchInterval(-1, 1)) == 1);
}

TEST_CASE("benchmark layouts carry 50 eigenvalues across the search interval") {
    auto decomp = generate_spectrum(sparse_benchmark_layout());
    // uniform placement puts values exactly at -1 and 1; the open interval
    // excludes them, a hair of margin recovers the full inside group
    CHECK(true_count_in_interval(decomp, SearchInterval(-1, 1)) == 48);
    CHECK(true_count_in_interval(decomp, SearchInterval(-1.0001, 1.0001)) == 50);

    SpectrumLayout dense = sparse_benchmark_layout();
    dense.outside_interval = SearchInterval(1.01, 1.1);
    auto decomp_dense = generate_spectrum(dense);
    CHECK(true_count_in_interval(decomp_dense, SearchInterval(-1.0001, 1.0001)) == 50);
    CHECK(decomp_dense.values[545 - 1] == doctest::Approx(1.1));
}
