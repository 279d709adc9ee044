#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <Eigen/Dense>

#include "spb/spectra.hpp"

using spb::GrassmannIndex;
using spb::Int;
using spb::PolarizationData;
using spb::Rat;
using spb::Space;

TEST_CASE("abelian spectrum rows") {
    auto t = spb::abelian_spectrum(1, Rat(3), PolarizationData{{2}}, 2);
    REQUIRE(t.rows.size() == 3);
    for (int q = 0; q <= 2; ++q) {
        REQUIRE(t.rows[q].q == q);
        REQUIRE(t.rows[q].eigenvalue == Rat(3 * q));
        REQUIRE(t.rows[q].multiplicity == Int(2));
    }
    auto t2 = spb::abelian_spectrum(2, Rat(1), PolarizationData{{1, 2}}, 2);
    REQUIRE(t2.rows[2].eigenvalue == Rat(2));
    REQUIRE(t2.rows[2].multiplicity == Int(6));
}

TEST_CASE("abelian dual ladder eigenvalues") {
    auto t = spb::abelian_spectrum(1, Rat(3), PolarizationData{{1}}, 2, 2);
    REQUIRE(t.rows[0].eigenvalue == Rat(9));  // (0+1+2)*3
    REQUIRE_FALSE(t.rows[0].multiplicity.has_value());
}

TEST_CASE("abelian input validation") {
    REQUIRE_THROWS_AS(
        spb::abelian_spectrum(2, Rat(1), PolarizationData{{2, 3}}, 1),
        std::invalid_argument);
    REQUIRE_THROWS_AS(
        spb::abelian_spectrum(1, Rat(0), PolarizationData{{1}}, 1),
        std::invalid_argument);
}

TEST_CASE("abelian multiplicity is constant across levels when n = 1") {
    for (int d = 1; d <= 4; ++d) {
        auto t = spb::abelian_spectrum(1, Rat(7, 2), PolarizationData{{d}}, 6);
        for (const auto& row : t.rows) REQUIRE(row.multiplicity == Int(d));
    }
}

TEST_CASE("projective space spectrum rows") {
    auto t = spb::pn_spectrum(1, 3, 1);
    REQUIRE(t.rows[0].eigenvalue == Rat(0));
    REQUIRE(t.rows[0].multiplicity == Int(4));
    REQUIRE(t.rows[1].eigenvalue == Rat(5));
    REQUIRE(t.rows[1].multiplicity == Int(6));
    auto t2 = spb::pn_spectrum(2, 1, 2);
    REQUIRE(t2.rows[2].eigenvalue == Rat(10));
    REQUIRE(t2.rows[2].multiplicity == Int(42));
}

TEST_CASE("level difference constants") {
    REQUIRE(spb::intermediate_eigenvalue(1, 2, 2, 0) == Rat(10));
    REQUIRE(spb::intermediate_eigenvalue(1, 2, 2, 1) == Rat(6));
    for (int n = 1; n <= 3; ++n)
        for (int q = 0; q <= 5; ++q)
            REQUIRE(spb::intermediate_eigenvalue(n, 4, q, q) == Rat(0));
    REQUIRE_THROWS_AS(spb::intermediate_eigenvalue(1, 2, 1, 2),
                      std::invalid_argument);
}

TEST_CASE("telescoping of level differences") {
    for (int n = 1; n <= 3; ++n)
        for (int B = 1; B <= 4; ++B)
            for (int q = 0; q <= 12; ++q)
                for (int k = 0; k <= q; ++k) {
                    Rat sum(0);
                    for (int l = k; l < q; ++l)
                        sum += spb::intermediate_eigenvalue(n, B, l + 1, l);
                    REQUIRE(sum == spb::intermediate_eigenvalue(n, B, q, k));
                }
}

TEST_CASE("spectrum eigenvalues equal the k = 0 difference constants") {
    for (int n = 1; n <= 3; ++n)
        for (int B = 1; B <= 3; ++B) {
            auto t = spb::pn_spectrum(n, B, 5);
            for (const auto& row : t.rows)
                REQUIRE(row.eigenvalue ==
                        spb::intermediate_eigenvalue(n, B, row.q, 0));
        }
}

TEST_CASE("multiplicity closed form on the projective line") {
    for (int B = 1; B <= 10; ++B) {
        auto t = spb::pn_spectrum(1, B, 10);
        for (const auto& row : t.rows)
            REQUIRE(row.multiplicity == Int(B + 2 * row.q + 1));
    }
}

TEST_CASE("dual ladder on the projective line") {
    auto t = spb::pn_dual_ladder(1, 2, 0, 1);
    REQUIRE(t.rows.size() == 2);
    REQUIRE(t.rows[1].eigenvalue == Rat(2));
    auto t2 = spb::pn_dual_ladder(1, 2, 0, 5);
    REQUIRE(t2.rows.size() == 3);  // steps 0, 1, 2; the section dies after
    REQUIRE(t2.rows[2].eigenvalue == Rat(0));
    REQUIRE(t2.rows[2].flags ==
            std::vector<std::string>{"anti-holomorphic"});
}

TEST_CASE("ladder round-trip constants") {
    REQUIRE(spb::ladder_constant(Space::AbelianVariety, 1, Rat(2), 3) ==
            Rat(48));
    REQUIRE(spb::ladder_constant(Space::ProjectiveSpace, 1, Rat(2), 2) ==
            Rat(60));
    REQUIRE(spb::ladder_constant(Space::AbelianVariety, 1, Rat(5), 0) ==
            Rat(1));
    REQUIRE(spb::ladder_constant(Space::ProjectiveSpace, 2, Rat(7), 0) ==
            Rat(1));
    REQUIRE_THROWS_AS(spb::ladder_constant(Space::Grassmannian, 2, Rat(1), 1),
                      std::invalid_argument);
}

TEST_CASE("Grassmannian eigenvalue pair") {
    REQUIRE(spb::grassmann_eigenvalues(2, 2, -1) ==
            std::pair<Rat, Rat>{Rat(0), Rat(5)});
    REQUIRE(spb::grassmann_eigenvalues(3, 1, -2) ==
            std::pair<Rat, Rat>{Rat(0), Rat(6)});
    REQUIRE(spb::grassmann_eigenvalues(1, 1, -1) ==
            std::pair<Rat, Rat>{Rat(0), Rat(3)});
    REQUIRE_THROWS_AS(spb::grassmann_eigenvalues(2, 2, 0),
                      std::invalid_argument);
}

TEST_CASE("Grassmannian curvature single values") {
    GrassmannIndex e11{1, 1}, e12{1, 2}, e22{2, 2};
    REQUIRE(spb::grassmann_curvature(2, 2, e11, e11, e11, e11) == 2);
    REQUIRE(spb::grassmann_curvature(2, 2, e11, e11, e22, e22) == 0);
    REQUIRE(spb::grassmann_curvature(2, 2, e11, e11, e12, e12) == 1);
    REQUIRE_THROWS_AS(
        spb::grassmann_curvature(2, 2, e11, e11, e11, GrassmannIndex{3, 1}),
        std::invalid_argument);
}

TEST_CASE("Grassmannian rectangle tuples carry curvature 1") {
    // Pairwise distinct directions with matched rows/columns do not
    // vanish; the vanishing patterns must not claim otherwise.
    GrassmannIndex I{1, 1}, J{1, 2}, K{2, 2}, L{2, 1};
    REQUIRE(spb::grassmann_curvature(2, 2, I, J, K, L) == 1);
}

TEST_CASE("Grassmannian structure scan") {
    for (int mu = 1; mu <= 5; ++mu)
        for (int nu = 1; nu <= 5; ++nu) {
            auto rep = spb::grassmann_structure_check(mu, nu);
            REQUIRE(rep.pass());
            REQUIRE(rep.nullity == (mu - 1) * (nu - 1));
        }
    REQUIRE(spb::grassmann_structure_check(2, 2).nullity == 1);
    REQUIRE(spb::grassmann_structure_check(3, 2).nullity == 2);
    REQUIRE(spb::grassmann_structure_check(1, 4).nullity == 0);
    REQUIRE_THROWS_AS(spb::grassmann_structure_check(6, 2),
                      std::invalid_argument);
}

TEST_CASE("spectral bundle curvature coefficients") {
    using Mat = std::vector<std::vector<Rat>>;
    auto r1 = spb::spectral_bundle_curvature(Mat{{Rat(5)}},
                                             PolarizationData{{3}}, 1, 2);
    REQUIRE(r1.coefficient_over_pi[0][0] == Rat(-5));
    REQUIRE(r1.rank == Int(3));

    Mat id{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    auto r2 = spb::spectral_bundle_curvature(id, PolarizationData{{1, 2}}, 2, 1);
    REQUIRE(r2.coefficient_over_pi[0][0] == Rat(-1, 4));
    REQUIRE(r2.coefficient_over_pi[1][1] == Rat(-1));
    REQUIRE(r2.coefficient_over_pi[0][1] == Rat(0));
    REQUIRE(r2.rank == Int(4));

    auto r0 = spb::spectral_bundle_curvature(id, PolarizationData{{1, 2}}, 2, 0);
    REQUIRE(r0.rank == Int(2));

    Mat bad{{Rat(1), Rat(2)}, {Rat(3), Rat(1)}};
    REQUIRE_THROWS_AS(
        spb::spectral_bundle_curvature(bad, PolarizationData{{1, 2}}, 2, 0),
        std::invalid_argument);
}

TEST_CASE("coefficient matrix is negative semidefinite for positive W") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + trial % 2;
        Eigen::MatrixXd A(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) A(a, b) = entry(rng);
        Eigen::MatrixXd Wd = A.transpose() * A;  // positive semidefinite
        std::vector<std::vector<Rat>> W(n, std::vector<Rat>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                W[a][b] = Rat(static_cast<long long>(Wd(a, b)));
        PolarizationData pol;
        pol.delta = (n == 2) ? std::vector<int>{1, 2}
                             : std::vector<int>{1, 2, 4};
        auto rep = spb::spectral_bundle_curvature(W, pol, n, 1);
        Eigen::MatrixXd C(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                C(a, b) = static_cast<double>(rep.coefficient_over_pi[a][b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
        for (int a = 0; a < n; ++a)
            REQUIRE(es.eigenvalues()(a) <= 1e-12);
    }
}
