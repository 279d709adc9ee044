#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spb/charclass.hpp"

using spb::binomial;
using spb::CohomologyClass;
using spb::Int;
using spb::Rat;

namespace {

/// Independent section count from the Euler sequence: the twisted
/// symmetric powers of the tangent bundle sit in
/// 0 -> Sym^{q-1}E(B) -> Sym^q E(B) -> Sym^q T(B) -> 0 with E a sum of
/// n+1 hyperplane bundles, and higher cohomology vanishes for B >= 1.
Int euler_sequence_count(int n, int B, int q) {
    auto c = [](int a, int b) { return binomial(Int(a), static_cast<unsigned>(b)); };
    Int plus = c(n + q, n) * c(q + B + n, n);
    Int minus = (q >= 1) ? c(n + q - 1, n) * c(q - 1 + B + n, n) : Int(0);
    return plus - minus;
}

}  // namespace

TEST_CASE("power sums of tangent Chern roots") {
    auto d1 = spb::chern_power_sums(1, 3);
    REQUIRE(d1.power_sums == std::vector<Int>{2, 4, 8});
    auto d2 = spb::chern_power_sums(2, 2);
    REQUIRE(d2.power_sums[0] == 3);
    REQUIRE(d2.power_sums[1] == 3);
    REQUIRE_THROWS_AS(spb::chern_power_sums(0, 1), std::invalid_argument);
}

TEST_CASE("Newton round trip recovers elementary symmetric values") {
    for (int n = 1; n <= 8; ++n) {
        auto data = spb::chern_power_sums(n, n);
        auto e = spb::elementary_from_power_sums(data.power_sums, n);
        for (int i = 1; i <= n; ++i)
            REQUIRE(e[i] == Rat(binomial(Int(n + 1), static_cast<unsigned>(i))));
    }
}

TEST_CASE("truncated ring is commutative and associative") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 7);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + trial % 4;
        auto rand_class = [&]() {
            CohomologyClass c(n);
            for (int i = 0; i <= n; ++i) c[i] = Rat(num(rng), den(rng));
            return c;
        };
        CohomologyClass a = rand_class(), b = rand_class(), c = rand_class();
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
    }
}

TEST_CASE("Todd class coefficients") {
    auto td1 = spb::todd_class(1);
    REQUIRE(td1.coeffs == std::vector<Rat>{1, 1});
    auto td2 = spb::todd_class(2);
    REQUIRE(td2.coeffs == std::vector<Rat>{1, Rat(3, 2), 1});
    auto td3 = spb::todd_class(3);
    REQUIRE(td3.coeffs == std::vector<Rat>{1, 2, Rat(11, 6), 1});
    for (int n = 1; n <= 8; ++n) REQUIRE(spb::todd_class(n)[0] == 1);
}

TEST_CASE("Chern character of symmetric powers on the projective plane") {
    REQUIRE(spb::ch_sym_power(2, 0).coeffs == std::vector<Rat>{1, 0, 0});
    REQUIRE(spb::ch_sym_power(2, 1).coeffs ==
            std::vector<Rat>{2, 3, Rat(3, 2)});
    REQUIRE(spb::ch_sym_power(2, 2).coeffs ==
            std::vector<Rat>{3, 9, Rat(21, 2)});
    REQUIRE(spb::ch_sym_power(2, 3).coeffs == std::vector<Rat>{4, 18, 33});
}

TEST_CASE("symmetric power rank equals the degree-0 coefficient") {
    for (int n = 1; n <= 5; ++n)
        for (int q = 0; q <= 8; ++q)
            REQUIRE(spb::ch_sym_power(n, q)[0] ==
                    Rat(binomial(Int(n + q - 1), static_cast<unsigned>(q))));
}

TEST_CASE("exact section counts: pinned examples") {
    REQUIRE(spb::hrr_dimension(2, 1, 1) == 15);
    REQUIRE(spb::hrr_dimension(1, 3, 2) == 8);
    REQUIRE(spb::hrr_dimension(3, 1, 0) == 4);
    REQUIRE_THROWS_AS(spb::hrr_dimension(2, 0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(spb::hrr_dimension(2, 1, -1), std::invalid_argument);
}

TEST_CASE("exact section counts match the Euler-sequence oracle") {
    for (int n = 1; n <= 4; ++n)
        for (int B = 1; B <= 6; ++B)
            for (int q = 0; q <= 5; ++q)
                REQUIRE(spb::hrr_dimension(n, B, q) ==
                        euler_sequence_count(n, B, q));
}

TEST_CASE("untwisted counts are plain binomials") {
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 20; ++k)
            REQUIRE(spb::hrr_dimension(n, k, 0) ==
                    binomial(Int(k + n), static_cast<unsigned>(n)));
}

TEST_CASE("closed-form complex evaluation") {
    auto [v1, r1] = spb::closed_form_dimension(1, 3, 2);
    REQUIRE(v1 == 8);
    REQUIRE(r1 < 1e-6);
    auto [v2, r2] = spb::closed_form_dimension(2, 1, 2);
    REQUIRE(v2 == 42);
    REQUIRE(r2 < 1e-6);
    for (int n = 1; n <= 5; ++n)
        for (int B = 1; B <= 4; ++B) {
            auto [v, r] = spb::closed_form_dimension(n, B, 0);
            REQUIRE(v == binomial(Int(B + n), static_cast<unsigned>(n)));
            REQUIRE(r < 1e-12);
        }
}

TEST_CASE("projective plane polynomial formula") {
    REQUIRE(spb::p2_closed_form(1, 0) == 3);
    REQUIRE(spb::p2_closed_form(1, 1) == 15);
    REQUIRE(spb::p2_closed_form(2, 1) == 24);
}

TEST_CASE("three-way agreement on a sample grid") {
    for (int n = 1; n <= 3; ++n)
        for (int B = 1; B <= 5; ++B)
            for (int q = 0; q <= 4; ++q) {
                auto report = spb::make_dimension_report(n, B, q);
                REQUIRE(report.agree());
                REQUIRE(report.exact_hrr > 0);
            }
}

TEST_CASE("binomial polynomial identity in exact rationals") {
    for (int n = 1; n <= 8; ++n) REQUIRE(spb::binom_poly_identity_check(n));
    REQUIRE_THROWS_AS(spb::binom_poly_identity_check(9), std::invalid_argument);
}
