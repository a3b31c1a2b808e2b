#include <catch2/catch_amalgamated.hpp>

#include "mfree/fock.hpp"
#include "mfree/partitions.hpp"

#include <cmath>

using namespace mfree;
using Catch::Approx;

namespace {

// deterministic unit vectors spread around the circle in the first two coordinates
OneParticleVector sweep_vector(int d, int i) {
    OneParticleVector f(static_cast<size_t>(d), 0.0);
    double theta = 0.61803398874989484 * 3.14159265358979324 * (i + 1);
    if (d == 1) {
        f[0] = 1.0;
    } else {
        f[0] = std::cos(theta);
        f[1] = std::sin(theta);
    }
    return f;
}

// deterministic full-space vector with pseudo-random entries
FockVector sweep_state(const FockSpace& sp, int seed) {
    FockVector v{std::vector<double>(sp.total_dim(), 0.0)};
    for (size_t i = 0; i < v.data.size(); ++i)
        v.data[i] = std::sin(0.7 * static_cast<double>(i + 1) + 1.3 * seed);
    return v;
}

} // namespace

TEST_CASE("truncated space dimensions and grade layout") {
    FockSpace sp(2, 2);
    REQUIRE(sp.depth() == 2);
    REQUIRE(sp.particle_dim() == 2);
    REQUIRE(sp.total_dim() == 7); // 1 + 2 + 4
    REQUIRE(sp.grade_offset(0) == 0);
    REQUIRE(sp.grade_offset(1) == 1);
    REQUIRE(sp.grade_offset(2) == 3);
    REQUIRE(sp.grade_dim(0) == 1);
    REQUIRE(sp.grade_dim(1) == 2);
    REQUIRE(sp.grade_dim(2) == 4);

    FockSpace flat(0, 5);
    REQUIRE(flat.total_dim() == 1); // vacuum only

    REQUIRE_THROWS_AS(FockSpace(12, 2, 1000), resource_limit_error);
}

TEST_CASE("creation and annihilation act gradewise") {
    FockSpace sp(2, 2);
    OneParticleVector f{1.0, 0.0}, g{0.6, 0.8};

    auto zero = annihilate(sp, f, vacuum(sp));
    for (double x : zero.data) REQUIRE(x == 0.0);

    // a(f) a*(g) Omega = <f, g> Omega
    auto w = annihilate(sp, f, create(sp, g, vacuum(sp)));
    REQUIRE(w.data[0] == Approx(0.6));
    for (size_t i = 1; i < w.data.size(); ++i) REQUIRE(w.data[i] == 0.0);

    // creation beyond the top grade is annihilated by the truncation
    auto top = create(sp, f, create(sp, f, create(sp, f, vacuum(sp))));
    for (double x : top.data) REQUIRE(x == 0.0);

    // <Omega, a(f) a*(g) Omega> via the word interface
    OperatorWord word{{OpKind::annihilate, f}, {OpKind::create, g}};
    REQUIRE(vacuum_expectation(sp, word) == Approx(0.6));
}

TEST_CASE("creation and annihilation are mutually adjoint") {
    FockSpace sp(3, 2);
    for (int i = 0; i < 4; ++i) {
        OneParticleVector f = sweep_vector(2, i);
        FockVector u = sweep_state(sp, 2 * i), v = sweep_state(sp, 2 * i + 1);
        REQUIRE(dot(u, create(sp, f, v)) == Approx(dot(annihilate(sp, f, u), v)).epsilon(1e-12));
    }
}

TEST_CASE("vacuum expectation matches the pairing sum for every kind pattern") {
    for (int m = 0; m <= 3; ++m) {
        FockSpace sp(m, 2);
        for (int L = 1; L <= 6; ++L) {
            for (unsigned mask = 0; mask < (1u << L); ++mask) {
                OperatorWord w;
                for (int i = 0; i < L; ++i)
                    w.push_back({(mask >> i) & 1 ? OpKind::create : OpKind::annihilate,
                                 sweep_vector(2, i)});
                double lhs = vacuum_expectation(sp, w);
                double rhs = combinatorial_expectation(m, w);
                REQUIRE(lhs == Approx(rhs).margin(1e-12));
            }
        }
    }
    REQUIRE(combinatorial_expectation(2, OperatorWord{}) == 1.0);
    REQUIRE(combinatorial_expectation(0, OperatorWord{{OpKind::create, {1.0}},
                                                      {OpKind::annihilate, {1.0}}}) == 0.0);
}

TEST_CASE("hand values of small words") {
    // depth 2, d = 2: the nested pattern a(e1) a(e2) a*(e2) a*(e1)
    FockSpace sp2(2, 2);
    OneParticleVector e1{1.0, 0.0}, e2{0.0, 1.0};
    OperatorWord nested{{OpKind::annihilate, e1},
                        {OpKind::annihilate, e2},
                        {OpKind::create, e2},
                        {OpKind::create, e1}};
    REQUIRE(vacuum_expectation(sp2, nested) == Approx(1.0));
    // the same word dies at depth 1: its pairing is nested two deep
    FockSpace sp1(1, 2);
    REQUIRE(vacuum_expectation(sp1, nested) == Approx(0.0).margin(1e-15));
    REQUIRE(combinatorial_expectation(1, nested) == 0.0);
}

TEST_CASE("field moments reproduce depth-filtered pair counts") {
    for (int m = 1; m <= 3; ++m) {
        FockSpace sp(m, 2);
        auto mom = field_moments(sp, OneParticleVector{0.6, 0.8}, 10);
        for (int n = 0; n <= 10; ++n)
            REQUIRE(mom[static_cast<size_t>(n)] ==
                    Approx(to_double(count_nc_pair(n, m))).margin(1e-10));
    }
    FockSpace sp(2, 2);
    REQUIRE_THROWS_AS(field_moments(sp, OneParticleVector{0.6, 0.7}, 4), std::invalid_argument);
}

TEST_CASE("operator matrices at the smallest size") {
    FockSpace sp(1, 1);
    OneParticleVector f{1.0};
    auto cm = operator_matrix(sp, OpKind::create, f);
    auto am = operator_matrix(sp, OpKind::annihilate, f);
    REQUIRE(cm == std::vector<std::vector<double>>{{0.0, 0.0}, {1.0, 0.0}});
    REQUIRE(am == std::vector<std::vector<double>>{{0.0, 1.0}, {0.0, 0.0}});
    REQUIRE_THROWS_AS(operator_matrix(FockSpace(3, 2), OpKind::create, OneParticleVector{1.0, 0.0}, 4),
                      resource_limit_error);
}
