#include <catch2/catch_amalgamated.hpp>

#include "mfree/measures.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace mfree;
using Catch::Approx;

TEST_CASE("DiscreteMeasure validation") {
    REQUIRE_NOTHROW(DiscreteMeasure{{-1.0, 1.0}, {0.5, 0.5}}.validate());
    REQUIRE_THROWS_AS((DiscreteMeasure{{1.0, -1.0}, {0.5, 0.5}}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((DiscreteMeasure{{0.0, 0.0}, {0.5, 0.5}}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((DiscreteMeasure{{-1.0, 1.0}, {0.7, 0.5}}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((DiscreteMeasure{{-1.0, 1.0}, {1.5, -0.5}}.validate()), std::invalid_argument);
    REQUIRE_THROWS_AS((DiscreteMeasure{{-1.0, 1.0}, {1.0}}.validate()), std::invalid_argument);
    REQUIRE(moment(DiscreteMeasure{{-1.0, 1.0}, {0.5, 0.5}}, 2) == Approx(1.0));
    REQUIRE_THROWS_AS(moment(DiscreteMeasure{}, -1), std::invalid_argument);
}

TEST_CASE("central-limit measures at small depth") {
    auto d0 = clt_measure(0);
    REQUIRE(d0.atoms.size() == 1);
    REQUIRE(d0.atoms[0] == Approx(0.0).margin(1e-15));
    REQUIRE(d0.weights[0] == Approx(1.0));

    auto d1 = clt_measure(1); // symmetric Bernoulli at +-1
    REQUIRE(d1.atoms.size() == 2);
    REQUIRE(d1.atoms[0] == Approx(-1.0));
    REQUIRE(d1.atoms[1] == Approx(1.0));
    REQUIRE(d1.weights[0] == Approx(0.5));
    REQUIRE(d1.weights[1] == Approx(0.5));

    auto d2 = clt_measure(2); // quarter / half / quarter at -sqrt2, 0, sqrt2
    REQUIRE(d2.atoms.size() == 3);
    REQUIRE(d2.atoms[0] == Approx(-std::sqrt(2.0)));
    REQUIRE(d2.atoms[1] == Approx(0.0).margin(1e-15));
    REQUIRE(d2.atoms[2] == Approx(std::sqrt(2.0)));
    REQUIRE(d2.weights[0] == Approx(0.25));
    REQUIRE(d2.weights[1] == Approx(0.5));
    REQUIRE(d2.weights[2] == Approx(0.25));

    REQUIRE_THROWS_AS(clt_measure(-1), std::invalid_argument);
}

TEST_CASE("central-limit moments match pair counts and saturate at Catalan") {
    for (int m = 0; m <= 6; ++m) {
        auto d = clt_measure(m);
        for (int n = 0; n <= 10; ++n)
            REQUIRE(moment(d, n) == Approx(to_double(count_nc_pair(n, m))).margin(1e-10));
    }
    for (int k = 0; k <= 5; ++k) {
        REQUIRE(wigner_moment(2 * k) == oracles::catalan(k));
        REQUIRE(wigner_moment(2 * k + 1) == 0);
        REQUIRE(moment(clt_measure(k + 3), 2 * k) ==
                Approx(to_double(wigner_moment(2 * k))).margin(1e-9));
    }
    REQUIRE_THROWS_AS(wigner_moment(-2), std::invalid_argument);
}

TEST_CASE("poisson measures at small depth against hand closed forms") {
    REQUIRE_THROWS_AS(poisson_measure(1, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(poisson_measure(1, -2.0), std::domain_error);
    REQUIRE_THROWS_AS(poisson_measure(-1, 1.0), std::invalid_argument);

    auto d0 = poisson_measure(0, 2.0); // point mass at zero regardless of lambda
    REQUIRE(d0.atoms == std::vector<double>{0.0});
    REQUIRE(d0.weights == std::vector<double>{1.0});

    for (double lam : {0.5, 1.0, 2.0}) {
        auto d1 = poisson_measure(1, lam);
        REQUIRE(d1.atoms.size() == 2);
        REQUIRE(d1.atoms[0] == Approx(0.0).margin(1e-15));
        REQUIRE(d1.atoms[1] == Approx(1.0 + lam));
        REQUIRE(d1.weights[0] == Approx(1.0 / (1.0 + lam)));
        REQUIRE(d1.weights[1] == Approx(lam / (1.0 + lam)));

        auto d2 = poisson_measure(2, lam);
        double s = std::sqrt(lam);
        REQUIRE(d2.atoms.size() == 3);
        REQUIRE(d2.atoms[0] == Approx(0.0).margin(1e-15));
        REQUIRE(d2.atoms[1] == Approx(1.0 - s + lam));
        REQUIRE(d2.atoms[2] == Approx(1.0 + s + lam));
        REQUIRE(d2.weights[0] == Approx(1.0 / (1.0 + lam + lam * lam)));
        REQUIRE(d2.weights[1] == Approx(lam / (2.0 * (1.0 - s + lam))));
        REQUIRE(d2.weights[2] == Approx(lam / (2.0 * (1.0 + s + lam))));
    }
}

TEST_CASE("poisson moments match depth-filtered block counts") {
    for (int m = 0; m <= 5; ++m) {
        for (double lam : {0.5, 1.0, 2.0}) {
            auto d = poisson_measure(m, lam);
            for (int n = 0; n <= 8; ++n) {
                double expected = n == 0 ? 1.0 : 0.0;
                for (int b = 1; b <= n; ++b)
                    expected += std::pow(lam, b) * to_double(count_nc(n, b, m));
                REQUIRE(moment(d, n) == Approx(expected).epsilon(1e-9).margin(1e-9));
            }
        }
    }
}

TEST_CASE("free poisson moments as the deep limit") {
    REQUIRE(free_poisson_moment(0, rational(1)) == 1);
    REQUIRE(free_poisson_moment(1, rational(1)) == 1);
    REQUIRE(free_poisson_moment(2, rational(1)) == 2);
    REQUIRE(free_poisson_moment(3, rational(1)) == 5);  // Catalan at lambda = 1
    REQUIRE(free_poisson_moment(4, rational(1)) == 14);
    // deep-enough depth-filtered measures agree with the free Poisson values
    for (int n = 0; n <= 6; ++n)
        REQUIRE(moment(poisson_measure(5, 0.5), n) ==
                Approx(to_double(free_poisson_moment(n, rational(1, 2)))).epsilon(1e-9).margin(1e-9));
}

TEST_CASE("tiny weights are dropped only when a drop report is requested") {
    std::vector<int> dropped;
    auto kept = poisson_measure(1, 1e-16, &dropped);
    REQUIRE(dropped == std::vector<int>{1}); // the nonzero atom underflows
    REQUIRE(kept.atoms == std::vector<double>{0.0});
    auto undropped = poisson_measure(1, 1e-16);
    REQUIRE(undropped.atoms.size() == 2); // kept by default
}

TEST_CASE("partial fractions recover atoms and weights from the transforms") {
    auto h = build_clt_hierarchy(4);
    for (int m = 0; m <= 4; ++m) {
        auto pf = partial_fractions(h.transforms[static_cast<size_t>(m)]);
        auto cf = clt_measure(m);
        REQUIRE(pf.atoms.size() == cf.atoms.size());
        for (size_t i = 0; i < cf.atoms.size(); ++i) {
            REQUIRE(pf.atoms[i] == Approx(cf.atoms[i]).margin(1e-9));
            REQUIRE(pf.weights[i] == Approx(cf.weights[i]).margin(1e-9));
        }
    }
    // Poisson side at lambda = 1, depth 1: atoms {0, 2}, weights {1/2, 1/2}
    auto hp = build_poisson_hierarchy(2);
    RatQ h1(eval_lambda(hp.transforms[1].num(), rational(1)),
            eval_lambda(hp.transforms[1].den(), rational(1)));
    auto pf1 = partial_fractions(h1);
    REQUIRE(pf1.atoms.size() == 2);
    REQUIRE(pf1.atoms[0] == Approx(0.0).margin(1e-12));
    REQUIRE(pf1.atoms[1] == Approx(2.0).margin(1e-12));
    REQUIRE(pf1.weights[0] == Approx(0.5).margin(1e-12));
    REQUIRE(pf1.weights[1] == Approx(0.5).margin(1e-12));
}

TEST_CASE("partial fractions reject improper input and repeated roots") {
    PolyQ z = PolyQ::monomial(1, 1);
    REQUIRE_THROWS_AS(partial_fractions(RatQ(z * z, z)), std::domain_error);
    // 1 / z^2 has a double root at zero
    REQUIRE_THROWS_AS(partial_fractions(RatQ(PolyQ(1), z * z)), decomposition_error);
    // complex pole pair: 1 / (z^2 + 1)
    REQUIRE_THROWS_AS(partial_fractions(RatQ(PolyQ(1), PolyQ(std::vector<rational>{1, 0, 1}))),
                      decomposition_error);
}

TEST_CASE("double formatting and the measure record are byte-deterministic") {
    REQUIRE(format_double(0.5) == "0.5");
    REQUIRE(format_double(1.0 / 3.0) == "0.33333333333333331");
    REQUIRE(format_double(-2.0) == "-2");
    DiscreteMeasure d{{-1.0, 1.0}, {0.5, 0.5}};
    REQUIRE(measure_json("clt", 1, std::nullopt, d) ==
            "{\"family\":\"clt\",\"m\":1,\"atoms\":[-1,1],\"weights\":[0.5,0.5]}");
    DiscreteMeasure p{{0.0, 2.0}, {0.5, 0.5}};
    REQUIRE(measure_json("poisson", 1, 1.0, p) ==
            "{\"family\":\"poisson\",\"m\":1,\"lambda\":1,\"atoms\":[0,2],\"weights\":[0.5,0.5]}");
    REQUIRE(measure_json("poisson", 2, 0.5, p) ==
            "{\"family\":\"poisson\",\"m\":2,\"lambda\":0.5,\"atoms\":[0,2],\"weights\":[0.5,0.5]}");
}
