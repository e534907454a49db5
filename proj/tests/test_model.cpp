#include <doctest.h>

#include "omspec/errors.hpp"
#include "omspec/model.hpp"

using namespace omspec;

TEST_CASE("flat_index layout") {
    CHECK(flat_index({Branch::AtomExcited, 0}, 10) == 0);
    CHECK(flat_index({Branch::PhotonInCavity, 0}, 10) == 11);
    CHECK(flat_index({Branch::PhotonInCavity, 10}, 10) == 21);
    CHECK_THROWS_AS(flat_index({Branch::AtomExcited, 11}, 10), IndexError);
    CHECK_THROWS_AS(flat_index({Branch::PhotonInCavity, -1}, 10), IndexError);
    CHECK_THROWS_AS(basis_index(22, 10), IndexError);
}

TEST_CASE("flat_index is a bijection with basis_index as inverse") {
    for (int m_max = 0; m_max <= 12; ++m_max) {
        std::vector<bool> seen(2 * static_cast<std::size_t>(m_max + 1), false);
        for (Branch b : {Branch::AtomExcited, Branch::PhotonInCavity}) {
            for (int m = 0; m <= m_max; ++m) {
                const BasisIndex x{b, m};
                const std::size_t i = flat_index(x, m_max);
                REQUIRE(i < seen.size());
                CHECK_FALSE(seen[i]);
                seen[i] = true;
                CHECK(basis_index(i, m_max) == x);
            }
        }
    }
}

TEST_CASE("initial states") {
    SystemParams p;
    p.m_max = 10;
    const PureState a = make_initial_state({Branch::AtomExcited, 0}, p);
    CHECK(a.amps.size() == 22);
    CHECK(a.amps(0) == cplx(1.0, 0.0));
    CHECK(a.amps.tail(21).squaredNorm() == 0.0);
    CHECK(a.time == 0.0);

    p.m_max = 1;
    const PureState b = make_initial_state({Branch::PhotonInCavity, 0}, p);
    CHECK(b.amps(2) == cplx(1.0, 0.0));
    CHECK(b.norm_squared() == 1.0);

    p.m_max = 2;
    CHECK_THROWS_AS(make_initial_state({Branch::AtomExcited, 3}, p), IndexError);

    for (int m0 = 0; m0 <= 2; ++m0) {
        CHECK(make_initial_state({Branch::PhotonInCavity, m0}, p).norm_squared() == 1.0);
    }
}

TEST_CASE("validate") {
    SystemParams fig2;  // defaults are the lossless strong-coupling set
    CHECK(validate(fig2).empty());

    SystemParams bad_cavity = fig2;
    bad_cavity.kappa = 2.0;
    const auto d = validate(bad_cavity);
    REQUIRE(d.size() == 1);
    CHECK(d[0].severity == Severity::Warning);
    CHECK(d[0].code == "good_cavity_violated");
    CHECK_FALSE(has_errors(d));

    SystemParams inert = fig2;
    inert.g_m = 1.0;
    inert.m_max = 0;
    CHECK(has_errors(validate(inert)));
    CHECK_THROWS_AS(require_valid(inert), InvalidParams);

    SystemParams negative = fig2;
    negative.gamma_a = -0.1;
    CHECK(has_errors(validate(negative)));

    SystemParams nan = fig2;
    nan.delta_a = std::nan("");
    CHECK(has_errors(validate(nan)));

    SystemParams hot = fig2;
    hot.gamma_m = 1.0;
    hot.mbar = 0.6;
    const auto w = validate(hot);
    REQUIRE(w.size() == 1);
    CHECK(w[0].code == "weak_damping_violated");

    // pure: identical input, identical output
    const auto again = validate(hot);
    REQUIRE(again.size() == w.size());
    CHECK(again[0].message == w[0].message);
}
