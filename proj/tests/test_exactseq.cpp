#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlwb/exactseq.hpp"

using namespace qlwb;

namespace {
FgAbGroup G(const char* s) { return FgAbGroup::parse(s); }
}  // namespace

TEST_CASE("middle of short exact sequence") {
    auto a = middle_of_short_exact(G("0"), G("Z^2 + Z/3"));
    REQUIRE(a.resolved);
    CHECK(*a.resolved == G("Z^2 + Z/3"));
    CHECK_FALSE(a.ambiguous);

    auto b = middle_of_short_exact(G("(Z/2)^13"), G("Z/2"));
    REQUIRE(b.resolved);
    CHECK(*b.resolved == G("(Z/2)^14"));
    CHECK(b.ambiguous);
    CHECK(b.str() == "(Z/2)^14 [extension-ambiguous]");

    auto c = middle_of_short_exact(G("Z"), G("Z/2"), SplitPolicy::refuse());
    CHECK_FALSE(c.resolved);
    CHECK(c.ambiguous);
    CHECK(c.rank() == 1);
    CHECK(c.torsion_order_bound() == 2);
    CHECK_FALSE(c.torsion_order_determined());
    CHECK_THROWS(c.group());
}

TEST_CASE("forced extensions") {
    CHECK(extension_forced(G("Z/3"), G("Z/2")));
    CHECK(extension_forced(G("Z/2"), G("Z")));
    CHECK_FALSE(extension_forced(G("Z"), G("Z/2")));
    CHECK_FALSE(extension_forced(G("Z/2"), G("Z/4")));
    auto f = middle_of_short_exact(G("Z/3"), G("Z/2"), SplitPolicy::refuse());
    REQUIRE(f.resolved);
    CHECK(*f.resolved == G("Z/6"));
    CHECK_FALSE(f.ambiguous);
}

TEST_CASE("catalog override is checked against the forced invariants") {
    auto nonsplit = middle_of_short_exact(G("Z/2"), G("Z/2"), SplitPolicy::override_with(G("Z/4"), "cited"));
    REQUIRE(nonsplit.resolved);
    CHECK(*nonsplit.resolved == G("Z/4"));
    CHECK(nonsplit.citation == "cited");
    CHECK_THROWS(middle_of_short_exact(G("Z/2"), G("Z/2"), SplitPolicy::override_with(G("Z/8"), "bad")));
    CHECK_THROWS(middle_of_short_exact(G("Z/2"), G("Z/2"), SplitPolicy::override_with(G("Z"), "bad")));
    // Z by Z/2: both Z and Z + Z/2 occur
    auto z = middle_of_short_exact(G("Z"), G("Z/2"), SplitPolicy::override_with(G("Z"), "nonsplit"));
    CHECK(*z.resolved == G("Z"));
}

TEST_CASE("sheaf universal coefficients") {
    CHECK(*sheaf_uct(G("0"), G("Z/2"), 2).resolved == G("Z/2"));
    CHECK(*sheaf_uct(G("Z^7"), G("0"), 5).resolved == G("(Z/5)^7"));
    // H^1(H^2(Z/m)) of a surface with irregularity q
    for (int q = 1; q <= 4; ++q)
        for (long m : {2L, 3L, 12L})
            CHECK(*sheaf_uct(FgAbGroup::free(2 * q), G("Z"), m).resolved == power(FgAbGroup::cyclic(m), 2 * q));
}

TEST_CASE("H^1(H^4) from the 4-fold flags") {
    CHECK(h1h4_from_flags(true, true, G("0")).is_zero());
    CHECK(h1h4_from_flags(false, true, G("Z")).is_nonzero());
    CHECK(h1h4_from_flags(std::nullopt, true, G("Z")).is_undetermined());
    CHECK(h1h4_from_flags(true, false, G("0")).is_nonzero());
    // H^5 = 0 makes N^2H^5 = H^5 automatic
    CHECK(h1h4_from_flags(std::nullopt, true, G("0")).is_zero());
    CHECK(h1h4_from_flags(true, std::nullopt, G("0")).is_undetermined());
    auto w = h1h4_from_flags(false, true, G("Z^2"), G("Z/3"));
    REQUIRE(w.witness());
    CHECK(*w.witness() == G("Z/3"));
}

TEST_CASE("TriState") {
    CHECK_THROWS(TriState::nonzero(G("0")));
    CHECK(TriState::nonzero(G("Z/2")).order_lower_bound() == 2);
    CHECK(tri_or(TriState::zero(), TriState::zero()).is_zero());
    CHECK(tri_or(TriState::zero(), TriState::nonzero(G("Z"))).is_nonzero());
    CHECK(tri_or(TriState::undetermined("x"), TriState::zero()).is_undetermined());
    CHECK(tri_or(TriState::undetermined("x"), TriState::nonzero(G("Z"))).is_nonzero());
}
