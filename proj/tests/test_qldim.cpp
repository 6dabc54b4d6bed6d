#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <algorithm>
#include <random>

using namespace qlwb;
using namespace qlwb::test;

namespace {

void check_exact(const QLResult& r, int n) {
    CHECK(r.lo == n);
    REQUIRE(r.hi);
    CHECK(*r.hi == n);
}

VarietyData with_flags(VarietyData v, auto f) {
    f(v.flags);
    return v;
}

VarietyData curve(int g) {
    VarietyData v;
    v.name = "curve";
    v.dim = 1;
    v.h_int = GradedAb({FgAbGroup::free(1), FgAbGroup::free(2 * g), FgAbGroup::free(1)});
    v.hodge = diamond(1, {{{0, 0}, 1}, {{0, 1}, g}});
    return v;
}

VarietyData abelian_surface() {
    VarietyData v;
    v.name = "abelian";
    v.dim = 2;
    v.h_int = H({"Z", "Z^4", "Z^6", "Z^4", "Z"});
    v.hodge = diamond(2, {{{0, 0}, 1}, {{0, 1}, 2}, {{0, 2}, 1}, {{1, 1}, 4}});
    v.validate();
    return v;
}

}  // namespace

TEST_CASE("surface criterion") {
    check_exact(qldim_surface(variety("enriques")), 2);
    check_exact(qldim_surface(variety("barlow")), 0);
    check_exact(qldim_surface(variety("dolgachev")), 0);
    check_exact(qldim_surface(variety("k3")), 2);
    check_exact(qldim_surface(abelian_surface()), 2);
    CHECK_THROWS(qldim_surface(variety("p3")));
}

TEST_CASE("rationally connected 3-fold criterion") {
    check_exact(qldim_3fold_rc(variety("artin-mumford")), 2);
    for (auto* f : {"fano-x14", "fano-v3", "fano-x10", "fano-ds4", "fano-v23", "fano-v6-11123", "fano-v222", "fano-v4",
                    "fano-ds6"}) {
        CAPTURE(f);
        check_exact(qldim_3fold_rc(variety(f)), 1);
    }
    check_exact(qldim_3fold_rc(variety("p3")), 0);
    check_exact(qldim_3fold_rc(variety("quadric-3fold")), 0);
}

TEST_CASE("rationally connected 4-fold criterion") {
    check_exact(qldim_4fold_rc(variety("cubic-4fold")), 2);
    check_exact(qldim_4fold_rc(variety("gm-4fold")), 2);
    check_exact(qldim_4fold_rc(variety("quartic-4fold-vg")), 2);
    auto s = qldim_4fold_rc(variety("schreieder-4fold"));
    CHECK(s.lo == 3);
    // (b) only gives the lower bound; the conic bundle rule closes it
    check_exact(combine(variety("schreieder-4fold"), {}), 3);
}

TEST_CASE("hodge lower bound") {
    for (int g = 1; g <= 4; ++g) {
        auto c = rule_hodge_lower(curve(g));
        REQUIRE(c);
        CHECK(*c->lo == 1);
    }
    CHECK_FALSE(rule_hodge_lower(curve(0)));
    CHECK(*rule_hodge_lower(variety("k3"))->lo == 2);
    CHECK(*rule_hodge_lower(abelian_surface())->lo == 2);
    CHECK_FALSE(rule_hodge_lower(variety("enriques")));
}

TEST_CASE("rational and conic bundle upper bounds") {
    auto r4 = with_flags(variety("cubic-4fold"), [](Flags& f) { f.rational = true; });
    CHECK(*rule_rational_upper(r4)->hi == 2);
    CHECK(*rule_rational_upper(variety("p2"))->hi == 0);
    CHECK_FALSE(rule_rational_upper(variety("enriques")));
    CHECK(*rule_conic_upper(variety("cubic-4fold"))->hi == 3);
    CHECK(*rule_conic_upper(variety("schreieder-4fold"))->hi == 3);
}

TEST_CASE("semi-orthogonal decompositions") {
    Evaluator ev(catalog());
    for (int g = 1; g <= 5; ++g) {
        std::vector<ComponentRef> sod{{ComponentRef::Kind::Curve, 1, g}, {ComponentRef::Kind::Exceptional, 2 * g}};
        check_exact(rule_sod(sod, {}), 1);
    }
    check_exact(ev.qldim("artin-mumford"), 2);
    check_exact(ev.qldim("gr27-section-6"), 2);
    check_exact(ev.qldim("ottem-rennemo-4fold"), 2);
    auto am = catalog().at("artin-mumford").v;
    ComponentResolver res = [&](const ComponentRef& c) {
        return c.kind == ComponentRef::Kind::Variety ? ev.qldim(c.name) : resolve_basic_component(c);
    };
    check_exact(rule_sod(*am.sod, res), 2);
    CHECK_THROWS(rule_sod({}, {}));
}

TEST_CASE("singleton decomposition returns the component") {
    for (auto c : {ComponentRef{ComponentRef::Kind::Exceptional}, ComponentRef{ComponentRef::Kind::Curve, 1, 3},
                   ComponentRef{ComponentRef::Kind::Phantom},
                   ComponentRef{ComponentRef::Kind::Opaque, 1, 0, "x", "", 1, 3}}) {
        auto a = rule_sod({c}, {});
        auto b = resolve_basic_component(c);
        CHECK(a.lo == b.lo);
        CHECK(a.hi == b.hi);
    }
}

TEST_CASE("twisted forms") {
    Evaluator ev(catalog());
    auto up = rule_twisted_upper(true, ev.qldim("enriques"));
    REQUIRE(up);
    CHECK(*up->hi == 2);
    CHECK_FALSE(rule_twisted_upper(false, ev.qldim("enriques")));
    check_exact(ev.qldim("enriques-twisted"), 0);
    check_exact(ev.qldim("artin-mumford-twisted"), 0);
    auto hpt = ev.qldim("octic-double-plane-twisted");
    REQUIRE(hpt.hi);
    CHECK(*hpt.hi <= 2);

    QLResult base = universal_bounds(2);
    base.apply(*up);
    TwistedChainInputs in{KuPair{middle_of_short_exact(G("Z^12"), G("0")), middle_of_short_exact(G("0"), G("0"))}, true,
                          "cited"};
    check_exact(rule_twisted_enriques_chain(base, in), 0);
    in.k0_to_ku0_surjective.reset();
    CHECK(rule_twisted_enriques_chain(base, in).lo == 0);
    CHECK(*rule_twisted_enriques_chain(base, in).hi == 2);
    in.k0_to_ku0_surjective = true;
    in.ku->odd = middle_of_short_exact(G("Z/2"), G("0"));
    CHECK(*rule_twisted_enriques_chain(base, in).hi == 2);
}

TEST_CASE("decomposition of the diagonal") {
    auto sr = with_flags(variety("cubic-4fold"), [](Flags& f) { f.stably_rational = true; });
    auto t = rule_torsion_order(sr);
    CHECK(*t.n == 1);
    CHECK(*t.upper == 2);
    auto u = with_flags(variety("cubic-4fold"), [](Flags& f) { f.unirational_degree = 2; });
    auto tu = rule_torsion_order(u);
    CHECK(*tu.n == 2);
    CHECK_FALSE(tu.upper);
    CHECK(tu.top.find("2-torsion") != std::string::npos);
    CHECK(tu.next.find("4-torsion") != std::string::npos);
    CHECK(tu.vanishes_for(3));
    CHECK(tu.vanishes_for(15));
    CHECK_FALSE(tu.vanishes_for(4));
    CHECK_FALSE(rule_torsion_order(variety("enriques")).n);
}

TEST_CASE("negative K lower bound") {
    CHECK(*rule_negative_k_lower(TriState::nonzero(G("Z/2")))->lo == 1);
    CHECK_FALSE(rule_negative_k_lower(TriState::zero()));
    CHECK_FALSE(rule_negative_k_lower(TriState::undetermined("x")));
}

TEST_CASE("inconsistent data is rejected") {
    QLResult r = universal_bounds(2);
    r.apply(Certificate{"a", "x", 2, std::nullopt, {}});
    CHECK_THROWS_AS(r.apply(Certificate{"b", "y", std::nullopt, 1, {}}), InconsistentData);
}

TEST_CASE("combine stays inside [0, dim] and contains the expected value") {
    Evaluator ev(catalog());
    for (auto& e : catalog().entries()) {
        CAPTURE(e.v.name);
        auto r = ev.qldim(e.v.name);
        CHECK(r.lo >= 0);
        REQUIRE(r.hi);
        CHECK(*r.hi <= e.v.dim);
        if (auto& q = e.expected.qldim) {
            CHECK(r.lo == q->value.first);
            CHECK(*r.hi == q->value.second);
        }
        for (auto& c : r.certificates) CHECK_FALSE(c.rule.empty());
    }
}

TEST_CASE("adding rules never widens the interval") {
    Evaluator ev(catalog());
    std::mt19937 rng(7);
    for (auto& e : catalog().entries()) {
        if (e.kind != CatalogEntry::Kind::Variety) continue;
        CAPTURE(e.v.name);
        auto full = ev.qldim(e.v.name);
        auto nosod = ev.qldim(e.v.name, Evaluator::Mode::NoSod);
        CHECK(full.lo >= nosod.lo);
        CHECK(*full.hi <= *nosod.hi);
        // replaying any prefix of a shuffled trail yields a superset of the full interval
        auto trail = full.certificates;
        for (int rep = 0; rep < 5; ++rep) {
            std::shuffle(trail.begin(), trail.end(), rng);
            QLResult part;
            int prev_lo = 0;
            std::optional<int> prev_hi;
            for (auto& c : trail) {
                part.apply(c);
                CHECK(part.lo >= prev_lo);
                if (prev_hi) CHECK(*part.hi <= *prev_hi);
                prev_lo = part.lo;
                prev_hi = part.hi;
            }
            CHECK(part.lo == full.lo);
            CHECK(part.hi == full.hi);
        }
    }
}

TEST_CASE("rendering") {
    Evaluator ev(catalog());
    auto s = ev.qldim("enriques").str();
    CHECK(s.rfind("dimQL ∈ [2,2]\n", 0) == 0);
    CHECK(s.find("surface criterion — p_g = 0") == std::string::npos);
    CHECK(s.find("  universal — norm residue theorem (Rost-Voevodsky) — in [0,2]\n") != std::string::npos);
    CHECK(ev.qldim("enriques").certificates.size() >= 3);
}
