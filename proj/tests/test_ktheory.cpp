#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace qlwb;
using namespace qlwb::test;

namespace {

KGroupExpr K(const char* s) { return KGroupExpr::parse(s); }

std::map<int, KGroupExpr> table(const std::string& name, int lo = 0, int hi = 6) {
    Evaluator ev(catalog());
    std::map<int, KGroupExpr> t;
    for (auto& [n, k] : ev.k_table(name, lo, hi)) t[n] = k;
    return t;
}

KGroupExpr k0_of(const std::string& name) {
    const auto& e = catalog().at(name);
    return k0_filtration(*e.v.chow, e.filtration_certs, e.v.h_int).k0;
}

}  // namespace

TEST_CASE("K-group expressions") {
    CHECK(K("Z^2 + IJ(X)").str() == "Z^2 + IJ(X)");
    CHECK(K("(Q/Z)^24 + K_n(A_X, Q)").str() == "(Q/Z)^24 + K_n(A_X, Q)");
    CHECK(K("Z^(r+1) + CH_1(X)_hom").free_symbol == "r");
    CHECK(K("Z^(r+1) + CH_1(X)_hom").free_rank == 1);
    CHECK(K("Z^r").str() == "Z^r");
    CHECK(K("Z/2 + (Q/Z)^12 + K_n(X, Q)").finite == G("Z/2"));
    CHECK(K("IJ(X) + Z^2") == K("Z^2 + IJ(X)"));
    CHECK(K("0").is_zero());
    CHECK(K("Z^4 + IJ(X) [up to filtration]").up_to_filtration);
    CHECK_THROWS(K("Z^ + 1"));
    CHECK_THROWS(K("Z^r") + K("Z^s"));
}

TEST_CASE("torsion in symbolic summands") {
    CHECK(has_torsion(K("IJ(X)")));
    CHECK_FALSE(has_torsion(K("K_n(X, Q)")));
    CHECK_FALSE(has_torsion(K("CH_1(X)_hom"), {"CH_1(X)_hom"}));
    CHECK(has_torsion(K("Z/3")));
    CHECK(has_torsion(K("Q/Z")));
    CHECK_FALSE(has_torsion(K("Z^5")));
}

TEST_CASE("higher K-groups from KU") {
    for (int g = 1; g <= 4; ++g)
        for (int n = 1; n <= 6; ++n) {
            auto k = assemble_high_kn(FgAbGroup::free(2), FgAbGroup::free(2 * g), 1, n);
            CHECK(k.qz_rank == (n % 2 ? 2 : 2 * g));
            CHECK(k.finite.is_zero());
            CHECK(k.divisible == std::vector<std::string>{"K_n(X, Q)"});
        }
    for (int n : {1, 3, 5})
        CHECK(assemble_high_kn(G("Z^24"), G("0"), 2, n, "A_X") == K("(Q/Z)^24 + K_n(A_X, Q)"));
    CHECK(assemble_high_kn(G("Z^12 + Z/2"), G("Z/2"), 2, 1) == K("Z/2 + (Q/Z)^12 + K_n(X, Q)"));
    CHECK(assemble_high_kn(G("Z^12 + Z/2"), G("Z/2"), 2, 2) == K("Z/2 + K_n(X, Q)"));
    CHECK_THROWS(assemble_high_kn(G("Z"), G("0"), 4, 1));
    CHECK_THROWS(assemble_high_kn(G("Z"), G("0"), 0, 0));
    CHECK_NOTHROW(assemble_high_kn(G("Z"), G("0"), 4, 2));
}

TEST_CASE("K_0 via the codimension filtration") {
    CHECK(k0_of("fano-v3") == K("Z^4 + IJ(X)"));
    CHECK(k0_of("cubic-4fold") == K("Z^(r+4) + CH_1(X)_hom"));
    CHECK(k0_of("cubic-5fold") == K("Z^6 + IJ(X)"));
}

TEST_CASE("cubic 5-fold K_0 needs its Adams and split certificates") {
    const auto& e = catalog().at("cubic-5fold");
    std::vector<FiltrationCertificate> none;
    auto bare = k0_filtration(*e.v.chow, none, e.v.h_int);
    CHECK(bare.k0.up_to_filtration);
    std::vector<FiltrationCertificate> only_split, only_adams;
    for (auto& c : e.filtration_certs)
        (c.kind == FiltrationCertificate::Kind::Split ? only_split : only_adams).push_back(c);
    CHECK(k0_filtration(*e.v.chow, only_split, e.v.h_int).k0.up_to_filtration);
    CHECK(k0_filtration(*e.v.chow, only_adams, e.v.h_int).k0.up_to_filtration);
    auto full = k0_filtration(*e.v.chow, e.filtration_certs, e.v.h_int);
    CHECK_FALSE(full.k0.up_to_filtration);
    CHECK_FALSE(full.notes.empty());
}

TEST_CASE("torsion in CH^i with (i-1)! > 1 needs a certificate") {
    ChowData c;
    c.groups = {K("Z"), K("Z"), K("Z"), K("Z + Z/2"), K("Z")};
    auto r = k0_filtration(c, {}, GradedAb());
    CHECK(r.k0.up_to_filtration);
    FiltrationCertificate iso{3, FiltrationCertificate::Kind::Iso, "cited"};
    CHECK_FALSE(k0_filtration(c, {iso}, GradedAb()).k0.up_to_filtration);
    // (i-1)! = 1 for i <= 2
    c.groups = {K("Z"), K("Z"), K("Z + Z/2"), K("Z")};
    CHECK_FALSE(k0_filtration(c, {}, GradedAb()).k0.up_to_filtration);
}

TEST_CASE("stripping exceptional objects") {
    CHECK(strip_exceptional(K("Z^4 + IJ(X)"), 2) == K("Z^2 + IJ(X)"));
    CHECK(strip_exceptional(K("Z^(r+4) + CH_1(X)_hom"), 3) == K("Z^(r+1) + CH_1(X)_hom"));
    CHECK(strip_exceptional(K("Z^4 + IJ(X)"), 1) == K("Z^3 + IJ(X)"));
    CHECK_THROWS(strip_exceptional(K("Z^2 + IJ(X)"), 3));
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 6; ++b)
            CHECK(strip_exceptional(strip_exceptional(K("Z^6 + IJ(X)"), a), b) == strip_exceptional(K("Z^6 + IJ(X)"), a + b));
}

TEST_CASE("Adams annihilators") {
    CHECK(adams_annihilator(3, 2, {2, 3}) == 2);
    CHECK(adams_annihilator(3, 1, {2, 3}) == 6);
    CHECK(adams_annihilator(4, 4, {2, 5}) == 0);
    CHECK(adams_annihilator(3, 2, {2}) == 4);
    CHECK(adams_annihilator(3, 2, {3}) == 18);
    CHECK_THROWS(adams_annihilator(3, 2, {}));
}

TEST_CASE("CH_1 torsion") {
    CHECK(ch1_torsion_free(true, true, std::nullopt).is_zero());
    CHECK(ch1_torsion_free(true, std::nullopt, true).is_zero());
    CHECK(ch1_torsion_free(std::nullopt, true, true).is_undetermined());
    CHECK(ch1_torsion_free(true, false, false).is_undetermined());
    // cubic and GM 4-folds: CH_0 = Z and H^5 = 0
    for (auto* n : {"cubic-4fold", "gm-4fold"}) {
        const auto& v = variety(n);
        CHECK(ch1_torsion_free(v.flags.ch0_trivial, v.h_int.at(5).is_zero(), std::nullopt).is_zero());
    }
}

TEST_CASE("phantoms") {
    CHECK(phantom_vanishing(K("0"), 0).is_zero());
    CHECK(phantom_vanishing(K("Z"), 0).is_undetermined());
    CHECK(phantom_vanishing(K("0"), 1).is_undetermined());
    for (auto* p : {"barlow-phantom", "dolgachev-phantom"}) {
        auto t = table(p, 0, 8);
        CHECK(t.size() == 9);
        for (auto& [n, k] : t) CHECK(k.is_zero());
    }
}

TEST_CASE("Kuznetsov components of Fano 3-folds") {
    // case (a): two exceptional objects
    auto a = table("fano-v3");
    CHECK(a[0] == K("Z^2 + IJ(X)"));
    for (int n : {1, 3, 5}) CHECK(a[n] == K("(Q/Z)^2 + K_n(X, Q)"));
    for (int n : {2, 4, 6}) CHECK(a[n] == K("(Q/Z)^10 + K_n(X, Q)"));
    // case (b): one exceptional object
    auto b = table("fano-v4");
    CHECK(b[0] == K("Z^3 + IJ(X)"));
    for (int n : {1, 3, 5}) CHECK(b[n] == K("(Q/Z)^3 + K_n(X, Q)"));
    for (int n : {2, 4, 6}) CHECK(b[n] == K("(Q/Z)^60 + K_n(X, Q)"));
}

TEST_CASE("Kuznetsov components of cubic and GM 4-folds") {
    auto c = table("cubic-4fold-ax");
    CHECK(c[0] == K("Z^(r+1) + CH_1(X)_hom"));
    auto g = table("gm-4fold-ax");
    CHECK(g[0] == K("Z^r + CH_1(X)_hom"));
    for (auto* t : {&c, &g}) {
        for (int n : {1, 3, 5}) CHECK((*t)[n] == K("(Q/Z)^24 + K_n(A_X, Q)"));
        for (int n : {2, 4, 6}) CHECK((*t)[n] == K("K_n(A_X, Q)"));
    }
}

TEST_CASE("Kuznetsov component of the cubic 5-fold") {
    auto t = table("cubic-5fold-ax");
    CHECK(t[0] == K("Z^2 + IJ(X)"));
    for (int n : {1, 3, 5}) CHECK(t[n] == K("(Q/Z)^2 + K_n(X, Q)"));
    for (int n : {2, 4, 6}) CHECK(t[n] == K("(Q/Z)^42 + K_n(X, Q)"));
}

TEST_CASE("component Q/Z ranks match component KU") {
    Evaluator ev(catalog());
    int seen = 0;
    for (auto& e : catalog().entries()) {
        if (e.kind != CatalogEntry::Kind::Component) continue;
        auto ku = ev.ku(e.v.name);
        REQUIRE(ku);
        auto t = ev.k_table(e.v.name, 1, 4);
        for (auto& [n, k] : t) {
            CAPTURE(e.v.name);
            CAPTURE(n);
            if (k.is_zero()) continue;
            CHECK(k.free_rank == 0);
            CHECK(k.qz_rank == (n % 2 ? ku->even.rank() : ku->odd.rank()));
        }
        ++seen;
    }
    CHECK(seen == 5);
}
