#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qlwb/schubert.hpp"

#include <random>

using namespace qlwb;

namespace {

// standard Young tableaux of the k x (n-k) rectangle
mpz_class hook_degree(int k, int n) {
    int m = n - k;
    mpz_class num = 1, den = 1;
    for (int i = 2; i <= k * m; ++i) num *= i;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) den *= (k - i - 1) + (m - j - 1) + 1;
    return num / den;
}

// Weyl dimension of H^0(Gr(k,n), O(t))
mpq_class weyl_dim(int k, int n, int t) {
    mpq_class r = 1;
    for (int i = 1; i <= k; ++i)
        for (int j = k + 1; j <= n; ++j) {
            mpq_class f(t + j - i, j - i);
            f.canonicalize();
            r *= f;
        }
    return r;
}

CohClass sigma(const Grassmannian& g, Partition p) { return CohClass::schubert(g, p); }

}  // namespace

TEST_CASE("Pieri") {
    auto r = pieri({1}, 1, 2, 4);
    CHECK(r.size() == 2);
    CHECK(pieri({2}, 1, 2, 4).size() == 1);
    CHECK(pieri({2, 2}, 1, 2, 4).empty());
    CHECK(partition_str({2, 1}) == "(2,1)");
}

TEST_CASE("products in Gr(2,4)") {
    Grassmannian g(2, 4);
    auto s1 = sigma(g, {1});
    auto sq = multiply(s1, s1, g);
    CHECK(sq == sigma(g, {2}) + sigma(g, {1, 1}));
    auto top = sigma(g, {2, 2});
    CHECK(multiply(top, s1, g).is_zero());
    CHECK(integrate(top, g) == 1);
    CHECK(integrate(power(s1, 4, g), g) == 2);
    CHECK(integrate(sigma(g, {2, 1}), g) == 0);
}

TEST_CASE("Pluecker degree against the hook length formula") {
    for (auto [k, n] : {std::pair{2, 4}, {2, 5}, {2, 6}, {2, 7}, {3, 6}, {3, 7}, {2, 8}}) {
        Grassmannian g(k, n);
        CAPTURE(k);
        CAPTURE(n);
        CHECK(integrate(power(sigma(g, {1}), g.dim(), g), g) == hook_degree(k, n));
    }
    Grassmannian g(2, 7);
    CHECK(integrate(power(sigma(g, {1}), 10, g), g) == 42);
}

TEST_CASE("duality pairing on Gr(2,7)") {
    Grassmannian g(2, 7);
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
            auto v = integrate(multiply(sigma(g, g.basis(i)), sigma(g, g.basis(j)), g), g);
            CHECK(v == (g.basis(j) == g.complement(g.basis(i)) ? 1 : 0));
        }
}

TEST_CASE("ring axioms on random classes") {
    Grassmannian g(3, 7);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, g.size() - 1), coef(-3, 3);
    auto rnd = [&] {
        CohClass c(g);
        for (int t = 0; t < 3; ++t) c[pick(rng)] += coef(rng);
        return c;
    };
    for (int t = 0; t < 30; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(multiply(a, b, g) == multiply(b, a, g));
        CHECK(multiply(multiply(a, b, g), c, g) == multiply(a, multiply(b, c, g), g));
        CHECK(multiply(a, b + c, g) == multiply(a, b, g) + multiply(a, c, g));
    }
}

TEST_CASE("structure constants: non-negative, parallel = serial") {
    for (auto [k, n] : {std::pair{2, 5}, {2, 7}, {3, 6}, {3, 7}}) {
        auto s = structure_constants(k, n, false);
        auto p = structure_constants(k, n, true);
        CHECK(s == p);
        for (auto& row : s)
            for (auto& cell : row)
                for (auto& [nu, c] : cell) CHECK(c > 0);
    }
}

TEST_CASE("Chern classes") {
    Grassmannian g(2, 7);
    auto cs = chern(BundleExpr::S(), g);
    auto cq = chern(BundleExpr::Q(), g);
    CohClass cS(g), cQ(g);
    for (auto& c : cs) cS += c;
    for (auto& c : cq) cQ += c;
    CHECK(multiply(cS, cQ, g) == CohClass::unit(g));
    CHECK(cq[1] == sigma(g, {1}));
    auto l2 = BundleExpr::S().dual().lambda(2).eval(g);
    CHECK(l2.rank == 1);
    CHECK(l2.ch[0] == 1);
    // c_1(S^v) = sigma_1 as well: det S^v = O(1)
    CHECK(chern(BundleExpr::S().dual(), g)[1] == sigma(g, {1}));
    CHECK(chern(BundleExpr::O(1), g)[1] == sigma(g, {1}));
    CHECK(chern(tangent(), g)[1] == mpq_class(7) * sigma(g, {1}));
}

TEST_CASE("Riemann-Roch against Weyl's dimension formula") {
    for (auto [k, n] : {std::pair{1, 4}, {2, 4}, {2, 5}, {2, 7}, {3, 6}}) {
        Grassmannian g(k, n);
        CHECK(chi_hrr(BundleExpr::O(0), g) == 1);
        for (int t = 1; t <= 3; ++t) {
            CAPTURE(k);
            CAPTURE(n);
            CAPTURE(t);
            CHECK(mpq_class(chi_hrr(BundleExpr::O(t), g)) == weyl_dim(k, n, t));
        }
    }
    Grassmannian g(2, 7);
    CHECK(chi_hrr(BundleExpr::O(1), g) == 21);
    auto e = BundleExpr::S().dual(), f = BundleExpr::Q();
    CHECK(chi_hrr(e + f, g) == chi_hrr(e, g) + chi_hrr(f, g));
    // H^0(S^v) = C^7 and no higher cohomology
    CHECK(chi_hrr(e, g) == 7);
    // tangent bundle: H^0 = sl_7, dimension 48
    CHECK(chi_hrr(tangent(), g) == 48);
    // Serre duality on a 10-fold: chi(O(-7)) = chi(O) = 1
    CHECK(chi_hrr(BundleExpr::O(-7), g) == 1);
    for (int t = -6; t <= -1; ++t) CHECK(chi_hrr(BundleExpr::O(t), g) == 0);
}

TEST_CASE("Adams operations and lambda powers") {
    Grassmannian g(2, 5);
    auto q = BundleExpr::Q().eval(g);
    auto l3 = lambda_power(q, 3, g);
    CHECK(l3.rank == 1);
    CHECK(l3.ch == BundleExpr::O(1).eval(g).ch);
    auto s2 = sym_power(BundleExpr::S().dual().eval(g), 2, g);
    CHECK(s2.rank == 3);
    CHECK(adams(q.ch, 1, g) == q.ch);
}

TEST_CASE("hodge_middle examples") {
    CHECK(hodge_middle(2, 7, 6) == std::vector<long>{0, 6, 57, 6, 0});
    CHECK(hodge_middle(2, 7, 8) == std::vector<long>{13, 98, 13});
    CHECK(hodge_middle(2, 4, 1) == std::vector<long>{0, 0, 0, 0});
    CHECK_THROWS(hodge_middle(2, 4, 4));
}

TEST_CASE("classical hypersurfaces") {
    auto mid = [](const std::vector<std::vector<long>>& h) {
        int d = static_cast<int>(h.size()) - 1;
        std::vector<long> r;
        for (int p = d; p >= 0; --p) r.push_back(h[p][d - p]);
        return r;
    };
    CHECK(mid(hodge_ci(1, 4, {4})) == std::vector<long>{1, 20, 1});
    CHECK(mid(hodge_ci(1, 5, {3})) == std::vector<long>{0, 5, 5, 0});
    CHECK(mid(hodge_ci(1, 6, {3})) == std::vector<long>{0, 1, 21, 1, 0});
    CHECK(mid(hodge_ci(1, 6, {4})) == std::vector<long>{0, 21, 142, 21, 0});
    CHECK(mid(hodge_ci(1, 7, {3})) == std::vector<long>{0, 0, 21, 21, 0, 0});
    // elliptic quartic curve in P^3 and the quartic del Pezzo surface in P^4
    CHECK(mid(hodge_ci(1, 4, {2, 2})) == std::vector<long>{1, 1});
    CHECK(mid(hodge_ci(1, 5, {2, 2})) == std::vector<long>{0, 6, 0});
    // plane curves: genus (d-1)(d-2)/2
    for (int d = 1; d <= 6; ++d) CHECK(hodge_ci(1, 3, {d})[1][0] == (d - 1) * (d - 2) / 2);
}

TEST_CASE("no hyperplanes reproduces the Grassmannian") {
    for (auto [k, n] : {std::pair{2, 4}, {2, 5}, {3, 6}}) {
        Grassmannian g(k, n);
        auto h = hodge_ci(k, n, {});
        int d = g.dim();
        for (int p = 0; p <= d; ++p)
            for (int q = 0; q <= d; ++q) CHECK(h[p][q] == (p == q ? g.count_in_degree(p) : 0));
    }
}

TEST_CASE("Hodge symmetry and chi(Omega^p) consistency") {
    for (int c = 1; c <= 8; ++c) {
        auto h = hodge_ci(2, 7, std::vector<int>(c, 1));
        auto chi = chi_omega_ci(2, 7, std::vector<int>(c, 1));
        int d = static_cast<int>(h.size()) - 1;
        CHECK(d == 10 - c);
        for (int p = 0; p <= d; ++p) {
            mpz_class s = 0;
            for (int q = 0; q <= d; ++q) {
                CHECK(h[p][q] == h[q][p]);
                CHECK(h[p][q] == h[d - p][d - q]);
                CHECK(h[p][q] >= 0);
                s += (q % 2 ? -1 : 1) * h[p][q];
            }
            CHECK(s == chi[p]);
        }
        auto m = hodge_middle(2, 7, c);
        for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i] == m[m.size() - 1 - i]);
    }
}

TEST_CASE("diamond rendering") {
    auto s = render_diamond(hodge_ci(1, 3, {3}));
    CHECK(s == " 1\n1 1\n 1\n");
}
