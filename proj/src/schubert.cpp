#include "qlwb/schubert.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qlwb {

std::string partition_str(const Partition& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

namespace {

void trim(Partition& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void strips(const Partition& lam, int i, int left, int k, int w, Partition& cur,
            std::vector<Partition>& out) {
    if (i == k) {
        if (left == 0) {
            Partition p = cur;
            trim(p);
            out.push_back(std::move(p));
        }
        return;
    }
    int li = i < static_cast<int>(lam.size()) ? lam[i] : 0;
    int cap = i == 0 ? w : (i - 1 < static_cast<int>(lam.size()) ? lam[i - 1] : 0);
    for (int add = 0; add <= left && li + add <= cap; ++add) {
        cur[i] = li + add;
        strips(lam, i + 1, left - add, k, w, cur, out);
    }
}

void box_partitions(int k, int w, int i, int cap, Partition& cur, std::vector<Partition>& out) {
    if (i == k) {
        Partition p = cur;
        trim(p);
        out.push_back(std::move(p));
        return;
    }
    for (int v = 0; v <= cap; ++v) {
        cur[i] = v;
        box_partitions(k, w, i + 1, v, cur, out);
    }
}

int size_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::vector<Partition> box_basis(int k, int n) {
    std::vector<Partition> out;
    Partition cur(k, 0);
    box_partitions(k, n - k, 0, n - k, cur, out);
    std::stable_sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        int sa = size_of(a), sb = size_of(b);
        return sa != sb ? sa < sb : a > b;
    });
    return out;
}

// sigma_lambda * sigma_mu, with sigma_mu = det(sigma_{mu_i + j - i})
std::map<Partition, long> giambelli_product(const Partition& lam, const Partition& mu, int k, int n) {
    std::map<Partition, long> total;
    int l = static_cast<int>(mu.size());
    std::vector<int> perm(l);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inv = 0;
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b)
                if (perm[a] > perm[b]) ++inv;
        std::map<Partition, long> cur{{lam, 1}};
        bool dead = false;
        for (int i = 0; i < l && !dead; ++i) {
            int r = mu[i] + perm[i] - i;
            if (r < 0 || r > n - k) {
                dead = true;
                break;
            }
            if (r == 0) continue;
            std::map<Partition, long> next;
            for (const auto& [p, c] : cur)
                for (auto& q : pieri(p, r, k, n)) next[q] += c;
            cur.swap(next);
            if (cur.empty()) dead = true;
        }
        if (dead) continue;
        long sign = inv % 2 ? -1 : 1;
        for (const auto& [p, c] : cur) total[p] += sign * c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto it = total.begin(); it != total.end();) it = it->second == 0 ? total.erase(it) : std::next(it);
    return total;
}

}  // namespace

std::vector<Partition> pieri(const Partition& lambda, int r, int k, int n) {
    if (r < 0) return {};
    Partition cur(k, 0);
    std::vector<Partition> out;
    if (static_cast<int>(lambda.size()) > k) return out;
    strips(lambda, 0, r, k, n - k, cur, out);
    return out;
}

StructureTable structure_constants(int k, int n, bool parallel) {
    if (k < 0 || k > n) throw std::invalid_argument("Gr(k,n) needs 0 <= k <= n");
    auto basis = box_basis(k, n);
    std::map<Partition, int> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
    int N = static_cast<int>(basis.size());
    StructureTable t(N, std::vector<std::vector<std::pair<int, long>>>(N));
    auto row = [&](int i) {
        for (int j = i; j < N; ++j) {
            if (size_of(basis[i]) + size_of(basis[j]) > k * (n - k)) continue;
            for (const auto& [p, c] : giambelli_product(basis[i], basis[j], k, n))
                t[i][j].emplace_back(idx.at(p), c);
            std::sort(t[i][j].begin(), t[i][j].end());
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < N; ++i) row(i);
    } else {
        for (int i = 0; i < N; ++i) row(i);
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < i; ++j) t[i][j] = t[j][i];
    return t;
}

Grassmannian::Grassmannian(int k, int n) : k_(k), n_(n) {
    if (k < 0 || k > n) throw std::invalid_argument("Gr(k,n) needs 0 <= k <= n");
    basis_ = box_basis(k, n);
    for (size_t i = 0; i < basis_.size(); ++i) {
        index_[basis_[i]] = static_cast<int>(i);
        degree_.push_back(size_of(basis_[i]));
    }
    top_ = index(Partition(k, n - k));
    table_ = structure_constants(k, n, false);
}

int Grassmannian::index(const Partition& p) const {
    Partition q = p;
    trim(q);
    auto it = index_.find(q);
    if (it == index_.end()) throw std::out_of_range("partition " + partition_str(p) + " not in the box");
    return it->second;
}

Partition Grassmannian::complement(const Partition& p) const {
    Partition c(k_, 0);
    for (int i = 0; i < k_; ++i) c[i] = (n_ - k_) - (k_ - 1 - i < static_cast<int>(p.size()) ? p[k_ - 1 - i] : 0);
    trim(c);
    return c;
}

int Grassmannian::count_in_degree(int d) const {
    return static_cast<int>(std::count(degree_.begin(), degree_.end(), d));
}

CohClass CohClass::unit(const Grassmannian& g) {
    CohClass c(g);
    c[g.index({})] = 1;
    return c;
}

CohClass CohClass::schubert(const Grassmannian& g, const Partition& p) {
    CohClass c(g);
    c[g.index(p)] = 1;
    return c;
}

bool CohClass::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool CohClass::is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.get_den() == 1; });
}

CohClass& CohClass::operator+=(const CohClass& o) {
    if (c_.empty()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
    if (c_.empty()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CohClass& CohClass::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

CohClass CohClass::part(const Grassmannian& g, int d) const {
    CohClass out(g);
    for (int i = 0; i < size(); ++i)
        if (g.degree(i) == d) out[i] = c_[i];
    return out;
}

std::string CohClass::str(const Grassmannian& g) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        Rational a = abs(c_[i]);
        const auto& p = g.basis(i);
        if (p.empty()) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "s" << partition_str(p);
        }
        first = false;
    }
    return first ? "0" : os.str();
}

CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
CohClass operator*(const Rational& r, CohClass a) { return a *= r; }

CohClass multiply(const CohClass& a, const CohClass& b, const Grassmannian& g) {
    CohClass out(g);
    const auto& t = g.table();
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            Rational ab = a[i] * b[j];
            for (const auto& [nu, c] : t[i][j]) out[nu] += ab * c;
        }
    }
    return out;
}

Rational integrate(const CohClass& a, const Grassmannian& g) { return a[g.top()]; }

CohClass power(const CohClass& a, int e, const Grassmannian& g) {
    CohClass out = CohClass::unit(g);
    for (int i = 0; i < e; ++i) out = multiply(out, a, g);
    return out;
}

CohClass exp_class(const CohClass& a, const Grassmannian& g) {
    if (a[g.index({})] != 0) throw std::invalid_argument("exp of a class with nonzero degree-0 part");
    CohClass out = CohClass::unit(g), term = CohClass::unit(g);
    for (int j = 1; j <= g.dim(); ++j) {
        term = Rational(1, j) * multiply(term, a, g);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

namespace {

CohClass ch_from_chern(const std::vector<CohClass>& c, long rank, const Grassmannian& g) {
    int D = g.dim();
    std::vector<CohClass> p(D + 1, CohClass(g));
    CohClass ch = Rational(rank) * CohClass::unit(g);
    Rational fact = 1;
    for (int i = 1; i <= D; ++i) {
        CohClass pi = Rational(i % 2 ? i : -i) * c[i];
        for (int j = 1; j < i; ++j) {
            CohClass t = multiply(c[j], p[i - j], g);
            pi += Rational(j % 2 ? 1 : -1) * t;
        }
        p[i] = pi;
        fact *= i;
        ch += Rational(1) / fact * pi;
    }
    return ch;
}

std::vector<CohClass> chern_of_S(const Grassmannian& g) {
    std::vector<CohClass> c(g.dim() + 1, CohClass(g));
    for (int i = 0; i <= std::min(g.k(), g.dim()); ++i) {
        if (i > 0 && g.n() - g.k() == 0) break;
        c[i] = Rational(i % 2 ? -1 : 1) * CohClass::schubert(g, Partition(i, 1));
    }
    return c;
}

std::vector<CohClass> chern_of_Q(const Grassmannian& g) {
    std::vector<CohClass> c(g.dim() + 1, CohClass(g));
    for (int i = 0; i <= std::min(g.n() - g.k(), g.dim()); ++i) {
        if (i > 0 && g.k() == 0) break;
        c[i] = CohClass::schubert(g, i ? Partition{i} : Partition{});
    }
    return c;
}

long rank_of(const CohClass& ch, const Grassmannian& g) {
    const Rational& r = ch[g.index({})];
    if (r.get_den() != 1) throw std::logic_error("non-integral rank");
    return r.get_num().get_si();
}

// coefficients of log(x / (1 - e^{-x})) up to x^N
std::vector<Rational> log_todd_series(int N) {
    std::vector<Rational> u(N + 1);
    Rational f = 1;
    for (int j = 1; j <= N; ++j) {
        f *= (j + 1);
        u[j] = Rational(j % 2 ? -1 : 1) / f;
    }
    std::vector<Rational> logg(N + 1), up(N + 1);
    up[0] = 1;
    for (int k = 1; k <= N; ++k) {
        std::vector<Rational> nx(N + 1);
        for (int a = 0; a <= N; ++a)
            for (int b = 1; a + b <= N; ++b) nx[a + b] += up[a] * u[b];
        up = nx;
        for (int a = 0; a <= N; ++a) logg[a] += Rational(k % 2 ? 1 : -1, k) * up[a];
    }
    for (auto& x : logg) x = -x;
    return logg;
}

}  // namespace

struct BundleExpr::Node {
    Op op;
    int param = 0;
    std::shared_ptr<const Node> a, b;
};

BundleExpr BundleExpr::S() {
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Sub, 0, nullptr, nullptr});
    return e;
}

BundleExpr BundleExpr::Q() {
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Quot, 0, nullptr, nullptr});
    return e;
}

BundleExpr BundleExpr::O(int t) {
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Line, t, nullptr, nullptr});
    return e;
}

BundleExpr BundleExpr::dual() const {
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Dual, 0, node_, nullptr});
    return e;
}

BundleExpr BundleExpr::lambda(int p) const {
    if (p < 0) throw std::invalid_argument("negative exterior power");
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Lambda, p, node_, nullptr});
    return e;
}

BundleExpr BundleExpr::sym(int p) const {
    if (p < 0) throw std::invalid_argument("negative symmetric power");
    BundleExpr e;
    e.node_ = std::make_shared<Node>(Node{Op::Sym, p, node_, nullptr});
    return e;
}

BundleExpr operator+(const BundleExpr& x, const BundleExpr& y) {
    BundleExpr e;
    e.node_ = std::make_shared<BundleExpr::Node>(BundleExpr::Node{BundleExpr::Op::Sum, 0, x.node_, y.node_});
    return e;
}

BundleExpr operator*(const BundleExpr& x, const BundleExpr& y) {
    BundleExpr e;
    e.node_ = std::make_shared<BundleExpr::Node>(BundleExpr::Node{BundleExpr::Op::Tensor, 0, x.node_, y.node_});
    return e;
}

namespace {

ChernData eval_node(const BundleExpr::Node& n, const Grassmannian& g);

ChernData eval_ptr(const std::shared_ptr<const BundleExpr::Node>& p, const Grassmannian& g) {
    return eval_node(*p, g);
}

}  // namespace

CohClass adams(const CohClass& ch, int j, const Grassmannian& g) {
    CohClass out(g);
    for (int i = 0; i < ch.size(); ++i) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), mpz_class(j).get_mpz_t(), g.degree(i));
        out[i] = ch[i] * f;
    }
    return out;
}

namespace {

template <int Sign>
ChernData newton_power(const ChernData& e, int p, const Grassmannian& g) {
    std::vector<CohClass> pw(p + 1);
    pw[0] = CohClass::unit(g);
    std::vector<CohClass> psi(p + 1);
    for (int j = 1; j <= p; ++j) psi[j] = adams(e.ch, j, g);
    for (int q = 1; q <= p; ++q) {
        CohClass acc(g);
        for (int j = 1; j <= q; ++j) {
            CohClass t = multiply(psi[j], pw[q - j], g);
            if (Sign < 0 && j % 2 == 0) acc -= t;
            else acc += t;
        }
        pw[q] = Rational(1, q) * acc;
    }
    return {rank_of(pw[p], g), pw[p]};
}

ChernData eval_node(const BundleExpr::Node& n, const Grassmannian& g) {
    using Op = BundleExpr::Op;
    switch (n.op) {
        case Op::Sub: return {g.k(), ch_from_chern(chern_of_S(g), g.k(), g)};
        case Op::Quot: return {g.n() - g.k(), ch_from_chern(chern_of_Q(g), g.n() - g.k(), g)};
        case Op::Line: {
            CohClass s1 = g.dim() > 0 ? CohClass::schubert(g, {1}) : CohClass(g);
            return {1, exp_class(Rational(n.param) * s1, g)};
        }
        case Op::Dual: {
            ChernData e = eval_ptr(n.a, g);
            for (int i = 0; i < e.ch.size(); ++i)
                if (g.degree(i) % 2) e.ch[i] = -e.ch[i];
            return e;
        }
        case Op::Sum: {
            ChernData x = eval_ptr(n.a, g), y = eval_ptr(n.b, g);
            return {x.rank + y.rank, x.ch + y.ch};
        }
        case Op::Tensor: {
            ChernData x = eval_ptr(n.a, g), y = eval_ptr(n.b, g);
            return {x.rank * y.rank, multiply(x.ch, y.ch, g)};
        }
        case Op::Lambda: return lambda_power(eval_ptr(n.a, g), n.param, g);
        case Op::Sym: return sym_power(eval_ptr(n.a, g), n.param, g);
    }
    throw std::logic_error("bad bundle node");
}

std::string str_node(const BundleExpr::Node& n) {
    using Op = BundleExpr::Op;
    switch (n.op) {
        case Op::Sub: return "S";
        case Op::Quot: return "Q";
        case Op::Line: return "O(" + std::to_string(n.param) + ")";
        case Op::Dual: return str_node(*n.a) + "^v";
        case Op::Sum: return "(" + str_node(*n.a) + " + " + str_node(*n.b) + ")";
        case Op::Tensor: return "(" + str_node(*n.a) + " * " + str_node(*n.b) + ")";
        case Op::Lambda: return "L^" + std::to_string(n.param) + " " + str_node(*n.a);
        case Op::Sym: return "Sym^" + std::to_string(n.param) + " " + str_node(*n.a);
    }
    return "?";
}

}  // namespace

ChernData lambda_power(const ChernData& e, int p, const Grassmannian& g) { return newton_power<-1>(e, p, g); }
ChernData sym_power(const ChernData& e, int p, const Grassmannian& g) { return newton_power<1>(e, p, g); }

ChernData BundleExpr::eval(const Grassmannian& g) const {
    if (!node_) throw std::logic_error("empty bundle expression");
    return eval_node(*node_, g);
}

std::string BundleExpr::str() const { return node_ ? str_node(*node_) : "0"; }

BundleExpr tangent() { return BundleExpr::S().dual() * BundleExpr::Q(); }
BundleExpr cotangent() { return BundleExpr::S() * BundleExpr::Q().dual(); }

std::vector<CohClass> chern_from_ch(const CohClass& ch, const Grassmannian& g) {
    CohClass x(g);
    Rational f = 1;
    for (int j = 1; j <= g.dim(); ++j) {
        if (j > 1) f *= (j - 1);
        x += Rational(j % 2 ? 1 : -1) * f * ch.part(g, j);
    }
    CohClass c = exp_class(x, g);
    std::vector<CohClass> out;
    for (int j = 0; j <= g.dim(); ++j) out.push_back(c.part(g, j));
    return out;
}

std::vector<CohClass> chern(const BundleExpr& b, const Grassmannian& g) { return chern_from_ch(b.eval(g).ch, g); }

CohClass todd_from_ch(const CohClass& ch, const Grassmannian& g) {
    auto a = log_todd_series(g.dim());
    CohClass x(g);
    Rational f = 1;
    for (int j = 1; j <= g.dim(); ++j) {
        f *= j;
        x += a[j] * f * ch.part(g, j);
    }
    return exp_class(x, g);
}

namespace {

mpz_class integral_or_throw(const Rational& r, const std::string& what) {
    if (r.get_den() != 1) throw std::logic_error(what + ": HRR integral " + r.get_str() + " is not an integer");
    return r.get_num();
}

}  // namespace

mpz_class chi_hrr(const ChernData& b, const Grassmannian& g) {
    CohClass td = todd_from_ch(tangent().eval(g).ch, g);
    return integral_or_throw(integrate(multiply(b.ch, td, g), g), "chi");
}

mpz_class chi_hrr(const BundleExpr& b, const Grassmannian& g) {
    CohClass td = todd_from_ch(tangent().eval(g).ch, g);
    return integral_or_throw(integrate(multiply(b.eval(g).ch, td, g), g), "chi(" + b.str() + ")");
}

std::vector<mpz_class> chi_omega_ci(int k, int n, const std::vector<int>& degrees) {
    Grassmannian g(k, n);
    int c = static_cast<int>(degrees.size());
    if (c > g.dim()) throw std::invalid_argument("codimension exceeds dim Gr(k,n)");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("hypersurface degrees must be positive");
    int D = g.dim() - c;

    CohClass td = todd_from_ch(tangent().eval(g).ch, g);
    CohClass s1 = g.dim() > 0 ? CohClass::schubert(g, {1}) : CohClass(g);
    // td(Gr) * ch(O_X)
    CohClass w = td;
    ChernData conormal{0, CohClass(g)};
    for (int d : degrees) {
        CohClass e = exp_class(Rational(-d) * s1, g);
        w = multiply(w, CohClass::unit(g) - e, g);
        conormal.rank += 1;
        conormal.ch += e;
    }
    ChernData omega = cotangent().eval(g);
    std::vector<CohClass> lam(D + 1), sym(D + 1);
    for (int p = 0; p <= D; ++p) {
        lam[p] = lambda_power(omega, p, g).ch;
        sym[p] = c ? sym_power(conormal, p, g).ch : (p ? CohClass(g) : CohClass::unit(g));
    }
    std::vector<mpz_class> out;
    for (int p = 0; p <= D; ++p) {
        CohClass cls(g);
        for (int j = 0; j <= p; ++j) {
            CohClass t = multiply(lam[p - j], sym[j], g);
            if (j % 2) cls -= t;
            else cls += t;
        }
        out.push_back(integral_or_throw(integrate(multiply(cls, w, g), g),
                                        "chi(Omega^" + std::to_string(p) + ")"));
    }
    return out;
}

std::vector<std::vector<long>> hodge_ci(int k, int n, const std::vector<int>& degrees) {
    Grassmannian g(k, n);
    int D = g.dim() - static_cast<int>(degrees.size());
    if (D < 1) throw std::invalid_argument("complete intersection of dimension " + std::to_string(D) + " in Gr(" +
                                           std::to_string(k) + "," + std::to_string(n) + ")");
    auto chi = chi_omega_ci(k, n, degrees);
    std::vector<std::vector<long>> h(D + 1, std::vector<long>(D + 1, 0));
    for (int p = 0; p <= D; ++p)
        for (int q = 0; q <= D; ++q) {
            if (p + q < D && p == q) h[p][q] = g.count_in_degree(p);
            if (p + q > D && p == q) h[p][q] = g.count_in_degree(D - p);
        }
    for (int p = 0; p <= D; ++p) {
        mpz_class rest = chi[p];
        for (int q = 0; q <= D; ++q)
            if (q != D - p) rest -= (q % 2 ? -1 : 1) * h[p][q];
        if ((D - p) % 2) rest = -rest;
        if (rest < 0) throw std::logic_error("negative middle Hodge number h^{" + std::to_string(p) + "," +
                                             std::to_string(D - p) + "}");
        h[p][D - p] = rest.get_si();
    }
    return h;
}

std::vector<long> hodge_middle(int k, int n, int c) {
    if (c < 0) throw std::invalid_argument("negative codimension");
    auto h = hodge_ci(k, n, std::vector<int>(c, 1));
    int D = static_cast<int>(h.size()) - 1;
    std::vector<long> row;
    for (int p = D; p >= 0; --p) row.push_back(h[p][D - p]);
    return row;
}

std::string render_diamond(const std::vector<std::vector<long>>& h) {
    int D = static_cast<int>(h.size()) - 1;
    size_t w = 1;
    for (const auto& r : h)
        for (long x : r) w = std::max(w, std::to_string(x).size());
    std::ostringstream os;
    for (int s = 0; s <= 2 * D; ++s) {
        int lo = std::max(0, s - D), hi = std::min(s, D);
        int L = hi - lo + 1;
        std::string line((D + 1 - L) * w, ' ');
        for (int p = hi; p >= lo; --p) {
            std::string v = std::to_string(h[p][s - p]);
            line += std::string(w - v.size(), ' ') + v;
            if (p > lo) line += std::string(w, ' ');
        }
        os << line << "\n";
    }
    return os.str();
}

}  // namespace qlwb
