#include "qlwb/ktheory.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qlwb {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '+' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

}  // namespace

void KGroupExpr::normalize() {
    std::sort(divisible.begin(), divisible.end());
    if (!finite.is_finite()) throw std::invalid_argument("finite summand has free rank");
}

KGroupExpr KGroupExpr::parse(std::string_view text) {
    KGroupExpr k;
    std::string s = trim(text);
    const std::string tag = "[up to filtration]";
    if (s.size() >= tag.size() && s.compare(s.size() - tag.size(), tag.size(), tag) == 0) {
        k.up_to_filtration = true;
        s = trim(std::string_view(s).substr(0, s.size() - tag.size()));
    }
    if (s == "0") return k;
    for (const auto& term : split_top_level(s)) {
        if (term.empty()) throw std::invalid_argument("empty summand in " + s);
        if (term == "Z") {
            k.free_rank += 1;
        } else if (term.rfind("Z^", 0) == 0) {
            std::string e = trim(term.substr(2));
            if (!e.empty() && e.front() == '(' && e.back() == ')') e = trim(e.substr(1, e.size() - 2));
            if (all_digits(e)) {
                k.free_rank += std::stoi(e);
            } else {
                auto plus = e.find('+');
                std::string sym = trim(e.substr(0, plus));
                if (!is_identifier(sym) || !k.free_symbol.empty()) throw std::invalid_argument("bad free rank: " + term);
                k.free_symbol = sym;
                if (plus != std::string::npos) {
                    std::string c = trim(e.substr(plus + 1));
                    if (!all_digits(c)) throw std::invalid_argument("bad free rank: " + term);
                    k.free_rank += std::stoi(c);
                }
            }
        } else if (term == "Q/Z") {
            k.qz_rank += 1;
        } else if (term.rfind("(Q/Z)^", 0) == 0) {
            std::string e = trim(term.substr(6));
            if (!all_digits(e)) throw std::invalid_argument("bad Q/Z rank: " + term);
            k.qz_rank += std::stoi(e);
        } else if (term.rfind("Z/", 0) == 0 || term.rfind("(Z/", 0) == 0) {
            k.finite = k.finite + FgAbGroup::parse(term);
        } else {
            k.divisible.push_back(term);
        }
    }
    k.normalize();
    return k;
}

bool KGroupExpr::is_zero() const {
    return free_rank == 0 && free_symbol.empty() && finite.is_zero() && qz_rank == 0 && divisible.empty();
}

std::string KGroupExpr::str() const {
    std::vector<std::string> parts;
    if (!free_symbol.empty())
        parts.push_back(free_rank == 0 ? "Z^" + free_symbol : "Z^(" + free_symbol + "+" + std::to_string(free_rank) + ")");
    else if (free_rank == 1)
        parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back("Z^" + std::to_string(free_rank));
    if (!finite.is_zero()) parts.push_back(finite.str());
    if (qz_rank == 1)
        parts.push_back("Q/Z");
    else if (qz_rank > 1)
        parts.push_back("(Q/Z)^" + std::to_string(qz_rank));
    for (auto& d : divisible) parts.push_back(d);
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
    if (out.empty()) out = "0";
    if (up_to_filtration) out += " [up to filtration]";
    return out;
}

KGroupExpr operator+(KGroupExpr a, const KGroupExpr& b) {
    if (!a.free_symbol.empty() && !b.free_symbol.empty())
        throw std::invalid_argument("cannot add two symbolic free ranks");
    a.free_rank += b.free_rank;
    if (a.free_symbol.empty()) a.free_symbol = b.free_symbol;
    a.finite = a.finite + b.finite;
    a.qz_rank += b.qz_rank;
    a.divisible.insert(a.divisible.end(), b.divisible.begin(), b.divisible.end());
    a.up_to_filtration = a.up_to_filtration || b.up_to_filtration;
    a.normalize();
    return a;
}

bool has_torsion(const KGroupExpr& g, const std::set<std::string>& torsion_free_symbols) {
    if (!g.finite.is_zero() || g.qz_rank > 0) return true;
    for (auto& d : g.divisible) {
        bool rational = d.size() > 3 && d.rfind("K_", 0) == 0 && d.compare(d.size() - 3, 3, " Q)") == 0;
        if (!rational && !torsion_free_symbols.count(d)) return true;
    }
    return false;
}

void ChowData::validate() const {
    if (groups.empty()) throw std::invalid_argument("empty Chow data");
    if (!(groups[0] == KGroupExpr::free(1))) throw std::invalid_argument("CH^0 must be Z");
}

KGroupExpr assemble_high_kn(const FgAbGroup& ku_even, const FgAbGroup& ku_odd, int qldim, int n,
                            const std::string& object) {
    int threshold = std::max(1, qldim - 2);
    if (n < threshold)
        throw std::invalid_argument("K_" + std::to_string(n) + " is below the range n >= " + std::to_string(threshold));
    // KU^{-n} is KU^even for n even
    const FgAbGroup& same = n % 2 == 0 ? ku_even : ku_odd;
    const FgAbGroup& other = n % 2 == 0 ? ku_odd : ku_even;
    KGroupExpr k;
    k.finite = same.torsion();
    k.qz_rank = other.rank();
    k.divisible = {"K_n(" + object + ", Q)"};
    return k;
}

namespace {

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

FiltrationResult k0_filtration(const ChowData& chow, const std::vector<FiltrationCertificate>& certs,
                               const GradedAb& h_int) {
    chow.validate();
    const int d = chow.dim();
    FiltrationResult res;
    auto cert = [&](int i, FiltrationCertificate::Kind kind) -> const FiltrationCertificate* {
        for (auto& c : certs)
            if (c.codim == i && c.kind == kind) return &c;
        return nullptr;
    };

    bool exact = true;
    for (int i = 0; i <= d; ++i) {
        const KGroupExpr& ch = chow.groups[i];
        if (factorial(i - 1 < 0 ? 0 : i - 1) <= 1) continue;
        if (!has_torsion(ch, chow.torsion_free_symbols)) continue;
        if (cert(i, FiltrationCertificate::Kind::Iso)) {
            res.notes.push_back("codim " + std::to_string(i) + ": isomorphism by " +
                                cert(i, FiltrationCertificate::Kind::Iso)->citation);
            continue;
        }
        const FiltrationCertificate* a = cert(i, FiltrationCertificate::Kind::Adams);
        bool ok = a != nullptr && !a->sources.empty();
        if (a) {
            for (auto& src : a->sources) {
                Int ann = adams_annihilator(a->weight, src.weight, a->ks);
                if (ann == 0) {
                    ok = false;
                } else if (src.argument == "divisible") {
                    // a bounded-exponent map out of a divisible group vanishes
                } else if (src.argument == "mod_cohomology") {
                    if (ann < 2) continue;
                    long m = ann.get_si();
                    FgAbGroup hm = tensor_zmod(h_int.at(src.degree), m) + m_torsion(h_int.at(src.degree + 1), m);
                    if (!hm.is_zero()) ok = false;
                } else {
                    ok = false;
                }
            }
            if (ok) res.notes.push_back("codim " + std::to_string(i) + ": incoming differentials vanish by Adams weights (" + a->citation + ")");
        }
        if (!ok) {
            exact = false;
            res.notes.push_back("codim " + std::to_string(i) + ": CH^i -> F^i/F^(i+1) not certified injective");
        }
    }

    // split_from[i]: F^i is a direct summand of K_0
    std::vector<bool> split_off(d + 2, false);
    split_off[d + 1] = true;
    for (int i = d; i >= 0; --i) {
        bool own = (i == d && chow.groups[d] == KGroupExpr::free(1)) || cert(i, FiltrationCertificate::Kind::Split);
        split_off[i] = split_off[i + 1] && own;
    }
    for (int i = 0; i <= d; ++i) {
        const KGroupExpr& ch = chow.groups[i];
        bool free = ch.finite.is_zero() && ch.qz_rank == 0 && ch.divisible.empty();
        if (!free && !split_off[i + 1]) {
            exact = false;
            res.notes.push_back("codim " + std::to_string(i) + ": extension not certified split");
        }
    }

    KGroupExpr k;
    for (auto& g : chow.groups) k = k + g;
    k.up_to_filtration = !exact;
    res.k0 = k;
    return res;
}

KGroupExpr strip_exceptional(const KGroupExpr& k0, int e) {
    if (e < 0 || k0.free_rank < e)
        throw std::invalid_argument("cannot strip " + std::to_string(e) + " copies of Z from " + k0.str());
    KGroupExpr r = k0;
    r.free_rank -= e;
    return r;
}

Int adams_annihilator(int wt_target, int wt_source, const std::vector<long>& ks) {
    if (ks.empty()) throw std::invalid_argument("no Adams operations given");
    Int g = 0;
    for (long k : ks) {
        Int a, b;
        mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(wt_target));
        mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(wt_source));
        g = gcd(g, abs(a - b));
    }
    return g;
}

TriState ch1_torsion_free(std::optional<bool> ch0_trivial, std::optional<bool> h5_zero,
                          std::optional<bool> h3_homology_zero) {
    if (ch0_trivial != true) return TriState::undetermined("CH_0 = Z not known");
    if (h5_zero == true) return TriState::zero("CH^3_alg torsion-free: H^5 = 0 and CH_0 = Z");
    if (h3_homology_zero == true) return TriState::zero("CH_1_alg torsion-free: H_3 = 0 and CH_0 = Z");
    return TriState::undetermined("neither H^5 nor H_3 known to vanish");
}

TriState phantom_vanishing(const KGroupExpr& k0, int qldim_hi) {
    if (k0.is_zero() && qldim_hi <= 0) return TriState::zero("K_0 = 0 and dimQL <= 0 (Gorchinskiy-Orlov)");
    if (!k0.is_zero()) return TriState::undetermined("K_0 is nonzero");
    return TriState::undetermined("dimQL not known to be 0");
}

}  // namespace qlwb
