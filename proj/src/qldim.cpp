#include "qlwb/qldim.hpp"

#include <algorithm>
#include <numeric>

namespace qlwb {

namespace {

const char* const kSep = " — ";

Certificate cert(std::string rule, std::string citation, std::optional<int> lo, std::optional<int> hi) {
    return Certificate{std::move(rule), std::move(citation), lo, hi, {}};
}

Certificate no_bound(std::string rule, std::string citation, std::string why) {
    return Certificate{std::move(rule), std::move(citation), std::nullopt, std::nullopt, std::move(why)};
}

std::string hi_str(std::optional<int> hi) { return hi ? std::to_string(*hi) : "∞"; }

}  // namespace

std::string Certificate::bound_str() const {
    if (!undetermined.empty()) return "undetermined (" + undetermined + ")";
    if (lo && hi) return *lo == *hi ? "= " + std::to_string(*lo) : "in [" + std::to_string(*lo) + "," + std::to_string(*hi) + "]";
    if (lo) return "≥ " + std::to_string(*lo);
    if (hi) return "≤ " + std::to_string(*hi);
    return "no bound";
}

std::string Certificate::str() const { return rule + kSep + citation + kSep + bound_str(); }

std::string QLResult::interval_str() const { return "[" + std::to_string(lo) + "," + hi_str(hi) + "]"; }

std::string QLResult::str() const {
    std::string s = "dimQL ∈ " + interval_str() + "\n";
    for (auto& c : certificates) s += "  " + c.str() + "\n";
    return s;
}

void QLResult::apply(const Certificate& c) {
    certificates.push_back(c);
    if (c.lo) lo = std::max(lo, *c.lo);
    if (c.hi) hi = hi ? std::min(*hi, *c.hi) : *c.hi;
    if (hi && lo > *hi) {
        const Certificate* a = nullptr;
        const Certificate* b = nullptr;
        for (auto& x : certificates) {
            if (x.lo && *x.lo == lo && !a) a = &x;
            if (x.hi && *x.hi == *hi && !b) b = &x;
        }
        throw InconsistentData("inconsistent catalog data: " + (a ? a->str() : std::string("?")) + " vs " +
                               (b ? b->str() : std::string("?")));
    }
}

QLResult universal_bounds(int dim) {
    QLResult r;
    r.apply(cert("universal", "norm residue theorem (Rost-Voevodsky)", 0, dim));
    return r;
}

QLResult qldim_surface(const VarietyData& v) {
    if (v.dim != 2) throw std::invalid_argument(v.name + ": surface criterion needs dim 2");
    const std::string rule = "surface criterion";
    QLResult r = universal_bounds(2);
    std::optional<int> pg = v.h(0, 2);
    int q = v.betti(1) / 2;
    TriState t3 = v.torsion_status(3);
    if ((pg && *pg > 0) || t3.is_nonzero()) {
        std::string why = pg && *pg > 0 ? "p_g = " + std::to_string(*pg) : "H^3 has torsion " + t3.str();
        r.apply(cert(rule, why, 2, 2));
        return r;
    }
    if (pg == 0 && t3.is_zero()) {
        if (q > 0)
            r.apply(cert(rule, "p_g = 0, H^3 torsion-free, q = " + std::to_string(q), 1, 1));
        else
            r.apply(cert(rule, "p_g = q = 0, H^3 torsion-free", 0, 0));
        return r;
    }
    if (q > 0) r.apply(cert(rule, "q = " + std::to_string(q), 1, std::nullopt));
    r.apply(no_bound(rule, "p_g and torsion of H^3",
                     !pg ? std::string("Hodge numbers missing") : std::string("torsion of H^3 unknown")));
    return r;
}

QLResult qldim_3fold_rc(const VarietyData& v) {
    if (v.dim != 3 || v.flags.rationally_connected != true)
        throw std::invalid_argument(v.name + ": 3-fold criterion needs a rationally connected 3-fold");
    const std::string rule = "rationally connected 3-fold criterion";
    QLResult r = universal_bounds(3);
    r.apply(cert(rule, "H^0(H^3) = H^1(H^3) = 0 and CH^2 -> H^4 onto (Voisin)", std::nullopt, 2));
    TriState t3 = v.torsion_status(3);
    int b3 = v.betti(3);
    if (t3.is_nonzero()) r.apply(cert(rule, "H^3 has torsion " + t3.str(), 2, std::nullopt));
    if (t3.is_zero()) r.apply(cert(rule, "H^3 torsion-free", std::nullopt, 1));
    if (b3 == 0 && t3.is_zero()) r.apply(cert(rule, "H^3 = 0", std::nullopt, 0));
    if (b3 > 0 || t3.is_nonzero()) r.apply(cert(rule, "H^3 != 0", 1, std::nullopt));
    if (t3.is_undetermined()) r.apply(no_bound(rule, "torsion of H^3", "torsion of H^3 unknown"));
    return r;
}

QLResult qldim_4fold_rc(const VarietyData& v) {
    if (v.dim != 4 || v.flags.rationally_connected != true)
        throw std::invalid_argument(v.name + ": 4-fold criterion needs a rationally connected 4-fold");
    const Flags& f = v.flags;
    const std::string cit = "Colliot-Thelene-Voisin: H^1(H^4) and H^0(H^3) of rationally connected 4-folds";
    QLResult r = universal_bounds(4);

    Flag n2h5 = f.n2h5_full;
    if (v.betti(5) == 0 && v.torsion_status(5).is_zero()) n2h5 = true;
    Flag a;
    if (f.alg_eq_hom_ch1 == false || n2h5 == false)
        a = false;
    else if (f.alg_eq_hom_ch1 == true && n2h5 == true)
        a = true;
    if (a == true) r.apply(cert("4-fold criterion (a)", "CH_1 alg = hom and N^2H^5 = H^5", std::nullopt, 3));
    if (a == false) r.apply(cert("4-fold criterion (a)", "CH_1 alg != hom or N^2H^5 != H^5", 4, std::nullopt));
    if (!a) r.apply(no_bound("4-fold criterion (a)", cit, "algebraic vs homological equivalence on CH_1 unknown"));

    if (f.ihc_h4 == false || f.ihc_h6 == false)
        r.apply(cert("4-fold criterion (b)", "integral Hodge conjecture fails on H^4 or H^6", 3, std::nullopt));
    bool b = a == true && f.ihc_h4 == true && f.ihc_h6 == true;
    if (b) r.apply(cert("4-fold criterion (b)", "integral Hodge conjecture on H^4 and H^6", std::nullopt, 2));

    std::optional<int> h13 = v.h(1, 3);
    TriState t5 = v.torsion_status(5);
    TriState t3 = v.torsion_status(3);
    if (b && h13 == 0 && t5.is_zero() && t3.is_zero())
        r.apply(cert("4-fold criterion (c)", "h^{1,3} = 0, H^3 and H^5 torsion-free", std::nullopt, 1));
    if (h13 && *h13 > 0)
        r.apply(cert("4-fold criterion (c')", "h^{1,3} = " + std::to_string(*h13), 2, std::nullopt));
    if (t5.is_nonzero()) r.apply(cert("4-fold criterion (c')", "H^5 has torsion", 2, std::nullopt));
    if (!h13) r.apply(no_bound("4-fold criterion (c')", cit, "Hodge numbers missing"));
    return r;
}

std::optional<QLResult> theorem_rule(const VarietyData& v) {
    if (v.dim == 2) return qldim_surface(v);
    if (v.dim == 3 && v.flags.rationally_connected == true) return qldim_3fold_rc(v);
    if (v.dim == 4 && v.flags.rationally_connected == true) return qldim_4fold_rc(v);
    return std::nullopt;
}

std::optional<Certificate> rule_hodge_lower(const VarietyData& v) {
    std::optional<int> h = v.h(0, v.dim);
    if (!h || *h == 0) return std::nullopt;
    return cert("hodge lower", "h^{0," + std::to_string(v.dim) + "} = " + std::to_string(*h) + " makes H^0(H^d(Z/m)) nonzero",
                v.dim, std::nullopt);
}

std::optional<Certificate> rule_rational_upper(const VarietyData& v) {
    if (v.flags.rational != true) return std::nullopt;
    return cert("rational upper", "birational invariance of (K/tau)_d and (K/tau)_(d-1); weak factorization", std::nullopt,
                std::max(v.dim - 2, 0));
}

std::optional<Certificate> rule_conic_upper(const VarietyData& v) {
    if (!v.flags.conic_bundle_base_dim) return std::nullopt;
    return cert("conic bundle upper", "Kahn-Rost-Sujatha: H^0(H^d(Q/Z)) = 0 for conic bundles", std::nullopt,
                *v.flags.conic_bundle_base_dim);
}

std::optional<Certificate> rule_negative_k_lower(const TriState& ku1) {
    if (!ku1.is_nonzero()) return std::nullopt;
    return cert("negative K lower", "K_{-1}(X, Z/m) = 0 but KU^1(X, Z/m) != 0", 1, std::nullopt);
}

std::optional<Certificate> rule_pipeline(const PipelineResult& p) {
    std::string why = "K/tau E_2 page from the Bloch-Ogus page";
    for (auto& n : p.notes) why += "; " + n;
    return cert("spectral sequence", why, p.lo, p.hi);
}

QLResult resolve_basic_component(const ComponentRef& c) {
    QLResult r;
    switch (c.kind) {
        case ComponentRef::Kind::Exceptional:
            r.apply(cert("exceptional object", "K of a point", 0, 0));
            break;
        case ComponentRef::Kind::Curve:
            if (c.genus == 0)
                r.apply(cert("curve", "genus 0", 0, 0));
            else
                r.apply(cert("curve", "genus " + std::to_string(c.genus) + ": h^{0,1} != 0", 1, 1));
            break;
        case ComponentRef::Kind::Phantom:
            r.apply(cert("phantom", "Gorchinskiy-Orlov", 0, 0));
            break;
        case ComponentRef::Kind::Opaque:
            r.apply(cert("opaque component", c.name, c.lo, c.hi));
            break;
        default:
            throw std::invalid_argument("component " + c.str() + " needs a resolver");
    }
    return r;
}

QLResult rule_sod(const std::vector<ComponentRef>& components, const ComponentResolver& resolve) {
    if (components.empty()) throw std::invalid_argument("empty semi-orthogonal decomposition");
    QLResult r;
    std::optional<int> hi = 0;
    for (auto& c : components) {
        QLResult x = resolve ? resolve(c) : resolve_basic_component(c);
        r.lo = std::max(r.lo, x.lo);
        if (!x.hi)
            hi.reset();
        else if (hi)
            hi = std::max(*hi, *x.hi);
        r.certificates.push_back(cert("component " + c.str(), "dimQL " + x.interval_str(), x.lo, x.hi));
    }
    r.hi = hi;
    return r;
}

std::optional<Certificate> rule_twisted_upper(bool index2, const QLResult& base) {
    if (!index2 || !base.hi) return std::nullopt;
    return cert("twisted upper", "index 2 class realised by an etale P^1 bundle P; K(P) = K(X) + K(X, alpha)",
                std::nullopt, *base.hi);
}

bool TorsionStatement::vanishes_for(long m) const { return n && std::gcd(m, *n) == 1; }

TorsionStatement rule_torsion_order(const VarietyData& v) {
    TorsionStatement t;
    const int d = v.dim;
    if (d < 2) return t;
    if (v.flags.stably_rational == true || v.flags.rational == true) {
        t.n = 1;
        t.upper = d - 2;
    } else if (v.flags.unirational_degree && (v.flags.ch0_trivial == true || v.flags.rationally_connected == true)) {
        t.n = *v.flags.unirational_degree;
    } else {
        return t;
    }
    t.top = "(K/tau)_" + std::to_string(d) + "(X, Z/m) is " + std::to_string(*t.n) + "-torsion";
    t.next = "(K/tau)_" + std::to_string(d - 1) + "(X, Z/m) is " + std::to_string(*t.n * *t.n) + "-torsion";
    return t;
}

QLResult rule_twisted_enriques_chain(const QLResult& twisted_upper, const TwistedChainInputs& in) {
    QLResult r = twisted_upper;
    const std::string rule = "twisted chain";
    std::string missing;
    if (!in.ku)
        missing = "KU(X, alpha) unknown";
    else if (!in.ku->odd.is_zero())
        missing = "KU^1(X, alpha) = " + in.ku->odd.str();
    else if (!in.ku->even.resolved || !in.ku->even.resolved->is_torsion_free())
        missing = "KU^0(X, alpha) not known torsion-free";
    else if (in.k0_to_ku0_surjective != true)
        missing = "K_0 -> KU^0 surjectivity not established";
    else if (!twisted_upper.hi || *twisted_upper.hi > 2)
        missing = "no upper bound 2";
    if (!missing.empty()) {
        r.apply(no_bound(rule, "KU(X, alpha) and K_0 -> KU^0", missing));
        return r;
    }
    r.apply(cert(rule,
                 "KU^1(X, alpha) = 0, KU^0(X, alpha) = " + in.ku->even.resolved->str() +
                     " torsion-free, K_0 -> KU^0 onto (" + in.surjectivity_citation + ")",
                 0, 0));
    return r;
}

QLResult combine(const VarietyData& v, const RuleInputs& in) {
    QLResult r = universal_bounds(v.dim);
    if (auto t = theorem_rule(v))
        for (auto& c : t->certificates)
            if (c.rule != "universal") r.apply(c);
    if (auto c = rule_hodge_lower(v)) r.apply(*c);
    if (auto c = rule_rational_upper(v)) r.apply(*c);
    if (auto c = rule_conic_upper(v)) r.apply(*c);
    TorsionStatement ts = rule_torsion_order(v);
    if (ts.upper) r.apply(cert("decomposition of the diagonal", "Bloch-Srinivas; N = 1", std::nullopt, *ts.upper));
    if (auto c = rule_negative_k_lower(in.ku1)) r.apply(*c);
    if (in.pipeline) r.apply(*rule_pipeline(*in.pipeline));
    if (in.use_sod && v.sod) {
        QLResult s = rule_sod(*v.sod, in.resolve);
        std::string parts;
        for (auto& c : *v.sod) parts += (parts.empty() ? "" : ", ") + c.str();
        r.apply(cert("semi-orthogonal decomposition", "additivity over <" + parts + ">", s.lo, s.hi));
    }
    return r;
}

}  // namespace qlwb
