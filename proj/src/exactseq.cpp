#include "qlwb/exactseq.hpp"

#include <stdexcept>

namespace qlwb {

TriState TriState::zero(std::string reason) {
    TriState t;
    t.kind_ = Kind::Zero;
    t.reason_ = std::move(reason);
    return t;
}

TriState TriState::nonzero(FgAbGroup witness, std::string reason) {
    if (witness.is_zero()) throw std::invalid_argument("nonzero witness is the zero group");
    TriState t;
    t.kind_ = Kind::Nonzero;
    t.lower_ = witness.is_finite() ? witness.torsion_order() : Int(0);
    t.witness_ = std::move(witness);
    t.reason_ = std::move(reason);
    return t;
}

TriState TriState::nonzero_bound(Int order_at_least, std::string reason) {
    TriState t;
    t.kind_ = Kind::Nonzero;
    t.lower_ = order_at_least < 2 ? Int(2) : order_at_least;
    t.reason_ = std::move(reason);
    return t;
}

TriState TriState::undetermined(std::string reason) {
    TriState t;
    t.reason_ = std::move(reason);
    return t;
}

std::string TriState::str() const {
    std::string s;
    switch (kind_) {
        case Kind::Zero:
            s = "zero";
            break;
        case Kind::Nonzero:
            if (witness_)
                s = "nonzero (" + witness_->str() + ")";
            else
                s = "nonzero (order >= " + lower_.get_str() + ")";
            break;
        case Kind::Undetermined:
            s = "undetermined";
            break;
    }
    if (!reason_.empty()) s += ": " + reason_;
    return s;
}

TriState tri_or(const TriState& a, const TriState& b) {
    if (a.is_nonzero()) return a;
    if (b.is_nonzero()) return b;
    if (a.is_zero() && b.is_zero()) return TriState::zero();
    return a.is_undetermined() ? a : b;
}

bool extension_forced(const FgAbGroup& sub, const FgAbGroup& quot) {
    for (auto& d : quot.divisors()) {
        if (sub.rank() > 0) return false;
        for (auto& e : sub.divisors())
            if (gcd(d, e) != 1) return false;
    }
    return true;
}

bool GroupUpToExtension::torsion_order_determined() const {
    return sub.is_finite() || extension_forced(sub, quot);
}

const FgAbGroup& GroupUpToExtension::group() const {
    if (!resolved) throw std::logic_error("extension of " + quot.str() + " by " + sub.str() + " is unresolved");
    return *resolved;
}

std::string GroupUpToExtension::str() const {
    if (!resolved) return "ext(" + quot.str() + " by " + sub.str() + ") [undetermined]";
    return ambiguous ? resolved->str() + " [extension-ambiguous]" : resolved->str();
}

GroupUpToExtension middle_of_short_exact(const FgAbGroup& sub, const FgAbGroup& quot, const SplitPolicy& policy) {
    GroupUpToExtension g{sub, quot, std::nullopt, false, {}};
    if (extension_forced(sub, quot)) {
        g.resolved = sub + quot;
        if (policy.mode == SplitPolicy::Mode::CatalogOverride && policy.value != *g.resolved)
            throw std::invalid_argument("override " + policy.value.str() + " contradicts the forced extension " +
                                        g.resolved->str());
        return g;
    }
    g.ambiguous = true;
    switch (policy.mode) {
        case SplitPolicy::Mode::AssumeSplit:
            g.resolved = sub + quot;
            break;
        case SplitPolicy::Mode::CatalogOverride: {
            const FgAbGroup& v = policy.value;
            bool ok = v.rank() == g.rank() && g.torsion_order_bound() % v.torsion_order() == 0 &&
                      (!sub.is_finite() || v.torsion_order() == g.torsion_order_bound());
            if (!ok)
                throw std::invalid_argument("override " + v.str() + " is not an extension of " + quot.str() + " by " +
                                            sub.str());
            g.resolved = v;
            g.ambiguous = false;
            g.citation = policy.citation;
            break;
        }
        case SplitPolicy::Mode::Refuse:
            break;
    }
    return g;
}

GroupUpToExtension sheaf_uct(const FgAbGroup& hiz, const FgAbGroup& hnext, long m, const SplitPolicy& policy) {
    return middle_of_short_exact(tensor_zmod(hiz, m), m_torsion(hnext, m), policy);
}

TriState h1h4_from_flags(std::optional<bool> n2h5_full, std::optional<bool> alg_eq_hom_ch1, const FgAbGroup& h5,
                         const std::optional<FgAbGroup>& coker) {
    if (h5.is_zero()) n2h5_full = true;
    if (n2h5_full == false) {
        if (coker && !coker->is_zero()) return TriState::nonzero(*coker, "H^5/N^2H^5 injects into H^1(H^4)");
        return TriState::nonzero_bound(2, "H^5/N^2H^5 is nonzero and injects into H^1(H^4)");
    }
    if (alg_eq_hom_ch1 == false)
        return TriState::nonzero_bound(2, "Griff_1 is nonzero and is hit by H^1(H^4)");
    if (n2h5_full == true && alg_eq_hom_ch1 == true)
        return TriState::zero("N^2H^5 = H^5 and algebraic = homological equivalence on CH_1");
    return TriState::undetermined(!alg_eq_hom_ch1 ? "algebraic vs homological equivalence on CH_1 unknown"
                                                  : "coniveau of H^5 unknown");
}

}  // namespace qlwb
