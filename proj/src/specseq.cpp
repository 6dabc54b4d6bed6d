#include "qlwb/specseq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qlwb {

PageEntry PageEntry::of(FgAbGroup g, std::string label) {
    PageEntry e;
    e.rank_pos = g.rank() > 0 ? TriState::nonzero(g.free_part()) : TriState::zero();
    e.tors_nz = g.is_torsion_free() ? TriState::zero() : TriState::nonzero(g.torsion());
    e.exact = std::move(g);
    e.label = std::move(label);
    return e;
}

PageEntry PageEntry::opaque(std::string label, TriState rank_pos, TriState tors_nz) {
    PageEntry e;
    e.label = std::move(label);
    e.rank_pos = std::move(rank_pos);
    e.tors_nz = std::move(tors_nz);
    if (e.known_zero()) e.exact = FgAbGroup{};
    return e;
}

PageEntry PageEntry::unknown(std::string label) {
    return opaque(label, TriState::undetermined(label + " unknown"), TriState::undetermined(label + " unknown"));
}

std::string PageEntry::str() const { return exact ? exact->str() : label; }

std::string Coefficients::str() const {
    switch (kind) {
        case Kind::Z:
            return "Z";
        case Kind::ZMod:
            return "Z/" + std::to_string(m);
        case Kind::SymbolicM:
            return "Z/m";
    }
    return {};
}

PageEntry BigradedPage::at(int p, int q) const {
    auto it = entries_.find({p, q});
    return it == entries_.end() ? PageEntry::of(FgAbGroup{}) : it->second;
}

void BigradedPage::set(int p, int q, PageEntry e) { entries_[{p, q}] = std::move(e); }

void BigradedPage::validate_support() const {
    for (auto& [pq, e] : entries_) {
        auto [p, q] = pq;
        bool inside = p >= 0 && q >= 0 && p <= q && q <= dim_;
        if (!inside && !e.known_zero())
            throw std::logic_error("entry (" + std::to_string(p) + "," + std::to_string(q) +
                                   ") violates Bloch-Ogus support");
    }
}

namespace {

// H^i as an entry; opaque when its torsion is unknown
PageEntry cohomology_entry(const VarietyData& v, int i) {
    std::string label = "H^" + std::to_string(i);
    if (auto g = v.cohomology(i)) return PageEntry::of(*g, label);
    const FgAbGroup& f = v.h_int.at(i);
    TriState rank = !v.rank_known(i) ? TriState::undetermined("rank of " + label + " unknown")
                    : f.rank() > 0   ? TriState::nonzero(f.free_part())
                                     : TriState::zero();
    return PageEntry::opaque(label, rank, v.torsion_status(i));
}

void fill_unknown(BigradedPage& page, const std::string& why) {
    int d = page.dim();
    page.set(0, 0, PageEntry::of(FgAbGroup::free(1)));
    for (int q = 1; q <= d; ++q)
        for (int p = 0; p <= q; ++p) page.set(p, q, PageEntry::unknown("E(" + std::to_string(p) + "," + std::to_string(q) + ")"));
    page.set(d, d, PageEntry::of(FgAbGroup::free(1)));
    page.notes.push_back(why);
}

void build_curve(const VarietyData& v, BigradedPage& page) {
    page.set(0, 0, PageEntry::of(FgAbGroup::free(1)));
    page.set(0, 1, cohomology_entry(v, 1));
    page.set(1, 1, PageEntry::of(FgAbGroup::free(1)));
}

void build_surface(const VarietyData& v, BigradedPage& page) {
    page.set(0, 0, PageEntry::of(FgAbGroup::free(1)));
    page.set(0, 1, cohomology_entry(v, 1));
    std::optional<int> pg = v.h(2, 0);
    std::optional<int> rho = v.ns_rank;
    if (!rho && pg == 0) rho = v.betti(2);  // Lefschetz (1,1)

    // NS contains all torsion of H^2
    if (rho && v.torsion_known(2)) {
        page.set(1, 1, PageEntry::of(FgAbGroup::free(*rho) + v.h_int.at(2).torsion(), "NS"));
        page.set(0, 2, PageEntry::of(FgAbGroup::free(v.betti(2) - *rho), "H^2/NS"));
    } else {
        page.set(1, 1, PageEntry::opaque("NS", TriState::nonzero_bound(0, "hyperplane class"), v.torsion_status(2)));
        if (rho) {
            page.set(0, 2, PageEntry::of(FgAbGroup::free(v.betti(2) - *rho), "H^2/NS"));
        } else if (pg) {
            page.set(0, 2, PageEntry::opaque("H^2/NS", *pg > 0 ? TriState::nonzero_bound(0, "p_g > 0") : TriState::zero(),
                                             TriState::zero()));
        } else {
            page.set(0, 2, PageEntry::opaque("H^2/NS", TriState::undetermined("p_g unknown"), TriState::zero()));
            page.notes.push_back("Hodge numbers missing: H^2/NS undetermined");
        }
    }
    page.set(1, 2, cohomology_entry(v, 3));
    page.set(2, 2, PageEntry::of(FgAbGroup::free(1)));
}

void build_rc3(const VarietyData& v, BigradedPage& page) {
    page.set(0, 0, PageEntry::of(FgAbGroup::free(1)));
    PageEntry ns = cohomology_entry(v, 2);
    ns.label = "NS";
    page.set(1, 1, ns);
    page.set(1, 2, cohomology_entry(v, 3));
    // CH^2 -> H^4 is surjective for uniruled 3-folds (Voisin), and E^{1,3} = 0
    PageEntry ch2 = cohomology_entry(v, 4);
    ch2.label = "CH^2/alg";
    page.set(2, 2, ch2);
    page.set(3, 3, PageEntry::of(FgAbGroup::free(1)));
}

void build_rc4(const VarietyData& v, BigradedPage& page) {
    const Flags& f = v.flags;
    page.set(0, 0, PageEntry::of(FgAbGroup::free(1)));
    PageEntry ns = cohomology_entry(v, 2);
    ns.label = "NS";
    page.set(1, 1, ns);
    page.set(1, 2, cohomology_entry(v, 3));

    TriState h4_tors = v.torsion_status(4);
    page.set(2, 2, PageEntry::opaque("CH^2/alg", TriState::nonzero_bound(0, "h^2"),
                                     h4_tors.is_zero() ? TriState::zero()
                                                       : TriState::undetermined("torsion of CH^2/alg")));

    // H^4/alg: rank 2h^{1,3} by the rational Hodge conjecture
    TriState r13 = TriState::undetermined("h^{1,3} unknown");
    if (auto h13 = v.h(1, 3)) r13 = *h13 > 0 ? TriState::nonzero_bound(0, "h^{1,3} > 0") : TriState::zero();
    TriState t13 = f.ihc_h4 ? (*f.ihc_h4 ? TriState::zero() : TriState::nonzero_bound(2, "integral Hodge conjecture fails on H^4"))
                            : TriState::undetermined("integral Hodge conjecture on H^4 unknown");
    page.set(1, 3, PageEntry::opaque("H^4/alg", r13, t13));

    const FgAbGroup& h5 = v.h_int.at(5);
    if (f.n2h5_full == true || (h5.is_zero() && v.torsion_known(5))) {
        PageEntry e = cohomology_entry(v, 5);
        e.label = "N^2H^5";
        page.set(2, 3, e);
    } else {
        page.set(2, 3, PageEntry::opaque("N^2H^5",
                                         h5.rank() == 0 && v.rank_known(5) ? TriState::zero()
                                                                           : TriState::undetermined("rank of N^2H^5"),
                                         v.torsion_status(5).is_zero() ? TriState::zero()
                                                                       : TriState::undetermined("torsion of N^2H^5")));
    }

    if (f.alg_eq_hom_ch1 == true && f.ihc_h6 == true) {
        PageEntry e = cohomology_entry(v, 6);
        e.label = "CH^3/alg";
        page.set(3, 3, e);
    } else {
        bool tf = f.alg_eq_hom_ch1 == true && v.torsion_status(6).is_zero();
        page.set(3, 3, PageEntry::opaque("CH^3/alg", TriState::nonzero_bound(0, "class of a line"),
                                         tf ? TriState::zero() : TriState::undetermined("torsion of CH^3/alg")));
    }

    // H^1(H^4(Z)) is torsion (Colliot-Thelene-Voisin)
    std::optional<FgAbGroup> h5g = v.cohomology(5);
    TriState h1h4 = h5g ? h1h4_from_flags(f.n2h5_full, f.alg_eq_hom_ch1, *h5g)
                        : TriState::undetermined("torsion of H^5 unknown");
    page.set(1, 4, PageEntry::opaque("H^1(H^4)", TriState::zero(), h1h4));

    page.set(2, 4, PageEntry::opaque("H^6/alg", TriState::zero(),
                                     f.ihc_h6 ? (*f.ihc_h6 ? TriState::zero()
                                                           : TriState::nonzero_bound(2, "integral Hodge conjecture fails on H^6"))
                                              : TriState::undetermined("integral Hodge conjecture on H^6 unknown")));
    page.set(4, 4, PageEntry::of(FgAbGroup::free(1)));
}

void build_pure(const VarietyData& v, BigradedPage& page) {
    int d = v.dim;
    for (int p = 0; p <= d; ++p) page.set(p, p, cohomology_entry(v, 2 * p));
    for (int k = 0; 2 * k + 1 < 2 * d; ++k) {
        if (v.h_int.at(2 * k + 1).is_zero() && v.torsion_known(2 * k + 1)) continue;
        if (k + 1 > d) throw DataError(v.name, "h_int", "odd cohomology out of range");
        page.set(k, k + 1, cohomology_entry(v, 2 * k + 1));
    }
}

}  // namespace

BigradedPage build_bloch_ogus_page(const VarietyData& v) {
    BigradedPage page(v.dim);
    bool rc = v.flags.rationally_connected == true;
    switch (v.dim) {
        case 1:
            build_curve(v, page);
            break;
        case 2:
            build_surface(v, page);
            break;
        case 3:
            if (rc)
                build_rc3(v, page);
            else if (v.flags.pure_coniveau == true)
                build_pure(v, page);
            else
                fill_unknown(page, "3-fold not known to be rationally connected");
            break;
        case 4:
            if (rc)
                build_rc4(v, page);
            else if (v.flags.pure_coniveau == true)
                build_pure(v, page);
            else
                fill_unknown(page, "4-fold not known to be rationally connected");
            break;
        default:
            if (v.flags.pure_coniveau == true)
                build_pure(v, page);
            else
                fill_unknown(page, "no E_2 table for dimension " + std::to_string(v.dim) + " without pure coniveau");
    }
    page.validate_support();
    return page;
}

namespace {

std::string paren(const std::string& s) {
    bool simple = s.find(' ') == std::string::npos && s.find('/') == std::string::npos;
    return simple ? s : "(" + s + ")";
}

std::string symbolic(const KtauEntry& e, const std::string& m) {
    std::vector<std::string> parts;
    const std::string zm = "Z/" + m;
    if (e.g.exact) {
        int a = e.g.exact->rank();
        if (a == 1) parts.push_back(zm);
        if (a > 1) parts.push_back("(" + zm + ")^" + std::to_string(a));
        if (!e.g.exact->is_torsion_free()) parts.push_back(paren(e.g.exact->torsion().str()) + "/" + m);
    } else if (!e.g.known_zero()) {
        parts.push_back(paren(e.g.label) + "/" + m);
    }
    if (e.h.exact) {
        if (!e.h.exact->is_torsion_free()) parts.push_back(m + "-tors(" + e.h.exact->torsion().str() + ")");
    } else if (!e.h.tors_nz.is_zero()) {
        parts.push_back(m + "-tors(" + e.h.label + ")");
    }
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
}

TriState quotient_status_at(const PageEntry& g, long m) {
    if (g.exact) return tensor_zmod(*g.exact, m).is_zero() ? TriState::zero() : TriState::nonzero(tensor_zmod(*g.exact, m));
    if (g.rank_pos.is_nonzero()) return TriState::nonzero_bound(m, g.label + " has positive rank");
    if (g.known_zero()) return TriState::zero();
    return TriState::undetermined(g.label + "/" + std::to_string(m));
}

TriState torsion_status_at(const PageEntry& h, long m) {
    if (h.exact) return m_torsion(*h.exact, m).is_zero() ? TriState::zero() : TriState::nonzero(m_torsion(*h.exact, m));
    if (h.tors_nz.is_zero()) return TriState::zero();
    return TriState::undetermined(std::to_string(m) + "-torsion of " + h.label);
}

}  // namespace

TriState KtauEntry::status(const Coefficients& c) const {
    if (at_m) {
        if (at_m->is_zero()) return TriState::zero();
        if (at_m->resolved) return TriState::nonzero(*at_m->resolved, "m = " + std::to_string(c.m));
        return TriState::nonzero_bound(2, "m = " + std::to_string(c.m));
    }
    if (c.kind == Coefficients::Kind::ZMod) return tri_or(quotient_status_at(g, c.m), torsion_status_at(h, c.m));
    TriState s = tri_or(g.nonzero(), h.tors_nz);
    if (s.is_nonzero() && g.exact && h.exact) {
        long m0 = smallest_detecting_modulus(*g.exact + h.exact->torsion());
        GroupUpToExtension w = sheaf_uct(*g.exact, *h.exact, m0);
        return TriState::nonzero(*w.resolved, "m = " + std::to_string(m0));
    }
    return s;
}

std::string KtauEntry::str() const {
    if (at_m) return at_m->str();
    return symbolic(*this, "m");
}

KtauEntry KtauPage::at(int p, int qk) const {
    auto it = entries_.find({p, qk});
    if (it != entries_.end()) return it->second;
    KtauEntry e{PageEntry::of(FgAbGroup{}), PageEntry::of(FgAbGroup{}), std::nullopt};
    if (coeff_.kind == Coefficients::Kind::ZMod) e.at_m = middle_of_short_exact(FgAbGroup{}, FgAbGroup{});
    return e;
}

void KtauPage::set(int p, int qk, KtauEntry e) { entries_[{p, qk}] = std::move(e); }

KtauPage ktau_e2(const BigradedPage& pageZ, long m) {
    if (m == 1 || m < 0) throw std::invalid_argument("modulus must be >= 2");
    Coefficients c{m == 0 ? Coefficients::Kind::SymbolicM : Coefficients::Kind::ZMod, m};
    const int d = pageZ.dim();
    KtauPage page(d, c);
    for (int j = 0; j <= d; ++j)
        for (int p = 0; p <= j; ++p) {
            KtauEntry e{pageZ.at(p, j), pageZ.at(p + 1, j), std::nullopt};
            if (m > 0 && e.g.exact && e.h.exact) e.at_m = sheaf_uct(*e.g.exact, *e.h.exact, m);
            auto [pp, qk] = reflect({p, j});
            page.set(pp, qk, e);
        }
    return page;
}

TriState ktau_top(const KtauPage& page, int d) {
    TriState s = page.status(0, -d);
    if (s.is_zero()) return TriState::zero("(K/tau)_d = H^0(H^d) vanishes");
    return s;
}

TriState ktau_next(const KtauPage& page, int d) {
    TriState a = page.status(1, -d);
    TriState b = page.status(0, -(d - 1));
    if (a.is_zero() && b.is_zero()) return TriState::zero("H^1(H^d) and H^0(H^(d-1)) vanish");
    if (a.is_nonzero()) return a;
    KtauEntry c = page.at(2, -d);
    TriState cs = c.status(page.coefficients());
    if (b.is_nonzero() && cs.is_zero()) return b;
    // E^{2,d} finite and E^{3,d} = 0: |H^2(H^d(Z/m))| = |H^1(H^d(Z/m))| for each m,
    // so either H^1(H^d) is nonzero or H^0(H^(d-1)) injects
    if (b.is_nonzero() && c.h.known_zero() && c.g.rank_pos.is_zero())
        return TriState::nonzero_bound(2, "H^0(H^(d-1)) nonzero and E^{2,d} finite");
    return TriState::undetermined("bounded below by H^1(H^d) = " + a.str() + "; above by H^0(H^(d-1)) = " + b.str());
}

const TriState& KtauProfile::at(int n) const {
    static const TriState zero = TriState::zero("n > dim");
    if (n < 0 || n >= static_cast<int>(groups.size())) return zero;
    return groups[n];
}

namespace {

bool isolated(const KtauPage& page, int p, int j) {
    const int d = page.dim();
    for (int r = 2; r <= d + 1; ++r) {
        int tp = p + r, tj = j + r - 1;
        if (tp <= tj && tj <= d && !page.status(tp, -tj).is_zero()) return false;
        int sp = p - r, sj = j - r + 1;
        if (sp >= 0 && sp <= sj && sj >= 0 && !page.status(sp, -sj).is_zero()) return false;
    }
    return true;
}

}  // namespace

KtauProfile ktau_profile(const KtauPage& page) {
    const int d = page.dim();
    KtauProfile prof;
    prof.dim = d;
    for (int n = 0; n <= d; ++n) {
        bool all_zero = true;
        std::optional<TriState> found;
        for (int p = 0; p + n <= d; ++p) {
            int j = p + n;
            TriState s = page.status(p, -j);
            if (!s.is_zero()) all_zero = false;
            if (!found && s.is_nonzero() && isolated(page, p, j)) found = s;
        }
        if (all_zero) {
            prof.groups.push_back(TriState::zero());
        } else if (n == d) {
            prof.groups.push_back(ktau_top(page, d));
        } else {
            TriState t = n == d - 1 ? ktau_next(page, d) : TriState::undetermined("differentials not determined");
            if (!t.is_nonzero() && found) t = *found;
            prof.groups.push_back(t);
        }
    }
    return prof;
}

PipelineResult pipeline_bounds(const BigradedPage& pageZ, const TriState& ku1) {
    const int d = pageZ.dim();
    PipelineResult res;
    KtauPage kt = ktau_e2(pageZ, 0);
    res.profile = ktau_profile(kt);
    res.notes = pageZ.notes;
    res.hi = 0;
    res.lo = 0;
    for (int n = 0; n <= d; ++n) {
        if (!res.profile.at(n).is_zero()) res.hi = n;
        if (res.profile.at(n).is_nonzero()) res.lo = n;
    }
    if (d >= 1 && res.profile.at(d).is_undetermined() && pageZ.at(1, d).rank_pos.is_zero()) {
        // if (K/tau)_d = 0 for all m then E^{0,d} = E^{1,d} = 0
        BigradedPage z = pageZ;
        z.set(0, d, PageEntry::of(FgAbGroup{}));
        z.set(1, d, PageEntry::of(FgAbGroup{}));
        if (ktau_next(ktau_e2(z, 0), d).is_nonzero() && res.lo < d - 1) {
            res.lo = d - 1;
            res.notes.push_back("case split on (K/tau)_d: either it is nonzero or (K/tau)_(d-1) is");
        }
    }
    if (ku1.is_nonzero() && res.lo < 1) {
        res.lo = 1;
        res.notes.push_back("KU^1(X, Z/m) nonzero while K_-1(X, Z/m) = 0");
    }
    if (ku1.is_zero() && res.hi <= 1 && res.hi > 0) {
        res.hi = 0;
        res.notes.push_back("KU^1(X, Z/m) = 0 for all m");
    }
    if (res.lo > res.hi) throw std::logic_error("pipeline produced an empty interval");
    return res;
}

KuPair ahss_ku(const GradedAb& h, const SplitPolicy& policy) {
    auto assemble = [&](int parity) {
        std::vector<int> degs;
        for (int i = h.top(); i >= 0; --i)
            if (i % 2 == parity) degs.push_back(i);
        if (degs.empty()) return middle_of_short_exact(FgAbGroup{}, FgAbGroup{});
        GroupUpToExtension g = middle_of_short_exact(FgAbGroup{}, h.at(degs[0]));
        bool amb = false;
        Int bound = h.at(degs[0]).torsion_order();
        for (std::size_t k = 1; k < degs.size(); ++k) {
            g = middle_of_short_exact(*g.resolved, h.at(degs[k]));
            amb = amb || g.ambiguous;
            bound *= h.at(degs[k]).torsion_order();
        }
        g.ambiguous = amb;
        if (!amb) return g;
        switch (policy.mode) {
            case SplitPolicy::Mode::AssumeSplit:
                break;
            case SplitPolicy::Mode::Refuse:
                g.resolved.reset();
                break;
            case SplitPolicy::Mode::CatalogOverride:
                if (policy.value.rank() != g.rank() || bound % policy.value.torsion_order() != 0)
                    throw std::invalid_argument("override " + policy.value.str() + " incompatible with the AHSS filtration");
                g.resolved = policy.value;
                g.ambiguous = false;
                g.citation = policy.citation;
                break;
        }
        return g;
    };
    return KuPair{assemble(0), assemble(1)};
}

TriState ku1_mod_status(const KuPair& ku) {
    if (!ku.odd.is_zero()) {
        if (ku.odd.resolved && !ku.odd.resolved->is_zero()) return TriState::nonzero(*ku.odd.resolved, "KU^odd nonzero");
        return TriState::nonzero_bound(2, "KU^odd nonzero");
    }
    if (!ku.even.resolved) return TriState::undetermined("KU^even unresolved");
    if (ku.even.resolved->is_torsion_free()) return TriState::zero("KU^odd = 0 and KU^even torsion-free");
    if (!ku.even.ambiguous) return TriState::nonzero(ku.even.resolved->torsion(), "torsion in KU^even");
    return TriState::undetermined("torsion of KU^even depends on an extension");
}

KuModM ku_mod_m(const FgAbGroup& even, const FgAbGroup& odd, long m, const SplitPolicy& policy) {
    return KuModM{middle_of_short_exact(tensor_zmod(even, m), m_torsion(odd, m), policy),
                  middle_of_short_exact(tensor_zmod(odd, m), m_torsion(even, m), policy)};
}

GysinResult gysin_p1(const GradedAb& hx, const std::map<int, IntMatrix>& cup_alpha,
                     const std::map<int, SplitPolicy>& overrides) {
    const int top = hx.top() + 2;
    auto map_at = [&](int i) {
        const FgAbGroup& s = hx.at(i);
        const FgAbGroup& t = hx.at(i + 3);
        auto it = cup_alpha.find(i);
        if (it == cup_alpha.end()) return IntMatrix(t.num_generators(), s.num_generators());
        const IntMatrix& m = it->second;
        if (m.rows() != static_cast<std::size_t>(t.num_generators()) ||
            m.cols() != static_cast<std::size_t>(s.num_generators()))
            throw std::invalid_argument("cup map in degree " + std::to_string(i) + " has shape " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                                        std::to_string(t.num_generators()) + "x" + std::to_string(s.num_generators()));
        if (!hom_well_defined(s, t, m))
            throw std::invalid_argument("cup map in degree " + std::to_string(i) + " is not a homomorphism " + s.str() +
                                        " -> " + t.str());
        return m;
    };
    for (auto& [i, m] : cup_alpha) map_at(i);

    GysinResult res;
    for (int i = 0; i <= top; ++i) {
        FgAbGroup coker = hom_cokernel(hx.at(i - 3), hx.at(i), map_at(i - 3));
        FgAbGroup ker = hom_kernel(hx.at(i - 2), hx.at(i + 1), map_at(i - 2));
        auto it = overrides.find(i);
        SplitPolicy pol = it == overrides.end() ? SplitPolicy::assume_split() : it->second;
        GroupUpToExtension w;
        try {
            w = middle_of_short_exact(coker, ker, pol);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("Gysin window in degree " + std::to_string(i) + ": " + e.what());
        }
        if (!w.resolved) throw std::invalid_argument("Gysin window in degree " + std::to_string(i) + " unresolved");
        res.h.set(i, *w.resolved);
        res.windows.push_back(w);
    }
    return res;
}

namespace {

std::string layout(const std::vector<std::string>& row_labels, const std::vector<std::vector<std::string>>& cells,
                   int cols) {
    std::vector<std::size_t> width(cols + 1, 0);
    for (auto& l : row_labels) width[0] = std::max(width[0], l.size());
    std::vector<std::string> header(cols);
    for (int p = 0; p < cols; ++p) {
        header[p] = p == 0 ? "p=0" : std::to_string(p);
        width[p + 1] = header[p].size();
    }
    for (auto& row : cells)
        for (int p = 0; p < cols; ++p) width[p + 1] = std::max(width[p + 1], row[p].size());
    std::ostringstream os;
    auto emit = [&](const std::string& label, const std::vector<std::string>& row) {
        std::string line = label + std::string(width[0] - label.size(), ' ');
        for (int p = 0; p < cols; ++p) line += " | " + row[p] + std::string(width[p + 1] - row[p].size(), ' ');
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << '\n';
    };
    for (std::size_t r = 0; r < cells.size(); ++r) emit(row_labels[r], cells[r]);
    emit("", header);
    return os.str();
}

}  // namespace

std::string render_grid(const BigradedPage& page) {
    const int d = page.dim();
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells;
    for (int q = d; q >= 0; --q) {
        labels.push_back(q == 0 ? "q=0" : std::to_string(q));
        std::vector<std::string> row(d + 1);
        for (int p = 0; p <= q; ++p) row[p] = page.at(p, q).str();
        cells.push_back(row);
    }
    return layout(labels, cells, d + 1);
}

std::string render_grid(const KtauPage& page) {
    const int d = page.dim();
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells;
    for (int j = 0; j <= d; ++j) {
        labels.push_back(j == 0 ? "q=0" : std::to_string(-j));
        std::vector<std::string> row(d + 1);
        for (int p = 0; p <= j; ++p) {
            KtauEntry e = page.at(p, -j);
            row[p] = e.at_m ? e.str()
                            : symbolic(e, page.coefficients().kind == Coefficients::Kind::ZMod
                                              ? std::to_string(page.coefficients().m)
                                              : "m");
        }
        cells.push_back(row);
    }
    return layout(labels, cells, d + 1);
}

}  // namespace qlwb
