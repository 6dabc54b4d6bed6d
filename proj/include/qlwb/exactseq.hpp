#pragma once

#include "qlwb/fgab.hpp"

#include <optional>
#include <string>

namespace qlwb {

class TriState {
public:
    enum class Kind { Zero, Nonzero, Undetermined };

    static TriState zero(std::string reason = {});
    static TriState nonzero(FgAbGroup witness, std::string reason = {});
    // nonzero, with only a lower bound on the order known
    static TriState nonzero_bound(Int order_at_least, std::string reason = {});
    static TriState undetermined(std::string reason);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_nonzero() const { return kind_ == Kind::Nonzero; }
    bool is_undetermined() const { return kind_ == Kind::Undetermined; }
    const std::optional<FgAbGroup>& witness() const { return witness_; }
    const Int& order_lower_bound() const { return lower_; }
    const std::string& reason() const { return reason_; }

    std::string str() const;

private:
    Kind kind_ = Kind::Undetermined;
    std::optional<FgAbGroup> witness_;
    Int lower_ = 0;
    std::string reason_;
};

// three-valued flag combinators; nullopt is unknown
TriState tri_or(const TriState& a, const TriState& b);

struct SplitPolicy {
    enum class Mode { AssumeSplit, CatalogOverride, Refuse };
    Mode mode = Mode::AssumeSplit;
    FgAbGroup value;
    std::string citation;

    static SplitPolicy assume_split() { return {}; }
    static SplitPolicy refuse() { return {Mode::Refuse, {}, {}}; }
    static SplitPolicy override_with(FgAbGroup g, std::string citation) {
        return {Mode::CatalogOverride, std::move(g), std::move(citation)};
    }
};

struct GroupUpToExtension {
    FgAbGroup sub;
    FgAbGroup quot;
    std::optional<FgAbGroup> resolved;
    bool ambiguous = false;
    std::string citation;

    int rank() const { return sub.rank() + quot.rank(); }
    bool is_zero() const { return sub.is_zero() && quot.is_zero(); }
    // The torsion order of an extension is fixed when sub is finite or the
    // extension is forced; otherwise only the divisor bound product(sub)*product(quot).
    bool torsion_order_determined() const;
    Int torsion_order_bound() const { return sub.torsion_order() * quot.torsion_order(); }
    // resolved group, or throws
    const FgAbGroup& group() const;

    std::string str() const;
};

// Ext^1(quot, sub) = 0
bool extension_forced(const FgAbGroup& sub, const FgAbGroup& quot);

GroupUpToExtension middle_of_short_exact(const FgAbGroup& sub, const FgAbGroup& quot,
                                         const SplitPolicy& policy = SplitPolicy::assume_split());

// H^i(H^j(Z/m)) from H^i(H^j(Z)) and H^{i+1}(H^j(Z))
GroupUpToExtension sheaf_uct(const FgAbGroup& hiz, const FgAbGroup& hnext, long m,
                             const SplitPolicy& policy = SplitPolicy::assume_split());

// H^1(H^4(Z)) of a 4-fold from 0 -> N^2H^5 -> H^5 -> H^1(H^4) -> CH^3/alg -> H^6
TriState h1h4_from_flags(std::optional<bool> n2h5_full, std::optional<bool> alg_eq_hom_ch1, const FgAbGroup& h5,
                         const std::optional<FgAbGroup>& coker = std::nullopt);

}  // namespace qlwb
