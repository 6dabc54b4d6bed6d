#pragma once

#include "qlwb/exactseq.hpp"
#include "qlwb/fgab.hpp"
#include "qlwb/variety.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qlwb {

// An E_2 entry with Z coefficients: either an exact group or a named group
// known only through its rank/torsion status.
struct PageEntry {
    std::optional<FgAbGroup> exact;
    std::string label;
    TriState rank_pos = TriState::zero();
    TriState tors_nz = TriState::zero();

    static PageEntry of(FgAbGroup g, std::string label = {});
    static PageEntry opaque(std::string label, TriState rank_pos, TriState tors_nz);
    static PageEntry unknown(std::string label);

    TriState nonzero() const { return tri_or(rank_pos, tors_nz); }
    bool known_zero() const { return rank_pos.is_zero() && tors_nz.is_zero(); }
    std::string str() const;
};

enum class Orientation { BlochOgus, KTau };

struct Coefficients {
    enum class Kind { Z, ZMod, SymbolicM };
    Kind kind = Kind::Z;
    long m = 0;
    std::string str() const;
};

// (p, q) <-> (p, -q) between the Bloch-Ogus and K/tau orientations
inline std::pair<int, int> reflect(std::pair<int, int> pq) { return {pq.first, -pq.second}; }

class BigradedPage {
public:
    BigradedPage() = default;
    explicit BigradedPage(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    Orientation orientation() const { return Orientation::BlochOgus; }
    Coefficients coefficients() const { return {}; }

    // zero when unstored
    PageEntry at(int p, int q) const;
    void set(int p, int q, PageEntry e);
    const std::map<std::pair<int, int>, PageEntry>& entries() const { return entries_; }

    // p <= q <= dim, entries outside are zero
    void validate_support() const;
    std::vector<std::string> notes;

private:
    int dim_ = 0;
    std::map<std::pair<int, int>, PageEntry> entries_;
};

// H^p(H^j(Z/m)) = E^{p,j}/m + m-tors(E^{p+1,j}) up to extension
struct KtauEntry {
    PageEntry g;
    PageEntry h;
    std::optional<GroupUpToExtension> at_m;

    // nonzero for some m (symbolic) or at the page's m
    TriState status(const Coefficients& c) const;
    std::string str() const;
};

class KtauPage {
public:
    KtauPage() = default;
    KtauPage(int dim, Coefficients c) : dim_(dim), coeff_(c) {}

    int dim() const { return dim_; }
    Orientation orientation() const { return Orientation::KTau; }
    const Coefficients& coefficients() const { return coeff_; }

    // ktau coordinates: (p, -j) holds H^p(H^j(Z/m)), on diagonal n = j - p
    KtauEntry at(int p, int qk) const;
    void set(int p, int qk, KtauEntry e);
    TriState status(int p, int qk) const { return at(p, qk).status(coeff_); }
    const std::map<std::pair<int, int>, KtauEntry>& entries() const { return entries_; }

private:
    int dim_ = 0;
    Coefficients coeff_;
    std::map<std::pair<int, int>, KtauEntry> entries_;
};

BigradedPage build_bloch_ogus_page(const VarietyData& v);

// m = 0 gives the page symbolic in m
KtauPage ktau_e2(const BigradedPage& pageZ, long m);

TriState ktau_top(const KtauPage& page, int d);
TriState ktau_next(const KtauPage& page, int d);

struct KtauProfile {
    int dim = 0;
    std::vector<TriState> groups;  // n = 0..dim; zero above dim
    const TriState& at(int n) const;
};

KtauProfile ktau_profile(const KtauPage& page);

struct PipelineResult {
    int lo = 0;
    int hi = 0;
    KtauProfile profile;
    std::vector<std::string> notes;
};

// ku1: KU^1(X, Z/m) nonzero for some m
PipelineResult pipeline_bounds(const BigradedPage& pageZ, const TriState& ku1);

struct KuPair {
    GroupUpToExtension even;
    GroupUpToExtension odd;
};

KuPair ahss_ku(const GradedAb& h, const SplitPolicy& policy = SplitPolicy::assume_split());

// KU^1(X, Z/m) = KU^odd/m + m-tors(KU^even), nonzero for some m?
TriState ku1_mod_status(const KuPair& ku);

struct KuModM {
    GroupUpToExtension ku0m;
    GroupUpToExtension ku1m;
};

KuModM ku_mod_m(const FgAbGroup& even, const FgAbGroup& odd, long m,
                const SplitPolicy& policy = SplitPolicy::assume_split());

struct GysinResult {
    GradedAb h;
    std::vector<GroupUpToExtension> windows;
};

// cup_alpha[i]: H^i(X) -> H^{i+3}(X); missing degrees are zero maps
GysinResult gysin_p1(const GradedAb& hx, const std::map<int, IntMatrix>& cup_alpha,
                     const std::map<int, SplitPolicy>& overrides = {});

std::string render_grid(const BigradedPage& page);
std::string render_grid(const KtauPage& page);

}  // namespace qlwb
