#pragma once

#include "qlwb/exactseq.hpp"
#include "qlwb/fgab.hpp"
#include "qlwb/ktheory.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlwb {

using Flag = std::optional<bool>;

struct Flags {
    Flag rationally_connected;
    Flag ch0_trivial;
    Flag alg_eq_hom_ch1;
    Flag n2h5_full;
    Flag ihc_h4;
    Flag ihc_h6;
    Flag rational;
    Flag stably_rational;
    Flag k0_to_ku0_surjective;
    // cycle class maps are isomorphisms and odd cohomology sits in coniveau (d-1)/2
    Flag pure_coniveau;
    Flag ahss_degenerates;
    // AHSS filtration on KU splits (cited); otherwise extensions are assumed split and flagged
    Flag ahss_split;
    std::optional<int> unirational_degree;
    std::optional<int> conic_bundle_base_dim;
};

struct ComponentRef {
    enum class Kind { Exceptional, Curve, Variety, TwistedVariety, Phantom, Opaque };
    Kind kind = Kind::Exceptional;
    int count = 1;
    int genus = 0;
    std::string name;
    std::string brauer_class;
    int lo = 0;
    int hi = 0;

    std::string str() const;
};

struct Twist {
    std::string class_id;
    int index = 0;
};

class DataError : public std::runtime_error {
public:
    DataError(const std::string& entry, const std::string& field, const std::string& what)
        : std::runtime_error(entry + ": " + field + ": " + what) {}
};

struct VarietyData {
    std::string name;
    int dim = 0;
    GradedAb h_int;
    std::set<int> torsion_unknown;
    // degrees where even the rank is unknown; h_int holds 0 there
    std::set<int> rank_unknown;
    // full Hodge diamond or nothing
    std::map<std::pair<int, int>, int> hodge;
    std::optional<int> ns_rank;
    Flags flags;
    std::optional<std::vector<ComponentRef>> sod;
    std::optional<ChowData> chow;
    std::vector<Twist> twists;

    bool hodge_known() const { return !hodge.empty(); }
    std::optional<int> h(int p, int q) const;
    int betti(int i) const { return h_int.at(i).rank(); }
    bool torsion_known(int i) const { return !torsion_unknown.count(i) && !rank_unknown.count(i); }
    bool rank_known(int i) const { return !rank_unknown.count(i); }
    // H^i(X, Z) if its torsion is known
    std::optional<FgAbGroup> cohomology(int i) const;
    // torsion of H^i nonzero?
    TriState torsion_status(int i) const;
    bool cohomology_known() const { return torsion_unknown.empty() && rank_unknown.empty(); }

    void validate() const;
};

}  // namespace qlwb
