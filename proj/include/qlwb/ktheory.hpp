#pragma once

#include "qlwb/exactseq.hpp"
#include "qlwb/fgab.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qlwb {

// Z^a + (finite) + (Q/Z)^b + named uniquely divisible or divisible summands.
// The free part may carry one symbolic rank, rendered Z^(r+a).
struct KGroupExpr {
    int free_rank = 0;
    std::string free_symbol;
    FgAbGroup finite;
    int qz_rank = 0;
    std::vector<std::string> divisible;  // kept sorted
    bool up_to_filtration = false;

    static KGroupExpr parse(std::string_view text);
    static KGroupExpr free(int r) { return KGroupExpr{r, {}, {}, 0, {}, false}; }

    bool is_zero() const;
    void normalize();
    std::string str() const;

    bool operator==(const KGroupExpr& o) const = default;
};

KGroupExpr operator+(KGroupExpr a, const KGroupExpr& b);

// A divisible summand admits torsion unless it is a rational K-group or
// certified torsion-free by the caller.
bool has_torsion(const KGroupExpr& g, const std::set<std::string>& torsion_free_symbols = {});

struct ChowData {
    std::vector<KGroupExpr> groups;  // CH^i by codimension
    std::set<std::string> torsion_free_symbols;

    int dim() const { return static_cast<int>(groups.size()) - 1; }
    void validate() const;
};

struct FiltrationCertificate {
    enum class Kind { Iso, Adams, Split };
    struct AdamsSource {
        int weight = 0;
        // "mod_cohomology": source/a injects into H^degree(X, Z/a)
        // "divisible": source is a divisible group
        std::string argument;
        int degree = 0;
    };
    int codim = 0;
    Kind kind = Kind::Iso;
    std::string citation;
    int weight = 0;
    std::vector<long> ks;
    std::vector<AdamsSource> sources;
};

KGroupExpr assemble_high_kn(const FgAbGroup& ku_even, const FgAbGroup& ku_odd, int qldim, int n,
                            const std::string& object = "X");

struct FiltrationResult {
    KGroupExpr k0;
    std::vector<std::string> notes;
};

FiltrationResult k0_filtration(const ChowData& chow, const std::vector<FiltrationCertificate>& certs,
                               const GradedAb& h_int);

KGroupExpr strip_exceptional(const KGroupExpr& k0, int e);

Int adams_annihilator(int wt_target, int wt_source, const std::vector<long>& ks);

// Zero means torsion-free.
TriState ch1_torsion_free(std::optional<bool> ch0_trivial, std::optional<bool> h5_zero,
                          std::optional<bool> h3_homology_zero);

// Zero means K_n vanishes for all n.
TriState phantom_vanishing(const KGroupExpr& k0, int qldim_hi);

}  // namespace qlwb
