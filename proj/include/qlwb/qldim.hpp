#pragma once

#include "qlwb/exactseq.hpp"
#include "qlwb/specseq.hpp"
#include "qlwb/variety.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlwb {

struct Certificate {
    std::string rule;
    std::string citation;
    std::optional<int> lo;
    std::optional<int> hi;
    // no bound; the reason is recorded
    std::string undetermined;

    std::string bound_str() const;
    std::string str() const;
};

class InconsistentData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QLResult {
    int lo = 0;
    std::optional<int> hi;  // nullopt is infinity
    std::vector<Certificate> certificates;

    bool is_exact() const { return hi && *hi == lo; }
    bool contains(int n) const { return n >= lo && (!hi || n <= *hi); }
    std::string interval_str() const;
    std::string str() const;

    // intersect with the certificate's bound and record it
    void apply(const Certificate& c);
};

QLResult universal_bounds(int dim);

QLResult qldim_surface(const VarietyData& v);
QLResult qldim_3fold_rc(const VarietyData& v);
QLResult qldim_4fold_rc(const VarietyData& v);
// the theorem operation for v's dimension, if one applies
std::optional<QLResult> theorem_rule(const VarietyData& v);

std::optional<Certificate> rule_hodge_lower(const VarietyData& v);
std::optional<Certificate> rule_rational_upper(const VarietyData& v);
std::optional<Certificate> rule_conic_upper(const VarietyData& v);
// KU^1(X, Z/m) != 0 for some m contradicts dimQL = 0 since K_{-1}(X, Z/m) = 0
std::optional<Certificate> rule_negative_k_lower(const TriState& ku1);
std::optional<Certificate> rule_pipeline(const PipelineResult& p);

using ComponentResolver = std::function<QLResult(const ComponentRef&)>;
QLResult resolve_basic_component(const ComponentRef& c);
QLResult rule_sod(const std::vector<ComponentRef>& components, const ComponentResolver& resolve);

std::optional<Certificate> rule_twisted_upper(bool index2, const QLResult& base);

struct TorsionStatement {
    std::optional<long> n;
    std::optional<int> upper;
    std::string top;
    std::string next;
    // both (K/tau)_d and (K/tau)_(d-1) vanish with Z/m coefficients
    bool vanishes_for(long m) const;
};
TorsionStatement rule_torsion_order(const VarietyData& v);

struct TwistedChainInputs {
    std::optional<KuPair> ku;  // KU(X, alpha)
    Flag k0_to_ku0_surjective;
    std::string surjectivity_citation;
};
QLResult rule_twisted_enriques_chain(const QLResult& twisted_upper, const TwistedChainInputs& in);

struct RuleInputs {
    std::optional<PipelineResult> pipeline;
    TriState ku1 = TriState::undetermined("KU not computed");
    ComponentResolver resolve;
    bool use_sod = true;
};

QLResult combine(const VarietyData& v, const RuleInputs& in);

}  // namespace qlwb
