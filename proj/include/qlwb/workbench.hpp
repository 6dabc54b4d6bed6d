#pragma once

#include "qlwb/ktheory.hpp"
#include "qlwb/qldim.hpp"
#include "qlwb/specseq.hpp"
#include "qlwb/variety.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qlwb {

// a value from the literature with its source
template <class T>
struct Cited {
    T value;
    std::string cite;
};

struct SodPiece {
    ComponentRef ref;
    // kuznetsov pieces
    bool kuznetsov = false;
    std::string label;
    std::string entry;     // catalog entry housing the piece, if any
    std::string k_symbol;  // object named in K_n(., Q)
    std::optional<Cited<std::pair<FgAbGroup, FgAbGroup>>> ku;
};

struct TwistedData {
    std::string base;
    std::string class_id;
    int index = 0;
    std::map<int, IntMatrix> cup_alpha;
    std::map<int, Cited<FgAbGroup>> gysin_overrides;
    std::optional<Cited<FgAbGroup>> total_ku_even;  // resolves the AHSS filtration on P
    Flag k0_to_ku0_surjective;
    std::string surjectivity_cite;
};

struct KTableExpected {
    std::optional<std::string> n0, odd, even;
};

struct Expected {
    std::optional<Cited<std::pair<int, int>>> qldim;
    std::optional<Cited<std::pair<FgAbGroup, FgAbGroup>>> ku;
    std::optional<Cited<std::pair<long, std::pair<FgAbGroup, FgAbGroup>>>> ku_mod;
    std::optional<Cited<GradedAb>> gysin;
    std::optional<Cited<std::map<std::pair<int, int>, FgAbGroup>>> e2;
    // n -> "zero" | "nonzero" for all m
    std::optional<Cited<std::map<int, std::string>>> ktau;
    std::optional<Cited<KTableExpected>> k_table;
    std::optional<Cited<std::vector<long>>> hodge_middle;
};

struct HodgeRecipe {
    int k = 0, n = 0;
    std::vector<int> degrees;
};

struct CatalogEntry {
    enum class Kind { Variety, Twisted, Component };
    Kind kind = Kind::Variety;
    VarietyData v;  // for twisted and component entries only name and dim are meaningful
    std::vector<SodPiece> sod;
    std::optional<TwistedData> twisted;
    // component entries
    std::string parent;
    std::string label;
    std::optional<Cited<KGroupExpr>> k0;
    // AHSS on X
    std::optional<std::string> ahss_degenerates;
    std::optional<Cited<FgAbGroup>> ku_even_override;
    std::vector<FiltrationCertificate> filtration_certs;
    std::optional<HodgeRecipe> hodge_recipe;
    Expected expected;
    std::vector<std::string> citations;
    std::string source;  // file it came from
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CatalogEntry parse_entry(const std::string& json_text, const std::string& source = "<string>");
std::vector<CatalogEntry> load_catalog(const std::string& dir);
std::string default_catalog_dir();

class Catalog {
public:
    explicit Catalog(std::vector<CatalogEntry> entries);
    const CatalogEntry& at(const std::string& name) const;
    bool contains(const std::string& name) const { return index_.count(name) > 0; }
    const std::vector<CatalogEntry>& entries() const { return entries_; }

private:
    std::vector<CatalogEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

// Per-entry evaluation with memoisation; one instance per thread.
class Evaluator {
public:
    enum class Mode { Full, NoSod, NoResidual };

    explicit Evaluator(const Catalog& c) : cat_(c) {}

    QLResult qldim(const std::string& name, Mode mode = Mode::Full);
    std::optional<BigradedPage> page(const std::string& name);
    std::optional<PipelineResult> pipeline(const std::string& name);
    // KU(X); nullopt when AHSS degeneration is not asserted
    std::optional<KuPair> ku(const std::string& name);
    std::optional<GysinResult> gysin(const std::string& name);
    // K_n of the entry's kuznetsov or phantom piece, n in [lo, hi]
    std::vector<std::pair<int, KGroupExpr>> k_table(const std::string& name, int lo, int hi,
                                                    std::vector<std::string>* notes = nullptr);
    // KU ranks (even, odd) from Betti numbers, when known
    std::optional<std::pair<int, int>> ku_ranks(const std::string& name);

private:
    const Catalog& cat_;
    std::map<std::pair<std::string, Mode>, QLResult> ql_cache_;
    std::map<std::string, std::optional<KuPair>> ku_cache_;
    std::vector<std::pair<std::string, Mode>> stack_;

    QLResult compute_qldim(const CatalogEntry& e, Mode mode);
    QLResult resolve_component(const ComponentRef& c);
    std::optional<KuPair> compute_ku(const CatalogEntry& e);
    const SodPiece* k_piece(const CatalogEntry& e) const;
};

struct Check {
    std::string what;
    bool pass = false;
    std::string detail;
};

struct EntryReport {
    std::string name;
    std::vector<std::string> lines;
    std::vector<Check> checks;
    std::vector<std::string> errors;

    int failures() const;
    std::string str() const;
};

struct RunReport {
    std::vector<EntryReport> entries;
    std::vector<Check> cross;

    int failures() const;
    std::string str() const;
};

EntryReport run_entry(const Catalog& c, const std::string& name);
std::vector<Check> cross_checks(const Catalog& c);
RunReport check_all(const Catalog& c, bool parallel = false);

enum class ReportFormat { Text, Markdown };
std::string report(const Catalog& c, const std::string& name, ReportFormat f);

// single tables for golden files and the CLI
std::string e2_grid(const Catalog& c, const std::string& name);
std::string hodge_diamond(const Catalog& c, const std::string& name);
std::string k_table_str(const Catalog& c, const std::string& name, int lo, int hi);

// agreement of two dimQL intervals as used by the cross-checks
bool intervals_agree(const QLResult& theorem, const QLResult& pipeline);

}  // namespace qlwb
