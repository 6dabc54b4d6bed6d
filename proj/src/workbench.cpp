#include "qlwb/workbench.hpp"

#include "qlwb/schubert.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef QLWB_CATALOG_DIR
#define QLWB_CATALOG_DIR "catalog"
#endif

namespace qlwb {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- loading

struct Ctx {
    std::string entry;
    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw CatalogError(entry + ": " + field + ": " + what);
    }
};

const json* child(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string get_string(const Ctx& c, const json& j, const std::string& field) {
    if (!j.is_string()) c.fail(field, "expected a string");
    return j.get<std::string>();
}

int get_int(const Ctx& c, const json& j, const std::string& field) {
    if (!j.is_number_integer()) c.fail(field, "expected an integer");
    return j.get<int>();
}

FgAbGroup get_group(const Ctx& c, const json& j, const std::string& field) {
    try {
        return FgAbGroup::parse(get_string(c, j, field));
    } catch (const CatalogError&) {
        throw;
    } catch (const std::exception& e) {
        c.fail(field, e.what());
    }
}

std::string get_cite(const Ctx& c, const json& j, const std::string& field) {
    const json* cj = child(j, "cite");
    if (!cj) c.fail(field, "every literature value needs a citation");
    std::string s = get_string(c, *cj, field + ".cite");
    if (s.empty()) c.fail(field, "empty citation");
    return s;
}

const json& get_value(const Ctx& c, const json& j, const std::string& field) {
    if (!j.is_object()) c.fail(field, "expected {value, cite}");
    const json* v = child(j, "value");
    if (!v) c.fail(field, "missing value");
    return *v;
}

std::pair<FgAbGroup, FgAbGroup> get_pair(const Ctx& c, const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) c.fail(field, "expected [even, odd]");
    return {get_group(c, j[0], field), get_group(c, j[1], field)};
}

std::pair<int, int> parse_pq(const Ctx& c, const std::string& key, const std::string& field) {
    auto comma = key.find(',');
    if (comma == std::string::npos) c.fail(field, "key '" + key + "' is not p,q");
    try {
        return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        c.fail(field, "key '" + key + "' is not p,q");
    }
}

IntMatrix get_matrix(const Ctx& c, const json& j, const std::string& field) {
    if (!j.is_array()) c.fail(field, "expected a list of rows");
    std::vector<std::vector<long>> rows;
    for (auto& r : j) {
        if (!r.is_array()) c.fail(field, "expected a list of rows");
        std::vector<long> row;
        for (auto& x : r) row.push_back(get_int(c, x, field));
        rows.push_back(row);
    }
    if (!rows.empty())
        for (auto& r : rows)
            if (r.size() != rows[0].size()) c.fail(field, "ragged matrix");
    return IntMatrix::from_rows(rows);
}

Flag get_flag(const Ctx& c, const json& j, const std::string& field) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_boolean()) c.fail(field, "expected true, false or null");
    return j.get<bool>();
}

void load_flags(const Ctx& c, const json& j, Flags& f) {
    if (!j.is_object()) c.fail("flags", "expected an object");
    static const std::map<std::string, Flag Flags::*> bools = {
        {"rationally_connected", &Flags::rationally_connected},
        {"ch0_trivial", &Flags::ch0_trivial},
        {"alg_eq_hom_ch1", &Flags::alg_eq_hom_ch1},
        {"n2h5_full", &Flags::n2h5_full},
        {"ihc_h4", &Flags::ihc_h4},
        {"ihc_h6", &Flags::ihc_h6},
        {"rational", &Flags::rational},
        {"stably_rational", &Flags::stably_rational},
        {"k0_to_ku0_surjective", &Flags::k0_to_ku0_surjective},
        {"pure_coniveau", &Flags::pure_coniveau},
        {"ahss_degenerates", &Flags::ahss_degenerates},
        {"ahss_split", &Flags::ahss_split},
    };
    for (auto& [k, v] : j.items()) {
        if (auto it = bools.find(k); it != bools.end()) {
            f.*(it->second) = get_flag(c, v, "flags." + k);
        } else if (k == "unirational_degree") {
            if (!v.is_null()) f.unirational_degree = get_int(c, v, "flags." + k);
        } else if (k == "conic_bundle_base_dim") {
            if (!v.is_null()) f.conic_bundle_base_dim = get_int(c, v, "flags." + k);
        } else {
            c.fail("flags." + k, "unknown flag");
        }
    }
}

SodPiece load_piece(const Ctx& c, const json& j, int dim) {
    SodPiece p;
    if (!j.is_object() || !child(j, "kind")) c.fail("sod", "each piece needs a kind");
    std::string kind = get_string(c, j["kind"], "sod.kind");
    auto str_field = [&](const char* key) {
        const json* x = child(j, key);
        return x ? get_string(c, *x, std::string("sod.") + key) : std::string();
    };
    if (kind == "exceptional") {
        p.ref.kind = ComponentRef::Kind::Exceptional;
        p.ref.count = child(j, "count") ? get_int(c, j["count"], "sod.count") : 1;
    } else if (kind == "curve") {
        p.ref.kind = ComponentRef::Kind::Curve;
        p.ref.genus = get_int(c, j.value("genus", json()), "sod.genus");
    } else if (kind == "variety") {
        p.ref.kind = ComponentRef::Kind::Variety;
        p.ref.name = str_field("name");
        if (p.ref.name.empty()) c.fail("sod", "variety piece needs a name");
    } else if (kind == "twisted_variety") {
        p.ref.kind = ComponentRef::Kind::TwistedVariety;
        p.ref.name = str_field("entry");
        p.ref.brauer_class = str_field("class");
        if (p.ref.name.empty()) c.fail("sod", "twisted piece needs an entry");
    } else if (kind == "phantom") {
        p.ref.kind = ComponentRef::Kind::Phantom;
        p.entry = str_field("entry");
        p.label = str_field("label");
    } else if (kind == "opaque") {
        p.ref.kind = ComponentRef::Kind::Opaque;
        p.ref.name = str_field("label");
        p.ref.lo = get_int(c, j.value("lo", json()), "sod.lo");
        p.ref.hi = get_int(c, j.value("hi", json()), "sod.hi");
    } else if (kind == "kuznetsov") {
        p.kuznetsov = true;
        p.label = str_field("label");
        p.entry = str_field("entry");
        p.k_symbol = str_field("k_symbol");
        if (p.label.empty()) c.fail("sod", "kuznetsov piece needs a label");
        if (p.k_symbol.empty()) p.k_symbol = p.label;
        if (!p.entry.empty()) {
            p.ref.kind = ComponentRef::Kind::Variety;
            p.ref.name = p.entry;
        } else {
            p.ref.kind = ComponentRef::Kind::Opaque;
            p.ref.name = p.label;
            p.ref.lo = 0;
            p.ref.hi = dim;
        }
        if (const json* ku = child(j, "ku"))
            p.ku = Cited<std::pair<FgAbGroup, FgAbGroup>>{get_pair(c, get_value(c, *ku, "sod.ku"), "sod.ku"),
                                                         get_cite(c, *ku, "sod.ku")};
    } else {
        c.fail("sod.kind", "unknown piece kind '" + kind + "'");
    }
    return p;
}

FiltrationCertificate load_cert(const Ctx& c, const json& j) {
    FiltrationCertificate f;
    f.codim = get_int(c, j.value("codim", json()), "chow.certificates.codim");
    std::string kind = get_string(c, j.value("kind", json()), "chow.certificates.kind");
    if (kind == "iso")
        f.kind = FiltrationCertificate::Kind::Iso;
    else if (kind == "adams")
        f.kind = FiltrationCertificate::Kind::Adams;
    else if (kind == "split")
        f.kind = FiltrationCertificate::Kind::Split;
    else
        c.fail("chow.certificates.kind", "unknown certificate kind '" + kind + "'");
    f.citation = get_string(c, j.value("citation", json()), "chow.certificates.citation");
    if (f.citation.empty()) c.fail("chow.certificates", "certificate without citation");
    if (f.kind == FiltrationCertificate::Kind::Adams) {
        f.weight = get_int(c, j.value("weight", json()), "chow.certificates.weight");
        for (auto& k : j.value("ks", json::array())) f.ks.push_back(get_int(c, k, "chow.certificates.ks"));
        for (auto& s : j.value("sources", json::array())) {
            FiltrationCertificate::AdamsSource src;
            src.weight = get_int(c, s.value("weight", json()), "chow.certificates.sources.weight");
            src.argument = get_string(c, s.value("argument", json()), "chow.certificates.sources.argument");
            if (const json* d = child(s, "degree")) src.degree = get_int(c, *d, "chow.certificates.sources.degree");
            f.sources.push_back(src);
        }
        if (f.ks.empty()) c.fail("chow.certificates.ks", "Adams certificate needs operations");
    }
    return f;
}

void fill_hodge(const Ctx& c, const json& j, VarietyData& v) {
    if (!j.is_object()) c.fail("hodge", "expected an object of \"p,q\": h");
    std::map<std::pair<int, int>, int> given;
    for (auto& [k, val] : j.items()) {
        auto pq = parse_pq(c, k, "hodge");
        if (pq.first < 0 || pq.second < 0 || pq.first > v.dim || pq.second > v.dim)
            c.fail("hodge", "index " + k + " out of range");
        given[pq] = get_int(c, val, "hodge." + k);
    }
    // unspecified numbers follow from Hodge symmetry and Serre duality, else 0
    for (int p = 0; p <= v.dim; ++p)
        for (int q = 0; q <= v.dim; ++q) {
            std::pair<int, int> orbit[4] = {{p, q}, {q, p}, {v.dim - p, v.dim - q}, {v.dim - q, v.dim - p}};
            std::optional<int> val;
            for (auto& o : orbit)
                if (auto it = given.find(o); it != given.end()) {
                    if (val && *val != it->second)
                        c.fail("hodge", "h^{" + std::to_string(p) + "," + std::to_string(q) +
                                            "} conflicts with its symmetric partners");
                    val = it->second;
                }
            if (val && *val) v.hodge[{p, q}] = *val;
        }
    if (v.hodge.empty()) c.fail("hodge", "all Hodge numbers zero");
}

template <class T>
std::optional<Cited<T>> cited(const Ctx& c, const json& e, const char* key, T (*conv)(const Ctx&, const json&)) {
    const json* j = child(e, key);
    if (!j) return std::nullopt;
    std::string field = std::string("expected.") + key;
    return Cited<T>{conv(c, get_value(c, *j, field)), get_cite(c, *j, field)};
}

void load_expected(const Ctx& c, const json& j, Expected& ex) {
    if (!j.is_object()) c.fail("expected", "expected an object");
    static const std::set<std::string> known = {"qldim", "ku", "ku_mod", "gysin", "e2", "ktau", "k_table", "hodge_middle"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) c.fail("expected." + k, "unknown expectation");
    ex.qldim = cited<std::pair<int, int>>(c, j, "qldim", [](const Ctx& c, const json& v) {
        if (!v.is_array() || v.size() != 2) c.fail("expected.qldim", "expected [lo, hi]");
        std::pair<int, int> r{get_int(c, v[0], "expected.qldim"), get_int(c, v[1], "expected.qldim")};
        if (r.first > r.second || r.first < 0) c.fail("expected.qldim", "empty interval");
        return r;
    });
    ex.ku = cited<std::pair<FgAbGroup, FgAbGroup>>(
        c, j, "ku", [](const Ctx& c, const json& v) { return get_pair(c, v, "expected.ku"); });
    if (const json* km = child(j, "ku_mod")) {
        long m = get_int(c, km->value("m", json()), "expected.ku_mod.m");
        if (m < 2) c.fail("expected.ku_mod.m", "modulus must be >= 2");
        ex.ku_mod = Cited<std::pair<long, std::pair<FgAbGroup, FgAbGroup>>>{
            {m, get_pair(c, get_value(c, *km, "expected.ku_mod"), "expected.ku_mod")},
            get_cite(c, *km, "expected.ku_mod")};
    }
    ex.gysin = cited<GradedAb>(c, j, "gysin", [](const Ctx& c, const json& v) {
        if (!v.is_array()) c.fail("expected.gysin", "expected a list of groups");
        std::vector<FgAbGroup> g;
        for (auto& x : v) g.push_back(get_group(c, x, "expected.gysin"));
        return GradedAb(g);
    });
    ex.e2 = cited<std::map<std::pair<int, int>, FgAbGroup>>(c, j, "e2", [](const Ctx& c, const json& v) {
        if (!v.is_object()) c.fail("expected.e2", "expected an object of \"p,q\": group");
        std::map<std::pair<int, int>, FgAbGroup> m;
        for (auto& [k, x] : v.items()) m[parse_pq(c, k, "expected.e2")] = get_group(c, x, "expected.e2." + k);
        return m;
    });
    ex.ktau = cited<std::map<int, std::string>>(c, j, "ktau", [](const Ctx& c, const json& v) {
        if (!v.is_object()) c.fail("expected.ktau", "expected an object of n: zero|nonzero");
        std::map<int, std::string> m;
        for (auto& [k, x] : v.items()) {
            std::string s = get_string(c, x, "expected.ktau." + k);
            if (s != "zero" && s != "nonzero") c.fail("expected.ktau." + k, "must be zero or nonzero");
            m[std::stoi(k)] = s;
        }
        return m;
    });
    ex.k_table = cited<KTableExpected>(c, j, "k_table", [](const Ctx& c, const json& v) {
        if (!v.is_object()) c.fail("expected.k_table", "expected an object with keys 0, odd, even");
        KTableExpected t;
        for (auto& [k, x] : v.items()) {
            std::string s = get_string(c, x, "expected.k_table." + k);
            try {
                KGroupExpr::parse(s);
            } catch (const std::exception& e) {
                c.fail("expected.k_table." + k, e.what());
            }
            if (k == "0")
                t.n0 = s;
            else if (k == "odd")
                t.odd = s;
            else if (k == "even")
                t.even = s;
            else
                c.fail("expected.k_table." + k, "unknown key");
        }
        return t;
    });
    ex.hodge_middle = cited<std::vector<long>>(c, j, "hodge_middle", [](const Ctx& c, const json& v) {
        if (!v.is_array()) c.fail("expected.hodge_middle", "expected a list");
        std::vector<long> r;
        for (auto& x : v) r.push_back(get_int(c, x, "expected.hodge_middle"));
        return r;
    });
}

}  // namespace

CatalogEntry parse_entry(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw CatalogError(source + ": not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw CatalogError(source + ": top level must be an object");
    Ctx c{source};
    if (!child(j, "name")) c.fail("name", "missing");
    CatalogEntry e;
    e.source = source;
    e.v.name = get_string(c, j["name"], "name");
    c.entry = e.v.name;

    static const std::set<std::string> known = {"name", "kind", "dim", "h_int", "torsion_unknown", "hodge",
                                                "ns_rank", "flags", "sod", "chow", "twists", "twisted",
                                                "component", "ahss", "hodge_ci", "expected", "citations"};
    for (auto& [k, v] : j.items())
        if (!known.count(k)) c.fail(k, "unknown field");

    std::string kind = child(j, "kind") ? get_string(c, j["kind"], "kind") : "variety";
    if (kind == "variety")
        e.kind = CatalogEntry::Kind::Variety;
    else if (kind == "twisted")
        e.kind = CatalogEntry::Kind::Twisted;
    else if (kind == "component")
        e.kind = CatalogEntry::Kind::Component;
    else
        c.fail("kind", "must be variety, twisted or component");

    if (!child(j, "dim")) c.fail("dim", "missing");
    e.v.dim = get_int(c, j["dim"], "dim");
    if (e.v.dim < 1) c.fail("dim", "must be >= 1");

    if (e.kind == CatalogEntry::Kind::Variety) {
        const json* h = child(j, "h_int");
        if (!h || !h->is_array()) c.fail("h_int", "missing list of groups");
        std::vector<FgAbGroup> gs;
        for (std::size_t i = 0; i < h->size(); ++i) {
            if ((*h)[i] == "?") {
                e.v.rank_unknown.insert(static_cast<int>(i));
                gs.emplace_back();
            } else {
                gs.push_back(get_group(c, (*h)[i], "h_int[" + std::to_string(i) + "]"));
            }
        }
        e.v.h_int = GradedAb(gs);
        for (auto& d : j.value("torsion_unknown", json::array())) e.v.torsion_unknown.insert(get_int(c, d, "torsion_unknown"));
        if (const json* hj = child(j, "hodge")) fill_hodge(c, *hj, e.v);
        if (const json* ns = child(j, "ns_rank")) e.v.ns_rank = get_int(c, *ns, "ns_rank");
    } else {
        for (const char* f : {"h_int", "hodge", "ns_rank", "chow"})
            if (child(j, f)) c.fail(f, "only variety entries carry cohomology");
    }
    if (const json* f = child(j, "flags")) load_flags(c, *f, e.v.flags);

    if (const json* s = child(j, "sod")) {
        if (!s->is_array() || s->empty()) c.fail("sod", "expected a nonempty list");
        std::vector<ComponentRef> refs;
        for (auto& p : *s) {
            e.sod.push_back(load_piece(c, p, e.v.dim));
            refs.push_back(e.sod.back().ref);
        }
        e.v.sod = refs;
    }
    if (const json* ch = child(j, "chow")) {
        ChowData cd;
        for (auto& g : ch->value("groups", json::array())) {
            try {
                cd.groups.push_back(KGroupExpr::parse(get_string(c, g, "chow.groups")));
            } catch (const CatalogError&) {
                throw;
            } catch (const std::exception& ex) {
                c.fail("chow.groups", ex.what());
            }
        }
        for (auto& s : ch->value("torsion_free", json::array())) cd.torsion_free_symbols.insert(get_string(c, s, "chow.torsion_free"));
        for (auto& cert : ch->value("certificates", json::array())) e.filtration_certs.push_back(load_cert(c, cert));
        e.v.chow = cd;
    }
    for (auto& t : j.value("twists", json::array()))
        e.v.twists.push_back(Twist{get_string(c, t.value("class", json()), "twists.class"),
                                   child(t, "index") ? get_int(c, t["index"], "twists.index") : 0});

    if (const json* t = child(j, "twisted")) {
        if (e.kind != CatalogEntry::Kind::Twisted) c.fail("twisted", "only twisted entries carry twist data");
        TwistedData td;
        td.base = get_string(c, t->value("base", json()), "twisted.base");
        td.class_id = get_string(c, t->value("class", json()), "twisted.class");
        if (const json* ix = child(*t, "index")) td.index = get_int(c, *ix, "twisted.index");
        if (const json* cup = child(*t, "cup_alpha"))
            for (auto& [k, m] : cup->items()) td.cup_alpha[std::stoi(k)] = get_matrix(c, m, "twisted.cup_alpha." + k);
        if (const json* ov = child(*t, "gysin_overrides"))
            for (auto& [k, o] : ov->items())
                td.gysin_overrides[std::stoi(k)] = Cited<FgAbGroup>{get_group(c, get_value(c, o, "twisted.gysin_overrides"), "twisted.gysin_overrides"),
                                                                    get_cite(c, o, "twisted.gysin_overrides")};
        if (const json* ke = child(*t, "ku_even_total"))
            td.total_ku_even = Cited<FgAbGroup>{get_group(c, get_value(c, *ke, "twisted.ku_even_total"), "twisted.ku_even_total"),
                                               get_cite(c, *ke, "twisted.ku_even_total")};
        if (const json* s = child(*t, "k0_to_ku0_surjective")) {
            td.k0_to_ku0_surjective = get_flag(c, get_value(c, *s, "twisted.k0_to_ku0_surjective"), "twisted.k0_to_ku0_surjective");
            td.surjectivity_cite = get_cite(c, *s, "twisted.k0_to_ku0_surjective");
        }
        e.twisted = td;
    } else if (e.kind == CatalogEntry::Kind::Twisted) {
        c.fail("twisted", "twisted entry without twist data");
    }

    if (const json* comp = child(j, "component")) {
        if (e.kind != CatalogEntry::Kind::Component) c.fail("component", "only component entries name a parent");
        e.parent = get_string(c, comp->value("parent", json()), "component.parent");
        e.label = get_string(c, comp->value("label", json()), "component.label");
        if (const json* k0 = child(*comp, "k0")) {
            try {
                e.k0 = Cited<KGroupExpr>{KGroupExpr::parse(get_string(c, get_value(c, *k0, "component.k0"), "component.k0")),
                                         get_cite(c, *k0, "component.k0")};
            } catch (const CatalogError&) {
                throw;
            } catch (const std::exception& ex) {
                c.fail("component.k0", ex.what());
            }
        }
    } else if (e.kind == CatalogEntry::Kind::Component) {
        c.fail("component", "component entry without a parent");
    }

    if (const json* a = child(j, "ahss")) {
        if (const json* d = child(*a, "degenerates")) e.ahss_degenerates = get_string(c, *d, "ahss.degenerates");
        if (e.ahss_degenerates && e.ahss_degenerates->empty()) c.fail("ahss.degenerates", "needs a citation");
        if (const json* ke = child(*a, "ku_even"))
            e.ku_even_override = Cited<FgAbGroup>{get_group(c, get_value(c, *ke, "ahss.ku_even"), "ahss.ku_even"),
                                                  get_cite(c, *ke, "ahss.ku_even")};
    }
    if (const json* hc = child(j, "hodge_ci")) {
        HodgeRecipe r;
        const json& gr = hc->value("gr", json());
        if (!gr.is_array() || gr.size() != 2) c.fail("hodge_ci.gr", "expected [k, n]");
        r.k = get_int(c, gr[0], "hodge_ci.gr");
        r.n = get_int(c, gr[1], "hodge_ci.gr");
        for (auto& d : hc->value("degrees", json::array())) r.degrees.push_back(get_int(c, d, "hodge_ci.degrees"));
        if (r.k * (r.n - r.k) - static_cast<int>(r.degrees.size()) != e.v.dim)
            c.fail("hodge_ci", "ambient dimension minus codimension differs from dim");
        e.hodge_recipe = r;
    }
    if (const json* ex = child(j, "expected")) load_expected(c, *ex, e.expected);
    for (auto& s : j.value("citations", json::array())) e.citations.push_back(get_string(c, s, "citations"));

    if (e.kind == CatalogEntry::Kind::Variety) {
        try {
            e.v.validate();
        } catch (const DataError& d) {
            throw CatalogError(d.what());
        }
    }
    return e;
}

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw CatalogError(dir + ": not a catalog directory");
    std::vector<fs::path> files;
    for (auto& f : fs::directory_iterator(dir))
        if (f.path().extension() == ".json") files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::vector<CatalogEntry> out;
    for (auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        out.push_back(parse_entry(ss.str(), f.filename().string()));
    }
    return out;
}

std::string default_catalog_dir() { return QLWB_CATALOG_DIR; }

Catalog::Catalog(std::vector<CatalogEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.v.name < b.v.name; });
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (!index_.emplace(entries_[i].v.name, i).second)
            throw CatalogError(entries_[i].v.name + ": name: duplicate entry");
    auto need = [&](const CatalogEntry& e, const std::string& field, const std::string& n) {
        if (!n.empty() && !index_.count(n)) throw CatalogError(e.v.name + ": " + field + ": unknown entry '" + n + "'");
    };
    for (auto& e : entries_) {
        for (auto& p : e.sod) {
            if (p.ref.kind == ComponentRef::Kind::Variety || p.ref.kind == ComponentRef::Kind::TwistedVariety)
                need(e, "sod", p.ref.name);
            need(e, "sod", p.entry);
        }
        if (e.twisted) need(e, "twisted.base", e.twisted->base);
        if (e.kind == CatalogEntry::Kind::Component) {
            need(e, "component.parent", e.parent);
            bool found = false;
            for (auto& p : at(e.parent).sod) found = found || p.entry == e.v.name;
            if (!found) throw CatalogError(e.v.name + ": component.parent: parent SOD does not list this entry");
        }
    }
}

const CatalogEntry& Catalog::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw CatalogError("no catalog entry named '" + name + "'");
    return entries_[it->second];
}

// ---------------------------------------------------------------- evaluation

namespace {

Certificate make_cert(std::string rule, std::string citation, std::optional<int> lo, std::optional<int> hi) {
    Certificate c;
    c.rule = std::move(rule);
    c.citation = std::move(citation);
    c.lo = lo;
    c.hi = hi;
    return c;
}

std::string mode_str(Evaluator::Mode m) {
    switch (m) {
        case Evaluator::Mode::Full: return "full";
        case Evaluator::Mode::NoSod: return "without SOD";
        case Evaluator::Mode::NoResidual: return "without residual";
    }
    return "?";
}

}  // namespace

QLResult Evaluator::qldim(const std::string& name, Mode mode) {
    auto key = std::make_pair(name, mode);
    if (auto it = ql_cache_.find(key); it != ql_cache_.end()) return it->second;
    if (std::find(stack_.begin(), stack_.end(), key) != stack_.end()) {
        std::string path;
        for (auto& [n, m] : stack_) path += n + " (" + mode_str(m) + ") -> ";
        throw std::logic_error("cyclic dimQL resolution: " + path + name);
    }
    stack_.push_back(key);
    QLResult r;
    try {
        r = compute_qldim(cat_.at(name), mode);
    } catch (...) {
        stack_.pop_back();
        throw;
    }
    stack_.pop_back();
    ql_cache_[key] = r;
    return r;
}

QLResult Evaluator::resolve_component(const ComponentRef& c) {
    if (c.kind == ComponentRef::Kind::Variety || c.kind == ComponentRef::Kind::TwistedVariety) {
        const CatalogEntry& e = cat_.at(c.name);
        return qldim(c.name, e.kind == CatalogEntry::Kind::Component ? Mode::NoResidual : Mode::Full);
    }
    return resolve_basic_component(c);
}

std::optional<BigradedPage> Evaluator::page(const std::string& name) {
    const CatalogEntry& e = cat_.at(name);
    if (e.kind != CatalogEntry::Kind::Variety) return std::nullopt;
    return build_bloch_ogus_page(e.v);
}

std::optional<PipelineResult> Evaluator::pipeline(const std::string& name) {
    auto pg = page(name);
    if (!pg) return std::nullopt;
    auto k = ku(name);
    return pipeline_bounds(*pg, k ? ku1_mod_status(*k) : TriState::undetermined("KU not computed"));
}

std::optional<GysinResult> Evaluator::gysin(const std::string& name) {
    const CatalogEntry& e = cat_.at(name);
    if (!e.twisted || e.twisted->cup_alpha.empty()) return std::nullopt;
    const CatalogEntry& base = cat_.at(e.twisted->base);
    if (!base.v.cohomology_known()) throw std::invalid_argument(name + ": base cohomology has unknown torsion");
    std::map<int, SplitPolicy> ov;
    for (auto& [i, g] : e.twisted->gysin_overrides) ov[i] = SplitPolicy::override_with(g.value, g.cite);
    return gysin_p1(base.v.h_int, e.twisted->cup_alpha, ov);
}

std::optional<KuPair> Evaluator::ku(const std::string& name) {
    if (auto it = ku_cache_.find(name); it != ku_cache_.end()) return it->second;
    auto r = compute_ku(cat_.at(name));
    ku_cache_[name] = r;
    return r;
}

namespace {

KuPair ku_of_groups(const FgAbGroup& even, const FgAbGroup& odd) {
    return KuPair{middle_of_short_exact(FgAbGroup{}, even), middle_of_short_exact(FgAbGroup{}, odd)};
}

}  // namespace

const SodPiece* Evaluator::k_piece(const CatalogEntry& e) const {
    if (e.kind == CatalogEntry::Kind::Component) {
        for (auto& p : cat_.at(e.parent).sod)
            if (p.entry == e.v.name) return &p;
        return nullptr;
    }
    const SodPiece* found = nullptr;
    for (auto& p : e.sod)
        if (p.kuznetsov || p.ref.kind == ComponentRef::Kind::Phantom) {
            if (found) throw std::invalid_argument(e.v.name + ": several kuznetsov or phantom pieces");
            found = &p;
        }
    return found;
}

std::optional<KuPair> Evaluator::compute_ku(const CatalogEntry& e) {
    switch (e.kind) {
        case CatalogEntry::Kind::Variety: {
            if (!e.ahss_degenerates || !e.v.cohomology_known()) return std::nullopt;
            SplitPolicy pol = e.ku_even_override ? SplitPolicy::override_with(e.ku_even_override->value, e.ku_even_override->cite)
                                                 : SplitPolicy::assume_split();
            return ahss_ku(e.v.h_int, pol);
        }
        case CatalogEntry::Kind::Twisted: {
            auto g = gysin(e.v.name);
            if (!g) return std::nullopt;
            auto base = ku(e.twisted->base);
            if (!base || !base->even.resolved || !base->odd.resolved) return std::nullopt;
            SplitPolicy pol = e.twisted->total_ku_even
                                  ? SplitPolicy::override_with(e.twisted->total_ku_even->value, e.twisted->total_ku_even->cite)
                                  : SplitPolicy::assume_split();
            KuPair p = ahss_ku(g->h, pol);
            if (!p.even.resolved || !p.odd.resolved) return std::nullopt;
            // KU(P) = KU(X) + KU(X, alpha)
            KuPair r = ku_of_groups(complement(*p.even.resolved, *base->even.resolved),
                                    complement(*p.odd.resolved, *base->odd.resolved));
            r.even.ambiguous = p.even.ambiguous || base->even.ambiguous;
            r.odd.ambiguous = p.odd.ambiguous || base->odd.ambiguous;
            return r;
        }
        case CatalogEntry::Kind::Component: {
            const CatalogEntry& parent = cat_.at(e.parent);
            auto pk = ku(e.parent);
            if (!pk || !pk->even.resolved || !pk->odd.resolved) return std::nullopt;
            FgAbGroup even = *pk->even.resolved, odd = *pk->odd.resolved;
            for (auto& p : parent.sod) {
                if (p.entry == e.v.name) continue;
                switch (p.ref.kind) {
                    case ComponentRef::Kind::Exceptional:
                        even = complement(even, FgAbGroup::free(p.ref.count));
                        break;
                    case ComponentRef::Kind::Curve:
                        even = complement(even, FgAbGroup::free(2));
                        odd = complement(odd, FgAbGroup::free(2 * p.ref.genus));
                        break;
                    case ComponentRef::Kind::Variety:
                    case ComponentRef::Kind::TwistedVariety: {
                        auto o = ku(p.ref.name);
                        if (!o || !o->even.resolved || !o->odd.resolved) return std::nullopt;
                        even = complement(even, *o->even.resolved);
                        odd = complement(odd, *o->odd.resolved);
                        break;
                    }
                    default:
                        return std::nullopt;
                }
            }
            KuPair r = ku_of_groups(even, odd);
            r.even.ambiguous = pk->even.ambiguous;
            r.odd.ambiguous = pk->odd.ambiguous;
            return r;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, int>> Evaluator::ku_ranks(const std::string& name) {
    const CatalogEntry& e = cat_.at(name);
    if (e.kind == CatalogEntry::Kind::Variety) {
        int ev = 0, od = 0;
        for (int i = 0; i <= 2 * e.v.dim; ++i) (i % 2 ? od : ev) += e.v.betti(i);
        return std::make_pair(ev, od);
    }
    if (e.kind == CatalogEntry::Kind::Twisted) {
        // twisted K-theory has the rational rank of the untwisted one
        return ku_ranks(e.twisted->base);
    }
    auto k = ku(name);
    if (!k) return std::nullopt;
    return std::make_pair(k->even.rank(), k->odd.rank());
}

QLResult Evaluator::compute_qldim(const CatalogEntry& e, Mode mode) {
    auto resolver = [this](const ComponentRef& c) { return resolve_component(c); };
    switch (e.kind) {
        case CatalogEntry::Kind::Variety: {
            RuleInputs in;
            auto k = ku(e.v.name);
            if (k) in.ku1 = ku1_mod_status(*k);
            in.pipeline = pipeline(e.v.name);
            in.resolve = resolver;
            in.use_sod = mode != Mode::NoSod;
            return combine(e.v, in);
        }
        case CatalogEntry::Kind::Twisted: {
            const TwistedData& t = *e.twisted;
            QLResult r = universal_bounds(e.v.dim);
            QLResult base = qldim(t.base, Mode::Full);
            if (auto c = rule_twisted_upper(t.index == 2, base)) r.apply(*c);
            auto k = ku(e.v.name);
            if (k)
                if (auto c = rule_negative_k_lower(ku1_mod_status(*k))) r.apply(*c);
            if (!t.cup_alpha.empty()) {
                TwistedChainInputs in{k, t.k0_to_ku0_surjective, t.surjectivity_cite};
                r = rule_twisted_enriques_chain(r, in);
            }
            if (mode != Mode::NoSod && e.v.sod) {
                QLResult s = rule_sod(*e.v.sod, resolver);
                r.apply(make_cert("semi-orthogonal decomposition", "additivity over the listed pieces", s.lo, s.hi));
            }
            return r;
        }
        case CatalogEntry::Kind::Component: {
            const CatalogEntry& parent = cat_.at(e.parent);
            QLResult r = universal_bounds(parent.v.dim);
            auto k = ku(e.v.name);
            if (k)
                if (auto c = rule_negative_k_lower(ku1_mod_status(*k))) r.apply(*c);
            if (mode != Mode::NoResidual) {
                QLResult px = qldim(e.parent, Mode::NoSod);
                int others_hi = 0;
                bool others_known = true;
                for (auto& p : parent.sod) {
                    if (p.entry == e.v.name) continue;
                    QLResult o = resolve_component(p.ref);
                    if (!o.hi)
                        others_known = false;
                    else
                        others_hi = std::max(others_hi, *o.hi);
                }
                std::optional<int> lo;
                if (others_known && px.lo > others_hi) lo = px.lo;
                r.apply(make_cert("residual component", "dimQL(" + e.parent + ") = max over its SOD pieces, " + e.parent +
                                                            " " + px.interval_str(),
                                  lo, px.hi));
            }
            return r;
        }
    }
    return {};
}

std::vector<std::pair<int, KGroupExpr>> Evaluator::k_table(const std::string& name, int lo, int hi,
                                                          std::vector<std::string>* notes) {
    const CatalogEntry& e = cat_.at(name);
    const SodPiece* piece = k_piece(e);
    if (!piece) throw std::invalid_argument(name + ": no kuznetsov or phantom piece to tabulate");
    const CatalogEntry& x = e.kind == CatalogEntry::Kind::Component ? cat_.at(e.parent) : e;
    std::string comp_name = piece->entry;
    // KU and dimQL of the piece
    std::optional<KuPair> kp;
    QLResult ql;
    if (!comp_name.empty()) {
        kp = ku(comp_name);
        ql = qldim(comp_name);
    } else {
        auto xk = ku(x.v.name);
        if (xk && xk->even.resolved && xk->odd.resolved) {
            FgAbGroup even = *xk->even.resolved, odd = *xk->odd.resolved;
            for (auto& p : x.sod) {
                if (&p == piece) continue;
                if (p.ref.kind != ComponentRef::Kind::Exceptional)
                    throw std::invalid_argument(name + ": K-table needs the other pieces to be exceptional");
                even = complement(even, FgAbGroup::free(p.ref.count));
            }
            kp = ku_of_groups(even, odd);
        }
        // dimQL(A) <= dimQL(X)
        QLResult px = qldim(x.v.name);
        ql = universal_bounds(x.v.dim);
        if (px.hi) ql.apply(make_cert("residual component", x.v.name + " " + px.interval_str(), std::nullopt, *px.hi));
    }
    if (!ql.hi) throw std::invalid_argument(name + ": no upper bound on dimQL of the piece");

    int exceptional = 0;
    for (auto& p : x.sod) {
        if (&p == piece) continue;
        if (p.ref.kind != ComponentRef::Kind::Exceptional)
            throw std::invalid_argument(name + ": K_0 of the piece needs the other pieces to be exceptional");
        exceptional += p.ref.count;
    }
    std::optional<KGroupExpr> k0;
    const CatalogEntry* comp = comp_name.empty() ? nullptr : &cat_.at(comp_name);
    if (comp && comp->k0) {
        k0 = comp->k0->value;
        if (notes) notes->push_back("K_0 from " + comp->k0->cite);
    } else if (x.v.chow) {
        FiltrationResult f = k0_filtration(*x.v.chow, x.filtration_certs, x.v.h_int);
        if (notes)
            for (auto& n : f.notes) notes->push_back(n);
        k0 = strip_exceptional(f.k0, exceptional);
    }

    bool phantom = false;
    if (piece->ref.kind == ComponentRef::Kind::Phantom && k0) {
        TriState pv = phantom_vanishing(*k0, *ql.hi);
        phantom = pv.is_zero();
        if (notes) notes->push_back("phantom: " + pv.str());
    }

    std::vector<std::pair<int, KGroupExpr>> out;
    for (int n = lo; n <= hi; ++n) {
        if (phantom) {
            out.emplace_back(n, KGroupExpr{});
        } else if (n == 0) {
            if (!k0) throw std::invalid_argument(name + ": no Chow data for K_0");
            out.emplace_back(n, *k0);
        } else {
            if (!kp || !kp->even.resolved || !kp->odd.resolved) throw std::invalid_argument(name + ": KU of the piece unknown");
            out.emplace_back(n, assemble_high_kn(*kp->even.resolved, *kp->odd.resolved, *ql.hi, n, piece->k_symbol));
        }
    }
    return out;
}

// ---------------------------------------------------------------- reports

int EntryReport::failures() const {
    int n = static_cast<int>(errors.size());
    for (auto& c : checks) n += !c.pass;
    return n;
}

std::string EntryReport::str() const {
    std::ostringstream os;
    os << "== " << name << "\n";
    for (auto& l : lines) os << l << (l.empty() || l.back() != '\n' ? "\n" : "");
    for (auto& c : checks) os << (c.pass ? "  [pass] " : "  [FAIL] ") << c.what << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    for (auto& e : errors) os << "  [ERROR] " << e << "\n";
    return os.str();
}

int RunReport::failures() const {
    int n = 0;
    for (auto& e : entries) n += e.failures();
    for (auto& c : cross) n += !c.pass;
    return n;
}

std::string RunReport::str() const {
    std::ostringstream os;
    for (auto& e : entries) os << e.str();
    os << "== cross-checks\n";
    for (auto& c : cross) os << (c.pass ? "  [pass] " : "  [FAIL] ") << c.what << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    int checks = static_cast<int>(cross.size());
    for (auto& e : entries) checks += static_cast<int>(e.checks.size());
    os << entries.size() << " entries, " << checks << " checks, " << failures() << " failures\n";
    return os.str();
}

bool intervals_agree(const QLResult& a, const QLResult& b) {
    int lo = std::max(a.lo, b.lo);
    std::optional<int> hi = a.hi;
    if (b.hi) hi = hi ? std::min(*hi, *b.hi) : *b.hi;
    if (hi && lo > *hi) return false;
    if (a.is_exact() && !(b.contains(a.lo))) return false;
    if (b.is_exact() && !(a.contains(b.lo))) return false;
    return true;
}

namespace {

std::string ku_str(const KuPair& k) {
    auto g = [](const GroupUpToExtension& x) {
        return (x.resolved ? x.resolved->str() : x.str()) + (x.ambiguous ? " [extension assumed split]" : "");
    };
    return "(" + g(k.even) + ", " + g(k.odd) + ")";
}

Check check(std::string what, bool pass, std::string detail = {}) { return Check{std::move(what), pass, std::move(detail)}; }

std::string interval(std::pair<int, int> p) { return "[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]"; }

KGroupExpr expected_k(const KTableExpected& t, int n) {
    if (n == 0) return KGroupExpr::parse(*t.n0);
    return KGroupExpr::parse(n % 2 ? *t.odd : *t.even);
}

std::vector<std::vector<long>> diamond_of(const VarietyData& v) {
    std::vector<std::vector<long>> h(v.dim + 1, std::vector<long>(v.dim + 1, 0));
    for (int p = 0; p <= v.dim; ++p)
        for (int q = 0; q <= v.dim; ++q) h[p][q] = *v.h(p, q);
    return h;
}

std::string join(const std::vector<long>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return "(" + s + ")";
}

template <class F>
void guarded(EntryReport& r, const std::string& stage, F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        r.errors.push_back(stage + ": " + e.what());
    }
}

}  // namespace

EntryReport run_entry(const Catalog& c, const std::string& name) {
    Evaluator ev(c);
    const CatalogEntry& e = c.at(name);
    EntryReport r;
    r.name = name;

    guarded(r, "dimQL", [&] {
        QLResult q = ev.qldim(name);
        std::string s = q.str();
        r.lines.push_back(s.substr(0, s.size() - 1));
        if (e.expected.qldim) {
            auto want = e.expected.qldim->value;
            bool ok = q.lo == want.first && q.hi && *q.hi == want.second;
            r.checks.push_back(check("dimQL " + interval(want) + " (" + e.expected.qldim->cite + ")", ok,
                                     ok ? "" : "computed " + q.interval_str()));
        }
    });

    guarded(r, "E2 page", [&] {
        auto pg = ev.page(name);
        if (!pg) return;
        if (e.expected.e2) {
            const auto& want = e.expected.e2->value;
            std::string bad;
            for (auto& [pq, g] : want) {
                PageEntry pe = pg->at(pq.first, pq.second);
                if (!pe.exact || !(*pe.exact == g))
                    bad += " E2^{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "}=" + pe.str();
            }
            for (auto& [pq, pe] : pg->entries())
                if (!want.count(pq) && !pe.known_zero())
                    bad += " unexpected E2^{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "}=" + pe.str();
            r.checks.push_back(check("E2 page (" + e.expected.e2->cite + ")", bad.empty(), bad));
        }
        KtauPage kp = ktau_e2(*pg, 0);
        KtauProfile prof = ktau_profile(kp);
        std::string line = "(K/tau)_n for n = 0.." + std::to_string(prof.dim) + ":";
        for (int n = 0; n <= prof.dim; ++n) {
            const TriState& t = prof.at(n);
            line += std::string(" ") + (t.is_zero() ? "0" : t.is_nonzero() ? "nonzero" : "?");
        }
        r.lines.push_back(line);
        if (e.expected.ktau) {
            std::string bad;
            for (auto& [n, s] : e.expected.ktau->value) {
                const TriState& t = prof.at(n);
                bool ok = s == "zero" ? t.is_zero() : t.is_nonzero();
                if (!ok) bad += " n=" + std::to_string(n) + ": " + t.str();
            }
            r.checks.push_back(check("K/tau profile (" + e.expected.ktau->cite + ")", bad.empty(), bad));
        }
    });

    guarded(r, "Gysin", [&] {
        auto g = ev.gysin(name);
        if (!g) return;
        r.lines.push_back("H^*(P) = " + g->h.str());
        if (e.expected.gysin) {
            bool ok = g->h == e.expected.gysin->value;
            r.checks.push_back(check("Gysin H^*(P) = " + e.expected.gysin->value.str() + " (" + e.expected.gysin->cite + ")", ok,
                                     ok ? "" : "computed " + g->h.str()));
        }
    });

    guarded(r, "KU", [&] {
        auto k = ev.ku(name);
        if (!k) {
            if (e.expected.ku) r.checks.push_back(check("KU (" + e.expected.ku->cite + ")", false, "KU not computable"));
            return;
        }
        r.lines.push_back("KU = " + ku_str(*k));
        if (e.expected.ku) {
            auto& [we, wo] = e.expected.ku->value;
            bool ok = k->even.resolved && k->odd.resolved && *k->even.resolved == we && *k->odd.resolved == wo &&
                      !k->even.ambiguous && !k->odd.ambiguous;
            r.checks.push_back(check("KU = (" + we.str() + ", " + wo.str() + ") (" + e.expected.ku->cite + ")", ok,
                                     ok ? "" : "computed " + ku_str(*k)));
        }
        if (e.expected.ku_mod) {
            long m = e.expected.ku_mod->value.first;
            auto& [w0, w1] = e.expected.ku_mod->value.second;
            KuModM km = ku_mod_m(k->even.group(), k->odd.group(), m);
            bool ok = km.ku0m.resolved && km.ku1m.resolved && *km.ku0m.resolved == w0 && *km.ku1m.resolved == w1;
            std::string got = "(" + km.ku0m.str() + ", " + km.ku1m.str() + ")";
            r.lines.push_back("KU(Z/" + std::to_string(m) + ") = " + got);
            r.checks.push_back(check("KU(Z/" + std::to_string(m) + ") = (" + w0.str() + ", " + w1.str() + ") (" +
                                         e.expected.ku_mod->cite + ")",
                                     ok, ok ? "" : "computed " + got));
        }
        for (auto& p : e.sod) {
            if (!p.ku || p.entry.empty()) continue;
            auto pk = ev.ku(p.entry);
            bool ok = pk && pk->even.resolved && pk->odd.resolved && *pk->even.resolved == p.ku->value.first &&
                      *pk->odd.resolved == p.ku->value.second;
            r.checks.push_back(check("KU(" + p.label + ") = (" + p.ku->value.first.str() + ", " + p.ku->value.second.str() +
                                         ") (" + p.ku->cite + ")",
                                     ok, ok || !pk ? "" : "computed " + ku_str(*pk)));
        }
    });

    guarded(r, "K-table", [&] {
        bool has_piece = false;
        if (e.kind == CatalogEntry::Kind::Component) {
            has_piece = true;
        } else {
            for (auto& p : e.sod)
                has_piece = has_piece || ((p.kuznetsov || p.ref.kind == ComponentRef::Kind::Phantom) && p.entry.empty());
        }
        if (!has_piece || (!e.expected.k_table && !e.v.chow && !e.k0)) return;
        std::vector<std::string> notes;
        auto tab = ev.k_table(name, 0, 5, &notes);
        for (auto& [n, g] : tab) r.lines.push_back("K_" + std::to_string(n) + " = " + g.str());
        for (auto& n : notes) r.lines.push_back("  " + n);
        if (e.expected.k_table) {
            std::string bad;
            for (auto& [n, g] : tab) {
                const auto& t = e.expected.k_table->value;
                if ((n == 0 && !t.n0) || (n % 2 && !t.odd) || (n > 0 && n % 2 == 0 && !t.even)) continue;
                if (!(g == expected_k(t, n))) bad += " K_" + std::to_string(n) + "=" + g.str();
            }
            r.checks.push_back(check("K-table (" + e.expected.k_table->cite + ")", bad.empty(), bad));
        }
    });

    guarded(r, "Hodge", [&] {
        if (!e.hodge_recipe) return;
        const HodgeRecipe& h = *e.hodge_recipe;
        auto d = hodge_ci(h.k, h.n, h.degrees);
        std::string recipe = "Gr(" + std::to_string(h.k) + "," + std::to_string(h.n) + ") degrees " +
                             join(std::vector<long>(h.degrees.begin(), h.degrees.end()));
        std::vector<long> mid;
        for (int p = e.v.dim; p >= 0; --p) mid.push_back(d[p][e.v.dim - p]);
        r.lines.push_back("Hodge middle row via " + recipe + ": " + join(mid));
        if (e.v.hodge_known()) {
            bool ok = d == diamond_of(e.v);
            r.checks.push_back(check("catalog Hodge diamond = HRR computation on " + recipe, ok));
        }
        if (e.expected.hodge_middle) {
            bool ok = mid == e.expected.hodge_middle->value;
            r.checks.push_back(check("Hodge middle row " + join(e.expected.hodge_middle->value) + " (" +
                                         e.expected.hodge_middle->cite + ")",
                                     ok, ok ? "" : "computed " + join(mid)));
        }
    });
    return r;
}

std::vector<Check> cross_checks(const Catalog& c) {
    std::vector<Check> out;
    Evaluator ev(c);
    for (auto& e : c.entries()) {
        const std::string& n = e.v.name;
        try {
            if (e.kind == CatalogEntry::Kind::Variety && e.v.dim >= 2 && e.v.dim <= 4) {
                auto th = theorem_rule(e.v);
                auto pl = ev.pipeline(n);
                if (th && pl) {
                    QLResult pr = universal_bounds(e.v.dim);
                    pr.apply(*rule_pipeline(*pl));
                    bool ok = intervals_agree(*th, pr);
                    out.push_back(check(n + ": theorem " + th->interval_str() + " vs spectral sequence " + pr.interval_str(), ok));
                }
            }
            if (!e.sod.empty()) {
                QLResult without = ev.qldim(n, Evaluator::Mode::NoSod);
                QLResult sod = rule_sod(*e.v.sod, [&](const ComponentRef& r) {
                    if (r.kind == ComponentRef::Kind::Variety || r.kind == ComponentRef::Kind::TwistedVariety)
                        return ev.qldim(r.name, c.at(r.name).kind == CatalogEntry::Kind::Component ? Evaluator::Mode::NoResidual
                                                                                                  : Evaluator::Mode::Full);
                    return resolve_basic_component(r);
                });
                bool ok = intervals_agree(without, sod);
                out.push_back(check(n + ": own rules " + without.interval_str() + " vs SOD pieces " + sod.interval_str(), ok));

                auto xr = ev.ku_ranks(n);
                bool known = xr.has_value();
                int ev_sum = 0, od_sum = 0;
                for (auto& p : e.sod) {
                    switch (p.ref.kind) {
                        case ComponentRef::Kind::Exceptional: ev_sum += p.ref.count; break;
                        case ComponentRef::Kind::Curve:
                            ev_sum += 2;
                            od_sum += 2 * p.ref.genus;
                            break;
                        case ComponentRef::Kind::Phantom: break;
                        case ComponentRef::Kind::Variety:
                        case ComponentRef::Kind::TwistedVariety: {
                            if (p.kuznetsov && p.ku) {
                                ev_sum += p.ku->value.first.rank();
                                od_sum += p.ku->value.second.rank();
                                break;
                            }
                            if (p.kuznetsov) {
                                known = false;
                                break;
                            }
                            auto pr = ev.ku_ranks(p.ref.name);
                            if (!pr)
                                known = false;
                            else {
                                ev_sum += pr->first;
                                od_sum += pr->second;
                            }
                            break;
                        }
                        case ComponentRef::Kind::Opaque:
                            if (p.kuznetsov && p.ku) {
                                ev_sum += p.ku->value.first.rank();
                                od_sum += p.ku->value.second.rank();
                            } else {
                                known = false;
                            }
                            break;
                    }
                }
                if (known)
                    out.push_back(check(n + ": rank KU = sum over SOD pieces (" + std::to_string(xr->first) + "," +
                                            std::to_string(xr->second) + ") vs (" + std::to_string(ev_sum) + "," +
                                            std::to_string(od_sum) + ")",
                                        xr->first == ev_sum && xr->second == od_sum));
            }
        } catch (const std::exception& ex) {
            out.push_back(check(n + ": cross-check", false, ex.what()));
        }
    }
    return out;
}

RunReport check_all(const Catalog& c, bool parallel) {
    RunReport r;
    const auto& es = c.entries();
    r.entries.resize(es.size());
    const int n = static_cast<int>(es.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) r.entries[i] = run_entry(c, es[i].v.name);
    } else {
        for (int i = 0; i < n; ++i) r.entries[i] = run_entry(c, es[i].v.name);
    }
    r.cross = cross_checks(c);
    return r;
}

std::string e2_grid(const Catalog& c, const std::string& name) {
    Evaluator ev(c);
    auto pg = ev.page(name);
    if (!pg) throw std::invalid_argument(name + ": no Bloch-Ogus page for this entry");
    return render_grid(*pg);
}

std::string hodge_diamond(const Catalog& c, const std::string& name) {
    const CatalogEntry& e = c.at(name);
    if (!e.v.hodge_known()) throw std::invalid_argument(name + ": no Hodge numbers in the catalog");
    return render_diamond(diamond_of(e.v));
}

std::string k_table_str(const Catalog& c, const std::string& name, int lo, int hi) {
    Evaluator ev(c);
    std::ostringstream os;
    for (auto& [n, g] : ev.k_table(name, lo, hi)) os << "K_" << n << " = " << g.str() << "\n";
    return os.str();
}

std::string report(const Catalog& c, const std::string& name, ReportFormat f) {
    EntryReport r = run_entry(c, name);
    const CatalogEntry& e = c.at(name);
    Evaluator ev(c);
    std::ostringstream os;
    const bool md = f == ReportFormat::Markdown;
    auto heading = [&](const std::string& h) { os << (md ? "### " : "-- ") << h << "\n" << (md ? "\n" : ""); };
    auto block = [&](const std::string& b) {
        if (md) os << "```\n";
        os << b;
        if (!b.empty() && b.back() != '\n') os << "\n";
        if (md) os << "```\n";
        os << "\n";
    };
    os << (md ? "## " : "== ") << name << "\n\n";
    if (!e.citations.empty()) {
        os << (md ? "Sources: " : "sources: ");
        for (std::size_t i = 0; i < e.citations.size(); ++i) os << (i ? "; " : "") << e.citations[i];
        os << "\n\n";
    }
    std::string body;
    for (auto& l : r.lines) body += l + (l.empty() || l.back() != '\n' ? "\n" : "");
    heading("computed");
    block(body);
    try {
        if (auto pg = ev.page(name)) {
            heading("E2 page, Z coefficients");
            block(render_grid(*pg));
        }
    } catch (const std::exception&) {
    }
    if (e.v.hodge_known()) {
        heading("Hodge diamond");
        block(hodge_diamond(c, name));
    }
    heading("checks");
    if (md) {
        os << "| result | check |\n|---|---|\n";
        for (auto& ch : r.checks) os << "| " << (ch.pass ? "pass" : "FAIL") << " | " << ch.what << (ch.detail.empty() ? "" : ": " + ch.detail) << " |\n";
        for (auto& er : r.errors) os << "| ERROR | " << er << " |\n";
        os << "\n";
    } else {
        std::string s;
        for (auto& ch : r.checks) s += (ch.pass ? "pass " : "FAIL ") + ch.what + (ch.detail.empty() ? "" : ": " + ch.detail) + "\n";
        for (auto& er : r.errors) s += "ERROR " + er + "\n";
        block(s);
    }
    return os.str();
}

}  // namespace qlwb
