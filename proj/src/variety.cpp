#include "qlwb/variety.hpp"

namespace qlwb {

std::string ComponentRef::str() const {
    std::string s;
    switch (kind) {
        case Kind::Exceptional:
            s = count == 1 ? "exceptional object" : std::to_string(count) + " exceptional objects";
            break;
        case Kind::Curve:
            s = "curve of genus " + std::to_string(genus);
            break;
        case Kind::Variety:
            s = name;
            break;
        case Kind::TwistedVariety:
            s = "(" + name + ", " + brauer_class + ")";
            break;
        case Kind::Phantom:
            s = "phantom";
            break;
        case Kind::Opaque:
            s = name.empty() ? "opaque" : name;
            s += " [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
            break;
    }
    return s;
}

std::optional<int> VarietyData::h(int p, int q) const {
    if (!hodge_known()) return std::nullopt;
    if (p < 0 || q < 0 || p > dim || q > dim) return 0;
    auto it = hodge.find({p, q});
    return it == hodge.end() ? 0 : it->second;
}

std::optional<FgAbGroup> VarietyData::cohomology(int i) const {
    if (!torsion_known(i)) return std::nullopt;
    return h_int.at(i);
}

TriState VarietyData::torsion_status(int i) const {
    if (!torsion_known(i)) return TriState::undetermined("torsion of H^" + std::to_string(i) + " unknown");
    const FgAbGroup& g = h_int.at(i);
    if (g.is_torsion_free()) return TriState::zero();
    return TriState::nonzero(g.torsion());
}

void VarietyData::validate() const {
    if (dim < 1) throw DataError(name, "dim", "must be >= 1");
    if (h_int.top() != 2 * dim) throw DataError(name, "h_int", "must list degrees 0.." + std::to_string(2 * dim));
    if (!(h_int.at(0) == FgAbGroup::free(1)) || !(h_int.at(2 * dim) == FgAbGroup::free(1)))
        throw DataError(name, "h_int", "H^0 and H^top must be Z");
    for (int i : rank_unknown)
        if (i <= 0 || i >= 2 * dim || !rank_unknown.count(2 * dim - i))
            throw DataError(name, "h_int", "unknown ranks must come in Poincare dual pairs inside 1.." + std::to_string(2 * dim - 1));
    for (int i = 0; i <= 2 * dim; ++i) {
        if (betti(i) != betti(2 * dim - i))
            throw DataError(name, "h_int", "Poincare duality fails: b_" + std::to_string(i) + " != b_" +
                                               std::to_string(2 * dim - i));
        if (i + 1 <= 2 * dim && torsion_known(i + 1) && torsion_known(2 * dim - i) &&
            !(h_int.at(i + 1).torsion() == h_int.at(2 * dim - i).torsion()))
            throw DataError(name, "h_int",
                            "Poincare duality fails: tors H^" + std::to_string(i + 1) + " != tors H^" +
                                std::to_string(2 * dim - i));
    }
    if (hodge_known()) {
        for (auto& [pq, v] : hodge) {
            if (v < 0) throw DataError(name, "hodge", "negative Hodge number");
            if (pq.first < 0 || pq.second < 0 || pq.first > dim || pq.second > dim)
                throw DataError(name, "hodge", "Hodge index out of range");
        }
        for (int p = 0; p <= dim; ++p)
            for (int q = 0; q <= dim; ++q) {
                if (*h(p, q) != *h(q, p))
                    throw DataError(name, "hodge",
                                    "Hodge symmetry fails at (" + std::to_string(p) + "," + std::to_string(q) + ")");
                if (*h(p, q) != *h(dim - p, dim - q))
                    throw DataError(name, "hodge",
                                    "Serre duality fails at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            }
        for (int i = 0; i <= 2 * dim; ++i) {
            int s = 0;
            for (int p = 0; p <= i; ++p) s += *h(p, i - p);
            if (rank_known(i) && s != betti(i))
                throw DataError(name, "hodge", "row " + std::to_string(i) + " sums to " + std::to_string(s) +
                                                   " but b_" + std::to_string(i) + " = " + std::to_string(betti(i)));
        }
    }
    if (flags.rationally_connected == true) {
        if (betti(1) != 0) throw DataError(name, "flags.rationally_connected", "requires b_1 = 0");
        if (hodge_known())
            for (int i = 1; i <= dim; ++i)
                if (*h(0, i) != 0) throw DataError(name, "flags.rationally_connected", "requires h^{0,i} = 0 for i > 0");
    }
    if (ns_rank && (*ns_rank < 0 || *ns_rank > betti(2))) throw DataError(name, "ns_rank", "must lie in [0, b_2]");
    if (chow) {
        try {
            chow->validate();
        } catch (const std::exception& e) {
            throw DataError(name, "chow", e.what());
        }
        if (chow->dim() != dim) throw DataError(name, "chow", "must list codimensions 0.." + std::to_string(dim));
    }
    if (sod)
        for (auto& c : *sod) {
            if (c.kind == ComponentRef::Kind::Curve && c.genus < 0) throw DataError(name, "sod", "negative genus");
            if (c.count < 1) throw DataError(name, "sod", "component count must be positive");
            if (c.kind == ComponentRef::Kind::Opaque && c.lo > c.hi) throw DataError(name, "sod", "empty interval");
        }
}

}  // namespace qlwb
