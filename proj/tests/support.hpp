#pragma once

#include "qlwb/workbench.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qlwb::test {

inline FgAbGroup G(const char* s) { return FgAbGroup::parse(s); }

inline GradedAb H(std::initializer_list<const char*> gs) {
    std::vector<FgAbGroup> v;
    for (auto* s : gs) v.push_back(G(s));
    return GradedAb(std::move(v));
}

inline const Catalog& catalog() {
    static const Catalog c(load_catalog(default_catalog_dir()));
    return c;
}

inline const VarietyData& variety(const std::string& name) { return catalog().at(name).v; }

// hodge numbers from the upper half (p <= q), filled symmetrically
inline std::map<std::pair<int, int>, int> diamond(int d, const std::map<std::pair<int, int>, int>& half) {
    std::map<std::pair<int, int>, int> h;
    for (auto& [pq, n] : half) {
        auto [p, q] = pq;
        for (auto [a, b] : {std::pair{p, q}, {q, p}, {d - p, d - q}, {d - q, d - p}}) h[{a, b}] = n;
    }
    return h;
}

}  // namespace qlwb::test
