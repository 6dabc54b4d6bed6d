#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace qlwb;
using namespace qlwb::test;

namespace {

// QLWB_UPDATE_GOLDEN=1 rewrites the files; review the diff before committing
void golden(const std::string& file, const std::string& actual) {
    std::string path = std::string(QLWB_SOURCE_DIR) + "/tests/golden/" + file;
    if (std::getenv("QLWB_UPDATE_GOLDEN")) {
        std::ofstream(path) << actual;
        return;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in, "missing golden file " << path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK_MESSAGE(ss.str() == actual, file << " differs:\n" << actual);
}

std::string gysin_str(const std::string& name) {
    Evaluator ev(catalog());
    auto g = ev.gysin(name);
    REQUIRE(g);
    std::ostringstream os;
    for (int i = 0; i <= g->h.top(); ++i) os << "H^" << i << "(P) = " << g->h.at(i).str() << "\n";
    return os.str();
}

}  // namespace

TEST_CASE("E_2 pages") {
    golden("enriques.e2.txt", e2_grid(catalog(), "enriques"));
    golden("cubic-5fold.e2.txt", e2_grid(catalog(), "cubic-5fold"));
}

TEST_CASE("Hodge diamonds of Gr(2,7) sections") {
    golden("gr27-section-6.hodge.txt", hodge_diamond(catalog(), "gr27-section-6"));
    golden("gr27-section-8.hodge.txt", hodge_diamond(catalog(), "gr27-section-8"));
}

TEST_CASE("K-table of the cubic 5-fold component") {
    golden("cubic-5fold-ax.ktable.txt", k_table_str(catalog(), "cubic-5fold-ax", 0, 6));
}

TEST_CASE("Brauer-Severi bundle over the twisted Enriques surface") {
    golden("enriques-twisted.gysin.txt", gysin_str("enriques-twisted"));
}

TEST_CASE("text report") {
    golden("enriques.report.txt", report(catalog(), "enriques", ReportFormat::Text));
}
