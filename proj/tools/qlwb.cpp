#include "qlwb/schubert.hpp"
#include "qlwb/workbench.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace qlwb;

namespace {

std::string ku_line(const KuPair& k) {
    auto g = [](const GroupUpToExtension& x) { return x.resolved ? x.resolved->str() : x.str(); };
    std::string s = "KU^even = " + g(k.even) + "\nKU^odd  = " + g(k.odd) + "\n";
    if (k.even.ambiguous || k.odd.ambiguous) s += "(AHSS extensions assumed split)\n";
    return s;
}

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int n = std::stoi(s);
        return {n, n};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

long parse_coeff(const std::string& s) {
    if (s == "z" || s == "Z") return 0;
    auto slash = s.find('/');
    if (slash == std::string::npos || (s[0] != 'z' && s[0] != 'Z')) throw CLI::ValidationError("--coeff", "expected z or z/M");
    long m = std::stol(s.substr(slash + 1));
    if (m < 2) throw CLI::ValidationError("--coeff", "modulus must be >= 2");
    return m;
}

std::string tri(const TriState& t) { return t.is_zero() ? "0" : t.is_nonzero() ? "nonzero" : "undetermined"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quillen-Lichtenbaum dimension workbench"};
    app.require_subcommand(1);
    std::string catalog_dir = default_catalog_dir();
    app.add_option("--catalog", catalog_dir, "catalog directory")->check(CLI::ExistingDirectory);

    std::string entry;
    auto* qldim_cmd = app.add_subcommand("qldim", "dimQL interval with its certificates");
    qldim_cmd->add_option("entry", entry)->required();

    std::string coeff = "z";
    auto* e2_cmd = app.add_subcommand("e2", "E_2 page (Z: Bloch-Ogus; Z/M: K/tau orientation)");
    e2_cmd->add_option("entry", entry)->required();
    e2_cmd->add_option("--coeff", coeff, "z or z/M");

    long mod = 0;
    auto* ktau_cmd = app.add_subcommand("ktau", "(K/tau)_n profile");
    ktau_cmd->add_option("entry", entry)->required();
    ktau_cmd->add_option("--mod", mod, "modulus M")->check(CLI::Range(2L, 1000000L));

    auto* ku_cmd = app.add_subcommand("ku", "topological K-theory");
    ku_cmd->add_option("entry", entry)->required();
    ku_cmd->add_option("--mod", mod, "modulus M")->check(CLI::Range(2L, 1000000L));

    auto* gysin_cmd = app.add_subcommand("gysin", "cohomology of the Brauer-Severi P^1 bundle");
    gysin_cmd->add_option("entry", entry)->required();

    std::string nrange = "0..5";
    auto* kt_cmd = app.add_subcommand("ktheory", "K_n of the Kuznetsov or phantom component");
    kt_cmd->add_option("entry", entry)->required();
    kt_cmd->add_option("--n", nrange, "A..B");

    std::vector<int> gr;
    int codim = 0;
    auto* hodge_cmd = app.add_subcommand("hodge", "Hodge diamond of a linear section of Gr(K,N)");
    hodge_cmd->add_option("--gr", gr, "K,N")->required()->delimiter(',')->expected(2);
    hodge_cmd->add_option("--codim", codim, "number of hyperplanes")->required()->check(CLI::NonNegativeNumber);

    std::string format = "text";
    auto* report_cmd = app.add_subcommand("report", "full report for one entry");
    report_cmd->add_option("entry", entry)->required();
    report_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "markdown"}));

    bool parallel = false;
    auto* check_cmd = app.add_subcommand("check", "run every catalog entry against its expected values");
    check_cmd->add_flag("--parallel", parallel, "evaluate entries in parallel");

    CLI11_PARSE(app, argc, argv);

    try {
        if (hodge_cmd->parsed()) {
            std::vector<int> degrees(codim, 1);
            auto h = hodge_ci(gr[0], gr[1], degrees);
            std::cout << render_diamond(h);
            std::cout << "middle row:";
            int d = static_cast<int>(h.size()) - 1;
            for (int p = d; p >= 0; --p) std::cout << " " << h[p][d - p];
            std::cout << "\n";
            return 0;
        }

        Catalog cat(load_catalog(catalog_dir));
        Evaluator ev(cat);

        if (qldim_cmd->parsed()) {
            std::cout << entry << ": " << ev.qldim(entry).str();
        } else if (e2_cmd->parsed()) {
            long m = parse_coeff(coeff);
            auto pg = ev.page(entry);
            if (!pg) throw std::invalid_argument(entry + ": no E_2 page for this entry");
            std::cout << (m == 0 ? render_grid(*pg) : render_grid(ktau_e2(*pg, m)));
        } else if (ktau_cmd->parsed()) {
            auto pg = ev.page(entry);
            if (!pg) throw std::invalid_argument(entry + ": no E_2 page for this entry");
            KtauProfile p = ktau_profile(ktau_e2(*pg, mod));
            for (int n = 0; n <= p.dim; ++n)
                std::cout << "(K/tau)_" << n << "(X, Z/" << (mod ? std::to_string(mod) : "m") << ") " << tri(p.at(n)) << "  "
                          << p.at(n).str() << "\n";
        } else if (ku_cmd->parsed()) {
            auto k = ev.ku(entry);
            if (!k) throw std::invalid_argument(entry + ": KU not computable (no cited AHSS degeneration)");
            if (mod) {
                KuModM km = ku_mod_m(k->even.group(), k->odd.group(), mod);
                std::cout << "KU^0(X, Z/" << mod << ") = " << km.ku0m.str() << "\nKU^1(X, Z/" << mod << ") = " << km.ku1m.str()
                          << "\n";
            } else {
                std::cout << ku_line(*k);
            }
        } else if (gysin_cmd->parsed()) {
            auto g = ev.gysin(entry);
            if (!g) throw std::invalid_argument(entry + ": no twist data");
            for (int i = 0; i <= g->h.top(); ++i) std::cout << "H^" << i << "(P) = " << g->h.at(i).str() << "\n";
        } else if (kt_cmd->parsed()) {
            auto [a, b] = parse_range(nrange);
            std::vector<std::string> notes;
            for (auto& [n, k] : ev.k_table(entry, a, b, &notes)) std::cout << "K_" << n << " = " << k.str() << "\n";
            for (auto& n : notes) std::cout << "  " << n << "\n";
        } else if (report_cmd->parsed()) {
            std::cout << report(cat, entry, format == "markdown" ? ReportFormat::Markdown : ReportFormat::Text);
        } else if (check_cmd->parsed()) {
            RunReport r = check_all(cat, parallel);
            std::cout << r.str();
            return r.failures() == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
