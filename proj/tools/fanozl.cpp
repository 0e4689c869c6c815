// fanozl: invariants of zero loci of homogeneous bundles on products of
// Grassmannians, quiver flag translation, and batch verification.

#include "CLI11.hpp"
#include "json.hpp"

#include "fanozl/catalog.hpp"
#include "fanozl/degeneracy.hpp"
#include "fanozl/dsl.hpp"
#include "fanozl/parallel.hpp"
#include "fanozl/rewrite.hpp"

#include <fstream>
#include <iostream>

using namespace fanozl;

namespace {

int guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

nlohmann::json chow_json(const ChowClass& c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [key, v] : c.c) {
        nlohmann::json part;
        nlohmann::json tuples = nlohmann::json::array();
        for (const auto& w : key) tuples.push_back(w);
        part["sigma"] = tuples;
        part["coef"] = v.get_str();
        out.push_back(part);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of zero loci in products of Grassmannians"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (output-invariant)");

    std::string spec_str, out_fmt;
    bool as_json = false, as_csv = false;

    auto* inv = app.add_subcommand("invariants",
                                   "full invariant report of a zero locus");
    inv->add_option("spec", spec_str, "\"<ambient> :: <bundle>\"")->required();
    inv->add_flag("--json", as_json, "JSON output (default)");

    auto* hod = app.add_subcommand("hodge", "Hodge diamond of a zero locus");
    hod->add_option("spec", spec_str)->required();
    hod->add_flag("--json", as_json);

    auto* coh =
        app.add_subcommand("cohomology", "sheaf cohomology of a bundle on the ambient");
    std::string bundle_str;
    coh->add_option("spec", spec_str, "\"<ambient> :: <bundle>\"")->required();
    coh->add_flag("--json", as_json);

    auto* chw = app.add_subcommand("chow", "Chern data in the Schubert basis");
    int truncate = -1;
    chw->add_option("spec", spec_str)->required();
    chw->add_option("--truncate", truncate, "truncation degree for ch");
    chw->add_flag("--json", as_json);

    auto* tr = app.add_subcommand("translate",
                                  "quiver JSON -> product-of-Grassmannians DSL");
    std::string quiver_file;
    tr->add_option("file", quiver_file, "quiver datum (JSON)")->required();
    tr->add_flag("--json", as_json);

    auto* dg = app.add_subcommand("degloc", "degeneracy-locus toolkit");
    auto* dg_dim = dg->add_subcommand("expected-dim");
    int ddimX = 0, de = 0, df = 0, dk = 0;
    dg_dim->add_option("dimX", ddimX)->required();
    dg_dim->add_option("e", de)->required();
    dg_dim->add_option("f", df)->required();
    dg_dim->add_option("k", dk)->required();
    auto* dg_en = dg->add_subcommand("en-chi");
    std::string Estr, Fstr;
    dg_en->add_option("base", spec_str, "base zero locus spec")->required();
    dg_en->add_option("E", Estr)->required();
    dg_en->add_option("F", Fstr)->required();
    auto* dg_conic = dg->add_subcommand("conic");
    dg_conic->add_option("base", spec_str)->required();
    dg_conic->add_option("E", Estr, "rank-3 conic datum")->required();
    dg_conic->add_option("K", Fstr, "value line bundle")->required();
    auto* dg_proj = dg->add_subcommand("profile");
    int proj_factor = 1;
    dg_proj->add_option("spec", spec_str)->required();
    dg_proj->add_option("factor", proj_factor, "1 or 2")->required();

    auto* rw = app.add_subcommand("rewrite",
                                  "lemma identifications of a presentation");
    rw->add_option("spec", spec_str)->required();
    rw->add_flag("--json", as_json);

    auto* vc = app.add_subcommand("verify-catalog", "batch verification");
    std::string catalog_file = "data/catalog.txt", data_dir, select_id;
    int select_rho = 0;
    bool all = false;
    vc->add_option("--file", catalog_file, "catalog file");
    vc->add_option("--data-dir", data_dir,
                   "directory for quiver files (default: catalog directory)");
    vc->add_flag("--all", all, "verify every entry");
    vc->add_option("--id", select_id, "verify one entry");
    vc->add_option("--rank", select_rho, "verify a Picard-rank block");
    vc->add_flag("--csv", as_csv, "CSV report");
    vc->add_flag("--json", as_json, "JSON report");

    CLI11_PARSE(app, argc, argv);
    worker_threads() = std::max(1, threads);

    if (inv->parsed() || hod->parsed()) {
        return guarded([&] {
            ParsedSpec ps = parse_spec(spec_str);
            InvariantReport rep = invariants({ps.X, ps.F});
            std::cout << report_json(rep) << "\n";
            return 0;
        });
    }
    if (coh->parsed()) {
        return guarded([&] {
            ParsedSpec ps = parse_spec(spec_str);
            CohomologyTable t = cohomology(ps.X, ps.F);
            nlohmann::json j;
            for (const auto& [q, h] : t)
                j["h" + std::to_string(q)] = h.get_str();
            std::cout << j.dump() << "\n";
            return 0;
        });
    }
    if (chw->parsed()) {
        return guarded([&] {
            ParsedSpec ps = parse_spec(spec_str);
            nlohmann::json j;
            j["ch"] = chow_json(chern_character(ps.X, ps.F, truncate));
            j["c"] = chow_json(chern_class(ps.X, ps.F));
            j["chi"] = to_ll(chi_hrr(ps.X, ps.F));
            std::cout << j.dump() << "\n";
            return 0;
        });
    }
    if (tr->parsed()) {
        return guarded([&] {
            QuiverDatum d = load_quiver(quiver_file);
            TranslationResult t = flatten(d);
            if (as_json) {
                nlohmann::json j;
                j["spec"] = t.dsl();
                j["dim"] = quiver_dim(d);
                j["ambient"] = print_ambient(t.ambient);
                j["structural"] = print_expr(t.structural);
                j["translated"] = print_expr(t.translated);
                j["reductions"] = t.reductions;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << t.dsl() << "\n";
            }
            return 0;
        });
    }
    if (dg->parsed()) {
        return guarded([&] {
            nlohmann::json j;
            if (dg_dim->parsed()) {
                j["expected_dim"] = expected_dim(ddimX, de, df, dk);
            } else if (dg_en->parsed()) {
                ParsedSpec base = parse_spec(spec_str);
                ExprPtr E = parse_expr(Estr, base.X);
                ExprPtr F = parse_expr(Fstr, base.X);
                j["chi"] = to_ll(en_chi({base.X, base.F}, E, F));
            } else if (dg_conic->parsed()) {
                ParsedSpec base = parse_spec(spec_str);
                ExprPtr E = parse_expr(Estr, base.X);
                ExprPtr K = parse_expr(Fstr, base.X);
                ConicData cd = conic_discriminant({base.X, base.F}, E, K);
                j["delta"] = chow_json(cd.delta);
                j["delta_sing"] = chow_json(cd.delta_sing);
                j["deg_delta"] = cd.deg_delta.get_str();
                j["deg_delta_sing"] = cd.deg_delta_sing.get_str();
            } else if (dg_proj->parsed()) {
                ParsedSpec ps = parse_spec(spec_str);
                ProjectionProfile pr =
                    projection_profile({ps.X, ps.F}, proj_factor - 1);
                j["to_factor"] = pr.to_factor + 1;
                j["base"] = print_spec(pr.base.X, pr.base.F);
                j["fiber"] = pr.fiber_empty
                                 ? "empty"
                                 : print_spec(pr.fiber.X, pr.fiber.F);
                j["e"] = pr.e;
                j["f"] = pr.f;
                nlohmann::json strata = nlohmann::json::array();
                for (auto [l, d2] : pr.strata)
                    strata.push_back({{"rank", l}, {"expected_dim", d2}});
                j["strata"] = strata;
                j["caveat"] = pr.caveat;
            } else {
                std::cerr << "degloc: choose a subcommand\n";
                return 2;
            }
            std::cout << j.dump() << "\n";
            return 0;
        });
    }
    if (rw->parsed()) {
        return guarded([&] {
            ParsedSpec ps = parse_spec(spec_str);
            auto steps = recognize(ZeroLocusSpec{ps.X, ps.F});
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& st : steps) {
                nlohmann::json j;
                j["rule"] = st.rule;
                j["description"] = st.description;
                j["factors"] = st.bound_factors;
                j["residual"] = st.residual;
                arr.push_back(j);
            }
            std::cout << arr.dump(2) << "\n";
            return 0;
        });
    }
    if (vc->parsed()) {
        return guarded([&] {
            if (data_dir.empty()) {
                size_t slash = catalog_file.find_last_of('/');
                data_dir = slash == std::string::npos
                               ? "."
                               : catalog_file.substr(0, slash);
            }
            auto entries = load_catalog(catalog_file);
            Selector sel;
            if (!select_id.empty()) {
                sel.all = false;
                sel.ids.push_back(select_id);
            }
            sel.rho = select_rho;
            (void)all;
            VerifyReport rep = verify(entries, sel, data_dir);
            if (as_csv) std::cout << report_csv(rep);
            else if (as_json) std::cout << report_json(rep) << "\n";
            else {
                for (const auto& e : rep.entries) {
                    std::cout << (e.pass ? "PASS " : "FAIL ") << e.id;
                    if (!e.error.empty()) std::cout << "  error: " << e.error;
                    for (const auto& d : e.diffs)
                        std::cout << "  " << d.field << ": expected "
                                  << d.expected << ", computed " << d.computed;
                    std::cout << "  (" << e.seconds << "s)\n";
                }
            }
            return rep.all_pass() ? 0 : 1;
        });
    }
    return 2;
}
