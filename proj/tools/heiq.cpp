// Command-line front end: group generation, recognition, isomorphism
// testing, the kernel census, invariant profiles, and the acceptance
// selftest. All file formats are JSON; outputs are byte-deterministic for
// fixed inputs and seed.
//
// Exit codes: 0 = decided (affirmative), 1 = decided negative
// (not a quotient / nonisomorphic), 2 = input or budget error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "heiq/heiq.hpp"

using namespace heiq;

namespace {

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json(out_path, j);
}

int cmd_gen(const std::string& kind, int m, std::int64_t p, int d, int s, std::uint64_t seed,
            const std::string& of_path, const std::string& kernel_path, const std::string& out_path) {
    if (kind == "heisenberg") {
        auto ctx = make_field(p, d);
        emit(group_to_json(heisenberg(m, *ctx)), out_path);
        return 0;
    }
    if (kind == "quotient") {
        Class2Group h = group_from_json(load_json(of_path));
        Subspace n = subspace_from_json(load_json(kernel_path));
        emit(group_to_json(quotient_group(h, n)), out_path);
        return 0;
    }
    if (kind == "brahana") {
        auto ctx = make_field(p, d);
        ExtField kf{ctx.get()};
        KBimap dot(kf, m, m, 1, BimapKind::general);
        for (int i = 0; i < m; ++i) dot.at(i, i, 0) = fe_one(*ctx);
        emit(group_to_json(brahana(p, flatten_bimap(*ctx, dot))), out_path);
        return 0;
    }
    if (kind == "random-kernel") {
        Rng rng(seed);
        if (s < 0 || s > d) throw error("random-kernel: need 0 <= s <= d");
        // uniform codimension-s subspace by index into the enumeration
        mpz_class total = gaussian_binomial(d, d - s, p);
        if (total > 1000000) throw budget_error("random-kernel: enumeration budget exceeded");
        std::uint64_t idx = static_cast<std::uint64_t>(rand_below(rng, static_cast<std::int64_t>(total.get_ui())));
        SubspaceEnumerator en(p, d, d - s);
        std::optional<Subspace> pick;
        for (std::uint64_t i = 0; i <= idx; ++i) pick = en.next();
        emit(subspace_to_json(*pick), out_path);
        return 0;
    }
    std::cerr << "unknown gen kind: " << kind << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for quotients of generalized Heisenberg groups"};
    app.require_subcommand(1);
    app.footer("Worker count for census sweeps: HEIQ_WORKERS environment variable.");

    std::string out_path, of_path, kernel_path, in_path, in2_path, oracle, kind;
    int m = 1, d = 1, s = 0;
    std::int64_t p = 3;
    std::uint64_t seed = kDefaultSeed;
    bool verbose = false, exact = false, with_invariants = false;
    int validate_pairs = 0;
    std::uint64_t census_budget = 1000000, gl_budget = 30000000, field_budget = 531441;

    auto* gen = app.add_subcommand("gen", "generate a group or kernel file");
    gen->add_option("kind", kind, "heisenberg | quotient | brahana | random-kernel")->required();
    gen->add_option("--m", m, "degree of the cover");
    gen->add_option("--p", p, "odd prime");
    gen->add_option("--d", d, "field extension degree");
    gen->add_option("--s", s, "kernel codimension (random-kernel)");
    gen->add_option("--seed", seed, "seed for random-kernel");
    gen->add_option("--of", of_path, "base group file (quotient)");
    gen->add_option("--kernel-file", kernel_path, "kernel subspace file (quotient)");
    gen->add_flag("--dot", "use the dot-product pairing (brahana; default)");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* rec = app.add_subcommand("recognize", "minimal cover of a group file");
    rec->add_option("group", in_path, "group JSON file")->required();
    rec->add_flag("--verbose", verbose, "include adjoint/tensor details and the epimorphism");
    rec->add_option("--out", out_path, "output file (default stdout)");

    auto* iso = app.add_subcommand("isotest", "isomorphism test between two group files");
    iso->add_option("g1", in_path, "first group JSON file")->required();
    iso->add_option("g2", in2_path, "second group JSON file")->required();
    iso->add_option("--oracle", oracle, "also run a brute-force oracle: orbit | pseudo");
    iso->add_option("--gl-budget", gl_budget, "bound on |GL| for the pseudo oracle");
    iso->add_option("--out", out_path, "output file (default stdout)");

    auto* cen = app.add_subcommand("census", "orbit census of kernels");
    cen->add_option("--p", p, "odd prime")->required();
    cen->add_option("--d", d, "field extension degree")->required();
    cen->add_option("--s", s, "kernel codimension")->required();
    cen->add_option("--validate-pairs", validate_pairs, "cross-check sampled pairs with isotest");
    cen->add_flag("--with-invariants", with_invariants, "embed invariant profiles per representative");
    cen->add_option("--seed", seed, "sampling seed");
    cen->add_option("--max-subspaces", census_budget, "enumeration budget");
    cen->add_option("--max-field", field_budget, "|K| budget for canonicalization");
    cen->add_option("--out", out_path, "output file (default stdout)");

    auto* inv = app.add_subcommand("invariants", "invariant profile of a group file");
    inv->add_option("group", in_path, "group JSON file")->required();
    inv->add_flag("--exact", exact, "compute the exact kernel stabilizer data");
    inv->add_option("--out", out_path, "output file (default stdout)");

    auto* self = app.add_subcommand("selftest", "run the acceptance checks");
    self->add_option("--census-budget", census_budget, "max subspaces (0 skips census checks)");
    self->add_option("--gl-budget", gl_budget, "max |GL| for sweeps (0 skips them)");
    self->add_option("--seed", seed, "seed for the randomized checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(kind, m, p, d, s, seed, of_path, kernel_path, out_path);

        if (rec->parsed()) {
            RecognitionResult r = recognize(group_from_json(load_json(in_path)));
            emit(recognition_to_json(r, verbose), out_path);
            return r.is_quotient ? 0 : 1;
        }

        if (iso->parsed()) {
            Class2Group g1 = group_from_json(load_json(in_path));
            Class2Group g2 = group_from_json(load_json(in2_path));
            IsoResult r = iso_test(g1, g2);
            Json j = iso_to_json(r);
            if (oracle == "orbit") {
                if (!r.rec1.is_quotient || !r.rec2.is_quotient) throw error("oracle: recognition failed");
                bool same_floor = r.rec1.desc.p == r.rec2.desc.p && r.rec1.desc.m == r.rec2.desc.m &&
                                  r.rec1.desc.d == r.rec2.desc.d;
                bool o = same_floor && oracle_orbit_test(*r.rec1.desc.field, r.rec1.desc.kernel_m,
                                                         r.rec2.desc.kernel_m);
                j["oracle"] = Json{{"kind", "orbit"}, {"isomorphic", o}, {"agrees", o == r.isomorphic}};
            } else if (oracle == "pseudo") {
                auto sweep = oracle_pseudo_isometry(extract_bimap(g1), extract_bimap(g2), g1.p(), false,
                                                    gl_budget);
                j["oracle"] = Json{{"kind", "pseudo"},
                                   {"isomorphic", sweep.found},
                                   {"candidates", sweep.candidates},
                                   {"agrees", sweep.found == r.isomorphic}};
            } else if (!oracle.empty()) {
                throw error("unknown oracle: " + oracle);
            }
            emit(j, out_path);
            if (!r.decided) return 2;
            return r.isomorphic ? 0 : 1;
        }

        if (cen->parsed()) {
            CensusOptions opt;
            opt.max_subspaces = census_budget;
            opt.max_field = field_budget;
            opt.validate_pairs = validate_pairs;
            opt.seed = seed;
            CensusReport r = run_census(p, d, s, opt);
            Json j = census_to_json(r);
            if (with_invariants) {
                auto ctx = make_field(p, d);
                Class2Group h = heisenberg(1, *ctx);
                Json profs = Json::array();
                for (const auto& o : r.orbits) {
                    if (o.representative.dim() == d) continue;
                    profs.push_back(invariants_to_json(invariant_profile(quotient_group(h, o.representative))));
                }
                j["invariant_profiles"] = std::move(profs);
            }
            emit(j, out_path);
            return 0;
        }

        if (inv->parsed()) {
            Class2Group g = group_from_json(load_json(in_path));
            InvariantProfile prof = invariant_profile(g);
            Json j = invariants_to_json(prof);
            if (prof.recognized) {
                RecognitionResult r = recognize(g);
                AutReport ar = aut_components(g, r, exact);
                Json aut{{"sp_order", ar.sp_order.get_str()},
                         {"hom_part_order", ar.hom_part_order.get_str()}};
                if (exact) {
                    aut["stabilizer_subfield_degree"] = ar.stabilizer_subfield_degree;
                    aut["galois_stabilizer_order"] = ar.galois_stabilizer_order;
                } else {
                    Json shapes = Json::array();
                    for (auto [e, f] : ar.possible_quotient_shapes)
                        shapes.push_back(Json{{"e", e}, {"f", f}});
                    aut["possible_quotient_shapes"] = std::move(shapes);
                }
                j["aut"] = std::move(aut);
            }
            emit(j, out_path);
            return 0;
        }

        if (self->parsed()) {
            SelftestOptions opt;
            opt.census_budget = census_budget;
            opt.gl_budget = gl_budget;
            opt.seed = seed;
            int failures = 0;
            run_acceptance(opt, [&](const CheckResult& r) {
                const char* status = r.skipped ? "SKIPPED" : r.pass ? "PASS" : "FAIL";
                std::printf("[%s] %-24s (%.2fs) %s\n", status, r.name.c_str(), r.seconds,
                            r.detail.c_str());
                std::fflush(stdout);
                if (!r.pass && !r.skipped) ++failures;
            });
            return failures ? 1 : 0;
        }
    } catch (const budget_error& e) {
        std::cerr << Json{{"error", "budget"}, {"what", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "input"}, {"what", e.what()}}.dump(2) << "\n";
        return 2;
    }
    return 2;
}
