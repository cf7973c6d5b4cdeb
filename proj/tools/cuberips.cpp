// cuberips: batch CLI for hypercube Vietoris-Rips computations.
//
// Subcommands: facets, homology, collapse, mes, nerve, verify.
// Exit codes: 0 success, 2 verification failure, 3 budget exceeded,
// 4 invalid configuration.  Reports are JSON (timings excluded from
// canonical comparison); progress goes to stderr one line at a time.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "cuberips/certify.hpp"
#include "cuberips/cycles.hpp"
#include "cuberips/io.hpp"

using nlohmann::json;
using namespace cuberips;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string command;
    int n = 0;
    int r = -1;
    int max_dim = -1;
    int d = -1;
    std::string engine = "coreduce";
    std::string ordering = "paper";
    std::string strategy = "by-covering-index";
    std::string complex_kind = "full";
    std::string format = "json";
    std::string facet_file;
    std::string schedule_file;
    std::string out_path;
    std::string drop;
    bool verify = false;
    bool certify = false;
    std::uint64_t max_faces = 10'000'000;
    std::uint64_t seed = 0;
    int threads = 0;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json config_json(const RunConfig& c) {
    return json{{"command", c.command}, {"n", c.n},
                {"r", c.r},             {"max_dim", c.max_dim},
                {"d", c.d},             {"engine", c.engine},
                {"ordering", c.ordering}, {"strategy", c.strategy},
                {"complex", c.complex_kind}, {"format", c.format},
                {"max_faces", c.max_faces},  {"seed", c.seed},
                {"threads", c.threads},      {"drop", c.drop}};
}

// Memory guard: CUBE_RIPS_BUDGET_MB bounds the face budget (about 48 bytes
// of bookkeeping per face across the face tables).
std::uint64_t apply_memory_guard(std::uint64_t cap) {
    if (const char* env = std::getenv("CUBE_RIPS_BUDGET_MB")) {
        std::uint64_t mb = std::strtoull(env, nullptr, 10);
        if (mb > 0) cap = std::min(cap, mb * 1024 * 1024 / 48);
    }
    return cap;
}

void emit_report(const RunConfig& cfg, json results, double total_ms) {
    json report;
    report["version"] = kVersion;
    report["config"] = config_json(cfg);
    report["input_hash"] = fnv1a(config_json(cfg).dump());
    report["results"] = std::move(results);
    report["timings_ms"] = json{{"total", total_ms}};
    std::string text = report.dump(2) + "\n";
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + cfg.out_path);
        out << text;
    } else {
        std::cout << text;
    }
}

json homology_json(const HomologyReport& rep) {
    json dims = json::array();
    for (const auto& d : rep.dims)
        dims.push_back(json{{"i", d.dim}, {"betti", d.betti}, {"torsion", d.torsion}});
    return json{{"n", rep.n},       {"r", rep.r}, {"engine", rep.engine},
                {"max_dim", rep.max_dim}, {"dims", dims},
                {"face_counts", rep.face_counts}, {"timings_ms", rep.timings_ms}};
}

std::string homology_csv(const HomologyReport& rep) {
    std::string out = "i,betti,torsion\n";
    for (const auto& d : rep.dims) {
        std::string tor;
        for (const auto& t : d.torsion) {
            if (!tor.empty()) tor += ';';
            tor += t;
        }
        out += std::to_string(d.dim) + "," + std::to_string(d.betti) + "," + tor + "\n";
    }
    return out;
}

json dprec_json(const DPrecResult& dp, int n) {
    json mes_seq = json::array();
    for (int v : dp.argmax_mes.sequence) mes_seq.push_back(vertex_to_string(static_cast<std::uint32_t>(v), n));
    return json{{"d_prec", dp.value},
                {"argmax_face", simplex_to_csv(dp.argmax_face, n)},
                {"mes", mes_seq},
                {"faces_total", dp.faces_total},
                {"faces_scanned", dp.faces_scanned}};
}

json classification_json(const std::vector<ClassifiedFacet>& classified) {
    std::map<std::string, std::uint64_t> class_counts;
    std::map<int, std::uint64_t> sizes;
    for (const auto& cf : classified) {
        ++class_counts[facet_tag_name(cf.cls.tag)];
        ++sizes[popcount(cf.facet)];
    }
    json jc = json::object(), js = json::object();
    for (auto& [k, v] : class_counts) jc[k] = v;
    for (auto& [k, v] : sizes) js[std::to_string(k)] = v;
    return json{{"classes", jc}, {"sizes", js}};
}

std::vector<ClassifiedFacet> generate_classified(int n, int r, std::uint64_t cap) {
    if (r == 2) return generate_facets_r2(n);
    if (r == 3) return generate_facets_r3(n, cap);
    throw std::invalid_argument("facet classification requires r in {2,3}");
}

int cmd_facets(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto classified = generate_classified(cfg.n, cfg.r, cfg.max_faces);
    std::vector<Vmask> generated;
    for (const auto& cf : classified) generated.push_back(cf.facet);
    sort_canonical(generated);
    Complex generated_complex = make_complex(1 << cfg.n, generated, Origin::vr, cfg.n, cfg.r);
    if (!cfg.facet_file.empty()) write_facet_file(generated_complex, cfg.facet_file);

    json results = classification_json(classified);
    results["facet_count"] = generated.size();
    bool ok = true;
    if (cfg.verify) {
        std::cerr << "cuberips: verifying generator against clique enumeration\n";
        auto oracle = vr_complex(cfg.n, cfg.r, cfg.max_faces).facets;
        ok = (generated == oracle);
        results["oracle_equal"] = ok;
        results["oracle_count"] = oracle.size();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, results, ms);
    return ok ? 0 : 2;
}

int cmd_homology(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Complex c = vr_complex(cfg.n, cfg.r, cfg.max_faces);
    // default report depth: one past the largest dimension carrying homology
    // at these scales (2^r - 1), capped by the dimension of the complex
    int max_dim = cfg.max_dim;
    if (max_dim < 0) max_dim = std::min(1 << cfg.r, c.dimension());
    auto rep = reduced_homology(c, max_dim, engine_from_string(cfg.engine), cfg.max_faces);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.format == "csv") {
        std::string text = homology_csv(rep);
        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path);
            out << text;
            RunConfig meta = cfg;  // transcript goes alongside the csv
            meta.out_path = cfg.out_path + ".meta.json";
            emit_report(meta, homology_json(rep), ms);
        } else {
            std::cout << text;
        }
    } else {
        emit_report(cfg, homology_json(rep), ms);
    }
    return 0;
}

FacetOrdering ordering_for(const RunConfig& cfg, const Complex& c) {
    if (cfg.ordering == "paper") return paper_ordering(c, c.r);
    if (cfg.ordering == "canonical") return canonical_ordering(c);
    if (cfg.ordering.rfind("file:", 0) == 0) {
        Complex listed = read_facet_file(cfg.ordering.substr(5));
        FacetOrdering order = listed.facets;
        check_ordering(c, order);
        return order;
    }
    throw std::invalid_argument("unknown ordering: " + cfg.ordering);
}

int cmd_mes(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    Complex c;
    if (cfg.r == 3 && cfg.complex_kind == "reduced")
        c = reduce_A_family(cfg.n, cfg.max_faces).reduced;
    else
        c = vr_complex(cfg.n, cfg.r, cfg.max_faces);
    auto dp = d_prec(c, ordering_for(cfg, c), cfg.max_faces);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json results = dprec_json(dp, cfg.n);
    results["complex"] = cfg.complex_kind;
    results["facet_count"] = c.facets.size();
    emit_report(cfg, results, ms);
    return 0;
}

int cmd_collapse(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    json results;
    int code = 0;
    if (cfg.certify) {
        auto cert = certify_collapsibility(cfg.n, cfg.r, engine_from_string(cfg.engine), cfg.max_faces);
        results["upper"] = cert.upper;
        results["lower"] = cert.lower;
        results["certified"] = cert.certified;
        results["schedule_steps"] = cert.schedule_steps;
        results["schedule_gamma_max"] = cert.schedule_gamma_max;
        results["d_prec"] = dprec_json(cert.dprec, cfg.n);
        results["homology"] = homology_json(cert.homology);
        if (!cfg.schedule_file.empty() && cfg.r == 3)
            write_schedule_file(reduce_A_family(cfg.n, cfg.max_faces).schedule, cfg.n, cfg.schedule_file);
        code = cert.certified ? 0 : 2;
    } else {
        Complex c = vr_complex(cfg.n, cfg.r, cfg.max_faces);
        int d = (cfg.d >= 0) ? cfg.d : (1 << cfg.r);
        std::optional<FacetOrdering> order;
        if (cfg.ordering != "canonical") order = ordering_for(cfg, c);
        auto g = greedy_collapse(c, d, strategy_from_string(cfg.strategy), order, cfg.max_faces);
        results["d"] = d;
        results["reached_void"] = g.reached_void;
        results["steps"] = g.schedule.size();
        if (!cfg.schedule_file.empty()) write_schedule_file(g.schedule, cfg.n, cfg.schedule_file);
        if (g.reached_void) {
            Complex replayed = replay_schedule(vr_complex(cfg.n, cfg.r, cfg.max_faces), g.schedule, d);
            results["replay_void"] = replayed.is_void();
            if (!replayed.is_void()) code = 2;
        } else {
            code = 2;
        }
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, results, ms);
    return code;
}

int cmd_nerve(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto cover = boundary_cover(cfg.n, cfg.r, cfg.max_faces);
    if (!cfg.drop.empty()) {
        SubcubeSpec spec = subcube_from_string(cfg.drop, cfg.n);
        std::vector<Complex> kept;
        for (int i = 1; i <= cfg.n; ++i)
            for (int e = 0; e <= 1; ++e)
                if (!(spec.fixed.size() == 1 && spec.fixed[0] == std::make_pair(i, e)))
                    kept.push_back(subcube_vr_complex(SubcubeSpec(cfg.n, {{i, e}}), cfg.r, cfg.max_faces));
        cover = std::move(kept);
    }
    Complex nv = nerve(cover);
    auto rep = reduced_homology(nv, -1, engine_from_string(cfg.engine), cfg.max_faces);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json results;
    results["members"] = cover.size();
    results["nerve_facets"] = nv.facets.size();
    results["homology"] = homology_json(rep);
    emit_report(cfg, results, ms);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    json checks = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, json detail = json::object()) {
        detail["check"] = name;
        detail["pass"] = ok;
        checks.push_back(detail);
        all_ok = all_ok && ok;
        std::cerr << "cuberips: " << name << (ok ? " ok" : " FAIL") << "\n";
    };

    if (cfg.r == 2 && cfg.n >= 3) {
        auto classified = generate_classified(cfg.n, cfg.r, cfg.max_faces);
        std::vector<Vmask> gen;
        for (auto& cf : classified) gen.push_back(cf.facet);
        sort_canonical(gen);
        record("facet_oracle_equality", gen == vr_complex(cfg.n, 2, cfg.max_faces).facets);
        auto cert = certify_collapsibility(cfg.n, 2, engine_from_string(cfg.engine), cfg.max_faces);
        record("collapsibility_4", cert.certified,
               json{{"upper", cert.upper}, {"lower", cert.lower}});
        auto nz = cert.homology.nonzero_dims();
        record("homology_only_dim_3", nz == std::vector<int>{3} && !cert.homology.has_torsion(),
               json{{"nonzero_dims", nz}});
    } else if (cfg.r == 3 && cfg.n == 3) {
        Complex c = vr_complex(3, 3, cfg.max_faces);
        record("full_simplex", c.facets.size() == 1 && popcount(c.facets[0]) == 8);
        auto rep = reduced_homology(c, -1, engine_from_string(cfg.engine), cfg.max_faces);
        record("contractible", rep.nonzero_dims().empty());
        auto g = greedy_collapse(c, 1, CollapseStrategy::by_covering_index);
        record("cone_collapses_d1", g.reached_void);
    } else if (cfg.r == 3 && cfg.n >= 4) {
        auto classified = generate_classified(cfg.n, cfg.r, cfg.max_faces);
        std::vector<Vmask> gen;
        for (auto& cf : classified) gen.push_back(cf.facet);
        sort_canonical(gen);
        record("facet_oracle_equality", gen == vr_complex(cfg.n, 3, cfg.max_faces).facets);
        auto cert = certify_collapsibility(cfg.n, 3, engine_from_string(cfg.engine), cfg.max_faces);
        record("collapsibility_8", cert.certified,
               json{{"upper", cert.upper}, {"lower", cert.lower}});
        auto nz = cert.homology.nonzero_dims();
        std::vector<int> want = (cfg.n == 4) ? std::vector<int>{7} : std::vector<int>{4, 7};
        record("homology_dims", nz == want && !cert.homology.has_torsion(),
               json{{"nonzero_dims", nz}});
    } else {
        throw std::invalid_argument("verify supports r=2 (n>=3) and r=3 (n>=3)");
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json results;
    results["checks"] = checks;
    results["all_pass"] = all_ok;
    emit_report(cfg, results, ms);
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuberips: Vietoris-Rips complexes of hypercube graphs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_r) {
        sub->add_option("--n", cfg.n, "ambient hypercube dimension")->required();
        auto* ropt = sub->add_option("--r", cfg.r, "Vietoris-Rips scale");
        if (needs_r) ropt->required();
        sub->add_option("--max-faces", cfg.max_faces, "face/clique budget");
        sub->add_option("--seed", cfg.seed, "PRNG seed (reports only)");
        sub->add_option("--threads", cfg.threads, "worker pool size (0 = auto)");
        sub->add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
    };

    auto* facets_cmd = app.add_subcommand("facets", "generate + classify maximal simplices");
    add_common(facets_cmd, true);
    facets_cmd->add_flag("--verify", cfg.verify, "compare against clique enumeration");
    facets_cmd->add_option("--facet-file", cfg.facet_file, "write the canonical facet-list file");

    auto* homology_cmd = app.add_subcommand("homology", "exact integer reduced homology");
    add_common(homology_cmd, true);
    homology_cmd->add_option("--max-dim", cfg.max_dim, "largest dimension to report (-1 = all)");
    homology_cmd->add_option("--engine", cfg.engine, "plain|coreduce");
    homology_cmd->add_option("--format", cfg.format, "json|csv");

    auto* collapse_cmd = app.add_subcommand("collapse", "collapse schedules and certification");
    add_common(collapse_cmd, true);
    collapse_cmd->add_flag("--certify", cfg.certify, "certify the collapsibility number");
    collapse_cmd->add_option("--d", cfg.d, "collapse parameter (default 2^r)");
    collapse_cmd->add_option("--ordering", cfg.ordering, "paper|canonical|file:<path>");
    collapse_cmd->add_option("--strategy", cfg.strategy, "by-covering-index|smallest-free-face-first");
    collapse_cmd->add_option("--emit-schedule", cfg.schedule_file, "write the schedule file");
    collapse_cmd->add_option("--engine", cfg.engine, "homology engine for the lower bound");

    auto* mes_cmd = app.add_subcommand("mes", "minimal exclusion sequences / d_prec");
    add_common(mes_cmd, true);
    mes_cmd->add_option("--ordering", cfg.ordering, "paper|canonical|file:<path>");
    mes_cmd->add_option("--complex", cfg.complex_kind, "full|reduced (reduced = after A-removal)");

    auto* nerve_cmd = app.add_subcommand("nerve", "nerve of the boundary subcube cover");
    add_common(nerve_cmd, true);
    nerve_cmd->add_option("--drop", cfg.drop, "omit one cover member, e.g. 4=1 (one-sided cover)");
    nerve_cmd->add_option("--engine", cfg.engine, "plain|coreduce");

    auto* verify_cmd = app.add_subcommand("verify", "full verification pipeline for (n, r)");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--engine", cfg.engine, "plain|coreduce");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;  // any malformed invocation is invalid configuration
    }
    cfg.max_faces = apply_memory_guard(cfg.max_faces);
    if (cfg.threads <= 0) cfg.threads = static_cast<int>(std::thread::hardware_concurrency());

    try {
        if (facets_cmd->parsed()) { cfg.command = "facets"; return cmd_facets(cfg); }
        if (homology_cmd->parsed()) { cfg.command = "homology"; return cmd_homology(cfg); }
        if (collapse_cmd->parsed()) { cfg.command = "collapse"; return cmd_collapse(cfg); }
        if (mes_cmd->parsed()) { cfg.command = "mes"; return cmd_mes(cfg); }
        if (nerve_cmd->parsed()) { cfg.command = "nerve"; return cmd_nerve(cfg); }
        if (verify_cmd->parsed()) { cfg.command = "verify"; return cmd_verify(cfg); }
    } catch (const BudgetExceeded& e) {
        std::cerr << "cuberips: budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const VerificationError& e) {
        std::cerr << "cuberips: verification failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "cuberips: invalid configuration: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "cuberips: error: " << e.what() << "\n";
        return 1;
    }
    return 4;
}
