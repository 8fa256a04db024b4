// kho — Khovanov homology of links from planar diagrams.
//
// Subcommands:
//   compute     homology table of one diagram (grid or JSON)
//   jones       Jones polynomial by the skein oracle
//   invariants  full JSON report: table plus every derived invariant
//   verify      structural identity suite and chain-level skein checks
//   qa          quasi-alternating certificate search
//   batch       run every entry of a named-PD file, optionally in parallel

#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "kho/kho.hpp"

namespace {

struct Options {
    std::string input;
    std::string format = "pd";
    std::string ring = "Z";
    std::string variant = "even";
    bool json = false;
    int64_t qa_budget = 4000;
    bool dump_chain = false;
    int jobs = 1;
    std::string cache_dir = kho::Cache::default_dir();
    bool no_cache = false;
};

void add_input_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--input", o.input, "diagram literal, or file path for batch")->required();
    cmd->add_option("--format", o.format, "diagram notation")
        ->check(CLI::IsMember({"pd", "braid", "pretzel"}));
}

void add_theory_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--ring", o.ring, "coefficients: Z | Q | Fp:<p>");
    cmd->add_option("--variant", o.variant, "even | even-reduced | odd | odd-reduced");
}

void add_cache_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--cache-dir", o.cache_dir, "results cache directory ($KHO_CACHE_DIR)");
    cmd->add_flag("--no-cache", o.no_cache, "bypass the results cache");
}

kho::ChainComplex full_complex(const kho::PlanarDiagram& D, kho::Variant v) {
    const bool reduced = v == kho::Variant::EvenReduced || v == kho::Variant::OddReduced;
    if (v == kho::Variant::Even || v == kho::Variant::EvenReduced)
        return kho::build_even_complex(D, reduced);
    kho::ArrowChoice arrows = kho::default_arrows(D);
    kho::OddSigns signs = kho::solve_odd_signs(D, arrows);
    return kho::build_odd(D, reduced, signs, arrows);
}

nlohmann::json complex_to_json(const kho::ChainComplex& C) {
    nlohmann::json out;
    out["i_min"] = C.i_min;
    auto levels = nlohmann::json::array();
    for (int k = 0; k < C.levels(); ++k)
        levels.push_back({{"i", C.i_min + k},
                          {"dim", C.dim(k)},
                          {"qdeg", C.qdeg[static_cast<size_t>(k)]}});
    out["levels"] = levels;
    auto ds = nlohmann::json::array();
    for (const auto& m : C.d) {
        auto entries = nlohmann::json::array();
        for (const auto& [r, c, v] : m.entries) entries.push_back({r, c, v});
        ds.push_back({{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}});
    }
    out["differentials"] = ds;
    return out;
}

// homology table with a read-through cache
kho::HomologyTable table_with_cache(const kho::PlanarDiagram& D, kho::Variant v,
                                    kho::RingSpec ring, const Options& o) {
    if (o.no_cache) return kho::khovanov_homology(D, v, ring);
    kho::Cache cache(o.cache_dir);
    std::string key = kho::Cache::key_for(D, ring, v);
    if (auto hit = cache.get(key)) {
        try {
            return kho::table_from_json(hit->at("table"));
        } catch (const std::exception&) {
            // corrupted value: fall through and recompute
        }
    }
    kho::HomologyTable t = kho::khovanov_homology(D, v, ring);
    cache.put(key, nlohmann::json{{"table", kho::table_to_json(t)}});
    return t;
}

int run_compute(const Options& o) {
    kho::PlanarDiagram D = kho::parse_diagram(o.input, o.format);
    kho::Variant v = kho::parse_variant(o.variant);
    kho::RingSpec ring = kho::parse_ring(o.ring);
    if (o.dump_chain) {
        std::cout << complex_to_json(full_complex(D, v)).dump(2) << "\n";
        return 0;
    }
    kho::HomologyTable t = table_with_cache(D, v, ring, o);
    if (o.json) {
        kho::ReportOptions ro;
        ro.qa.budget = o.qa_budget;
        std::cout << kho::json_report(D, v, ring, ro, &t).dump(2) << "\n";
    } else {
        std::cout << kho::variant_name(v) << " homology over " << ring.str() << " of "
                  << D.size() << "-crossing diagram " << D.hash() << "\n"
                  << kho::render_table(t) << "poincare: " << t.poincare().str() << "\n";
    }
    return 0;
}

int run_jones(const Options& o) {
    kho::PlanarDiagram D = kho::parse_diagram(o.input, o.format);
    kho::JonesOracle oracle;
    kho::Laurent j = oracle.jones(D);
    if (o.json) {
        nlohmann::json out{{"diagram_hash", D.hash()},
                           {"jones", j.str("q")},
                           {"det", kho::determinant_from_jones(j)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << j.str("q") << "\n";
    }
    return 0;
}

int run_invariants(const Options& o) {
    kho::PlanarDiagram D = kho::parse_diagram(o.input, o.format);
    kho::Variant v = kho::parse_variant(o.variant);
    kho::RingSpec ring = kho::parse_ring(o.ring);
    kho::ReportOptions ro;
    ro.qa.budget = o.qa_budget;
    kho::HomologyTable t = table_with_cache(D, v, ring, o);
    std::cout << kho::json_report(D, v, ring, ro, &t).dump(2) << "\n";
    return 0;
}

int run_verify(const Options& o) {
    kho::PlanarDiagram D = kho::parse_diagram(o.input, o.format);
    kho::CheckList cl = kho::verify_structural_identities(D);
    for (int c = 0; c < D.size(); ++c) {
        kho::SkeinCheckReport rep = kho::check_skein_exactness(D, c);
        cl.add("chain-level skein exactness at crossing " + std::to_string(c), rep.ok);
        for (const auto& e : rep.errors) std::cerr << "  " << e << "\n";
    }
    for (const auto& [name, pass] : cl.items)
        std::cout << (pass ? "PASS  " : "FAIL  ") << name << "\n";
    std::cout << cl.summary() << "\n";
    return cl.all_ok() ? 0 : 1;
}

int run_qa(const Options& o) {
    kho::PlanarDiagram D = kho::parse_diagram(o.input, o.format);
    kho::QaSearcher searcher({o.qa_budget});
    kho::QaResult r = searcher.run(D);
    if (o.json) {
        nlohmann::json out{{"diagram_hash", D.hash()},
                           {"verdict", kho::tri_name(r.status)},
                           {"reason", r.reason},
                           {"nodes", r.nodes}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "verdict: " << kho::tri_name(r.status) << "\nreason: " << r.reason
                  << "\nnodes: " << r.nodes << "\n";
    }
    return 0;
}

int run_batch(const Options& o) {
    kho::IngestResult in = kho::ingest_table_file(o.input);
    for (const auto& [line, msg] : in.errors)
        std::cerr << o.input << ":" << line << ": " << msg << "\n";

    kho::Variant v = kho::parse_variant(o.variant);
    kho::RingSpec ring = kho::parse_ring(o.ring);
    std::vector<nlohmann::json> results(in.entries.size());
    std::atomic<size_t> next{0};
    std::mutex cache_mu;  // the store itself locks; this keeps get/put pairs coherent

    auto worker = [&] {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= in.entries.size()) return;
            const auto& [name, D] = in.entries[k];
            nlohmann::json rec{{"name", name}};
            try {
                std::string key = kho::Cache::key_for(D, ring, v) + "-report";
                if (!o.no_cache) {
                    std::lock_guard<std::mutex> lk(cache_mu);
                    if (auto hit = kho::Cache(o.cache_dir).get(key)) {
                        rec["report"] = *hit;
                        results[k] = std::move(rec);
                        continue;
                    }
                }
                kho::ReportOptions ro;
                ro.qa.budget = o.qa_budget;
                nlohmann::json rep = kho::json_report(D, v, ring, ro);
                if (!o.no_cache) {
                    std::lock_guard<std::mutex> lk(cache_mu);
                    kho::Cache(o.cache_dir).put(key, rep);
                }
                rec["report"] = std::move(rep);
            } catch (const std::exception& e) {
                rec["error"] = e.what();
            }
            results[k] = std::move(rec);
        }
    };
    int jobs = std::max(1, o.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    nlohmann::json out;
    out["results"] = results;
    auto errs = nlohmann::json::array();
    for (const auto& [line, msg] : in.errors) errs.push_back({{"line", line}, {"error", msg}});
    out["ingest_errors"] = errs;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Khovanov homology of links: even, reduced and odd theories"};
    app.set_version_flag("--version", kho::kho_version);
    app.require_subcommand(1);
    Options o;

    CLI::App* compute = app.add_subcommand("compute", "homology table of one diagram");
    add_input_flags(compute, o);
    add_theory_flags(compute, o);
    add_cache_flags(compute, o);
    compute->add_flag("--json", o.json, "emit the full JSON report");
    compute->add_option("--qa-budget", o.qa_budget, "node budget for the QA search in reports");
    compute->add_flag("--dump-chain", o.dump_chain, "print the chain complex as JSON and stop");

    CLI::App* jones = app.add_subcommand("jones", "Jones polynomial by the skein oracle");
    add_input_flags(jones, o);
    jones->add_flag("--json", o.json, "emit JSON");

    CLI::App* invariants = app.add_subcommand("invariants", "full JSON invariant report");
    add_input_flags(invariants, o);
    add_theory_flags(invariants, o);
    add_cache_flags(invariants, o);
    invariants->add_option("--qa-budget", o.qa_budget, "node budget for the QA search");

    CLI::App* verify = app.add_subcommand("verify", "structural identity suite");
    add_input_flags(verify, o);

    CLI::App* qa = app.add_subcommand("qa", "quasi-alternating certificate search");
    add_input_flags(qa, o);
    qa->add_flag("--json", o.json, "emit JSON");
    qa->add_option("--qa-budget", o.qa_budget, "node budget before giving up");

    CLI::App* batch = app.add_subcommand("batch", "run a named-PD file (name: PD per line)");
    add_input_flags(batch, o);
    add_theory_flags(batch, o);
    add_cache_flags(batch, o);
    batch->add_option("--qa-budget", o.qa_budget, "node budget for the QA search");
    batch->add_option("--jobs", o.jobs, "diagrams processed concurrently");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return run_compute(o);
        if (jones->parsed()) return run_jones(o);
        if (invariants->parsed()) return run_invariants(o);
        if (verify->parsed()) return run_verify(o);
        if (qa->parsed()) return run_qa(o);
        if (batch->parsed()) return run_batch(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
