#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algebra.hpp"
#include "campaign.hpp"
#include "falsify.hpp"
#include "generators.hpp"
#include "json_io.hpp"
#include "solve.hpp"
#include "switching.hpp"
#include "vsearch.hpp"

namespace rainbow {

/// Exit codes: 0 found / valid / pass, 1 a negative verdict, 2 usage or input error.
enum ExitCode : int { exit_ok = 0, exit_verdict = 1, exit_input = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::parameter, "cannot write '" + path + "'");
    out << text;
}

inline Instance load_instance(const std::string& path) {
    try {
        return parse_instance(read_file(path));
    } catch (const Error& e) {
        std::string what = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (what.starts_with(prefix)) what.erase(0, prefix.size());
        throw Error(e.kind(), path + ": " + what);
    }
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

/// Invalid instances are input errors: report every violation and exit 2.
inline bool report_invalid(const Instance& inst, std::ostream& err) {
    ValidationReport report = validate_instance(inst);
    for (const Violation& v : report.violations) err << "error: " << v.message() << "\n";
    return !report.valid();
}

inline std::vector<FiniteAlgebra> algebras_of(const Instance& inst, const VertexSet& ground) {
    std::vector<FiniteAlgebra> out;
    for (Colour c = 0; c < inst.n; ++c) out.push_back(relation_to_algebra(inst, c, ground));
    return out;
}

inline std::vector<VertexSet> expected_partition(const Instance& inst, Colour c, const VertexSet& ground) {
    std::vector<VertexSet> blocks;
    const VertexSet ker = kernel(inst, c);
    for (const Clique& q : inst.classes[c]) blocks.emplace_back(q.begin(), q.end());
    for (Element x : ground)
        if (!ker.contains(x)) blocks.push_back(VertexSet{x});
    std::sort(blocks.begin(), blocks.end(), [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
    return blocks;
}

inline Json partition_to_json(const std::vector<VertexSet>& blocks) {
    Json out = Json::array();
    for (const VertexSet& b : blocks) out.push_back(vertex_set_to_json(b));
    return out;
}

} // namespace detail

/// `args` excludes the program name.
inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rainbow matching solver and verifier", "rainbow"};
    app.require_subcommand(1);

    std::string file, file2, out_path, method_text = "greedy_switch", delta_text = "1";
    int n = 0, kernel_size = 0, max_kernel = 0;
    std::optional<std::size_t> size;
    std::size_t max_len = 4;
    std::uint64_t seed = 0, budget = 10'000'000;
    bool simple = false, traces = false;
    double overlap = 0.5;
    std::vector<double> weights{1.0, 1.0, 1.0};
    int missing = -1;
    std::int64_t timeout_ms = 0;

    auto* validate = app.add_subcommand("validate", "Check an instance file against the structural rules");
    validate->add_option("file", file, "Instance JSON")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Search for a rainbow matching");
    solve_cmd->add_option("file", file, "Instance JSON")->required();
    solve_cmd->add_option("--method", method_text, "exact | greedy_switch | proof_guided");
    solve_cmd->add_option("--size", size, "Target size (default n)");
    solve_cmd->add_option("--delta", delta_text, "Positive rational, e.g. 1 or 1/2");
    solve_cmd->add_option("--max-switch-len", max_len, "Longest switching tried");
    solve_cmd->add_option("--seed", seed, "64-bit seed");
    solve_cmd->add_option("--budget", budget, "Node budget");
    solve_cmd->add_option("--timeout-ms", timeout_ms, "Wall-clock limit in milliseconds");
    solve_cmd->add_flag("--trace", traces, "Include proof traces");

    auto* hyp = app.add_subcommand("hypothesis", "Check the disjoint-edge hypothesis over bounded switchings");
    hyp->add_option("instance", file, "Instance JSON")->required();
    hyp->add_option("matching", file2, "Matching JSON of size n-1")->required();
    hyp->add_option("--missing", missing, "Colour absent from the matching")->required();
    hyp->add_option("--delta", delta_text, "Positive rational");
    hyp->add_option("--max-len", max_len, "Longest switching checked");

    auto* generate = app.add_subcommand("generate", "Emit an instance");
    generate->require_subcommand(1);
    auto* gen_tri = generate->add_subcommand("extremal-triangles", "n classes of n-1 shared triangles");
    gen_tri->add_option("--n", n, "Colour count")->required();
    gen_tri->add_option("--out", out_path, "Write to a file instead of stdout");
    auto* gen_rand = generate->add_subcommand("random", "Random clique-union classes");
    gen_rand->add_option("--n", n, "Colour count")->required();
    gen_rand->add_option("--kernel", kernel_size, "Kernel size of every colour")->required();
    gen_rand->add_option("--overlap", overlap, "Probability of reusing an element");
    gen_rand->add_option("--weights", weights, "Weights of clique sizes 2, 3, ...");
    gen_rand->add_option("--seed", seed, "64-bit seed");
    gen_rand->add_flag("--simple", simple, "Forbid pairs shared between colours");
    gen_rand->add_option("--out", out_path, "Write to a file instead of stdout");

    auto* fals = app.add_subcommand("falsify", "Search for an instance without a rainbow matching of size n");
    fals->add_option("--n", n, "Colour count")->required();
    fals->add_option("--kernel", kernel_size, "Minimum kernel size")->required();
    fals->add_flag("--simple", simple, "Forbid pairs shared between colours");
    fals->add_option("--budget", budget, "Candidate evaluations");
    fals->add_option("--seed", seed, "64-bit seed");
    fals->add_option("--out", out_path, "Also write the witness instance here");

    auto* vs = app.add_subcommand("vsearch", "Exhaustive kernel table for n <= 2");
    vs->add_option("--n", n, "Colour count")->required();
    vs->add_option("--max-kernel", max_kernel, "Largest kernel")->required();

    auto* alg = app.add_subcommand("algebra", "Relation and set-algebra correspondence");
    alg->require_subcommand(1);
    auto* roundtrip = alg->add_subcommand("roundtrip", "Relation -> algebra -> relation, or the reverse");
    roundtrip->add_option("file", file, "Instance or algebra JSON")->required();
    auto* witness = alg->add_subcommand("witness", "Matching -> witness family -> matching");
    witness->add_option("instances", file, "Instance JSON")->required();
    witness->add_option("matching", file2, "Matching JSON")->required();

    auto* bench = app.add_subcommand("bench", "Run a campaign and write CSV rows");
    bench->add_option("campaign", file, "Campaign JSON")->required();
    bench->add_option("--out", out_path, "CSV path (default: the campaign's output field, else stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        if (*validate) {
            Instance inst = detail::load_instance(file);
            ValidationReport report = validate_instance(inst);
            Json j{{"valid", report.valid()}};
            Json list = Json::array();
            for (const Violation& v : report.violations) list.push_back(Json{{"rule", v.rule}, {"detail", v.detail}});
            j["violations"] = std::move(list);
            detail::emit(out, j);
            if (detail::report_invalid(inst, err)) return exit_input;
            return exit_ok;
        }

        if (*solve_cmd) {
            Instance inst = detail::load_instance(file);
            if (detail::report_invalid(inst, err)) return exit_input;
            SolverParams p;
            p.method = parse_method(method_text);
            p.delta = parse_rational(delta_text);
            p.max_switch_len = max_len;
            p.seed = seed;
            p.node_budget = budget;
            if (timeout_ms > 0) p.deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
            SolveOutcome o = solve(inst, p, size);
            detail::emit(out, outcome_to_json(o, p.method, traces));
            return o.status == Status::found ? exit_ok : exit_verdict;
        }

        if (*hyp) {
            Instance inst = detail::load_instance(file);
            if (detail::report_invalid(inst, err)) return exit_input;
            Matching m = parse_matching(detail::read_file(file2));
            if (!is_rainbow_matching(inst, m, m.size())) throw Error(ErrorKind::parameter, "matching is not rainbow");
            HypothesisReport r = check_lemma_hypothesis(inst, m, missing, parse_rational(delta_text), max_len);
            detail::emit(out, hypothesis_to_json(r));
            return r.holds() ? exit_ok : exit_verdict;
        }

        if (*generate) {
            Instance inst;
            if (*gen_tri) {
                inst = extremal_triangles(n);
            } else {
                RandomSpec spec;
                spec.n = n;
                spec.kernel = kernel_size;
                spec.overlap = overlap;
                spec.clique_size_weights = weights;
                spec.simple_mode = simple;
                spec.seed = seed;
                inst = random_instance(spec);
            }
            const std::string text = serialize_instance(inst);
            if (out_path.empty()) out << text;
            else detail::write_file(out_path, text);
            return exit_ok;
        }

        if (*fals) {
            FalsifyParams p;
            p.n = n;
            p.kernel = kernel_size;
            p.simple = simple;
            p.budget = budget;
            p.seed = seed;
            FalsifyResult r = falsify(p);
            detail::emit(out, falsify_to_json(r));
            if (r.witness && !out_path.empty()) detail::write_file(out_path, serialize_instance(*r.witness));
            return r.witness ? exit_ok : exit_verdict;
        }

        if (*vs) {
            detail::emit(out, vtable_to_json(compute_v_exhaustive(n, max_kernel)));
            return exit_ok;
        }

        if (*roundtrip) {
            const Json doc = detail::parse_document(detail::read_file(file));
            Json report;
            bool pass = true;
            if (doc.is_object() && doc.contains("ground")) {
                FiniteAlgebra a = algebra_from_json(doc);
                std::vector<VertexSet> atoms = algebra_to_relation(a);
                Instance rel;
                rel.n = 1;
                rel.classes.emplace_back();
                for (const VertexSet& b : atoms)
                    if (b.size() >= 2) rel.classes[0].push_back(Clique(b.begin(), b.end()));
                const FiniteAlgebra back = relation_to_algebra(canonicalize(rel), 0, a.ground);
                pass = back == a;
                report = Json{{"kind", "algebra"}, {"atoms", detail::partition_to_json(atoms)},
                              {"members", a.members.size()}};
            } else {
                Instance inst = instance_from_json(doc);
                if (detail::report_invalid(inst, err)) return exit_input;
                const VertexSet ground = ground_set(inst);
                Json colours = Json::array();
                for (Colour c = 0; c < inst.n; ++c) {
                    FiniteAlgebra a = relation_to_algebra(inst, c, ground);
                    std::vector<VertexSet> atoms = algebra_to_relation(a);
                    const bool same = atoms == detail::expected_partition(inst, c, ground);
                    pass = pass && same && closure_violations(a).empty();
                    colours.push_back(Json{{"colour", c}, {"members", a.members.size()},
                                           {"atoms", detail::partition_to_json(atoms)}, {"match", same}});
                }
                report = Json{{"kind", "relation"}, {"ground", vertex_set_to_json(ground)}, {"colours", colours}};
            }
            report["verdict"] = pass ? "pass" : "fail";
            detail::emit(out, report);
            return pass ? exit_ok : exit_verdict;
        }

        if (*witness) {
            Instance inst = detail::load_instance(file);
            if (detail::report_invalid(inst, err)) return exit_input;
            Matching m = parse_matching(detail::read_file(file2));
            WitnessFamily w = witness_from_matching(inst, m);
            VertexSet ground = ground_set(inst);
            std::vector<FiniteAlgebra> algebras = detail::algebras_of(inst, ground);
            WitnessReport r = verify_witness_property(algebras, w);
            Json j = witness_report_to_json(r);
            bool pass = r.pass();
            if (pass) {
                Matching back = matching_from_witness(algebras, w);
                const bool ok = is_rainbow_matching(inst, back, static_cast<std::size_t>(inst.n));
                j["recovered"] = matching_to_json(back);
                j["recovered_is_rainbow"] = ok;
                pass = ok;
            }
            j["verdict"] = pass ? "pass" : "fail";
            detail::emit(out, j);
            return pass ? exit_ok : exit_verdict;
        }

        if (*bench) {
            CampaignSpec spec = parse_campaign(detail::read_file(file));
            CampaignResult r = run_campaign(spec);
            const std::string csv = campaign_csv(r);
            const std::string target = out_path.empty() ? spec.output : out_path;
            std::size_t violations = 0, levels = 0;
            for (const CampaignRow& row : r.rows) {
                violations += row.identity_violations.size();
                levels += row.proof_levels_checked;
            }
            Json summaries = Json::array();
            for (const CampaignSummary& s : r.summaries)
                summaries.push_back(Json{{"n", s.n}, {"kernel", s.kernel}, {"method", std::string(to_string(s.method))},
                                         {"runs", s.runs}, {"successes", s.successes},
                                         {"success_fraction", s.success_fraction()}});
            if (target.empty()) {
                out << csv;
            } else {
                detail::write_file(target, csv);
                detail::emit(out, Json{{"suite", spec.suite}, {"runs", r.rows.size()}, {"csv", target},
                                       {"proof_levels_checked", levels}, {"identity_violations", violations},
                                       {"summaries", summaries}});
            }
            return violations == 0 ? exit_ok : exit_verdict;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}

} // namespace rainbow
