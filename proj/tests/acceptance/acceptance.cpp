// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion N]   (N in 1..9; default runs all)

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <rainbow/cli.hpp>

#include "oracles.hpp"

using namespace rainbow;

namespace {

// Pinned limits.
constexpr double ac1_limit_s = 60.0;
constexpr double ac2_limit_s = 300.0;
constexpr std::uint64_t ac2_max_evaluations = 10'000'000;
constexpr double ac3_limit_s = 60.0;
constexpr double ac4_limit_s = 600.0;
constexpr double ac4_required_fraction = 1.0;
constexpr std::size_t ac5_min_switchings = 1000;
constexpr int ac6_triples = 500;
constexpr double ac7_limit_s = 600.0;
constexpr double ac8_limit_s = 60.0;
constexpr int ac8_partitions = 200;

using Seconds = std::chrono::duration<double>;

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli_main(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

double since(Clock::time_point t) { return Seconds(Clock::now() - t).count(); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

Verdict ac1() {
    auto t0 = Clock::now();
    for (int n = 4; n <= 8; ++n) {
        CliRun gen = cli({"generate", "extremal-triangles", "--n", std::to_string(n)});
        if (gen.code != 0) return {false, "generate failed for n=" + std::to_string(n)};
        Instance inst = parse_instance(gen.out);
        for (Colour c = 0; c < n; ++c)
            if (kernel(inst, c).size() != static_cast<std::size_t>(3 * n - 3))
                return {false, "kernel size wrong at n=" + std::to_string(n)};
        const std::string path = "/tmp/rainbow_ac1_" + std::to_string(n) + ".json";
        std::ofstream(path) << gen.out;
        CliRun none = cli({"solve", path, "--method", "exact", "--size", std::to_string(n)});
        if (none.code != 1 || Json::parse(none.out)["certificate"] != "exhaustive-proof-of-absence")
            return {false, "no absence certificate at n=" + std::to_string(n)};
        CliRun some = cli({"solve", path, "--method", "exact", "--size", std::to_string(n - 1)});
        if (some.code != 0) return {false, "size n-1 not found at n=" + std::to_string(n)};
        Matching m = matching_from_json(Json::parse(some.out)["matching"]);
        if (!is_rainbow_matching(inst, m, static_cast<std::size_t>(n - 1)))
            return {false, "size n-1 matching fails verification"};
    }
    double s = since(t0);
    return {s < ac1_limit_s, "n=4..8 absent at n, found at n-1; " + fmt(s) + " s (limit " + fmt(ac1_limit_s) + ")"};
}

Verdict ac2() {
    auto t0 = Clock::now();
    CliRun r = cli({"falsify", "--n", "3", "--kernel", "8", "--budget", std::to_string(ac2_max_evaluations), "--seed", "0"});
    double s = since(t0);
    if (r.code != 0) return {false, "no witness within budget (" + fmt(s) + " s)"};
    Json j = Json::parse(r.out);
    Instance w = instance_from_json(j["witness"]);
    for (Colour c = 0; c < 3; ++c)
        if (kernel(w, c).size() < 8) return {false, "witness kernel below 8"};
    if (j["certificate"] != "exhaustive-proof-of-absence") return {false, "certificate is not exhaustive"};
    if (oracle::naive_has_rainbow(w, 3)) return {false, "naive checker finds a size-3 rainbow matching"};
    const std::uint64_t evals = j["evaluations"].get<std::uint64_t>();
    return {s < ac2_limit_s && evals <= ac2_max_evaluations,
            "witness after " + std::to_string(evals) + " evaluations, " + fmt(s) + " s; kernels " + j["kernels"].dump()};
}

Verdict ac3() {
    auto t0 = Clock::now();
    CliRun r = cli({"vsearch", "--n", "2", "--max-kernel", "4"});
    double s = since(t0);
    if (r.code != 0) return {false, "vsearch failed: " + r.err};
    Json j = Json::parse(r.out);
    for (const Json& row : j["rows"]) {
        if (row["kernel"] != 4) continue;
        if (row["verdict"] != "counterexample exists") return {false, "kernel 4 reported all-solvable"};
        Instance w = instance_from_json(row["counterexample"]);
        if (oracle::naive_has_rainbow(w, 2)) return {false, "counterexample is solvable"};
        for (const Edge& a : edges_of(w, 0))
            for (const Edge& b : edges_of(w, 1))
                if (!a.meets(b)) return {false, "counterexample is not a crossing configuration"};
        return {s < ac3_limit_s, "kernel 4 counterexample " + row["counterexample"]["classes"].dump() + "; " +
                                     fmt(s) + " s"};
    }
    return {false, "no kernel-4 row"};
}

Verdict ac4() {
    auto t0 = Clock::now();
    CampaignSpec spec;
    spec.suite = "theorem2";
    spec.n_values = {20, 30, 50};
    spec.kernel_factors = {Rational(4)};
    spec.deltas = {Rational(1)};
    spec.methods = {Method::greedy_switch};
    for (std::uint64_t s = 0; s < 100; ++s) spec.seeds.push_back(s);
    spec.timeout_ms = 60'000;
    CampaignResult r = run_campaign(spec);
    double s = since(t0);
    std::string detail;
    bool pass = s < ac4_limit_s;
    for (const CampaignSummary& sum : r.summaries) {
        detail += "n=" + std::to_string(sum.n) + ":" + std::to_string(sum.successes) + "/" + std::to_string(sum.runs) + " ";
        pass = pass && sum.success_fraction() >= ac4_required_fraction;
    }
    for (const CampaignRow& row : r.rows)
        if (row.status == Status::found && !row.verified) pass = false;
    return {pass, detail + fmt(s) + " s"};
}

Verdict ac5() {
    std::size_t switchings = 0, applied = 0, failures = 0;
    for (std::uint64_t seed = 0; switchings < ac5_min_switchings * 3 && seed < 500; ++seed) {
        auto k = oracle::random_augment_case(5 + static_cast<int>(seed % 5), 7 + static_cast<int>(seed % 6), 0.8, seed);
        if (!k) continue;
        const Instance& g = k->instance;
        auto batch = enumerate_switchings(g, k->matching, k->missing, 3, 400);
        for (const Switching& s : batch.items) {
            ++switchings;
            bool ok = validate_switching(g, k->matching, s, k->missing) &&
                      s.length() == s.out_edges.size() && s.length() == s.matching_edges.size();
            for (std::size_t i = 0; i < s.out_edges.size(); ++i)
                for (std::size_t j = i + 1; j < s.out_edges.size(); ++j) ok = ok && !s.out_edges[i].meets(s.out_edges[j]);
            if (!ok) {
                ++failures;
                continue;
            }
            // Every admissible closing edge of the end colour.
            std::vector<Element> covered;
            for (const Edge& e : k->matching.edges)
                if (std::find(s.matching_edges.begin(), s.matching_edges.end(), e) == s.matching_edges.end()) {
                    covered.push_back(e.u);
                    covered.push_back(e.v);
                }
            for (const Edge& e : s.out_edges) {
                covered.push_back(e.u);
                covered.push_back(e.v);
            }
            const VertexSet blocked(covered);
            for (const Edge& e : edges_of(g, s.end_colour())) {
                if (blocked.contains(e.u) || blocked.contains(e.v)) continue;
                if (s.length() == 0 && k->matching.has_colour(e.colour)) continue;
                Matching out = apply_switching(g, k->matching, s, e);
                ++applied;
                if (!is_rainbow_matching(g, out, k->matching.size() + 1)) ++failures;
            }
        }
    }
    return {failures == 0 && switchings >= ac5_min_switchings && applied > 0,
            std::to_string(switchings) + " switchings, " + std::to_string(applied) + " applications, " +
                std::to_string(failures) + " failures"};
}

Verdict ac6() {
    std::mt19937_64 rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < ac6_triples; ++trial) {
        const int size = 2 + static_cast<int>(rng() % 7);
        std::vector<int> q(size);
        std::iota(q.begin(), q.end(), 0);
        std::vector<int> from, to;
        for (int x = 0; x < size + 2; ++x) {
            if (rng() % 2) from.push_back(x);
            if (rng() % 2) to.push_back(x);
        }
        Instance inst;
        inst.n = 1;
        inst.classes = {{q}};
        if (max_disjoint_colour_edges(inst, 0, VertexSet(from), VertexSet(to)) != oracle::clique_max_disjoint(q, from, to))
            ++mismatches;
    }
    return {mismatches == 0, std::to_string(ac6_triples) + " triples, " + std::to_string(mismatches) + " mismatches"};
}

Verdict ac7() {
    auto t0 = Clock::now();
    constexpr int ground = 6;
    std::vector<ColourClass> classes;
    for_each_partial_partition(ground, [&](const ColourClass& cls) {
        if (!cls.empty()) classes.push_back(cls);
    });
    std::uint64_t instances = 0, checks = 0, mismatches = 0;
    auto check = [&](const Instance& inst) {
        ++instances;
        for (int k = 1; k <= inst.n; ++k) {
            ++checks;
            auto o = solve_exact(inst, static_cast<std::size_t>(k), 100'000'000);
            const bool exact = o.status == Status::found;
            if (o.certificate == Certificate::budget_exhausted || exact != oracle::naive_has_rainbow(inst, k))
                ++mismatches;
        }
    };
    for (int k0 = 2; k0 <= ground; ++k0)
        for (const ColourClass& layout : canonical_layouts(k0)) {
            Instance inst;
            inst.n = 1;
            inst.classes = {layout};
            check(inst);
            inst.n = 2;
            inst.classes.resize(2);
            for (const ColourClass& a : classes) {
                inst.classes[1] = a;
                check(inst);
            }
            inst.n = 3;
            inst.classes.resize(3);
            for (std::size_t i = 0; i < classes.size(); ++i)
                for (std::size_t j = i; j < classes.size(); ++j) {
                    inst.classes[1] = classes[i];
                    inst.classes[2] = classes[j];
                    check(inst);
                }
        }
    double s = since(t0);
    return {mismatches == 0 && s < ac7_limit_s,
            std::to_string(instances) + " instances, " + std::to_string(checks) + " size checks, " +
                std::to_string(mismatches) + " mismatches; " + fmt(s) + " s"};
}

Verdict ac8() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(808);
    int failures = 0;
    for (int trial = 0; trial < ac8_partitions; ++trial) {
        const int size = 2 + static_cast<int>(rng() % 7);
        const int n = 1 + static_cast<int>(rng() % std::min(3, size / 2));
        std::vector<int> perm(size);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Instance inst;
        inst.n = n;
        std::vector<std::vector<std::vector<int>>> partitions;
        for (int c = 0; c < n; ++c) {
            auto blocks = oracle::random_partition(size, rng);
            // Put x_c = perm[2c] and y_c = perm[2c+1] in one block.
            const int x = perm[2 * c], y = perm[2 * c + 1];
            for (auto& b : blocks) b.erase(std::remove(b.begin(), b.end(), y), b.end());
            for (auto& b : blocks)
                if (std::find(b.begin(), b.end(), x) != b.end()) b.push_back(y);
            blocks.erase(std::remove_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); }), blocks.end());
            for (auto& b : blocks) std::sort(b.begin(), b.end());
            partitions.push_back(blocks);
            inst.classes.push_back(oracle::class_of(blocks));
        }
        std::vector<int> all(size);
        std::iota(all.begin(), all.end(), 0);
        const VertexSet ground(all);
        std::vector<FiniteAlgebra> algebras;
        for (Colour c = 0; c < n; ++c) {
            FiniteAlgebra a = relation_to_algebra(inst, c, ground);
            // Exhaustive closure over all member pairs.
            for (Mask p : a.members) {
                if (!a.contains(a.full() & ~p)) ++failures;
                for (Mask q : a.members)
                    if (!a.contains(p | q)) ++failures;
            }
            std::vector<VertexSet> expect;
            for (const auto& b : partitions[c]) expect.emplace_back(b.begin(), b.end());
            std::sort(expect.begin(), expect.end(), [](const VertexSet& u, const VertexSet& v) { return u[0] < v[0]; });
            if (algebra_to_relation(a) != expect) ++failures;
            algebras.push_back(std::move(a));
        }
        Matching m;
        for (Colour c = 0; c < n; ++c) m.edges.push_back(make_edge(c, perm[2 * c], perm[2 * c + 1]));
        if (!is_rainbow_matching(inst, m, static_cast<std::size_t>(n))) {
            ++failures;
            continue;
        }
        WitnessFamily w = witness_from_matching(inst, m);
        if (!verify_witness_property(algebras, w).pass()) ++failures;
        Matching back = matching_from_witness(algebras, w);
        if (sorted(back).edges != sorted(m).edges) ++failures;
    }
    double s = since(t0);
    return {failures == 0 && s < ac8_limit_s,
            std::to_string(ac8_partitions) + " random relation families, " + std::to_string(failures) + " failures; " +
                fmt(s) + " s"};
}

Verdict ac9() {
    std::uint64_t runs = 0, levels = 0, violations = 0;
    auto audit = [&](const ProofTrace& t) {
        for (const ProofLevel& level : t.levels) {
            if (level.fallback || (level.branch != ProofBranch::concentrated && level.branch != ProofBranch::spread))
                continue;
            ++levels;
            violations += proof_level_identity_violations(level).size();
        }
    };
    CampaignSpec spec;
    spec.n_values = {20, 30, 50};
    spec.kernel_factors = {Rational(4)};
    spec.methods = {Method::proof_guided};
    for (std::uint64_t s = 0; s < 20; ++s) spec.seeds.push_back(s);
    for (const CampaignRow& row : run_campaign(spec).rows) {
        ++runs;
        levels += row.proof_levels_checked;
        violations += row.identity_violations.size();
    }
    const std::uint64_t campaign_levels = levels;
    for (int n = 8; n <= 60; n += 4)
        for (Rational delta : {Rational(1), Rational(1, 2), Rational(3, 2)})
            for (bool conc : {true, false}) {
                auto k = oracle::hub_case(n, conc);
                SolverParams p;
                p.delta = delta;
                auto r = proof_guided_augment(k.instance, k.matching, k.missing, p);
                ++runs;
                if (!r.matching || !is_rainbow_matching(k.instance, *r.matching, static_cast<std::size_t>(n))) {
                    ++violations;
                    continue;
                }
                audit(r.trace);
            }
    return {violations == 0 && levels > 0,
            std::to_string(runs) + " runs, " + std::to_string(levels) + " non-fallback reduction levels (" +
                std::to_string(campaign_levels) + " from random campaigns), " + std::to_string(violations) +
                " violations"};
}

const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
    {"extremal triangles: absence at n, found at n-1", ac1},
    {"n=3 kernel-8 witness with exhaustive absence", ac2},
    {"n=2 exhaustive search: counterexample at kernel 4", ac3},
    {"4n-kernel campaign: every run solved and verified", ac4},
    {"switching validity and application", ac5},
    {"disjoint-edge count against brute force", ac6},
    {"exact solver against naive checker, full small enumeration", ac7},
    {"relation/algebra round trip and witness inversion", ac8},
    {"proof-trace arithmetic identities", ac9},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) only = std::stoi(argv[++i]);
        else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "AC" << (i + 1) << " " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " | "
                  << v.detail << std::endl;
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
