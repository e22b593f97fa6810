#pragma once

#include <algorithm>
#include <cstdio>
#include <chrono>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "generators.hpp"
#include "json_io.hpp"
#include "solve.hpp"

namespace rainbow {

/// Grid axes are nested in the order n, kernel, delta, method, seed.
/// Kernels are either explicit or ceil(f * n) for each factor f.
struct CampaignSpec {
    std::string suite = "campaign";
    std::vector<int> n_values;
    std::vector<int> kernels;
    std::vector<Rational> kernel_factors;
    std::vector<Rational> deltas{Rational(1)};
    std::vector<Method> methods{Method::greedy_switch};
    std::vector<std::uint64_t> seeds;
    std::int64_t timeout_ms = 10'000;
    double overlap = 0.5;
    std::vector<double> clique_size_weights{1.0, 1.0, 1.0};
    std::size_t max_switch_len = 4;
    std::uint64_t node_budget = 10'000'000;
    std::string output;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;

    void validate() const {
        if (n_values.empty() || (kernels.empty() && kernel_factors.empty()) || deltas.empty() || methods.empty() ||
            seeds.empty())
            throw Error(ErrorKind::parameter, "campaign grid is empty");
        if (!kernels.empty() && !kernel_factors.empty())
            throw Error(ErrorKind::parameter, "give either kernels or kernel factors, not both");
        if (timeout_ms <= 0) throw Error(ErrorKind::parameter, "timeout must be positive");
        for (int n : n_values)
            if (n < 1) throw Error(ErrorKind::parameter, "n must be at least 1");
        for (const Rational& f : kernel_factors)
            if (f <= 0) throw Error(ErrorKind::parameter, "kernel factors must be positive");
        for (const Rational& d : deltas)
            if (d <= 0) throw Error(ErrorKind::parameter, "delta must be positive");
    }

    [[nodiscard]] std::vector<int> kernels_for(int n) const {
        if (!kernels.empty()) return kernels;
        std::vector<int> out;
        for (const Rational& f : kernel_factors)
            out.push_back(std::max<int>(2, static_cast<int>(ceil_of(f * Rational(n)))));
        return out;
    }
};

struct CampaignRow {
    int n = 0;
    int kernel = 0;
    Rational delta{1};
    Method method = Method::greedy_switch;
    std::uint64_t seed = 0;
    Status status = Status::not_found;
    std::size_t matching_size = 0;
    std::uint64_t nodes = 0;
    std::uint64_t depth = 0;
    double millis = 0.0;
    /// Filled only when the matching was re-verified.
    bool verified = false;
    std::uint64_t proof_levels_checked = 0;
    std::vector<std::string> identity_violations;
};

struct CampaignSummary {
    int n = 0;
    int kernel = 0;
    Method method = Method::greedy_switch;
    std::size_t runs = 0;
    std::size_t successes = 0;

    [[nodiscard]] double success_fraction() const {
        return runs == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(runs);
    }
};

struct CampaignResult {
    std::vector<CampaignRow> rows;
    std::vector<CampaignSummary> summaries;
    double total_ms = 0.0;
};

inline const char* campaign_csv_header = "n,kernel,delta,method,seed,status,matching_size,nodes,depth,millis,success_fraction";

inline CampaignSpec campaign_from_json(const Json& doc) {
    if (!doc.is_object()) throw Error(ErrorKind::parse, "at /: expected an object");
    CampaignSpec spec;
    auto get_list = [&](const char* key) -> const Json* {
        auto it = doc.find(key);
        if (it == doc.end()) return nullptr;
        if (!it->is_array()) throw Error(ErrorKind::parse, std::string("at /") + key + ": expected an array");
        return &*it;
    };
    auto rational_of = [](const Json& v, const std::string& where) {
        if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_float()) return parse_rational(v.dump());
        throw Error(ErrorKind::parse, "at " + where + ": expected a number or rational string");
    };
    try {
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            static const std::vector<std::string> known{"suite", "n", "kernel", "kernel_factor", "delta", "method",
                                                        "seeds", "timeout_ms", "overlap", "clique_size_weights",
                                                        "max_switch_len", "node_budget", "output", "workers"};
            if (std::find(known.begin(), known.end(), it.key()) == known.end())
                throw Error(ErrorKind::parse, "at /: unexpected key \"" + it.key() + "\"");
        }
        if (auto it = doc.find("suite"); it != doc.end()) spec.suite = it->get<std::string>();
        if (auto* l = get_list("n"))
            for (const Json& v : *l) spec.n_values.push_back(v.get<int>());
        if (auto* l = get_list("kernel"))
            for (const Json& v : *l) spec.kernels.push_back(v.get<int>());
        if (auto* l = get_list("kernel_factor"))
            for (std::size_t i = 0; i < l->size(); ++i)
                spec.kernel_factors.push_back(rational_of((*l)[i], "/kernel_factor/" + std::to_string(i)));
        if (auto* l = get_list("delta")) {
            spec.deltas.clear();
            for (std::size_t i = 0; i < l->size(); ++i)
                spec.deltas.push_back(rational_of((*l)[i], "/delta/" + std::to_string(i)));
        }
        if (auto* l = get_list("method")) {
            spec.methods.clear();
            for (const Json& v : *l) spec.methods.push_back(parse_method(v.get<std::string>()));
        }
        if (auto it = doc.find("seeds"); it != doc.end()) {
            if (it->is_array())
                for (const Json& v : *it) spec.seeds.push_back(v.get<std::uint64_t>());
            else
                for (std::uint64_t s = 0; s < it->get<std::uint64_t>(); ++s) spec.seeds.push_back(s);
        }
        if (auto it = doc.find("timeout_ms"); it != doc.end()) spec.timeout_ms = it->get<std::int64_t>();
        if (auto it = doc.find("overlap"); it != doc.end()) spec.overlap = it->get<double>();
        if (auto* l = get_list("clique_size_weights")) {
            spec.clique_size_weights.clear();
            for (const Json& v : *l) spec.clique_size_weights.push_back(v.get<double>());
        }
        if (auto it = doc.find("max_switch_len"); it != doc.end()) spec.max_switch_len = it->get<std::size_t>();
        if (auto it = doc.find("node_budget"); it != doc.end()) spec.node_budget = it->get<std::uint64_t>();
        if (auto it = doc.find("output"); it != doc.end()) spec.output = it->get<std::string>();
        if (auto it = doc.find("workers"); it != doc.end()) spec.workers = it->get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("campaign spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

inline CampaignSpec parse_campaign(std::string_view text) { return campaign_from_json(detail::parse_document(text)); }

struct CampaignJob {
    int n = 0;
    int kernel = 0;
    Rational delta{1};
    Method method = Method::greedy_switch;
    std::uint64_t seed = 0;
};

inline std::vector<CampaignJob> campaign_jobs(const CampaignSpec& spec) {
    std::vector<CampaignJob> jobs;
    for (int n : spec.n_values)
        for (int k : spec.kernels_for(n))
            for (const Rational& d : spec.deltas)
                for (Method m : spec.methods)
                    for (std::uint64_t s : spec.seeds) jobs.push_back({n, k, d, m, s});
    return jobs;
}

inline CampaignRow run_campaign_job(const CampaignSpec& spec, const CampaignJob& job) {
    const auto start = Clock::now();
    CampaignRow row;
    row.n = job.n;
    row.kernel = job.kernel;
    row.delta = job.delta;
    row.method = job.method;
    row.seed = job.seed;
    RandomSpec rs;
    rs.n = job.n;
    rs.kernel = job.kernel;
    rs.overlap = spec.overlap;
    rs.clique_size_weights = spec.clique_size_weights;
    rs.seed = job.seed;
    const Instance inst = random_instance(rs);

    SolverParams params;
    params.delta = job.delta;
    params.method = job.method;
    params.seed = job.seed;
    params.max_switch_len = spec.max_switch_len;
    params.node_budget = spec.node_budget;
    params.deadline = start + std::chrono::milliseconds(spec.timeout_ms);
    const SolveOutcome out = solve(inst, params);

    row.status = out.status;
    row.matching_size = out.best_size;
    row.nodes = out.stats.nodes;
    row.depth = out.stats.recursion_depth;
    if (out.status == Status::found) {
        row.verified = out.matching && is_rainbow_matching(inst, *out.matching, static_cast<std::size_t>(job.n));
        if (!row.verified) throw Error(ErrorKind::invalid_reference, "found matching failed re-verification");
    }
    for (const ProofTrace& t : out.traces)
        for (const ProofLevel& level : t.levels) {
            if (level.fallback || (level.branch != ProofBranch::concentrated && level.branch != ProofBranch::spread))
                continue;
            ++row.proof_levels_checked;
            for (std::string& v : proof_level_identity_violations(level)) row.identity_violations.push_back(std::move(v));
        }
    row.millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return row;
}

/// Runs are independent and execute concurrently; rows keep grid order.
inline CampaignResult run_campaign(const CampaignSpec& spec) {
    spec.validate();
    const auto start = Clock::now();
    const std::vector<CampaignJob> jobs = campaign_jobs(spec);
    CampaignResult result;
    result.rows.resize(jobs.size());
    const unsigned workers = std::max(1u, spec.workers ? spec.workers : std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < jobs.size(); begin += workers) {
        const std::size_t end = std::min(jobs.size(), begin + workers);
        std::vector<std::future<CampaignRow>> running;
        for (std::size_t i = begin; i < end; ++i)
            running.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async,
                                         [&spec, &jobs, i] { return run_campaign_job(spec, jobs[i]); }));
        for (std::size_t i = begin; i < end; ++i) result.rows[i] = running[i - begin].get();
    }

    std::map<std::tuple<int, int, int>, std::size_t> slot;
    for (const CampaignRow& row : result.rows) {
        auto key = std::make_tuple(row.n, row.kernel, static_cast<int>(row.method));
        auto [it, fresh] = slot.try_emplace(key, result.summaries.size());
        if (fresh) {
            CampaignSummary s;
            s.n = row.n;
            s.kernel = row.kernel;
            s.method = row.method;
            result.summaries.push_back(s);
        }
        CampaignSummary& s = result.summaries[it->second];
        ++s.runs;
        if (row.status == Status::found) ++s.successes;
    }
    result.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
}

inline std::string campaign_csv(const CampaignResult& r) {
    std::ostringstream out;
    out << campaign_csv_header << "\n";
    char millis[32];
    for (const CampaignRow& row : r.rows) {
        std::snprintf(millis, sizeof millis, "%.3f", row.millis);
        out << row.n << ',' << row.kernel << ',' << to_string(row.delta) << ',' << to_string(row.method) << ','
            << row.seed << ',' << to_string(row.status) << ',' << row.matching_size << ',' << row.nodes << ','
            << row.depth << ',' << millis << ",\n";
    }
    char frac[32];
    for (const CampaignSummary& s : r.summaries) {
        std::snprintf(frac, sizeof frac, "%.4f", s.success_fraction());
        out << s.n << ',' << s.kernel << ",*," << to_string(s.method) << ",*,summary,,,,," << frac << "\n";
    }
    return out.str();
}

} // namespace rainbow
