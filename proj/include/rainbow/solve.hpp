#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "augment.hpp"
#include "exact.hpp"
#include "greedy.hpp"
#include "proof_guided.hpp"
#include "solver_types.hpp"

namespace rainbow {

/// Greedy start, then repeated single augmentations. Each augmentation works
/// on the colours of the current matching plus one missing colour c0; the
/// missing colours are tried in increasing order until one succeeds.
inline SolveOutcome solve(const Instance& inst, const SolverParams& params, std::optional<std::size_t> size = {}) {
    require_valid(inst);
    params.validate();
    const std::size_t target = size.value_or(static_cast<std::size_t>(inst.n));
    if (params.method == Method::exact) return solve_exact(inst, target, params.node_budget, params.deadline);

    const auto start = Clock::now();
    SolveOutcome out;
    out.target_size = target;
    if (target > static_cast<std::size_t>(inst.n)) {
        out.status = Status::not_found;
        out.certificate = Certificate::budget_exhausted;
        return out;
    }
    Matching m = greedy_matching(inst, params.seed);
    bool timed_out = false;
    while (m.size() < target && !timed_out) {
        bool progressed = false;
        for (Colour c0 = 0; c0 < inst.n && !progressed; ++c0) {
            if (m.has_colour(c0)) continue;
            std::vector<Colour> colours;
            for (Colour c = 0; c < inst.n; ++c)
                if (c == c0 || m.has_colour(c)) colours.push_back(c);
            ColourRestriction sub = restrict_colours(inst, colours);
            const Matching local = sub.to_local(m);
            std::optional<Matching> next;
            if (params.method == Method::greedy_switch) {
                AugmentResult r = switching_augment(sub.instance, local, sub.local(c0), params);
                out.stats.nodes += r.stats.nodes;
                out.stats.switchings_tried += r.stats.switchings_tried;
                out.stats.recursion_depth = std::max(out.stats.recursion_depth, r.stats.recursion_depth);
                timed_out = r.timed_out;
                next = std::move(r.matching);
            } else {
                ProofGuidedResult r = proof_guided_augment(sub.instance, local, sub.local(c0), params);
                out.stats.nodes += r.stats.nodes;
                out.stats.switchings_tried += r.stats.switchings_tried;
                out.stats.fallbacks += r.stats.fallbacks;
                out.stats.recursion_depth = std::max(out.stats.recursion_depth, r.stats.recursion_depth);
                timed_out = r.timed_out;
                for (ProofLevel& level : r.trace.levels) {
                    level.missing_colour = sub.to_original[level.missing_colour];
                    for (std::vector<Colour>* list : {&level.c1_set, &level.c2_set, &level.c_star, &level.reduced_colours})
                        for (Colour& c : *list) c = sub.to_original[c];
                    auto lift = [&](Edge& e) { e.colour = sub.to_original[e.colour]; };
                    if (level.sigma) {
                        level.sigma->start_colour = sub.to_original[level.sigma->start_colour];
                        for (Edge& e : level.sigma->out_edges) lift(e);
                        for (Edge& e : level.sigma->matching_edges) lift(e);
                    }
                    if (level.m2) lift(*level.m2);
                    for (Edge& e : level.e_c) lift(e);
                    for (Edge& e : level.w_edges) lift(e);
                }
                out.traces.push_back(std::move(r.trace));
                next = std::move(r.matching);
            }
            if (next) {
                m = sub.to_original_matching(*next);
                ++out.stats.augmentations;
                progressed = true;
            }
        }
        if (!progressed) break;
    }
    out.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (m.size() >= target) {
        m.edges.resize(target);
        if (!is_rainbow_matching(inst, m, target))
            throw Error(ErrorKind::invalid_reference, "solver produced a matching that fails verification");
        out.status = Status::found;
        out.certificate = Certificate::found;
        out.matching = sorted(m);
    } else {
        out.status = timed_out ? Status::timeout : Status::not_found;
        out.certificate = Certificate::budget_exhausted;
    }
    out.best_size = std::min(m.size(), target);
    return out;
}

} // namespace rainbow
