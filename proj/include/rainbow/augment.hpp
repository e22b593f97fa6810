#pragma once

#include <optional>
#include <vector>

#include "model.hpp"
#include "solver_types.hpp"
#include "switching.hpp"

namespace rainbow {

struct AugmentResult {
    std::optional<Matching> matching;
    std::optional<Switching> switching;
    std::optional<Edge> closing;
    SolveStats stats;
    bool timed_out = false;
};

/// First closing edge for `s`: an edge of the end colour avoiding
/// V(m \ m(s)) and V(e(s)). Cliques are scanned in stored order.
inline std::optional<Edge> find_closing_edge(const Instance& inst, const Matching& m, const Switching& s) {
    std::vector<Element> covered;
    for (const Edge& e : m.edges) {
        if (std::find(s.matching_edges.begin(), s.matching_edges.end(), e) != s.matching_edges.end()) continue;
        covered.push_back(e.u);
        covered.push_back(e.v);
    }
    for (const Edge& e : s.out_edges) {
        covered.push_back(e.u);
        covered.push_back(e.v);
    }
    const VertexSet blocked(std::move(covered));
    const Colour c = s.end_colour();
    for (const Clique& q : inst.classes[c]) {
        Element first = -1;
        for (Element x : q) {
            if (blocked.contains(x)) continue;
            if (first < 0) first = x;
            else return make_edge(c, first, x);
        }
    }
    return std::nullopt;
}

/// Iterative deepening over (missing, .)-switchings up to params.max_switch_len,
/// closing with the first admissible edge of the end colour.
inline AugmentResult switching_augment(const Instance& inst, const Matching& m, Colour missing,
                                       const SolverParams& params) {
    check_colour(inst, missing);
    if (m.has_colour(missing))
        throw Error(ErrorKind::invalid_missing_colour, "colour " + std::to_string(missing) + " is used by the matching");
    AugmentResult result;
    SearchBudget budget(params.node_budget, params.deadline);
    CliqueIndex index(inst);
    SwitchingEnumerator walker(index, m, missing);
    for (std::size_t len = 0; len <= params.max_switch_len && !result.matching; ++len) {
        result.stats.recursion_depth = len;
        bool completed = walker.for_each_of_length(len, [&](const Switching& s) {
            ++result.stats.switchings_tried;
            if (!budget.tick()) return false;
            if (auto closing = find_closing_edge(inst, m, s)) {
                result.matching = apply_switching(inst, m, s, *closing);
                result.switching = s;
                result.closing = closing;
                return false;
            }
            return true;
        });
        if (!completed && !result.matching) break;
    }
    result.stats.nodes = budget.used();
    result.timed_out = budget.timed_out();
    return result;
}

} // namespace rainbow
