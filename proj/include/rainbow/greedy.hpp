#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "model.hpp"

namespace rainbow {

/// Seeded greedy: colours in shuffled order, each takes its first edge
/// (canonical order) whose endpoints are still free.
inline Matching greedy_matching(const Instance& inst, std::uint64_t seed) {
    std::vector<Colour> order(inst.classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Element> covered;
    auto is_covered = [&](Element x) { return std::find(covered.begin(), covered.end(), x) != covered.end(); };
    Matching m;
    for (Colour c : order) {
        bool placed = false;
        for (const Clique& q : inst.classes[c]) {
            Element first = -1;
            for (Element x : q) {
                if (is_covered(x)) continue;
                if (first < 0) {
                    first = x;
                    continue;
                }
                m.edges.push_back(make_edge(c, first, x));
                covered.push_back(first);
                covered.push_back(x);
                placed = true;
                break;
            }
            if (placed) break;
        }
    }
    return m;
}

} // namespace rainbow
