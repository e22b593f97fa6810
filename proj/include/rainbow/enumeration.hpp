#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "model.hpp"

namespace rainbow {

/// Calls fn(class) for every partition of `elements` into blocks of size >= 2.
/// Blocks come out sorted by smallest element.
template <typename Fn>
void for_each_nontrivial_partition(const std::vector<Element>& elements, Fn&& fn) {
    std::vector<std::vector<Element>> blocks;
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == elements.size()) {
            for (const auto& b : blocks)
                if (b.size() < 2) return;
            fn(static_cast<const ColourClass&>(blocks));
            return;
        }
        // Prune: blocks that are still singletons need partners among the rest.
        std::size_t singletons = 0;
        for (const auto& b : blocks)
            if (b.size() == 1) ++singletons;
        if (singletons > elements.size() - i) return;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(elements[i]);
            place(i + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({elements[i]});
        place(i + 1);
        blocks.pop_back();
    };
    place(0);
}

/// Every colour class on a subset of {0..ground_size-1}, including the empty class.
template <typename Fn>
void for_each_partial_partition(int ground_size, Fn&& fn) {
    for (std::uint32_t mask = 0; mask < (1u << ground_size); ++mask) {
        std::vector<Element> chosen;
        for (int i = 0; i < ground_size; ++i)
            if (mask & (1u << i)) chosen.push_back(i);
        if (chosen.size() == 1) continue;
        for_each_nontrivial_partition(chosen, fn);
    }
}

/// One representative per integer partition of k into parts >= 2, blocks laid
/// out on consecutive elements 0..k-1, larger blocks first.
inline std::vector<ColourClass> canonical_layouts(int k) {
    std::vector<ColourClass> out;
    std::vector<int> parts;
    std::function<void(int, int)> go = [&](int remaining, int max_part) {
        if (remaining == 0) {
            ColourClass cls;
            Element next = 0;
            for (int p : parts) {
                Clique q;
                for (int i = 0; i < p; ++i) q.push_back(next++);
                cls.push_back(std::move(q));
            }
            out.push_back(std::move(cls));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 2; --p) {
            if (remaining - p == 1) continue;
            parts.push_back(p);
            go(remaining - p, p);
            parts.pop_back();
        }
    };
    if (k == 0) return {ColourClass{}};
    go(k, k);
    return out;
}

/// Invariant under every relabelling of elements and every permutation of
/// colours: each element becomes the tuple of its block ids, and block ids are
/// minimised over all permutations. Exponential in the block counts; meant for
/// tiny instances only.
inline std::vector<std::vector<int>> relabelling_key(const Instance& inst) {
    const std::size_t n = inst.classes.size();
    std::vector<Colour> colour_order(n);
    std::iota(colour_order.begin(), colour_order.end(), 0);
    const VertexSet ground = ground_set(inst);
    std::vector<std::vector<int>> best;
    bool have_best = false;
    do {
        std::vector<std::vector<int>> perms(n);
        for (std::size_t c = 0; c < n; ++c) {
            perms[c].resize(inst.classes[colour_order[c]].size());
            std::iota(perms[c].begin(), perms[c].end(), 0);
        }
        std::function<void(std::size_t)> over = [&](std::size_t c) {
            if (c == n) {
                std::vector<std::vector<int>> key;
                for (Element x : ground) {
                    std::vector<int> type(n, -1);
                    for (std::size_t cc = 0; cc < n; ++cc) {
                        const ColourClass& cls = inst.classes[colour_order[cc]];
                        for (std::size_t b = 0; b < cls.size(); ++b)
                            if (std::binary_search(cls[b].begin(), cls[b].end(), x)) type[cc] = perms[cc][b];
                    }
                    key.push_back(std::move(type));
                }
                std::sort(key.begin(), key.end());
                if (!have_best || key < best) {
                    best = std::move(key);
                    have_best = true;
                }
                return;
            }
            do {
                over(c + 1);
            } while (std::next_permutation(perms[c].begin(), perms[c].end()));
        };
        over(0);
    } while (std::next_permutation(colour_order.begin(), colour_order.end()));
    return best;
}

} // namespace rainbow
