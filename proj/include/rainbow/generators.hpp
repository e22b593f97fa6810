#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "model.hpp"

namespace rainbow {

/// n identical colour classes, each the disjoint union of n-1 triangles on
/// elements 0..3n-4. No rainbow matching of size n exists.
inline Instance extremal_triangles(int n) {
    if (n < 2) throw Error(ErrorKind::parameter, "extremal_triangles needs n >= 2");
    ColourClass triangles;
    for (int i = 0; i + 1 < n; ++i) triangles.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    Instance inst;
    inst.n = n;
    inst.classes.assign(static_cast<std::size_t>(n), triangles);
    return inst;
}

struct RandomSpec {
    int n = 1;
    /// Exact kernel size of every colour.
    int kernel = 2;
    /// Weight of clique size i+2 at index i.
    std::vector<double> clique_size_weights{1.0, 1.0, 1.0};
    /// Probability that a clique slot reuses an element seen before.
    double overlap = 0.5;
    bool simple_mode = false;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw Error(ErrorKind::parameter, "n must be at least 1");
        if (kernel < 2) throw Error(ErrorKind::parameter, "kernel must be at least 2");
        if (clique_size_weights.empty()) throw Error(ErrorKind::parameter, "clique size weights must be nonempty");
        double total = 0;
        for (double w : clique_size_weights) {
            if (w < 0) throw Error(ErrorKind::parameter, "clique size weights must be non-negative");
            total += w;
        }
        if (total <= 0) throw Error(ErrorKind::parameter, "clique size weights must not all be zero");
        if (overlap < 0 || overlap > 1) throw Error(ErrorKind::parameter, "overlap must lie in [0, 1]");
    }
};

/// Per colour, cliques are drawn until the kernel reaches spec.kernel exactly;
/// a draw that would strand a single element absorbs it instead.
inline Instance random_instance(const RandomSpec& spec) {
    spec.validate();
    constexpr int max_redraws = 200;
    std::mt19937_64 rng(spec.seed);
    std::discrete_distribution<int> size_dist(spec.clique_size_weights.begin(), spec.clique_size_weights.end());
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Every element below next_fresh has been used by an earlier clique.
    Element next_fresh = 0;
    std::set<std::pair<Element, Element>> taken_pairs;

    Instance inst;
    inst.n = spec.n;
    inst.simple_mode = spec.simple_mode;
    for (int c = 0; c < spec.n; ++c) {
        ColourClass cls;
        std::set<Element> in_class;
        int remaining = spec.kernel;
        while (remaining > 0) {
            int size = std::min(size_dist(rng) + 2, remaining);
            if (remaining - size == 1) size = remaining;

            Clique q;
            bool accepted = false;
            for (int attempt = 0; attempt < max_redraws && !accepted; ++attempt) {
                q.clear();
                Element fresh = next_fresh;
                for (int slot = 0; slot < size; ++slot) {
                    Element pick = -1;
                    if (next_fresh > 0 && coin(rng) < spec.overlap) {
                        for (int tries = 0; tries < 8 && pick < 0; ++tries) {
                            Element cand = std::uniform_int_distribution<Element>(0, next_fresh - 1)(rng);
                            if (!in_class.count(cand) && std::find(q.begin(), q.end(), cand) == q.end()) pick = cand;
                        }
                    }
                    if (pick < 0) pick = fresh++;
                    q.push_back(pick);
                }
                std::sort(q.begin(), q.end());
                accepted = true;
                if (spec.simple_mode)
                    for (std::size_t i = 0; i < q.size() && accepted; ++i)
                        for (std::size_t j = i + 1; j < q.size(); ++j)
                            if (taken_pairs.count({q[i], q[j]})) {
                                accepted = false;
                                break;
                            }
                if (accepted) next_fresh = fresh;
            }
            if (!accepted)
                throw Error(ErrorKind::generation, "simple mode could not avoid shared pairs for colour " +
                                                       std::to_string(c));
            in_class.insert(q.begin(), q.end());
            if (spec.simple_mode)
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = i + 1; j < q.size(); ++j) taken_pairs.insert({q[i], q[j]});
            cls.push_back(std::move(q));
            remaining -= size;
        }
        inst.classes.push_back(std::move(cls));
    }
    return canonicalize(std::move(inst));
}

} // namespace rainbow
