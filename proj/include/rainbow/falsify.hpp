#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <thread>
#include <vector>

#include "exact.hpp"
#include "model.hpp"

namespace rainbow {

struct FalsifyParams {
    int n = 2;
    int kernel = 2;
    bool simple = false;
    /// Total candidate evaluations across all restarts.
    std::uint64_t budget = 10'000'000;
    std::uint64_t seed = 0;
    std::uint64_t evaluations_per_restart = 4000;
    /// Node budget of a single candidate's enumeration.
    std::uint64_t per_candidate_budget = 200'000;
    /// Full rainbow matchings are counted up to this cap.
    std::uint64_t count_cap = 512;
    /// Restarts run concurrently in batches of this size; results merge by restart index.
    unsigned batch = 4;
    std::optional<Clock::time_point> deadline;
};

struct FalsifyResult {
    std::optional<Instance> witness;
    /// Exhaustive solve_exact outcome on the witness.
    std::optional<SolveOutcome> certificate;
    std::uint64_t evaluations = 0;
    std::uint64_t restarts = 0;
};

/// Counts rainbow matchings that use every colour, stopping at `cap`.
/// `exhausted` is set when the node budget ran out first.
struct RainbowCount {
    std::uint64_t count = 0;
    bool exhausted = false;
};

inline RainbowCount count_full_rainbow_matchings(const Instance& inst, std::uint64_t cap, std::uint64_t node_budget) {
    const VertexSet ground = ground_set(inst);
    std::vector<std::vector<std::pair<int, int>>> edges(inst.classes.size());
    auto local = [&](Element e) {
        return static_cast<int>(std::lower_bound(ground.begin(), ground.end(), e) - ground.begin());
    };
    for (std::size_t c = 0; c < inst.classes.size(); ++c)
        for (const Clique& q : inst.classes[c])
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = i + 1; j < q.size(); ++j) edges[c].emplace_back(local(q[i]), local(q[j]));
    std::vector<std::size_t> order(inst.classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a].size() < edges[b].size(); });

    RainbowCount out;
    std::vector<bool> used(ground.size(), false);
    std::uint64_t nodes = 0;
    std::function<void(std::size_t)> go = [&](std::size_t pos) {
        if (out.count >= cap || out.exhausted) return;
        if (pos == order.size()) {
            ++out.count;
            return;
        }
        if (++nodes > node_budget) {
            out.exhausted = true;
            return;
        }
        for (auto [a, b] : edges[order[pos]]) {
            if (used[a] || used[b]) continue;
            used[a] = used[b] = true;
            go(pos + 1);
            used[a] = used[b] = false;
            if (out.count >= cap || out.exhausted) return;
        }
    };
    go(0);
    return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Local search state: n classes over elements 0..universe-1, every kernel
/// exactly `kernel`. Mutations keep kernel sizes and clique sizes >= 2.
class Candidate {
  public:
    Candidate(int n, int kernel, int universe, bool symmetric, std::mt19937_64& rng)
        : kernel_(kernel), universe_(universe) {
        classes_.resize(static_cast<std::size_t>(n));
        for (auto& cls : classes_) cls = random_class(rng);
        if (symmetric)
            for (auto& cls : classes_) cls = classes_.front();
    }

    [[nodiscard]] Instance to_instance(bool simple) const {
        Instance inst;
        inst.n = static_cast<int>(classes_.size());
        inst.simple_mode = simple;
        inst.classes = classes_;
        return canonicalize(std::move(inst));
    }

    /// Pairs shared by two colours.
    [[nodiscard]] std::uint64_t shared_pairs() const {
        std::map<std::pair<Element, Element>, int> owners;
        std::uint64_t shared = 0;
        for (const auto& cls : classes_)
            for (const auto& q : cls)
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = i + 1; j < q.size(); ++j)
                        if (owners[std::minmax(q[i], q[j])]++ > 0) ++shared;
        return shared;
    }

    void mutate(std::mt19937_64& rng) {
        auto pick = [&](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };
        ColourClass& cls = classes_[pick(classes_.size())];
        for (int attempt = 0; attempt < 16; ++attempt) {
            switch (pick(6)) {
            case 5: { // copy another class
                const ColourClass& other = classes_[pick(classes_.size())];
                if (&other == &cls) break;
                cls = other;
                return;
            }
            case 0: { // swap a kernel element for an element outside the class
                std::vector<Element> outside;
                for (Element x = 0; x < universe_; ++x)
                    if (!contains(cls, x)) outside.push_back(x);
                if (outside.empty()) break;
                Clique& q = cls[pick(cls.size())];
                q[pick(q.size())] = outside[pick(outside.size())];
                std::sort(q.begin(), q.end());
                return;
            }
            case 1: { // move one element to another clique
                if (cls.size() < 2) break;
                std::size_t a = pick(cls.size()), b = pick(cls.size());
                if (a == b || cls[a].size() <= 2) break;
                std::size_t i = pick(cls[a].size());
                cls[b].push_back(cls[a][i]);
                cls[a].erase(cls[a].begin() + static_cast<std::ptrdiff_t>(i));
                std::sort(cls[b].begin(), cls[b].end());
                return;
            }
            case 2: { // exchange elements between two cliques
                if (cls.size() < 2) break;
                std::size_t a = pick(cls.size()), b = pick(cls.size());
                if (a == b) break;
                std::swap(cls[a][pick(cls[a].size())], cls[b][pick(cls[b].size())]);
                std::sort(cls[a].begin(), cls[a].end());
                std::sort(cls[b].begin(), cls[b].end());
                return;
            }
            case 3: { // split
                std::size_t a = pick(cls.size());
                if (cls[a].size() < 4) break;
                Clique q = cls[a];
                std::shuffle(q.begin(), q.end(), rng);
                std::size_t cut = 2 + pick(q.size() - 3);
                Clique left(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(cut));
                Clique right(q.begin() + static_cast<std::ptrdiff_t>(cut), q.end());
                std::sort(left.begin(), left.end());
                std::sort(right.begin(), right.end());
                cls[a] = std::move(left);
                cls.push_back(std::move(right));
                return;
            }
            default: { // merge
                if (cls.size() < 2) break;
                std::size_t a = pick(cls.size()), b = pick(cls.size());
                if (a == b) break;
                cls[a].insert(cls[a].end(), cls[b].begin(), cls[b].end());
                std::sort(cls[a].begin(), cls[a].end());
                cls.erase(cls.begin() + static_cast<std::ptrdiff_t>(b));
                return;
            }
            }
        }
    }

  private:
    static bool contains(const ColourClass& cls, Element x) {
        for (const auto& q : cls)
            if (std::find(q.begin(), q.end(), x) != q.end()) return true;
        return false;
    }

    ColourClass random_class(std::mt19937_64& rng) const {
        std::vector<Element> elems(static_cast<std::size_t>(universe_));
        std::iota(elems.begin(), elems.end(), 0);
        std::shuffle(elems.begin(), elems.end(), rng);
        elems.resize(static_cast<std::size_t>(kernel_));
        ColourClass cls;
        std::size_t at = 0;
        int remaining = kernel_;
        while (remaining > 0) {
            int size = std::uniform_int_distribution<int>(2, 4)(rng);
            size = std::min(size, remaining);
            if (remaining - size == 1) size = remaining;
            Clique q(elems.begin() + static_cast<std::ptrdiff_t>(at),
                     elems.begin() + static_cast<std::ptrdiff_t>(at + static_cast<std::size_t>(size)));
            std::sort(q.begin(), q.end());
            cls.push_back(std::move(q));
            at += static_cast<std::size_t>(size);
            remaining -= size;
        }
        return cls;
    }

    int kernel_;
    int universe_;
    std::vector<ColourClass> classes_;
};

struct RestartResult {
    std::optional<Instance> witness;
    std::uint64_t evaluations = 0;
};

inline RestartResult run_restart(const FalsifyParams& p, std::uint64_t restart, std::uint64_t evaluations) {
    std::mt19937_64 rng(splitmix64(p.seed ^ splitmix64(restart)));
    const int universe = p.kernel + static_cast<int>(restart % static_cast<std::uint64_t>(p.n + 2));
    Candidate current(p.n, p.kernel, universe, !p.simple && restart % 2 == 0, rng);
    RestartResult out;

    // Score: (pairs shared in simple mode, capped count of size-n rainbow matchings).
    using Score = std::pair<std::uint64_t, std::uint64_t>;
    auto score = [&](const Candidate& c) -> Score {
        ++out.evaluations;
        std::uint64_t shared = p.simple ? c.shared_pairs() : 0;
        RainbowCount rc = count_full_rainbow_matchings(c.to_instance(false), p.count_cap, p.per_candidate_budget);
        std::uint64_t count = (rc.exhausted && rc.count == 0) ? p.count_cap : rc.count;
        return {shared, count};
    };
    auto is_witness = [&](const Candidate& c, const Score& s) -> std::optional<Instance> {
        if (s.first != 0 || s.second != 0) return std::nullopt;
        Instance inst = c.to_instance(p.simple);
        SolveOutcome o = solve_exact(inst, static_cast<std::size_t>(p.n), UINT64_MAX);
        if (o.certificate == Certificate::exhaustive_absence) return inst;
        return std::nullopt;
    };

    Score current_score = score(current);
    if (auto w = is_witness(current, current_score)) {
        out.witness = std::move(w);
        return out;
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    while (out.evaluations < evaluations) {
        if (p.deadline && Clock::now() > *p.deadline) break;
        Candidate next = current;
        next.mutate(rng);
        Score s = score(next);
        if (s <= current_score || coin(rng) < 0.01) {
            current = std::move(next);
            current_score = s;
            if (auto w = is_witness(current, current_score)) {
                out.witness = std::move(w);
                return out;
            }
        }
    }
    return out;
}

} // namespace detail

/// Stochastic local search for an instance with n kernels of size `kernel`
/// (at least) and no rainbow matching of size n. A returned witness always
/// carries an exhaustive absence certificate.
inline FalsifyResult falsify(const FalsifyParams& p) {
    if (p.n < 1) throw Error(ErrorKind::parameter, "n must be at least 1");
    if (p.kernel < 2) throw Error(ErrorKind::parameter, "kernel must be at least 2");
    if (p.batch < 1) throw Error(ErrorKind::parameter, "batch must be at least 1");
    FalsifyResult result;
    std::uint64_t next_restart = 0;
    while (result.evaluations < p.budget) {
        if (p.deadline && Clock::now() > *p.deadline) break;
        std::vector<std::future<detail::RestartResult>> batch;
        for (unsigned i = 0; i < p.batch; ++i) {
            std::uint64_t left = p.budget - std::min(p.budget, result.evaluations);
            std::uint64_t share = std::min(p.evaluations_per_restart, std::max<std::uint64_t>(1, left / p.batch));
            batch.push_back(std::async(std::launch::async, detail::run_restart, std::cref(p), next_restart++, share));
        }
        std::optional<Instance> witness;
        for (auto& f : batch) {
            detail::RestartResult r = f.get();
            result.evaluations += r.evaluations;
            ++result.restarts;
            if (!witness && r.witness) witness = std::move(r.witness);
        }
        if (witness) {
            result.certificate = solve_exact(*witness, static_cast<std::size_t>(p.n), UINT64_MAX);
            result.witness = std::move(witness);
            return result;
        }
    }
    return result;
}

} // namespace rainbow
