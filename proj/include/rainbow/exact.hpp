#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <vector>

#include "model.hpp"
#include "solver_types.hpp"

namespace rainbow {

namespace detail {

/// Backtracking over colours, scarcest kernel first. Each level either picks
/// a free edge of the colour or skips the colour when enough colours remain.
/// Branches are cut when the union of the remaining colour classes cannot
/// host enough disjoint edges: every connected component C of that union on
/// the free vertices contributes at most floor(|C|/2).
class ExactSearch {
  public:
    explicit ExactSearch(const Instance& inst) {
        const VertexSet ground = ground_set(inst);
        ground_.assign(ground.begin(), ground.end());
        auto local = [&](Element e) {
            return static_cast<int>(std::lower_bound(ground_.begin(), ground_.end(), e) - ground_.begin());
        };
        cliques_.resize(inst.classes.size());
        std::vector<std::size_t> kernel_size(inst.classes.size(), 0);
        for (std::size_t c = 0; c < inst.classes.size(); ++c) {
            for (const Clique& q : inst.classes[c]) {
                std::vector<int> lq;
                for (Element e : q) lq.push_back(local(e));
                kernel_size[c] += lq.size();
                cliques_[c].push_back(std::move(lq));
            }
        }
        order_.resize(inst.classes.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](Colour a, Colour b) { return kernel_size[a] < kernel_size[b]; });
        used_.assign(ground_.size(), false);
        parent_.resize(ground_.size());
        comp_size_.resize(ground_.size());
    }

    SolveOutcome run(std::size_t target, SearchBudget& budget) {
        SolveOutcome out;
        out.target_size = target;
        target_ = target;
        budget_ = &budget;
        chosen_.clear();
        best_ = 0;
        bool found = target <= order_.size() && search(0, 0);
        out.stats.nodes = budget.used();
        out.best_size = best_;
        if (found) {
            out.status = Status::found;
            out.certificate = Certificate::found;
            out.matching = Matching{chosen_};
            out.best_size = target;
        } else if (budget.exhausted()) {
            out.status = budget.timed_out() ? Status::timeout : Status::not_found;
            out.certificate = Certificate::budget_exhausted;
        } else {
            out.status = Status::absent;
            out.certificate = Certificate::exhaustive_absence;
        }
        return out;
    }

  private:
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[b] = a;
    }

    std::size_t upper_bound(std::size_t pos) {
        std::iota(parent_.begin(), parent_.end(), 0);
        std::size_t colours_with_edge = 0;
        for (std::size_t i = pos; i < order_.size(); ++i) {
            bool has_edge = false;
            for (const auto& q : cliques_[order_[i]]) {
                int first = -1;
                for (int x : q) {
                    if (used_[x]) continue;
                    if (first < 0) first = x;
                    else {
                        unite(first, x);
                        has_edge = true;
                    }
                }
            }
            if (has_edge) ++colours_with_edge;
        }
        std::fill(comp_size_.begin(), comp_size_.end(), 0);
        for (std::size_t x = 0; x < ground_.size(); ++x)
            if (!used_[x]) ++comp_size_[find(static_cast<int>(x))];
        std::size_t disjoint = 0;
        for (std::size_t s : comp_size_) disjoint += s / 2;
        return std::min(colours_with_edge, disjoint);
    }

    bool search(std::size_t pos, std::size_t chosen) {
        best_ = std::max(best_, chosen);
        if (chosen == target_) return true;
        if (!budget_->tick()) return false;
        const std::size_t need = target_ - chosen;
        const std::size_t remaining = order_.size() - pos;
        if (remaining < need) return false;
        if (upper_bound(pos) < need) return false;

        const Colour c = order_[pos];
        for (const auto& q : cliques_[c]) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (used_[q[i]]) continue;
                for (std::size_t j = i + 1; j < q.size(); ++j) {
                    if (used_[q[j]]) continue;
                    used_[q[i]] = used_[q[j]] = true;
                    chosen_.push_back(make_edge(c, ground_[q[i]], ground_[q[j]]));
                    if (search(pos + 1, chosen + 1)) return true;
                    chosen_.pop_back();
                    used_[q[i]] = used_[q[j]] = false;
                    if (budget_->exhausted()) return false;
                }
            }
        }
        if (remaining - 1 >= need) return search(pos + 1, chosen);
        return false;
    }

    std::vector<Element> ground_;
    std::vector<std::vector<std::vector<int>>> cliques_;
    std::vector<Colour> order_;
    std::vector<bool> used_;
    std::vector<int> parent_;
    std::vector<std::size_t> comp_size_;
    std::vector<Edge> chosen_;
    std::size_t target_ = 0;
    std::size_t best_ = 0;
    SearchBudget* budget_ = nullptr;
};

} // namespace detail

/// Ground-truth search for a rainbow matching of `size` edges. Absence is
/// only reported when the whole tree was explored within `budget` nodes.
inline SolveOutcome solve_exact(const Instance& inst, std::size_t size, std::uint64_t budget,
                                std::optional<Clock::time_point> deadline = std::nullopt) {
    require_valid(inst);
    auto start = Clock::now();
    SearchBudget counter(budget, deadline);
    detail::ExactSearch search(inst);
    SolveOutcome out = search.run(size, counter);
    out.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (out.matching) *out.matching = sorted(*out.matching);
    return out;
}

/// Largest rainbow matching size, by descending exact searches. Empty when a
/// search ran out of budget before the answer was settled.
inline std::optional<std::size_t> max_rainbow_size(const Instance& inst, std::uint64_t budget) {
    for (std::size_t k = static_cast<std::size_t>(inst.n);; --k) {
        SolveOutcome o = solve_exact(inst, k, budget);
        if (o.status == Status::found) return k;
        if (o.certificate == Certificate::budget_exhausted) return std::nullopt;
        if (k == 0) return 0;
    }
}

} // namespace rainbow
