#pragma once

#include <bit>
#include <optional>
#include <set>
#include <vector>

#include "enumeration.hpp"
#include "exact.hpp"
#include "model.hpp"

namespace rainbow {

struct KernelVerdict {
    int kernel = 0;
    /// True when every enumerated instance has a rainbow matching of size n.
    bool all_solvable = true;
    std::uint64_t instances = 0;
    std::optional<Instance> counterexample;
};

struct VTable {
    int n = 0;
    int max_kernel = 0;
    std::vector<KernelVerdict> rows;
    /// Smallest kernel from which every row up to max_kernel is all-solvable.
    std::optional<int> v1;
};

namespace detail {

/// Orderly generation for n <= 2: colour 0 is fixed to a canonical layout on
/// 0..k-1; colour 1 uses j existing elements and k-j fresh ones k..2k-j-1.
template <typename Fn>
void for_each_small_instance(int n, int k, Fn&& fn) {
    for (const ColourClass& first : canonical_layouts(k)) {
        if (n == 1) {
            Instance inst{1, false, {first}};
            fn(inst);
            continue;
        }
        for (int fresh = 0; fresh <= k; ++fresh) {
            const int reused = k - fresh;
            for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
                if (std::popcount(mask) != reused) continue;
                std::vector<Element> chosen;
                for (int i = 0; i < k; ++i)
                    if (mask & (1u << i)) chosen.push_back(i);
                for (int i = 0; i < fresh; ++i) chosen.push_back(k + i);
                if (chosen.size() == 1) continue;
                for_each_nontrivial_partition(chosen, [&](const ColourClass& second) {
                    Instance inst{2, false, {first, second}};
                    fn(canonicalize(inst));
                });
            }
        }
    }
}

} // namespace detail

/// Exhaustive table of kernel sizes 2..max_kernel. Instances are taken up to
/// relabelling; for n*k <= 10 isomorphic copies are removed by relabelling_key.
inline VTable compute_v_exhaustive(int n, int max_kernel) {
    if (n > 2) throw Error(ErrorKind::infeasible_scope, "exhaustive search is limited to n <= 2");
    if (n < 1) throw Error(ErrorKind::parameter, "n must be at least 1");
    if (max_kernel > 10) throw Error(ErrorKind::infeasible_scope, "max kernel above 10 is not enumerated");
    VTable table;
    table.n = n;
    table.max_kernel = max_kernel;
    for (int k = 2; k <= max_kernel; ++k) {
        KernelVerdict row;
        row.kernel = k;
        std::set<std::vector<std::vector<int>>> seen;
        const bool dedupe = n * k <= 10;
        detail::for_each_small_instance(n, k, [&](const Instance& inst) {
            if (dedupe && !seen.insert(relabelling_key(inst)).second) return;
            ++row.instances;
            SolveOutcome o = solve_exact(inst, static_cast<std::size_t>(n), UINT64_MAX);
            if (o.status != Status::found) {
                if (row.all_solvable) row.counterexample = inst;
                row.all_solvable = false;
            }
        });
        table.rows.push_back(std::move(row));
    }
    for (auto it = table.rows.rbegin(); it != table.rows.rend() && it->all_solvable; ++it) table.v1 = it->kernel;
    return table;
}

} // namespace rainbow
