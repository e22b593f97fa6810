#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace rainbow {

enum class Method { exact, greedy_switch, proof_guided };

constexpr std::string_view to_string(Method m) {
    switch (m) {
    case Method::exact: return "exact";
    case Method::greedy_switch: return "greedy_switch";
    case Method::proof_guided: return "proof_guided";
    }
    return "unknown";
}

inline Method parse_method(std::string_view text) {
    if (text == "exact") return Method::exact;
    if (text == "greedy_switch" || text == "greedy-switch") return Method::greedy_switch;
    if (text == "proof_guided" || text == "proof-guided") return Method::proof_guided;
    throw Error(ErrorKind::parameter, "unknown method '" + std::string(text) + "'");
}

using Clock = std::chrono::steady_clock;

struct SolverParams {
    Rational delta{1};
    std::size_t max_switch_len = 4;
    std::uint64_t node_budget = 10'000'000;
    std::uint64_t seed = 0;
    Method method = Method::greedy_switch;
    /// Cooperative wall-clock limit; unset means none.
    std::optional<Clock::time_point> deadline;

    void validate() const {
        if (delta <= 0) throw Error(ErrorKind::parameter, "delta must be positive");
        if (node_budget < 1) throw Error(ErrorKind::parameter, "node budget must be at least 1");
    }
};

/// ceil(144 / delta^2): the size from which the asymptotic guarantee applies.
inline std::int64_t guarantee_threshold(const Rational& delta) { return ceil_of(Rational(144) / (delta * delta)); }

enum class Certificate { found, exhaustive_absence, budget_exhausted };

constexpr std::string_view to_string(Certificate c) {
    switch (c) {
    case Certificate::found: return "found";
    case Certificate::exhaustive_absence: return "exhaustive-proof-of-absence";
    case Certificate::budget_exhausted: return "budget-exhausted";
    }
    return "unknown";
}

enum class Status { found, absent, not_found, timeout };

constexpr std::string_view to_string(Status s) {
    switch (s) {
    case Status::found: return "found";
    case Status::absent: return "absent";
    case Status::not_found: return "not-found";
    case Status::timeout: return "timeout";
    }
    return "unknown";
}

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t switchings_tried = 0;
    std::uint64_t recursion_depth = 0;
    std::uint64_t augmentations = 0;
    std::uint64_t fallbacks = 0;
    double wall_ms = 0.0;
};

/// One level of the proof-guided recursion.
enum class ProofBranch {
    direct,           ///< c0-edge inside the free region
    length_one,       ///< closing edge after a length-1 switching
    concentrated,     ///< some free vertex meets >= 1/3 of the x-edges
    spread,           ///< no such vertex
    fallback,         ///< a witness was missing; bounded switching search took over
    failed,
};

constexpr std::string_view to_string(ProofBranch b) {
    switch (b) {
    case ProofBranch::direct: return "direct";
    case ProofBranch::length_one: return "length-one";
    case ProofBranch::concentrated: return "concentrated";
    case ProofBranch::spread: return "spread";
    case ProofBranch::fallback: return "fallback";
    case ProofBranch::failed: return "failed";
    }
    return "unknown";
}

/// Colours in every field use the ids of the instance the augmentation was
/// called on, not the renumbered ids of the reduced instances.
struct ProofLevel {
    std::size_t n = 0;
    Rational delta{1};
    Colour missing_colour = 0;
    ProofBranch branch = ProofBranch::failed;
    bool fallback = false;
    std::string fallback_reason;

    std::optional<Switching> sigma;
    std::vector<Colour> c1_set;
    std::vector<Colour> c2_set;
    std::vector<Colour> c_star;
    std::optional<Edge> m2;
    std::size_t mu = 0;
    std::vector<Edge> e_c;
    std::vector<Edge> w_edges;
    VertexSet s_set;
    std::vector<Colour> reduced_colours;
    std::size_t reduced_n = 0;
    Rational reduced_delta{0};
    std::size_t output_size = 0;
};

struct ProofTrace {
    std::vector<ProofLevel> levels;

    [[nodiscard]] bool any_fallback() const {
        for (const ProofLevel& l : levels)
            if (l.fallback) return true;
        return false;
    }
};

struct SolveOutcome {
    Status status = Status::not_found;
    Certificate certificate = Certificate::budget_exhausted;
    std::optional<Matching> matching;
    std::size_t target_size = 0;
    /// Size of the largest rainbow matching seen; equals target_size when found.
    std::size_t best_size = 0;
    SolveStats stats;
    std::vector<ProofTrace> traces;
};

/// Node counter with an optional deadline; the clock is polled every 1024 ticks.
class SearchBudget {
  public:
    SearchBudget(std::uint64_t limit, std::optional<Clock::time_point> deadline = std::nullopt)
        : limit_(limit), deadline_(deadline) {}

    bool tick() {
        ++used_;
        if (used_ > limit_) {
            exhausted_ = true;
            return false;
        }
        if (deadline_ && (used_ & 1023u) == 0 && Clock::now() > *deadline_) {
            timed_out_ = true;
            exhausted_ = true;
        }
        return !exhausted_;
    }
    [[nodiscard]] bool exhausted() const { return exhausted_; }
    [[nodiscard]] bool timed_out() const { return timed_out_; }
    [[nodiscard]] std::uint64_t used() const { return used_; }

  private:
    std::uint64_t limit_;
    std::optional<Clock::time_point> deadline_;
    std::uint64_t used_ = 0;
    bool exhausted_ = false;
    bool timed_out_ = false;
};

} // namespace rainbow
