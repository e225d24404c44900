#pragma once

// Seeded random walks on the braid group under the lazy generator-uniform
// step distribution, Monte Carlo estimation of component-count / cycle-type
// distributions, and convergence diagnostics against the exact module.
//
// Determinism contract: every result is a pure function of the configuration.
// Trajectory w depends only on (master_seed, w) via the child-seeding rule in
// rng.hpp, and the aggregation is a commutative histogram sum over disjoint
// index ranges — so the outputs are bit-identical for any worker count and
// any scheduling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "randlink/braid.hpp"
#include "randlink/errors.hpp"
#include "randlink/exact.hpp"
#include "randlink/partition.hpp"
#include "randlink/perm.hpp"
#include "randlink/rng.hpp"

namespace randlink {

enum class StepKind { mu_c, uniform_permutation };

inline std::string step_kind_name(StepKind k) {
    return k == StepKind::mu_c ? "mu_c" : "uniform_permutation";
}

// mu_c: uniform over the identity step and every signed generator, each atom
// with probability 1/(2n-1). uniform_permutation: one unbiased shuffle per
// "step" — the k -> infinity limit realized directly (oracle mode separating
// mixing error from sampling error).
struct StepDistribution {
    StepKind kind = StepKind::mu_c;
    std::uint32_t n = 0;

    void validate() const {
        if (n < 2) throw usage_error("step distributions need n >= 2");
    }
};

struct WalkConfig {
    std::uint32_t n = 0;        // strands; the verified claims assume >= 3, >= 2 accepted
    std::uint64_t k = 0;        // steps per trajectory, lazy steps included
    std::uint64_t walks = 1;    // number of independent trajectories
    std::uint64_t master_seed = 0;
    StepDistribution distribution;
    bool store_trajectories = false;  // debugging aid; histograms only by default

    static WalkConfig make(StepKind kind, std::uint32_t n, std::uint64_t k, std::uint64_t walks,
                           std::uint64_t master_seed) {
        WalkConfig c;
        c.n = n;
        c.k = k;
        c.walks = walks;
        c.master_seed = master_seed;
        c.distribution = StepDistribution{kind, n};
        return c;
    }

    void validate() const {
        if (n < 2) throw usage_error("walks need n >= 2");
        distribution.validate();
        if (distribution.n != n) throw usage_error("distribution strand count must match config");
        if (walks < 1) throw usage_error("at least one walk required");
        if (walks > caps::max_walks())
            throw resource_limit_error("walks = " + std::to_string(walks) +
                                       " exceeds cap RANDLINK_MAX_WALKS=" +
                                       std::to_string(caps::max_walks()));
        if (k > caps::max_steps())
            throw resource_limit_error("k = " + std::to_string(k) +
                                       " exceeds cap RANDLINK_MAX_STEPS=" +
                                       std::to_string(caps::max_steps()));
    }
};

struct EmpiricalDistribution {
    std::uint32_t n = 0;  // provenance echo of the config
    std::uint64_t k = 0;
    std::uint64_t walks = 0;
    std::uint64_t master_seed = 0;
    std::string distribution_kind;

    std::vector<std::uint64_t> component_counts;      // index m-1, m = 1..n
    std::map<Partition, std::uint64_t, RevLexLess> type_counts;  // rev-lex key order
    double mean_components = 0;
    std::vector<BraidWord> trajectories;  // only when store_trajectories

    double component_frequency(std::uint32_t m) const {
        if (m < 1 || m > n) throw usage_error("component count out of range");
        return static_cast<double>(component_counts[m - 1]) / static_cast<double>(walks);
    }
    double type_frequency(const Partition& p) const {
        auto it = type_counts.find(p);
        return it == type_counts.end() ? 0.0
                                       : static_cast<double>(it->second) / static_cast<double>(walks);
    }
    // Smallest m attaining the maximal count (same tie-break as the exact mode).
    std::uint32_t empirical_component_mode() const {
        std::size_t best = 0;
        for (std::size_t j = 1; j < component_counts.size(); ++j)
            if (component_counts[j] > component_counts[best]) best = j;
        return static_cast<std::uint32_t>(best + 1);
    }
    // Most frequent cycle type; ties resolved to the reverse-lex earliest.
    Partition modal_partition() const {
        const Partition* best = nullptr;
        std::uint64_t best_count = 0;
        for (const auto& [p, c] : type_counts)  // iteration is rev-lex order
            if (best == nullptr || c > best_count) {
                best = &p;
                best_count = c;
            }
        if (best == nullptr) throw internal_error("empty type histogram");
        return *best;
    }

    void check_invariants() const {
        std::uint64_t comp_total = 0;
        for (auto c : component_counts) comp_total += c;
        if (comp_total != walks) throw internal_error("component histogram does not sum to walks");
        std::uint64_t type_total = 0;
        std::vector<std::uint64_t> per_m(component_counts.size(), 0);
        for (const auto& [p, c] : type_counts) {
            type_total += c;
            per_m.at(p.num_parts() - 1) += c;
        }
        if (type_total != walks) throw internal_error("type histogram does not sum to walks");
        if (per_m != component_counts)
            throw internal_error("component histogram inconsistent with type histogram");
    }
};

// One mu_c step: 0 with probability 1/(2n-1), else a uniformly chosen signed
// generator. The draw-to-letter mapping is part of the determinism contract:
//   u = bounded(2n-1); u = 0 -> letter 0; 1 <= u <= n-1 -> +u;
//   n <= u <= 2n-2 -> -(u-n+1).
inline std::int32_t sample_step(const StepDistribution& dist, Xoshiro256& rng) {
    if (dist.kind != StepKind::mu_c)
        throw usage_error("sample_step is only defined for mu_c (the oracle mode has no letters)");
    dist.validate();
    const std::uint64_t u = rng.bounded(2ull * dist.n - 1);
    if (u == 0) return 0;
    if (u <= dist.n - 1) return static_cast<std::int32_t>(u);
    return -static_cast<std::int32_t>(u - dist.n + 1);
}

// Unbiased uniform shuffle (every one of the n! outcomes equiprobable).
inline Permutation uniform_permutation(std::uint32_t n, Xoshiro256& rng) {
    Permutation p = identity(n);
    for (std::uint32_t i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::uint32_t>(rng.bounded(i + 1));
        std::swap(p.images[i], p.images[j]);
    }
    return p;
}

// The full k-letter trajectory for one walk index; a pure function of
// (master_seed, walk_index).
inline BraidWord run_walk(const WalkConfig& config, std::uint64_t walk_index) {
    config.validate();
    if (config.distribution.kind != StepKind::mu_c)
        throw usage_error("run_walk is only defined for mu_c (the oracle mode has no trajectory)");
    if (walk_index >= config.walks) throw usage_error("walk_index out of range");
    Xoshiro256 rng = walk_generator(config.master_seed, walk_index);
    BraidWord w;
    w.n = config.n;
    w.letters.reserve(config.k);
    for (std::uint64_t s = 0; s < config.k; ++s) w.letters.push_back(sample_step(config.distribution, rng));
    return w;
}

namespace detail {

// Per-thread accumulator; merging is a plain sum so order cannot matter.
struct Accumulator {
    std::vector<std::uint64_t> component_counts;
    std::map<Partition, std::uint64_t, RevLexLess> type_counts;
    std::uint64_t component_sum = 0;
    std::vector<std::uint64_t> rank_counts;  // full-group histogram when requested
    std::vector<BraidWord> trajectories;

    explicit Accumulator(std::uint32_t n, bool with_ranks, std::uint64_t group_order)
        : component_counts(n, 0) {
        if (with_ranks) rank_counts.assign(group_order, 0);
    }
};

// Walk one trajectory, maintaining the projected permutation incrementally:
// applying a letter +-i on the left swaps the two image values i-1 and i,
// which is O(1) given the inverse table. Identical (verified by tests) to
// project(run_walk(...)) but without materializing the word.
inline void run_range(const WalkConfig& config, std::uint64_t lo, std::uint64_t hi,
                      Accumulator& acc) {
    const std::uint32_t n = config.n;
    std::vector<std::uint32_t> images(n), pos(n), lengths;
    std::vector<bool> seen(n);
    const bool mu = config.distribution.kind == StepKind::mu_c;
    const std::uint64_t atoms = 2ull * n - 1;

    for (std::uint64_t w = lo; w < hi; ++w) {
        Xoshiro256 rng = walk_generator(config.master_seed, w);
        if (mu) {
            for (std::uint32_t i = 0; i < n; ++i) images[i] = pos[i] = i;
            BraidWord* traj = nullptr;
            if (config.store_trajectories) {
                acc.trajectories.push_back(BraidWord{});
                traj = &acc.trajectories.back();
                traj->n = n;
                traj->letters.reserve(config.k);
            }
            for (std::uint64_t s = 0; s < config.k; ++s) {
                const std::uint64_t u = rng.bounded(atoms);
                if (traj) {
                    std::int32_t letter = 0;
                    if (u >= 1 && u <= n - 1) letter = static_cast<std::int32_t>(u);
                    if (u >= n) letter = -static_cast<std::int32_t>(u - n + 1);
                    traj->letters.push_back(letter);
                }
                if (u == 0) continue;
                const std::uint32_t i = u <= n - 1 ? static_cast<std::uint32_t>(u)
                                                   : static_cast<std::uint32_t>(u - n + 1);
                const std::uint32_t a = pos[i - 1], b = pos[i];
                images[a] = i;
                images[b] = i - 1;
                pos[i - 1] = b;
                pos[i] = a;
            }
        } else {
            for (std::uint32_t i = 0; i < n; ++i) images[i] = i;
            for (std::uint32_t i = n - 1; i >= 1; --i) {
                const auto j = static_cast<std::uint32_t>(rng.bounded(i + 1));
                std::swap(images[i], images[j]);
            }
        }

        // Cycle lengths of the projected permutation.
        lengths.clear();
        std::fill(seen.begin(), seen.end(), false);
        for (std::uint32_t start = 0; start < n; ++start) {
            if (seen[start]) continue;
            std::uint32_t len = 0;
            for (std::uint32_t i = start; !seen[i]; i = images[i]) {
                seen[i] = true;
                ++len;
            }
            lengths.push_back(len);
        }
        const auto m = static_cast<std::uint32_t>(lengths.size());
        acc.component_counts[m - 1] += 1;
        acc.component_sum += m;
        std::sort(lengths.begin(), lengths.end(), std::greater<>());
        Partition type;
        type.parts = lengths;
        acc.type_counts[type] += 1;

        if (!acc.rank_counts.empty()) {
            // Lehmer rank, inlined over the scratch image array.
            std::uint64_t rank = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
                std::uint32_t smaller = 0;
                for (std::uint32_t j = i + 1; j < n; ++j) smaller += images[j] < images[i];
                rank = rank * (n - i) + smaller;
            }
            acc.rank_counts[rank] += 1;
        }
    }
}

inline std::vector<Accumulator> run_parallel(const WalkConfig& config, unsigned threads,
                                             bool with_ranks, std::uint64_t group_order) {
    if (threads < 1) threads = 1;
    const auto T = static_cast<std::uint64_t>(threads) < config.walks
                       ? static_cast<std::uint64_t>(threads)
                       : config.walks;
    std::vector<Accumulator> accs;
    accs.reserve(T);
    for (std::uint64_t t = 0; t < T; ++t) accs.emplace_back(config.n, with_ranks, group_order);
    std::vector<std::thread> pool;
    for (std::uint64_t t = 0; t < T; ++t) {
        const std::uint64_t lo = config.walks * t / T;
        const std::uint64_t hi = config.walks * (t + 1) / T;
        pool.emplace_back(run_range, std::cref(config), lo, hi, std::ref(accs[t]));
    }
    for (auto& th : pool) th.join();
    return accs;
}

}  // namespace detail

// Aggregate component counts and cycle types over all configured walks.
// Deterministic for a fixed config, independent of the worker count.
inline EmpiricalDistribution monte_carlo(const WalkConfig& config, unsigned threads = 1) {
    config.validate();
    auto accs = detail::run_parallel(config, threads, false, 0);

    EmpiricalDistribution emp;
    emp.n = config.n;
    emp.k = config.k;
    emp.walks = config.walks;
    emp.master_seed = config.master_seed;
    emp.distribution_kind = step_kind_name(config.distribution.kind);
    emp.component_counts.assign(config.n, 0);
    std::uint64_t component_sum = 0;
    for (auto& acc : accs) {
        for (std::size_t j = 0; j < acc.component_counts.size(); ++j)
            emp.component_counts[j] += acc.component_counts[j];
        for (auto& [p, c] : acc.type_counts) emp.type_counts[p] += c;
        component_sum += acc.component_sum;
        for (auto& w : acc.trajectories) emp.trajectories.push_back(std::move(w));
    }
    emp.mean_components = static_cast<double>(component_sum) / static_cast<double>(config.walks);
    emp.check_invariants();
    return emp;
}

// Total variation between the empirical component distribution and an exact
// one (entry m-1 = limit probability of m components): half the L1 distance.
inline double tv_distance_components(const EmpiricalDistribution& emp,
                                     const std::vector<Rational>& exact) {
    if (exact.size() != emp.component_counts.size())
        throw usage_error("component distribution length mismatch");
    double tv = 0;
    for (std::size_t j = 0; j < exact.size(); ++j) {
        const double e = static_cast<double>(exact[j]);
        const double o =
            static_cast<double>(emp.component_counts[j]) / static_cast<double>(emp.walks);
        tv += std::abs(o - e);
    }
    return 0.5 * tv;
}

// Total variation between the distribution of the projected permutation and
// the uniform distribution on the whole group, via a full n!-cell histogram.
// Hard-limited to n <= 8 (8! = 40320 cells); beyond that only the
// component-count and cycle-type marginals are comparable.
inline double tv_distance_uniform(const WalkConfig& config, unsigned threads = 1) {
    config.validate();
    if (config.n > 8)
        throw usage_error("tv_distance_uniform needs n <= 8 (full-group histogram)");
    std::uint64_t order = 1;
    for (std::uint32_t i = 2; i <= config.n; ++i) order *= i;

    auto accs = detail::run_parallel(config, threads, true, order);
    std::vector<std::uint64_t> counts(order, 0);
    for (auto& acc : accs)
        for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += acc.rank_counts[j];

    const double uniform = 1.0 / static_cast<double>(order);
    double tv = 0;
    for (auto c : counts)
        tv += std::abs(static_cast<double>(c) / static_cast<double>(config.walks) - uniform);
    return 0.5 * tv;
}

struct ConvergenceRow {
    std::uint64_t k = 0;
    double tv_components = 0;
    std::optional<double> tv_uniform;  // only when n <= 8
    double mean_components = 0;
};

// One row per requested step count. Each row derives its own master seed,
//   row_seed = mix64(master_seed XOR mix64(k + 1)),
// so rows are independent and individually reproducible; the whole table is
// a pure function of (config, step_list).
inline std::vector<ConvergenceRow> convergence_curve(const WalkConfig& config,
                                                     const std::vector<std::uint64_t>& step_list,
                                                     unsigned threads = 1) {
    config.validate();
    const auto exact = component_distribution(config.n);
    const bool with_uniform = config.n <= 8;
    std::uint64_t order = 1;
    for (std::uint32_t i = 2; i <= config.n; ++i) order *= i;

    std::vector<ConvergenceRow> table;
    table.reserve(step_list.size());
    for (auto k : step_list) {
        WalkConfig row_config = config;
        row_config.k = k;
        row_config.master_seed = mix64(config.master_seed ^ mix64(k + 1));
        row_config.validate();

        auto accs = detail::run_parallel(row_config, threads, with_uniform, order);
        EmpiricalDistribution emp;
        emp.n = row_config.n;
        emp.k = k;
        emp.walks = row_config.walks;
        emp.master_seed = row_config.master_seed;
        emp.distribution_kind = step_kind_name(row_config.distribution.kind);
        emp.component_counts.assign(row_config.n, 0);
        std::uint64_t component_sum = 0;
        std::vector<std::uint64_t> counts(with_uniform ? order : 0, 0);
        for (auto& acc : accs) {
            for (std::size_t j = 0; j < acc.component_counts.size(); ++j)
                emp.component_counts[j] += acc.component_counts[j];
            for (auto& [p, c] : acc.type_counts) emp.type_counts[p] += c;
            component_sum += acc.component_sum;
            for (std::size_t j = 0; j < counts.size(); ++j) counts[j] += acc.rank_counts[j];
        }
        emp.mean_components =
            static_cast<double>(component_sum) / static_cast<double>(row_config.walks);
        emp.check_invariants();

        ConvergenceRow row;
        row.k = k;
        row.tv_components = tv_distance_components(emp, exact);
        row.mean_components = emp.mean_components;
        if (with_uniform) {
            const double uniform = 1.0 / static_cast<double>(order);
            double tv = 0;
            for (auto c : counts)
                tv += std::abs(static_cast<double>(c) / static_cast<double>(row_config.walks) -
                               uniform);
            row.tv_uniform = 0.5 * tv;
        }
        table.push_back(row);
    }
    return table;
}

}  // namespace randlink
