#pragma once

// Integer partitions of n, conjugacy-class / centralizer cardinalities in the
// symmetric group, and the maximal-class verifications. Everything is exact
// big-integer arithmetic; the module never samples.
//
// A partition doubles as a cycle type: the class of elements with cycle type
// p = (1^{m_1} 2^{m_2} ...) has centralizer order z(p) = prod_j j^{m_j}·m_j!
// and size n!/z(p).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "randlink/errors.hpp"
#include "randlink/numeric.hpp"

namespace randlink {

struct Partition {
    std::vector<std::uint32_t> parts;  // non-increasing, all >= 1

    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> p) : parts(std::move(p)) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw usage_error("partition parts must be positive");
            if (i + 1 < parts.size() && parts[i] < parts[i + 1])
                throw usage_error("partition parts must be non-increasing");
        }
    }

    std::uint64_t n() const {
        std::uint64_t s = 0;
        for (auto p : parts) s += p;
        return s;
    }
    std::size_t num_parts() const { return parts.size(); }

    bool operator==(const Partition& o) const { return parts == o.parts; }

    // Display form, largest part first: "(3,1)".
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

// Reverse-lexicographic order on partitions of a common n: (n) first,
// (1,...,1) last. This is the enumeration order and the deterministic
// tie-break everywhere.
inline bool revlex_before(const Partition& a, const Partition& b) {
    return a.parts > b.parts;  // lexicographically larger sequence comes first
}
struct RevLexLess {
    bool operator()(const Partition& a, const Partition& b) const { return revlex_before(a, b); }
};

// (part, multiplicity) runs, largest part first.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplicities(const Partition& p) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> runs;
    for (auto v : p.parts) {
        if (!runs.empty() && runs.back().first == v)
            ++runs.back().second;
        else
            runs.emplace_back(v, 1);
    }
    return runs;
}

// |Z(a)| for any a of cycle type p: prod_j j^{m_j} · m_j!.
inline BigInt centralizer_order(const Partition& p) {
    BigInt z = 1;
    for (auto [part, mult] : multiplicities(p)) {
        for (std::uint32_t i = 0; i < mult; ++i) z *= part;
        z *= factorial(mult);
    }
    return z;
}

struct ClassRecord {
    Partition partition;
    BigInt class_size;        // n!/|Z(a)|
    BigInt centralizer_size;  // |Z(a)|
    Rational probability;     // class_size / n!
};

inline ClassRecord conjugacy_class_size(const Partition& p) {
    const BigInt nf = factorial(p.n());
    BigInt z = centralizer_order(p);
    BigInt size = exact_div(nf, z, "conjugacy_class_size (centralizer must divide n!)");
    return ClassRecord{p, size, std::move(z), Rational(size, nf)};
}

// Number of partitions of n (exact). Used for materialization budgets and as
// a cross-check oracle for the enumerator.
inline BigInt partition_count(std::uint64_t n) {
    std::vector<BigInt> dp(n + 1);
    dp[0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k)
        for (std::uint64_t s = k; s <= n; ++s) dp[s] += dp[s - k];
    return dp[n];
}

// Visit every partition of n exactly once, in reverse-lexicographic order
// starting from (n). The buffer passed to the visitor is reused between
// calls; copy it if you keep it. Streaming: no per-partition allocation, no
// materialized list, so it is usable even where p(n) is in the billions.
template <typename Visitor>
void for_each_partition(std::uint64_t n, Visitor&& visit) {
    if (n < 1) throw usage_error("for_each_partition requires n >= 1");
    if (n > caps::max_partition_n())
        throw resource_limit_error("partition size " + std::to_string(n) +
                                   " exceeds cap RANDLINK_MAX_PARTITION_N=" +
                                   std::to_string(caps::max_partition_n()));
    std::vector<std::uint32_t> a{static_cast<std::uint32_t>(n)};
    for (;;) {
        visit(static_cast<const std::vector<std::uint32_t>&>(a));
        // Successor in reverse-lex order: decrement the rightmost part > 1,
        // then redistribute the freed units greedily under the new bound.
        std::size_t i = a.size();
        while (i > 0 && a[i - 1] == 1) --i;
        if (i == 0) return;  // all parts are 1: last partition
        --i;
        std::uint32_t tail = static_cast<std::uint32_t>(a.size() - 1 - i);  // ones removed
        a.resize(i + 1);
        a[i] -= 1;
        std::uint32_t v = a[i];
        std::uint32_t rem = tail + 1;  // sum freed by the decrement plus the ones
        while (rem >= v) {
            a.push_back(v);
            rem -= v;
        }
        if (rem > 0) a.push_back(rem);
    }
}

// Materialized enumeration, same order. Guarded by a budget independent of
// the size cap: p(n) reaches 1.8e9 at the default cap n = 120, far beyond
// anything that should be held in memory at once.
inline std::vector<Partition> enumerate_partitions(std::uint64_t n) {
    BigInt count = partition_count(n);
    if (count > BigInt(caps::max_partition_materialize()))
        throw resource_limit_error(
            "p(" + std::to_string(n) + ") = " + count.str() +
            " partitions exceed the materialization budget RANDLINK_MAX_PARTITION_MATERIALIZE=" +
            std::to_string(caps::max_partition_materialize()) + "; use for_each_partition");
    std::vector<Partition> out;
    out.reserve(static_cast<std::size_t>(count));
    for_each_partition(n, [&](const std::vector<std::uint32_t>& parts) {
        Partition p;
        p.parts = parts;
        out.push_back(std::move(p));
    });
    return out;
}

struct PartitionModeReport {
    ClassRecord record;  // the class of maximal size
    bool unique = false;
    // The individual claims being verified, kept separate so a falsification
    // pinpoints what broke rather than collapsing into one bit.
    bool shape_ok = false;        // argmax parts == ((n-1), 1)
    bool class_size_ok = false;   // class size == n * (n-2)!
    bool probability_ok = false;  // probability == 1/(n-1)
    bool pass = false;
};

// Exhaustive maximization of class size over all partitions of n, with no
// reliance on the claim being verified. Maximizing n!/z(p) is minimizing
// z(p); appending a part j to a partial partition that already has m copies
// of j multiplies z by j·(m+1) >= 1, so z never decreases along an
// extension. That allows branch-and-bound: a branch is cut only when its
// partial z strictly exceeds the incumbent minimum, which preserves every
// potential tie (equality can still be extended to an equal leaf only via
// factors of exactly 1). The tree is explored largest-part-first, i.e. in
// reverse-lexicographic order, so on ties the earliest partition in that
// order is kept — the same deterministic tie-break used everywhere.
inline PartitionModeReport most_expected_partition(std::uint64_t n) {
    if (n < 3) throw usage_error("most_expected_partition requires n >= 3");
    if (n > caps::max_partition_n())
        throw resource_limit_error("n = " + std::to_string(n) +
                                   " exceeds cap RANDLINK_MAX_PARTITION_N=" +
                                   std::to_string(caps::max_partition_n()));

    std::vector<std::uint32_t> stack;
    std::vector<std::uint32_t> best_parts;
    BigInt best_z;  // empty state = no incumbent yet
    bool have_best = false;
    std::uint64_t ties = 0;

    // remaining: units still to place; bound: largest part allowed next.
    std::function<void(std::uint32_t, std::uint32_t, const BigInt&)> scan =
        [&](std::uint32_t remaining, std::uint32_t bound, const BigInt& z) {
            if (remaining == 0) {
                if (!have_best || z < best_z) {
                    best_z = z;
                    best_parts = stack;
                    have_best = true;
                    ties = 1;
                } else if (z == best_z) {
                    ++ties;
                }
                return;
            }
            for (std::uint32_t j = std::min(bound, remaining); j >= 1; --j) {
                std::uint32_t mult = 0;  // copies of j already placed (trailing run)
                for (auto it = stack.rbegin(); it != stack.rend() && *it == j; ++it) ++mult;
                BigInt child_z = z * j * (mult + 1);
                if (have_best && child_z > best_z) continue;  // strict: keeps ties reachable
                stack.push_back(j);
                scan(remaining - j, j, child_z);
                stack.pop_back();
            }
        };
    scan(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n), BigInt(1));

    PartitionModeReport rep;
    rep.record = conjugacy_class_size(Partition(best_parts));
    rep.unique = (ties == 1);
    rep.shape_ok = best_parts.size() == 2 && best_parts[0] == n - 1 && best_parts[1] == 1;
    rep.class_size_ok = rep.record.class_size == BigInt(n) * factorial(n - 2);
    rep.probability_ok = rep.record.probability == Rational(1, n - 1);
    rep.pass = rep.unique && rep.shape_ok && rep.class_size_ok && rep.probability_ok;
    return rep;
}

// Probability that the closure is a knot (one component): the class of
// n-cycles has size (n-1)!, so the limit probability is exactly 1/n.
inline Rational knot_probability(std::uint64_t n) {
    if (n < 1) throw usage_error("knot_probability requires n >= 1");
    Partition full(std::vector<std::uint32_t>{static_cast<std::uint32_t>(n)});
    return conjugacy_class_size(full).probability;
}

// ---- Lemma verification (exhaustive regime, 3 <= n <= 8) -------------------
//
// The brute-force side below deliberately avoids the perm module: elements
// are raw image arrays and commutation is checked by definition, so this is
// an independent oracle for the centralizer formula rather than the library
// testing itself.

struct LemmaTypeRow {
    Partition type;
    BigInt centralizer_formula;
    std::uint64_t centralizer_bruteforce = 0;
    BigInt class_size;
};

struct LemmaReport {
    std::uint64_t n = 0;
    std::vector<LemmaTypeRow> rows;                 // one per cycle type, rev-lex order
    std::uint64_t min_centralizer = 0;              // min over all types, brute-force values
    std::vector<Partition> min_types;               // types attaining the minimum
    bool formula_matches_bruteforce = false;        // (a)
    bool min_is_n_minus_1 = false;                  // (b)
    bool equality_only_at_n_minus_1_cycles = false; // (c)
    bool product_sum_holds = false;                 // (d) prod k_i >= sum k_i for parts >= 2
    std::vector<std::string> equality_cases;        // tuples where (d) is an equality
    std::vector<std::string> failures;              // human-readable witnesses
    bool pass = false;
};

namespace detail {

// Canonical representative of a cycle type: consecutive blocks, each
// cyclically shifted by one. E.g. type (3,1) on 4 letters -> images 1,2,0,3.
inline std::vector<std::uint32_t> representative(const Partition& type) {
    std::vector<std::uint32_t> img(type.n());
    std::uint32_t base = 0;
    for (auto len : type.parts) {
        for (std::uint32_t i = 0; i < len; ++i) img[base + i] = base + (i + 1) % len;
        base += len;
    }
    return img;
}

// |{g : g a = a g}| by definition, iterating all of the symmetric group.
inline std::uint64_t centralizer_bruteforce(const std::vector<std::uint32_t>& a) {
    const std::size_t n = a.size();
    std::vector<std::uint32_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<std::uint32_t>(i);
    std::uint64_t count = 0;
    do {
        bool commutes = true;
        for (std::size_t i = 0; i < n && commutes; ++i) commutes = (g[a[i]] == a[g[i]]);
        count += commutes;
    } while (std::next_permutation(g.begin(), g.end()));
    return count;
}

}  // namespace detail

inline LemmaReport verify_lemma(std::uint64_t n) {
    if (n < 3 || n > 8) throw usage_error("verify_lemma requires 3 <= n <= 8");
    if (n > caps::max_exhaustive_n())
        throw resource_limit_error("n = " + std::to_string(n) +
                                   " exceeds cap RANDLINK_MAX_EXHAUSTIVE_N=" +
                                   std::to_string(caps::max_exhaustive_n()));
    LemmaReport rep;
    rep.n = n;
    rep.formula_matches_bruteforce = true;
    rep.product_sum_holds = true;

    bool first = true;
    for_each_partition(n, [&](const std::vector<std::uint32_t>& parts) {
        Partition type;
        type.parts = parts;
        LemmaTypeRow row;
        row.type = type;
        row.centralizer_formula = centralizer_order(type);
        row.centralizer_bruteforce = detail::centralizer_bruteforce(detail::representative(type));
        row.class_size = conjugacy_class_size(type).class_size;
        if (row.centralizer_formula != BigInt(row.centralizer_bruteforce)) {
            rep.formula_matches_bruteforce = false;
            rep.failures.push_back("centralizer mismatch at type " + type.str() + ": formula " +
                                   row.centralizer_formula.str() + " vs brute force " +
                                   std::to_string(row.centralizer_bruteforce));
        }
        if (first || row.centralizer_bruteforce < rep.min_centralizer) {
            rep.min_centralizer = row.centralizer_bruteforce;
            rep.min_types.clear();
        }
        if (row.centralizer_bruteforce == rep.min_centralizer) rep.min_types.push_back(type);
        first = false;

        // (d): for the parts >= 2 of this partition, prod >= sum.
        std::uint64_t prod = 1, sum = 0, r = 0;
        for (auto v : parts)
            if (v >= 2) {
                prod *= v;
                sum += v;
                ++r;
            }
        if (r >= 1) {
            if (prod < sum) {
                rep.product_sum_holds = false;
                rep.failures.push_back("product < sum for parts of " + type.str());
            } else if (prod == sum) {
                bool expected = (r == 1) || (r == 2 && prod == 4);  // r=1, or (2,2)
                rep.equality_cases.push_back(type.str() + (expected ? "" : " [unexpected]"));
                if (!expected) {
                    rep.product_sum_holds = false;
                    rep.failures.push_back("unexpected product=sum equality at " + type.str());
                }
            }
        }
        rep.rows.push_back(std::move(row));
    });

    rep.min_is_n_minus_1 = (rep.min_centralizer == n - 1);
    if (!rep.min_is_n_minus_1)
        rep.failures.push_back("min |Z(a)| = " + std::to_string(rep.min_centralizer) +
                               ", expected n-1 = " + std::to_string(n - 1));

    // (c): centralizer == n-1 exactly at the class of (n-1)-cycles.
    Partition n1cycle(std::vector<std::uint32_t>{static_cast<std::uint32_t>(n - 1), 1});
    rep.equality_only_at_n_minus_1_cycles =
        rep.min_types.size() == 1 && rep.min_types[0] == n1cycle && rep.min_is_n_minus_1;
    if (!rep.equality_only_at_n_minus_1_cycles && rep.min_is_n_minus_1) {
        std::string who;
        for (const auto& t : rep.min_types) who += t.str();
        rep.failures.push_back("minimum attained by " + who + ", expected only " + n1cycle.str());
    }

    rep.pass = rep.formula_matches_bruteforce && rep.min_is_n_minus_1 &&
               rep.equality_only_at_n_minus_1_cycles && rep.product_sum_holds;
    return rep;
}

}  // namespace randlink
