#pragma once

// Exact combinatorics of cycle counts: Stirling numbers of the first kind
// c(n,m) (count of permutations of n letters with m cycles), their row mode
// K_n, the closed-form mode estimate and its bracketed bounds, and the exact
// harmonic expectation. Big integers throughout; floating point appears only
// when evaluating the closed-form estimates, in double precision.
//
// [x] below always means the integer part (floor; every bracketed quantity
// here is positive), and log is the natural logarithm.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "randlink/errors.hpp"
#include "randlink/numeric.hpp"

namespace randlink {

struct StirlingRow {
    std::uint64_t n = 0;
    std::vector<BigInt> values;  // values[m-1] = c(n,m), m = 1..n
};

// Incremental row builder via c(n,m) = c(n-1,m-1) + (n-1)·c(n-1,m). The
// recurrence is inherently sequential in n, so range verifications advance
// one sweep instead of recomputing rows from scratch (the full sweep to the
// default cap 2000 is a few hundred million limb operations).
class StirlingSweep {
  public:
    StirlingSweep() : row_{1, {BigInt(1)}} {}

    const StirlingRow& row() const { return row_; }

    // Advance from n to n+1, updating in place (descending m keeps the
    // update order-safe: each slot still holds the previous row's value when
    // read).
    void advance() {
        const std::uint64_t n = row_.n + 1;
        if (n > caps::max_stirling_n())
            throw resource_limit_error("stirling row " + std::to_string(n) +
                                       " exceeds cap RANDLINK_MAX_STIRLING_N=" +
                                       std::to_string(caps::max_stirling_n()));
        auto& v = row_.values;
        v.emplace_back(0);
        for (std::size_t j = v.size(); j-- > 0;) {
            v[j] *= (n - 1);
            if (j > 0) v[j] += v[j - 1];
        }
        row_.n = n;
    }

    void advance_to(std::uint64_t n) {
        while (row_.n < n) advance();
    }

  private:
    StirlingRow row_;
};

inline StirlingRow stirling_row(std::uint64_t n) {
    if (n < 1) throw usage_error("stirling_row requires n >= 1");
    if (n > caps::max_stirling_n())
        throw resource_limit_error("n = " + std::to_string(n) +
                                   " exceeds cap RANDLINK_MAX_STIRLING_N=" +
                                   std::to_string(caps::max_stirling_n()));
    StirlingSweep sweep;
    sweep.advance_to(n);
    return sweep.row();
}

// Exact limit distribution of the component count: entry m-1 is c(n,m)/n!.
inline std::vector<Rational> component_distribution(const StirlingRow& row) {
    BigInt nf = 0;
    for (const auto& v : row.values) nf += v;  // row sum is n!
    std::vector<Rational> dist;
    dist.reserve(row.values.size());
    for (const auto& v : row.values) dist.emplace_back(v, nf);
    return dist;
}

inline std::vector<Rational> component_distribution(std::uint64_t n) {
    return component_distribution(stirling_row(n));
}

struct ModeResult {
    std::uint64_t K = 0;  // smallest maximizing m
    bool unique = true;
};

inline ModeResult mode_of(const StirlingRow& row) {
    ModeResult r{1, true};
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.values.size(); ++j) {
        if (row.values[j] > row.values[best]) {
            best = j;
            r.unique = true;
        } else if (row.values[j] == row.values[best]) {
            r.unique = false;
        }
    }
    r.K = best + 1;
    return r;
}

// K_n with a uniqueness flag (the row at n=2 is [1,1]: a genuine tie).
inline ModeResult most_expected_components(std::uint64_t n) { return mode_of(stirling_row(n)); }

// Closed-form estimate of the mode:
//   K = [ log(n+1) + gamma - 1 + (zeta(2)-zeta(3))/d + h/d^2 ],  d = log(n+1) + gamma - 3/2,
// where h = h(n) is only defined implicitly. We report the full interval of
// h values for which the bracketed expression reproduces the exact K — the
// half-open interval [h_low, h_high) mapping onto [K, K+1) — plus its
// midpoint, and whether the interval meets the claimed band (-1.1, 1.5).
struct HammersleyEstimate {
    std::uint64_t n = 0;
    std::uint64_t K = 0;  // exact argmax of the Stirling row
    bool unique = true;
    double base = 0;        // log(n+1) + gamma - 1
    double correction = 0;  // (zeta(2) - zeta(3)) / d
    double h_low = 0, h_high = 0, h_mid = 0;
    bool in_band = false;  // [h_low, h_high) intersects (-1.1, 1.5)
};

// The variant taking a precomputed mode lets range sweeps reuse one DP.
inline HammersleyEstimate hammersley_h(std::uint64_t n, const ModeResult& mode) {
    if (n < 3) throw usage_error("hammersley_h requires n >= 3");
    HammersleyEstimate e;
    e.n = n;
    e.K = mode.K;
    e.unique = mode.unique;
    const double d = std::log(static_cast<double>(n) + 1) + constants::euler_gamma - 1.5;
    e.base = std::log(static_cast<double>(n) + 1) + constants::euler_gamma - 1;
    e.correction = (constants::zeta2 - constants::zeta3) / d;
    const double B = e.base + e.correction;
    e.h_low = (static_cast<double>(e.K) - B) * d * d;
    e.h_high = (static_cast<double>(e.K) + 1 - B) * d * d;
    e.h_mid = 0.5 * (e.h_low + e.h_high);
    e.in_band = (e.h_low < 1.5) && (e.h_high > -1.1);
    return e;
}

inline HammersleyEstimate hammersley_h(std::uint64_t n) {
    if (n < 3) throw usage_error("hammersley_h requires n >= 3");
    return hammersley_h(n, most_expected_components(n));
}

// Bracketed bounds claimed for n > 188, evaluated per the NON-STRICT reading
// [log n - 1/2] <= K_n <= [log n] (the strict form between integers is
// unsatisfiable whenever the brackets differ by exactly 1; see README).
// pass_shifted records whether the bounds hold for K_n - 1 — across the
// whole computed range every violation of `pass` satisfies the bounds after
// that shift, which is reported rather than hidden.
struct ErdosResult {
    std::uint64_t n = 0;
    std::uint64_t K = 0;
    std::int64_t lower = 0;  // [log n - 1/2]
    std::int64_t upper = 0;  // [log n]
    bool pass = false;          // lower <= K <= upper
    bool pass_shifted = false;  // lower <= K-1 <= upper
};

inline ErdosResult erdos_check(std::uint64_t n, const ModeResult& mode) {
    if (n < 189) throw usage_error("erdos_check requires n >= 189");
    ErdosResult r;
    r.n = n;
    r.K = mode.K;
    r.lower = static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(n)) - 0.5));
    r.upper = static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(n))));
    const auto k = static_cast<std::int64_t>(r.K);
    r.pass = r.lower <= k && k <= r.upper;
    r.pass_shifted = r.lower <= k - 1 && k - 1 <= r.upper;
    return r;
}

inline ErdosResult erdos_check(std::uint64_t n) {
    if (n < 189) throw usage_error("erdos_check requires n >= 189");
    return erdos_check(n, most_expected_components(n));
}

// H_n = 1 + 1/2 + ... + 1/n, exact and reduced.
inline Rational harmonic(std::uint64_t n) {
    if (n < 1) throw usage_error("harmonic requires n >= 1");
    Rational h = 0;
    for (std::uint64_t i = 1; i <= n; ++i) h += Rational(1, i);
    return h;
}

// sum_m m·c(n,m)/n!; identically equal to harmonic(n).
inline Rational expected_components_exact(const StirlingRow& row) {
    BigInt weighted = 0, total = 0;
    for (std::size_t j = 0; j < row.values.size(); ++j) {
        weighted += BigInt(j + 1) * row.values[j];
        total += row.values[j];
    }
    return Rational(weighted, total);
}

inline Rational expected_components_exact(std::uint64_t n) {
    return expected_components_exact(stirling_row(n));
}

}  // namespace randlink
