#pragma once

// Permutations on n letters with composition and cycle decomposition.
// Letters are 0-indexed internally everywhere; 1-indexing happens only at
// display/serialization boundaries.
//
// Composition convention (fixed project-wide): compose(p, q) applies q first,
// i.e. result(i) = p(q(i)). Component counts are convention-independent, but
// decompositions are only reproducible with one convention used throughout.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "randlink/errors.hpp"
#include "randlink/partition.hpp"

namespace randlink {

struct Permutation {
    std::vector<std::uint32_t> images;  // one-line notation: i -> images[i]

    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> img) : images(std::move(img)) { validate(); }

    void validate() const {
        if (images.empty()) throw usage_error("permutation size must be >= 1");
        std::vector<bool> seen(images.size(), false);
        for (auto v : images) {
            if (v >= images.size() || seen[v])
                throw usage_error("images must be a bijection on 0..n-1");
            seen[v] = true;
        }
    }

    std::uint32_t n() const { return static_cast<std::uint32_t>(images.size()); }
    std::uint32_t operator()(std::uint32_t i) const { return images[i]; }
    bool operator==(const Permutation& o) const { return images == o.images; }
};

inline Permutation identity(std::uint32_t n) {
    if (n < 1) throw usage_error("identity requires n >= 1");
    Permutation p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), 0u);
    return p;
}

// The transposition swapping letters a and b (used for generator images).
inline Permutation transposition(std::uint32_t n, std::uint32_t a, std::uint32_t b) {
    Permutation p = identity(n);
    if (a >= n || b >= n || a == b) throw usage_error("transposition letters must be distinct and < n");
    std::swap(p.images[a], p.images[b]);
    return p;
}

// result(i) = p(q(i)): right factor applied first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.n() != q.n()) throw usage_error("compose requires equal sizes");
    Permutation r;
    r.images.resize(p.n());
    for (std::uint32_t i = 0; i < p.n(); ++i) r.images[i] = p.images[q.images[i]];
    return r;
}

inline Permutation inverse(const Permutation& p) {
    Permutation r;
    r.images.resize(p.n());
    for (std::uint32_t i = 0; i < p.n(); ++i) r.images[p.images[i]] = i;
    return r;
}

// g p g^-1.
inline Permutation conjugate(const Permutation& g, const Permutation& p) {
    return compose(compose(g, p), inverse(g));
}

struct CycleDecomposition {
    // Canonical form: each cycle rotated so its minimum letter leads, cycles
    // sorted by that minimum; fixed points included as 1-cycles.
    std::vector<std::vector<std::uint32_t>> cycles;
    bool operator==(const CycleDecomposition& o) const { return cycles == o.cycles; }
};

inline CycleDecomposition cycle_decomposition(const Permutation& p) {
    CycleDecomposition d;
    std::vector<bool> seen(p.n(), false);
    for (std::uint32_t start = 0; start < p.n(); ++start) {
        if (seen[start]) continue;  // letters visited in increasing order => canonical already
        std::vector<std::uint32_t> cyc;
        for (std::uint32_t i = start; !seen[i]; i = p.images[i]) {
            seen[i] = true;
            cyc.push_back(i);
        }
        d.cycles.push_back(std::move(cyc));
    }
    return d;
}

// Rebuild a permutation from a decomposition (round-trip oracle for tests).
inline Permutation from_cycles(std::uint32_t n, const CycleDecomposition& d) {
    std::vector<std::uint32_t> img(n, n);  // sentinel
    for (const auto& cyc : d.cycles)
        for (std::size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
    return Permutation(std::move(img));
}

inline std::uint32_t num_cycles(const Permutation& p) {
    std::uint32_t count = 0;
    std::vector<bool> seen(p.n(), false);
    for (std::uint32_t start = 0; start < p.n(); ++start) {
        if (seen[start]) continue;
        ++count;
        for (std::uint32_t i = start; !seen[i]; i = p.images[i]) seen[i] = true;
    }
    return count;
}

// Non-increasing cycle lengths: the partition of n a braid closure induces.
inline Partition cycle_type(const Permutation& p) {
    std::vector<std::uint32_t> lengths;
    std::vector<bool> seen(p.n(), false);
    for (std::uint32_t start = 0; start < p.n(); ++start) {
        if (seen[start]) continue;
        std::uint32_t len = 0;
        for (std::uint32_t i = start; !seen[i]; i = p.images[i]) {
            seen[i] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return Partition(std::move(lengths));
}

// Lehmer rank: bijection S_n -> {0, ..., n!-1}. Backs the full-group
// histograms of the mixing diagnostics (n <= 8, so the rank fits easily).
inline std::uint64_t lehmer_rank(const Permutation& p) {
    const std::uint32_t n = p.n();
    std::uint64_t rank = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t smaller = 0;  // images[j] < images[i] for j > i
        for (std::uint32_t j = i + 1; j < n; ++j) smaller += p.images[j] < p.images[i];
        rank = rank * (n - i) + smaller;
    }
    return rank;
}

}  // namespace randlink
