#pragma once

// Braid words on n strands and the natural projection to the symmetric
// group. Words are raw walk trajectories: never reduced, never normalized —
// only the projection matters here, and keeping the letters verbatim makes
// every trajectory auditable (including lazy steps).
//
// Letter encoding: +i is the generator sigma_i, -i its inverse, 0 the
// identity step. sigma_i and sigma_i^-1 both project to the adjacent
// transposition of letters i-1 and i (0-indexed); the projection kills signs.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "randlink/errors.hpp"
#include "randlink/partition.hpp"
#include "randlink/perm.hpp"

namespace randlink {

struct BraidWord {
    std::uint32_t n = 0;            // strand count >= 2
    std::vector<std::int32_t> letters;  // each in {-(n-1)..n-1}; length = step count

    BraidWord() = default;
    BraidWord(std::uint32_t strands, std::vector<std::int32_t> word)
        : n(strands), letters(std::move(word)) {
        validate();
    }

    void validate() const {
        if (n < 2) throw usage_error("braid words need at least 2 strands");
        for (auto l : letters) {
            std::int64_t a = l < 0 ? -static_cast<std::int64_t>(l) : l;
            if (a > n - 1)
                throw usage_error("braid letter " + std::to_string(l) + " out of range for n = " +
                                  std::to_string(n));
        }
    }

    std::size_t length() const { return letters.size(); }
};

// Image under the projection onto the symmetric group: apply the letters in
// word order (first letter = first walk step) under the project-wide
// composition convention. Equivalent to tracking where each letter of the
// identity ends up as the transpositions act one by one.
inline Permutation project(const BraidWord& w) {
    w.validate();
    Permutation p = identity(w.n);
    for (auto l : w.letters) {
        if (l == 0) continue;  // lazy step
        std::uint32_t i = static_cast<std::uint32_t>(l < 0 ? -l : l);
        // Word order means each successive letter multiplies on the left
        // under the result(i) = p(q(i)) convention: p <- sigma ∘ p.
        for (auto& v : p.images) {
            if (v == i - 1)
                v = i;
            else if (v == i)
                v = i - 1;
        }
    }
    return p;
}

// Number of components of the braid closure: each cycle of the projected
// permutation is one closed loop of strands.
inline std::uint32_t closure_components(const BraidWord& w) { return num_cycles(project(w)); }

// The partition of the number of strings: cycle lengths of the projection.
inline Partition closure_partition(const BraidWord& w) { return cycle_type(project(w)); }

}  // namespace randlink
