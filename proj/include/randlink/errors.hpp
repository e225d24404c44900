#pragma once

// Error taxonomy and resource caps shared by every module.
//
// The CLI maps these exception types onto its documented exit codes:
//   usage_error          -> 2 (invalid arguments / preconditions)
//   resource_limit_error -> 3 (configured cap exceeded)
//   io_error             -> 4 (unreadable/unwritable paths)
//   internal_error       -> 1 (an exact identity failed; falsification alarm)
// Caps default to the documented values and can be raised or lowered through
// environment variables with the RANDLINK_MAX_ prefix (see cli --help).

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace randlink {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact invariant failed (e.g. a division that must be exact was not).
// This never signals bad user input; it signals a bug or a falsified claim.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace caps {

inline std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0')
        throw usage_error(std::string(name) + " must be a nonnegative integer, got '" + raw + "'");
    return static_cast<std::uint64_t>(v);
}

// Largest n for the Stirling DP (row of c(n,m) values).
inline std::uint64_t max_stirling_n() { return env_cap("RANDLINK_MAX_STIRLING_N", 2000); }
// Largest n for partition scans.
inline std::uint64_t max_partition_n() { return env_cap("RANDLINK_MAX_PARTITION_N", 120); }
// Largest n for exhaustive whole-group work (n! enumeration, full TV histograms).
inline std::uint64_t max_exhaustive_n() { return env_cap("RANDLINK_MAX_EXHAUSTIVE_N", 8); }
// Largest number of Monte Carlo trajectories per run.
inline std::uint64_t max_walks() { return env_cap("RANDLINK_MAX_WALKS", 10'000'000); }
// Largest step count k per trajectory.
inline std::uint64_t max_steps() { return env_cap("RANDLINK_MAX_STEPS", 10'000'000); }
// Largest partition list that enumerate_partitions will materialize in memory;
// p(n) grows fast (p(120) = 1,844,349,560) so the streaming visitor must be
// used beyond this budget.
inline std::uint64_t max_partition_materialize() {
    return env_cap("RANDLINK_MAX_PARTITION_MATERIALIZE", 10'000'000);
}

}  // namespace caps

}  // namespace randlink
