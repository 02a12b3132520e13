#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "limaut/machine.hpp"

namespace limaut {

struct FuzzOptions {
    std::string pipeline;  // blank-skip | lpa2-roundtrip | ppda-roundtrip | decompose
    int seeds = 100;
    std::uint64_t first_seed = 1;
    int upto = 4;
    int max_states = 3;  // non-halting states; generated machines add acc and rej
    int jobs = 1;
};

struct FuzzFailure {
    std::uint64_t seed = 0;
    Word word;  // shortest failing input, empty when the image itself is bad
    std::string detail;
    nlohmann::json machine;
};

struct FuzzReport {
    std::string pipeline;
    int machines = 0;
    int skipped = 0;  // generator or transform declined (e.g. TOO_LARGE)
    std::size_t comparisons = 0;
    std::optional<FuzzFailure> failure;  // smallest failing seed
};

// Applied to each transform result before it is checked. Tests use it to
// plant faults; normal runs pass none.
using Mutation = std::function<void(AnyMachine&)>;

// Throws DomainError UNKNOWN_PIPELINE.
FuzzReport run_fuzz(const FuzzOptions& options, const Mutation& mutate = {});

nlohmann::json to_json(const FuzzReport& r);

}  // namespace limaut
