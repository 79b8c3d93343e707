#pragma once

#include <optional>

#include "cpls/model.hpp"

namespace cpls {

struct SolveOptions {
    int base_threshold{100};
    int threads{1};
};

// Divide-and-conquer solver for variable-embedding completion instances:
// guesses a separator (U, rho), a balanced inside set, a boundary-edge
// partition and a boundary triple, then recurses on the two augmented
// instances. Below the threshold the brute-force oracle decides directly.
std::optional<SaturationSolution> solve_var(const ProblemInstance& inst,
                                            const SolveOptions& opt = {});

// Fixed-embedding counterpart: the separator guess enumerates nooses of the
// given embedding instead of inside sets and edge partitions.
std::optional<SaturationSolution> solve_fixed(const ProblemInstance& inst,
                                              const SolveOptions& opt = {});

}  // namespace cpls
