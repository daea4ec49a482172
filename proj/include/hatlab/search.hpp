#pragma once

#include <cstdint>
#include <vector>

#include "hatlab/eval.hpp"
#include "hatlab/strategy_table.hpp"

namespace hatlab {

/// One deterministic strategy profile for a sequential game, collapsed to
/// ahead-view-only functions: choice[j-1][v] is player j's response to the
/// v-th ranked ahead view, -1 for pass, otherwise a colour. Before the first
/// guess every heard response is pass; after it the outcome is decided, so
/// nothing is lost by ignoring heard prefixes.
struct SequentialProfile {
    int n = 0;
    int q = 0;
    std::vector<std::vector<signed char>> choice;

    static SequentialProfile all_pass(int n, int q);
};

/// Materializes a profile as a playable table (later players pass once a
/// guess has been heard).
StrategyTable sequential_profile_table(const SequentialProfile& profile, const std::string& name);

struct SearchResult {
    Rational optimum;
    std::uint64_t wins = 0;
    std::uint64_t total = 0;               // q^n
    StrategyTable witness;                 // lexicographically least optimal profile
    std::uint64_t strategies_examined = 0;
    std::uint64_t pruned = 0;              // profiles excluded by the restriction
};

/// Exact optimum of the new hats-on-a-line game over all sequential
/// profiles, by exhaustive lexicographic enumeration. With prune=true only
/// restricted profiles are enumerated (players past the first may guess only
/// when every configuration reaching them forces one own colour), which
/// leaves the optimum unchanged. Guarded; throws CapacityError.
SearchResult search_optimal_sequential(int n, int q, bool prune);

/// Exact optimum over all simultaneous deterministic profiles for the
/// all-others game with the given objective (pass allowed only under
/// one-correct-none-wrong). Guarded; throws CapacityError.
SearchResult search_optimal_simultaneous(int n, int q, Objective objective);

/// True iff every guess made in play by a player other than the first is
/// correct, across all configurations. New hats-on-a-line game only.
bool verify_restricted(const StrategyTable& strategy);

struct BetaResult {
    int n = 0;
    int q = 0;
    std::uint64_t beta = 0;   // max P1 pass-views over optimum-achieving restricted profiles
    std::uint64_t bound = 0;  // q^(n-1) - (q-1)^(n-1)
    Rational optimum;
};

/// Runs the restricted enumeration and maximizes the first player's
/// pass-view count over every profile attaining the optimum.
BetaResult max_first_player_passes(int n, int q);

}  // namespace hatlab
