#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hatlab/strategy_table.hpp"

#include "json.hpp"

namespace hatlab {

/// Exact nonnegative rational, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t num, std::int64_t den);
    std::string str() const;  // "num/den"
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational&) const = default;
};

struct EvalReport {
    GameSpec game;
    std::string strategy;
    std::uint64_t wins = 0;   // count-correct games count all-players-correct configurations
    std::uint64_t total = 0;  // q^n
    Rational probability;
    std::optional<Rational> mean_correct;  // count-correct objective only
    std::optional<std::vector<Trace>> traces;
};

struct McReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t wins = 0;
    double estimate = 0.0;
    double half_width_95 = 0.0;
};

/// Exact sweep over every configuration in rank order. Refuses q^n > 10^8.
/// `workers` may split the rank range; tallies merge by addition, so the
/// result is identical for any worker count.
EvalReport evaluate_exact(const GameSpec& game, const StrategyTable& strategy, int workers = 1);

/// Seeded Monte Carlo under uniform hats. Trial t draws its configuration
/// from mix64(seed + (t+1)*GOLDEN) alone (splitmix64), so the report depends
/// only on (seed, trials) — not on scheduling or worker count.
McReport evaluate_monte_carlo(const GameSpec& game, const StrategyTable& strategy,
                              std::uint64_t trials, std::uint64_t seed, int workers = 1);

/// evaluate_exact plus the full per-configuration trace list (q^n <= 4096).
EvalReport trace_table(const GameSpec& game, const StrategyTable& strategy);

// Counter-based randomness (the splitmix64 output mix).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t trial_configuration_rank(std::uint64_t seed, std::uint64_t trial, std::uint64_t total);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// 0 -> "gray", 1 -> "brown", k -> "c<k>".
std::string colour_name(Colour c);

nlohmann::ordered_json game_json(const GameSpec& game);
nlohmann::ordered_json report_json(const EvalReport& report);
nlohmann::ordered_json mc_json(const GameSpec& game, const std::string& strategy,
                               const McReport& report);

/// configuration,r1..rn,correct1..correctn,outcome — one row per trace.
std::string trace_csv(const EvalReport& report);

/// Human-readable table (gray/brown colour words; '*' marks correct guesses).
std::string render_table(const EvalReport& report);

std::string mc_csv(const McReport& report);
std::string render_mc(const GameSpec& game, const std::string& strategy, const McReport& report);

}  // namespace hatlab
