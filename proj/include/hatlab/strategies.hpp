#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hatlab/codes.hpp"
#include "hatlab/strategy_table.hpp"

namespace hatlab {

// ---------------------------------------------------------------------------
// Named strategies
// ---------------------------------------------------------------------------

/// Ebert game, n=3, q=2: seeing two hats of the same colour, guess the
/// opposite colour; otherwise pass.
StrategyTable ebert_three_player();

/// Ebert game over a binary code with verified covering radius 1: player i
/// forms both own-colour completions of what she sees; if exactly one is a
/// codeword she guesses the other colour, otherwise she passes.
StrategyTable covering_code_strategy(const Code& code);

/// Hats-on-a-line, count-correct: P1 announces the mod-q sum of the hats
/// ahead; every later player solves for their own colour from the heard
/// guesses and the hats they see. Players 2..n are always correct.
StrategyTable line_sum_strategy(int n, int q);

/// New hats-on-a-line game: before any guess has been heard, pass iff a gray
/// (colour 0) hat is visible ahead, else guess gray; after a guess, pass.
StrategyTable gray_strategy(int n, int q);

/// Majority game, n=3, q=2: each player votes the opposite of the next
/// player's hat colour (cyclically).
StrategyTable cyclic_majority_strategy();

// ---------------------------------------------------------------------------
// Hypercube orientations
// ---------------------------------------------------------------------------

/// A total orientation of the n-dimensional hypercube: every edge {u, v}
/// (vertices are rank-encoded binary words, edges join words at Hamming
/// distance 1) has exactly one head.
class Orientation {
public:
    explicit Orientation(int n);

    int dimension() const { return n_; }
    std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }
    std::uint64_t edge_count() const { return static_cast<std::uint64_t>(n_) << (n_ - 1); }

    /// Directs the edge between `u` and `u ^ (1 << bit)` toward `head`.
    void orient(std::uint64_t u, int bit, std::uint64_t head);
    bool oriented(std::uint64_t u, int bit) const;

    /// Head of the edge {u, v}; u and v must differ in exactly one bit.
    std::uint64_t head(std::uint64_t u, std::uint64_t v) const;

    /// Number of incident edges pointing at v.
    int indegree(std::uint64_t v) const;

    /// Throws unless every edge has been oriented.
    void verify_total() const;

private:
    std::size_t slot(std::uint64_t lower, int bit) const;

    int n_;
    std::vector<signed char> head_is_upper_;  // -1 unset, 0 lower, 1 upper
};

/// Orientation for the majority game on n = 2^m - 1 players: edges incident
/// to a Hamming codeword point away from it; the remaining edges (an
/// eulerian graph on the non-codewords) follow deterministic eulerian
/// circuits, one per connected component, lowest-ranked vertices and
/// neighbours first. Supported m: 2..3.
Orientation berlekamp_orientation(int m);

/// Majority strategy read off an orientation: a player's view fixes an edge
/// of the cube (the two own-colour completions); guess own coordinate of its
/// head. Correct guesses at a configuration equal its indegree.
StrategyTable orientation_majority_strategy(const Orientation& orientation);

// ---------------------------------------------------------------------------
// Built-in registry
// ---------------------------------------------------------------------------

struct BuiltinStrategy {
    std::string name;
    std::string summary;
};

const std::vector<BuiltinStrategy>& builtin_strategies();

/// Instantiates a built-in by name for `game`; throws DomainError when the
/// name is unknown or the game does not match the strategy's preconditions.
StrategyTable make_builtin_strategy(const std::string& name, const GameSpec& game);

}  // namespace hatlab
