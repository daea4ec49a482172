#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "hatlab/game.hpp"

namespace hatlab {

/// A deterministic strategy as a finite table: (player, canonical view key)
/// -> response. Tables are immutable once built and safe to share across
/// threads. Generators materialize them by sweeping every configuration, so
/// a table covers exactly the views its game can reach.
class StrategyTable {
public:
    using Key = std::pair<int, std::string>;  // (1-based player, view key)
    using Entries = std::map<Key, Response>;

    StrategyTable(GameSpec game, std::string name) : game_(game), name_(std::move(name)) {
        game_.validate();
    }

    /// Plays every configuration of `game` against `rule` and records each
    /// (player, view) -> response pair encountered.
    static StrategyTable from_rule(const GameSpec& game, std::string name,
                                   const StrategyFn& rule);

    const GameSpec& game() const { return game_; }
    const std::string& name() const { return name_; }
    const Entries& entries() const { return entries_; }

    void set(int player, const std::string& view_key, Response response);
    bool has(int player, const std::string& view_key) const;

    /// Throws StrategyError when the view is not in the table.
    Response respond(int player, const View& view) const;

    StrategyFn as_fn() const;

    bool operator==(const StrategyTable& other) const {
        return game_ == other.game_ && entries_ == other.entries_;
    }

private:
    GameSpec game_;
    std::string name_;
    Entries entries_;
};

Trace play(const GameSpec& game, const StrategyTable& strategy, const Configuration& cfg);

/// Totality and legality over every reachable view of the table's own game:
/// plays all q^n configurations and rejects a missing view, an illegal pass,
/// or an out-of-range guess. Throws StrategyError/FormatError.
void verify_table(const StrategyTable& table);

// Strategy file format:
//   game <n> <q> <visibility> <protocol> <objective>
//   player <i> view <visible-digits>|<heard-symbols> -> pass|<colour>
void save_strategy(const StrategyTable& table, std::ostream& out);
std::string strategy_to_string(const StrategyTable& table);

/// Parses and verifies (totality, legality). Line numbers appear in errors.
StrategyTable load_strategy(std::istream& in, const std::string& name);
StrategyTable load_strategy_file(const std::string& path);

}  // namespace hatlab
