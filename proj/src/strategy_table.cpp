#include "hatlab/strategy_table.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace hatlab {

StrategyTable StrategyTable::from_rule(const GameSpec& game, std::string name,
                                       const StrategyFn& rule) {
    game.validate();
    StrategyTable table(game, std::move(name));
    const std::uint64_t total = game.configuration_count();

    StrategyFn recording = [&table, &rule](int player, const View& view) {
        Response r = rule(player, view);
        table.set(player, view.key(), r);
        return r;
    };
    for (std::uint64_t k = 0; k < total; ++k)
        play(game, recording, unrank_configuration(k, game.n, game.q));
    return table;
}

void StrategyTable::set(int player, const std::string& view_key, Response response) {
    entries_.insert_or_assign(Key{player, view_key}, response);
}

bool StrategyTable::has(int player, const std::string& view_key) const {
    return entries_.count(Key{player, view_key}) > 0;
}

Response StrategyTable::respond(int player, const View& view) const {
    auto it = entries_.find(Key{player, view.key()});
    if (it == entries_.end())
        throw StrategyError("strategy has no entry for player " + std::to_string(player) +
                            " view " + view.key());
    return it->second;
}

StrategyFn StrategyTable::as_fn() const {
    return [this](int player, const View& view) { return respond(player, view); };
}

Trace play(const GameSpec& game, const StrategyTable& strategy, const Configuration& cfg) {
    if (!(strategy.game() == game)) throw DomainError("strategy built for a different game");
    return play(game, strategy.as_fn(), cfg);
}

void verify_table(const StrategyTable& table) {
    const GameSpec& game = table.game();
    for (const auto& [key, response] : table.entries()) {
        if (response.is_pass && !game.pass_allowed())
            throw StrategyError("pass is illegal under objective " + to_token(game.objective) +
                                " (player " + std::to_string(key.first) + " view " + key.second + ")");
        if (!response.is_pass && (response.colour < 0 || response.colour >= game.q))
            throw StrategyError("guess colour out of range (player " + std::to_string(key.first) +
                                " view " + key.second + ")");
    }
    // Reachability sweep; respond() throws on the first missing view.
    const std::uint64_t total = game.configuration_count();
    for (std::uint64_t k = 0; k < total; ++k)
        play(game, table.as_fn(), unrank_configuration(k, game.n, game.q));
}

void save_strategy(const StrategyTable& table, std::ostream& out) {
    const GameSpec& g = table.game();
    out << "game " << g.n << ' ' << g.q << ' ' << to_token(g.visibility) << ' '
        << to_token(g.protocol) << ' ' << to_token(g.objective) << '\n';
    for (const auto& [key, response] : table.entries()) {
        out << "player " << key.first << " view " << key.second << " -> ";
        if (response.is_pass)
            out << "pass";
        else
            out << response.colour;
        out << '\n';
    }
}

std::string strategy_to_string(const StrategyTable& table) {
    std::ostringstream out;
    save_strategy(table, out);
    return out.str();
}

namespace {

[[noreturn]] void format_fail(int line_no, const std::string& what) {
    throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

StrategyTable load_strategy(std::istream& in, const std::string& name) {
    std::string line;
    int line_no = 0;

    // Header
    GameSpec game;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string tag, vis, proto, obj;
        if (!(fields >> tag >> game.n >> game.q >> vis >> proto >> obj) || tag != "game")
            format_fail(line_no, "expected header \"game <n> <q> <visibility> <protocol> <objective>\"");
        game.visibility = parse_visibility(vis);
        game.protocol = parse_protocol(proto);
        game.objective = parse_objective(obj);
        try {
            game.validate();
        } catch (const DomainError& e) {
            format_fail(line_no, e.what());
        }
        break;
    }
    if (line_no == 0) throw FormatError("empty strategy file");

    StrategyTable table(game, name);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string tag_player, tag_view, view_key, arrow, value;
        int player = 0;
        if (!(fields >> tag_player >> player >> tag_view >> view_key >> arrow >> value) ||
            tag_player != "player" || tag_view != "view" || arrow != "->")
            format_fail(line_no, "expected \"player <i> view <key> -> pass|<colour>\"");
        if (player < 1 || player > game.n) format_fail(line_no, "player index out of range");
        if (view_key.find('|') == std::string::npos)
            format_fail(line_no, "view key missing '|' separator");

        Response response;
        if (value == "pass") {
            if (!game.pass_allowed())
                format_fail(line_no, "pass is illegal under objective " + to_token(game.objective));
            response = Response::pass();
        } else {
            int colour = 0;
            try {
                std::size_t used = 0;
                colour = std::stoi(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                format_fail(line_no, "bad response \"" + value + "\"");
            }
            if (colour < 0 || colour >= game.q)
                format_fail(line_no, "colour " + value + " out of range for q=" + std::to_string(game.q));
            response = Response::guess(colour);
        }
        table.set(player, view_key, response);
    }

    // Totality over reachable views, reported with the offending view key.
    const std::uint64_t total = game.configuration_count();
    for (std::uint64_t k = 0; k < total; ++k) {
        Configuration cfg = unrank_configuration(k, game.n, game.q);
        StrategyFn checked = [&table](int player, const View& view) {
            if (!table.has(player, view.key()))
                throw FormatError("strategy file is partial: no entry for player " +
                                  std::to_string(player) + " view " + view.key());
            return table.respond(player, view);
        };
        play(game, checked, cfg);
    }
    return table;
}

StrategyTable load_strategy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open strategy file: " + path);
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    return load_strategy(in, name);
}

}  // namespace hatlab
