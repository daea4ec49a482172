#include "hatlab/strategies.hpp"

#include <algorithm>

namespace hatlab {

// ---------------------------------------------------------------------------
// Named strategies
// ---------------------------------------------------------------------------

StrategyTable ebert_three_player() {
    GameSpec game = GameSpec::ebert(3);
    return StrategyTable::from_rule(game, "ebert3", [](int, const View& view) {
        Colour a = view.visible[0].second;
        Colour b = view.visible[1].second;
        if (a == b) return Response::guess(1 - a);
        return Response::pass();
    });
}

StrategyTable covering_code_strategy(const Code& code) {
    if (code.q != 2) throw DomainError("covering strategy is defined for binary codes");
    if (code.radius != 1) throw DomainError("covering strategy needs a verified covering radius of 1");

    GameSpec game = GameSpec::ebert(code.n);
    const int n = code.n;
    return StrategyTable::from_rule(game, "covering", [&code, n](int player, const View& view) {
        // Both own-colour completions of the observed hats, as ranks.
        std::uint64_t base = 0;
        for (const auto& [other, colour] : view.visible)
            base |= static_cast<std::uint64_t>(colour) << (n - other);
        const std::uint64_t own_bit = std::uint64_t{1} << (n - player);
        const bool zero_is_codeword = code.contains(base);
        const bool one_is_codeword = code.contains(base | own_bit);
        if (zero_is_codeword == one_is_codeword) return Response::pass();
        return Response::guess(zero_is_codeword ? 1 : 0);
    });
}

StrategyTable line_sum_strategy(int n, int q) {
    if (n < 2) throw DomainError("line sum strategy needs n >= 2");
    GameSpec game = GameSpec::line(n, q);
    return StrategyTable::from_rule(game, "line-sum", [q](int player, const View& view) {
        int sum = 0;
        for (const auto& [other, colour] : view.visible) {
            (void)other;
            sum += colour;
        }
        if (player == 1) return Response::guess(sum % q);
        // heard[0] is P1's announced sum; heard[i-1] is P_i's guess, which
        // under this strategy equals c_i for every i >= 2.
        int announced = view.heard[0].colour;
        for (std::size_t i = 1; i < view.heard.size(); ++i) sum += view.heard[i].colour;
        return Response::guess(((announced - sum) % q + q) % q);
    });
}

StrategyTable gray_strategy(int n, int q) {
    GameSpec game = GameSpec::new_line(n, q);
    return StrategyTable::from_rule(game, "gray", [](int, const View& view) {
        for (const Response& r : view.heard)
            if (!r.is_pass) return Response::pass();  // a guess already decided the game
        for (const auto& [other, colour] : view.visible) {
            (void)other;
            if (colour == 0) return Response::pass();
        }
        return Response::guess(0);
    });
}

StrategyTable cyclic_majority_strategy() {
    GameSpec game = GameSpec::majority(3);
    return StrategyTable::from_rule(game, "cyclic3", [](int player, const View& view) {
        int next = player % 3 + 1;
        for (const auto& [other, colour] : view.visible)
            if (other == next) return Response::guess(1 - colour);
        throw StrategyError("next player not visible");
    });
}

// ---------------------------------------------------------------------------
// Orientation
// ---------------------------------------------------------------------------

Orientation::Orientation(int n) : n_(n) {
    if (n < 1 || n > 24) throw DomainError("orientation dimension out of range");
    head_is_upper_.assign(static_cast<std::size_t>(n) << n, -1);
}

std::size_t Orientation::slot(std::uint64_t lower, int bit) const {
    return (static_cast<std::size_t>(bit) << n_) + static_cast<std::size_t>(lower);
}

void Orientation::orient(std::uint64_t u, int bit, std::uint64_t head) {
    const std::uint64_t v = u ^ (std::uint64_t{1} << bit);
    const std::uint64_t lower = std::min(u, v);
    if (head != u && head != v) throw DomainError("head is not an endpoint");
    signed char& cell = head_is_upper_[slot(lower, bit)];
    if (cell != -1) throw DomainError("edge oriented twice");
    cell = head == std::max(u, v) ? 1 : 0;
}

bool Orientation::oriented(std::uint64_t u, int bit) const {
    const std::uint64_t v = u ^ (std::uint64_t{1} << bit);
    return head_is_upper_[slot(std::min(u, v), bit)] != -1;
}

std::uint64_t Orientation::head(std::uint64_t u, std::uint64_t v) const {
    const std::uint64_t diff = u ^ v;
    if (__builtin_popcountll(diff) != 1) throw DomainError("not a hypercube edge");
    const int bit = __builtin_ctzll(diff);
    const signed char cell = head_is_upper_[slot(std::min(u, v), bit)];
    if (cell == -1) throw DomainError("edge not oriented");
    return cell == 1 ? std::max(u, v) : std::min(u, v);
}

int Orientation::indegree(std::uint64_t v) const {
    int in = 0;
    for (int bit = 0; bit < n_; ++bit)
        if (head(v, v ^ (std::uint64_t{1} << bit)) == v) ++in;
    return in;
}

void Orientation::verify_total() const {
    std::uint64_t assigned = 0;
    for (signed char cell : head_is_upper_)
        if (cell != -1) ++assigned;
    if (assigned != edge_count()) throw DomainError("orientation is not total");
}

Orientation berlekamp_orientation(int m) {
    if (m < 2 || m > 3) throw DomainError("berlekamp_orientation supports m in 2..3");
    const Code code = hamming_code(m);
    const int n = code.n;
    const std::uint64_t vertices = std::uint64_t{1} << n;

    Orientation orientation(n);

    // Edges at codewords point away from them. Codewords are pairwise at
    // distance >= 3, so no edge joins two of them.
    for (std::uint64_t c : code.words)
        for (int bit = 0; bit < n; ++bit)
            orientation.orient(c, bit, c ^ (std::uint64_t{1} << bit));

    // The remaining edges sit between non-codewords, with even degree n-1
    // everywhere: eulerian. Walk circuits, lowest start vertex and lowest
    // unused neighbour first, and orient along the walk.
    std::vector<signed char> edge_used(static_cast<std::size_t>(n) << n, 0);
    auto used = [&](std::uint64_t u, int bit) -> signed char& {
        const std::uint64_t lower = std::min(u, u ^ (std::uint64_t{1} << bit));
        return edge_used[(static_cast<std::size_t>(bit) << n) + lower];
    };
    auto least_unused_from = [&](std::uint64_t v) -> std::int64_t {
        std::int64_t best = -1;
        for (int bit = 0; bit < n; ++bit) {
            const std::uint64_t u = v ^ (std::uint64_t{1} << bit);
            if (code.contains(u) || code.contains(v) || used(v, bit)) continue;
            if (best == -1 || static_cast<std::int64_t>(u) < best) best = static_cast<std::int64_t>(u);
        }
        return best;
    };

    for (std::uint64_t start = 0; start < vertices; ++start) {
        if (code.contains(start)) continue;
        if (least_unused_from(start) == -1) continue;

        std::vector<std::uint64_t> stack{start};
        std::vector<std::uint64_t> circuit;
        while (!stack.empty()) {
            const std::uint64_t v = stack.back();
            const std::int64_t u = least_unused_from(v);
            if (u == -1) {
                circuit.push_back(v);
                stack.pop_back();
            } else {
                used(v, __builtin_ctzll(v ^ static_cast<std::uint64_t>(u))) = 1;
                stack.push_back(static_cast<std::uint64_t>(u));
            }
        }
        std::reverse(circuit.begin(), circuit.end());
        for (std::size_t i = 0; i + 1 < circuit.size(); ++i) {
            const std::uint64_t a = circuit[i];
            const std::uint64_t b = circuit[i + 1];
            orientation.orient(a, __builtin_ctzll(a ^ b), b);
        }
    }

    orientation.verify_total();
    return orientation;
}

StrategyTable orientation_majority_strategy(const Orientation& orientation) {
    const int n = orientation.dimension();
    GameSpec game = GameSpec::majority(n);
    return StrategyTable::from_rule(game, "berlekamp", [&orientation, n](int player, const View& view) {
        std::uint64_t base = 0;
        for (const auto& [other, colour] : view.visible)
            base |= static_cast<std::uint64_t>(colour) << (n - other);
        const std::uint64_t own_bit = std::uint64_t{1} << (n - player);
        const std::uint64_t head = orientation.head(base, base | own_bit);
        return Response::guess(static_cast<Colour>((head >> (n - player)) & 1u));
    });
}

// ---------------------------------------------------------------------------
// Built-in registry
// ---------------------------------------------------------------------------

const std::vector<BuiltinStrategy>& builtin_strategies() {
    static const std::vector<BuiltinStrategy> list = {
        {"ebert3", "same-colour rule for the 3-player Ebert game (n=3, q=2)"},
        {"hamming", "Hamming-code strategy for the Ebert game (n=3, 7 or 15, q=2)"},
        {"cyclic3", "cyclic opposite-vote rule for the 3-player majority game (n=3, q=2)"},
        {"berlekamp", "cube-orientation strategy for the majority game (n=3 or 7, q=2)"},
        {"line-sum", "mod-q sum strategy for hats-on-a-line (n>=2)"},
        {"gray", "gray strategy for the new hats-on-a-line game (any n, q)"},
    };
    return list;
}

namespace {

int hamming_m_for(int n) {
    for (int m = 2; m <= 4; ++m)
        if ((1 << m) - 1 == n) return m;
    throw DomainError("strategy needs n in {3, 7, 15}");
}

void require_game(const GameSpec& game, const GameSpec& expected, const std::string& name) {
    if (!(game == expected))
        throw DomainError("strategy \"" + name + "\" does not apply to this game");
}

}  // namespace

StrategyTable make_builtin_strategy(const std::string& name, const GameSpec& game) {
    game.validate();
    if (name == "ebert3") {
        require_game(game, GameSpec::ebert(3), name);
        return ebert_three_player();
    }
    if (name == "hamming") {
        require_game(game, GameSpec::ebert(game.n), name);
        return covering_code_strategy(hamming_code(hamming_m_for(game.n)));
    }
    if (name == "cyclic3") {
        require_game(game, GameSpec::majority(3), name);
        return cyclic_majority_strategy();
    }
    if (name == "berlekamp") {
        require_game(game, GameSpec::majority(game.n), name);
        const int m = hamming_m_for(game.n);
        if (m > 3) throw DomainError("berlekamp strategy supports n in {3, 7}");
        return orientation_majority_strategy(berlekamp_orientation(m));
    }
    if (name == "line-sum") {
        require_game(game, GameSpec::line(game.n, game.q), name);
        return line_sum_strategy(game.n, game.q);
    }
    if (name == "gray") {
        require_game(game, GameSpec::new_line(game.n, game.q), name);
        return gray_strategy(game.n, game.q);
    }
    throw DomainError("unknown strategy: " + name);
}

}  // namespace hatlab
