#include "hatlab/search.hpp"

#include <algorithm>

namespace hatlab {

namespace {

constexpr std::uint64_t kProfileGuard = 1'000'000'000;

// (q+1)^a * 2^b, capped at the guard; returns nullopt when it exceeds it.
std::optional<std::uint64_t> guarded_space(std::uint64_t base_a, std::uint64_t a,
                                           std::uint64_t b) {
    unsigned __int128 space = 1;
    for (std::uint64_t i = 0; i < a; ++i) {
        space *= base_a;
        if (space > kProfileGuard) return std::nullopt;
    }
    for (std::uint64_t i = 0; i < b; ++i) {
        space *= 2;
        if (space > kProfileGuard) return std::nullopt;
    }
    return static_cast<std::uint64_t>(space);
}

// Per-configuration lookup tables for fast profile evaluation.
struct SequentialTables {
    int n;
    int q;
    std::uint64_t total;                      // q^n
    std::vector<std::uint32_t> ahead_rank;    // [r * n + (j-1)]: rank of (c_{j+1}..c_n)
    std::vector<signed char> own_colour;      // [r * n + (j-1)]: c_j
    std::vector<std::uint32_t> view_counts;   // q^{n-j} per player j

    SequentialTables(int n_, int q_) : n(n_), q(q_) {
        total = pow_u64(static_cast<std::uint64_t>(q), n);
        ahead_rank.resize(static_cast<std::size_t>(total) * n);
        own_colour.resize(static_cast<std::size_t>(total) * n);
        view_counts.resize(static_cast<std::size_t>(n));
        for (int j = 1; j <= n; ++j)
            view_counts[j - 1] = static_cast<std::uint32_t>(pow_u64(q, n - j));
        for (std::uint64_t r = 0; r < total; ++r) {
            std::uint64_t rest = r;
            // Digits from the last player backwards; suffix ranks accumulate.
            std::uint64_t suffix = 0;
            std::uint64_t place = 1;
            for (int j = n; j >= 1; --j) {
                const auto digit = static_cast<signed char>(rest % q);
                rest /= q;
                own_colour[r * n + (j - 1)] = digit;
                ahead_rank[r * n + (j - 1)] = static_cast<std::uint32_t>(suffix);
                suffix += static_cast<std::uint64_t>(digit) * place;
                place *= q;
            }
        }
    }

    // First guesser decides the game: win iff that guess is correct.
    std::uint64_t wins(const SequentialProfile& profile) const {
        std::uint64_t wins = 0;
        for (std::uint64_t r = 0; r < total; ++r) {
            const std::size_t base = static_cast<std::size_t>(r) * n;
            for (int j = 0; j < n; ++j) {
                const signed char s = profile.choice[j][ahead_rank[base + j]];
                if (s >= 0) {
                    if (s == own_colour[base + j]) ++wins;
                    break;
                }
            }
        }
        return wins;
    }
};

}  // namespace

SequentialProfile SequentialProfile::all_pass(int n, int q) {
    SequentialProfile profile;
    profile.n = n;
    profile.q = q;
    profile.choice.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        profile.choice[j - 1].assign(static_cast<std::size_t>(pow_u64(q, n - j)), -1);
    return profile;
}

StrategyTable sequential_profile_table(const SequentialProfile& profile, const std::string& name) {
    GameSpec game = GameSpec::new_line(profile.n, profile.q);
    const int q = profile.q;
    return StrategyTable::from_rule(game, name, [profile, q](int player, const View& view) {
        for (const Response& r : view.heard)
            if (!r.is_pass) return Response::pass();
        std::uint32_t rank = 0;
        for (const auto& [other, colour] : view.visible) {
            (void)other;
            rank = rank * static_cast<std::uint32_t>(q) + static_cast<std::uint32_t>(colour);
        }
        const signed char s = profile.choice[player - 1][rank];
        if (s < 0) return Response::pass();
        return Response::guess(s);
    });
}

// ---------------------------------------------------------------------------
// Sequential search
// ---------------------------------------------------------------------------

namespace {

struct SequentialSearch {
    int n;
    int q;
    SequentialTables tables;
    SequentialProfile profile;

    std::uint64_t examined = 0;
    std::uint64_t best_wins = 0;
    bool have_best = false;
    SequentialProfile best_profile;
    std::uint64_t best_max_passes = 0;

    // reachable[j-1][v]: bitmask of own colours consistent with play reaching
    // player j at ahead view v (maintained only by the pruned enumeration).
    std::vector<std::vector<std::uint16_t>> reachable;

    SequentialSearch(int n_, int q_)
        : n(n_), q(q_), tables(n_, q_), profile(SequentialProfile::all_pass(n_, q_)) {}

    void consider_leaf() {
        ++examined;
        const std::uint64_t wins = tables.wins(profile);
        std::uint64_t passes = 0;
        for (signed char s : profile.choice[0])
            if (s < 0) ++passes;
        if (!have_best || wins > best_wins) {
            have_best = true;
            best_wins = wins;
            best_profile = profile;
            best_max_passes = passes;
        } else if (wins == best_wins) {
            best_max_passes = std::max(best_max_passes, passes);
        }
    }

    // Full space: every (player, view) position over {pass, 0, .., q-1} in
    // lexicographic order (player-major, then view rank, pass lowest).
    void enumerate_all() {
        enumerate_all_at(0, 0);
    }

    void enumerate_all_at(int j, std::uint32_t v) {
        if (j == n) {
            consider_leaf();
            return;
        }
        if (v == tables.view_counts[j]) {
            enumerate_all_at(j + 1, 0);
            return;
        }
        for (int s = -1; s < q; ++s) {
            profile.choice[j][v] = static_cast<signed char>(s);
            enumerate_all_at(j, v + 1);
        }
        profile.choice[j][v] = -1;
    }

    // Restricted space: player 1 is unconstrained; a later player may guess
    // at a view only when exactly one own colour is consistent with reaching
    // it, so every guess made past the first player is correct.
    void enumerate_restricted() {
        reachable.resize(static_cast<std::size_t>(n));
        for (int j = 2; j <= n; ++j)
            reachable[j - 1].assign(tables.view_counts[j - 1], 0);
        enumerate_restricted_at(0, 0);
    }

    void compute_reachable(int j) {
        // reachable[j][w] for player j+1: colours g with f_j(g.w) = pass and
        // (j == 1 or g.w itself reachable).
        const std::uint32_t views = tables.view_counts[j];
        for (std::uint32_t w = 0; w < views; ++w) {
            std::uint16_t mask = 0;
            for (int g = 0; g < q; ++g) {
                const std::uint32_t prev = static_cast<std::uint32_t>(g) * views + w;
                if (profile.choice[j - 1][prev] != -1) continue;
                if (j >= 2 && reachable[j - 1][prev] == 0) continue;
                mask |= static_cast<std::uint16_t>(1u << g);
            }
            reachable[j][w] = mask;
        }
    }

    void enumerate_restricted_at(int j, std::uint32_t v) {
        if (j == n) {
            consider_leaf();
            return;
        }
        if (v == tables.view_counts[j]) {
            if (j + 1 < n) compute_reachable(j + 1);
            enumerate_restricted_at(j + 1, 0);
            return;
        }
        if (j == 0) {
            for (int s = -1; s < q; ++s) {
                profile.choice[0][v] = static_cast<signed char>(s);
                enumerate_restricted_at(0, v + 1);
            }
            profile.choice[0][v] = -1;
            return;
        }
        const std::uint16_t mask = reachable[j][v];
        profile.choice[j][v] = -1;  // pass, always allowed (and canonical when unreachable)
        enumerate_restricted_at(j, v + 1);
        if (mask != 0 && (mask & (mask - 1)) == 0) {
            profile.choice[j][v] = static_cast<signed char>(__builtin_ctz(mask));
            enumerate_restricted_at(j, v + 1);
            profile.choice[j][v] = -1;
        }
    }
};

void sequential_space_guard(int n, int q, bool prune) {
    // Unpruned: (q+1)^(q^{n-1}+...+1). Pruned bound: (q+1)^(q^{n-1}) times
    // two choices per later view.
    std::uint64_t first = pow_u64(q, n - 1);
    std::uint64_t later = 0;
    for (int j = 2; j <= n; ++j) later += pow_u64(q, n - j);
    auto space = prune ? guarded_space(static_cast<std::uint64_t>(q + 1), first, later)
                       : guarded_space(static_cast<std::uint64_t>(q + 1), first + later, 0);
    if (!space)
        throw CapacityError("sequential strategy space exceeds the 1e9 enumeration guard");
}

// Exact unrestricted profile count; saturates at uint64 max (only relevant
// far beyond the guards).
std::uint64_t sequential_unpruned_size(int n, int q) {
    std::uint64_t positions = 0;
    for (int j = 1; j <= n; ++j) positions += pow_u64(q, n - j);
    unsigned __int128 space = 1;
    for (std::uint64_t i = 0; i < positions; ++i) {
        space *= static_cast<unsigned __int128>(q + 1);
        if (space > ~std::uint64_t{0}) return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(space);
}

}  // namespace

SearchResult search_optimal_sequential(int n, int q, bool prune) {
    GameSpec game = GameSpec::new_line(n, q);
    game.validate();
    sequential_space_guard(n, q, prune);

    SequentialSearch search(n, q);
    if (prune)
        search.enumerate_restricted();
    else
        search.enumerate_all();

    const std::uint64_t unpruned_total = sequential_unpruned_size(n, q);
    SearchResult result{.optimum = Rational::of(static_cast<std::int64_t>(search.best_wins),
                                                static_cast<std::int64_t>(search.tables.total)),
                        .wins = search.best_wins,
                        .total = search.tables.total,
                        .witness = sequential_profile_table(search.best_profile, "witness"),
                        .strategies_examined = search.examined,
                        .pruned = prune ? unpruned_total - search.examined : 0};
    return result;
}

BetaResult max_first_player_passes(int n, int q) {
    GameSpec game = GameSpec::new_line(n, q);
    game.validate();
    sequential_space_guard(n, q, /*prune=*/true);

    SequentialSearch search(n, q);
    search.enumerate_restricted();

    BetaResult result;
    result.n = n;
    result.q = q;
    result.beta = search.best_max_passes;
    result.bound = pow_u64(q, n - 1) - pow_u64(q - 1, n - 1);
    result.optimum = Rational::of(static_cast<std::int64_t>(search.best_wins),
                                  static_cast<std::int64_t>(search.tables.total));
    return result;
}

// ---------------------------------------------------------------------------
// Simultaneous search
// ---------------------------------------------------------------------------

namespace {

struct SimultaneousSearch {
    int n;
    int q;
    Objective objective;
    std::uint64_t total;                     // q^n
    std::uint32_t views;                     // q^{n-1} per player
    std::vector<std::uint32_t> view_rank;    // [r * n + j]: rank of the other players' colours
    std::vector<signed char> own_colour;     // [r * n + j]
    std::vector<std::vector<signed char>> choice;

    std::uint64_t examined = 0;
    std::uint64_t best_wins = 0;
    bool have_best = false;
    std::vector<std::vector<signed char>> best_choice;

    SimultaneousSearch(int n_, int q_, Objective objective_)
        : n(n_), q(q_), objective(objective_) {
        total = pow_u64(static_cast<std::uint64_t>(q), n);
        views = static_cast<std::uint32_t>(pow_u64(q, n - 1));
        view_rank.resize(static_cast<std::size_t>(total) * n);
        own_colour.resize(static_cast<std::size_t>(total) * n);
        for (std::uint64_t r = 0; r < total; ++r) {
            Configuration cfg = unrank_configuration(r, n, q);
            for (int j = 0; j < n; ++j) {
                std::uint32_t rank = 0;
                for (int i = 0; i < n; ++i) {
                    if (i == j) continue;
                    rank = rank * static_cast<std::uint32_t>(q) +
                           static_cast<std::uint32_t>(cfg[static_cast<std::size_t>(i)]);
                }
                view_rank[r * n + j] = rank;
                own_colour[r * n + j] = static_cast<signed char>(cfg[static_cast<std::size_t>(j)]);
            }
        }
        choice.assign(static_cast<std::size_t>(n), std::vector<signed char>(views, 0));
    }

    bool pass_allowed() const { return objective == Objective::OneCorrectNoneWrong; }

    std::uint64_t wins_of_current() const {
        std::uint64_t wins = 0;
        for (std::uint64_t r = 0; r < total; ++r) {
            const std::size_t base = static_cast<std::size_t>(r) * n;
            int correct = 0;
            bool wrong = false;
            for (int j = 0; j < n; ++j) {
                const signed char s = choice[j][view_rank[base + j]];
                if (s < 0) continue;
                if (s == own_colour[base + j])
                    ++correct;
                else
                    wrong = true;
            }
            const bool win = objective == Objective::OneCorrectNoneWrong
                                 ? correct >= 1 && !wrong
                                 : 2 * correct > n;
            if (win) ++wins;
        }
        return wins;
    }

    void enumerate(int j, std::uint32_t v) {
        if (j == n) {
            ++examined;
            const std::uint64_t wins = wins_of_current();
            if (!have_best || wins > best_wins) {
                have_best = true;
                best_wins = wins;
                best_choice = choice;
            }
            return;
        }
        if (v == views) {
            enumerate(j + 1, 0);
            return;
        }
        for (int s = pass_allowed() ? -1 : 0; s < q; ++s) {
            choice[j][v] = static_cast<signed char>(s);
            enumerate(j, v + 1);
        }
        choice[j][v] = static_cast<signed char>(pass_allowed() ? -1 : 0);
    }
};

}  // namespace

SearchResult search_optimal_simultaneous(int n, int q, Objective objective) {
    if (objective == Objective::CountCorrect)
        throw DomainError("simultaneous search supports the Ebert and majority objectives");
    GameSpec game{n, q, Visibility::AllOthers, Protocol::Simultaneous, objective};
    game.validate();

    const std::uint64_t symbols = objective == Objective::OneCorrectNoneWrong
                                      ? static_cast<std::uint64_t>(q + 1)
                                      : static_cast<std::uint64_t>(q);
    const std::uint64_t positions = static_cast<std::uint64_t>(n) * pow_u64(q, n - 1);
    if (!guarded_space(symbols, positions, 0))
        throw CapacityError("simultaneous strategy space exceeds the 1e9 enumeration guard");

    SimultaneousSearch search(n, q, objective);
    search.enumerate(0, 0);

    const int qq = q;
    auto best = search.best_choice;
    StrategyTable witness =
        StrategyTable::from_rule(game, "witness", [best, qq](int player, const View& view) {
            std::uint32_t rank = 0;
            for (const auto& [other, colour] : view.visible) {
                (void)other;
                rank = rank * static_cast<std::uint32_t>(qq) + static_cast<std::uint32_t>(colour);
            }
            const signed char s = best[static_cast<std::size_t>(player - 1)][rank];
            if (s < 0) return Response::pass();
            return Response::guess(s);
        });

    return SearchResult{.optimum = Rational::of(static_cast<std::int64_t>(search.best_wins),
                                                static_cast<std::int64_t>(search.total)),
                        .wins = search.best_wins,
                        .total = search.total,
                        .witness = std::move(witness),
                        .strategies_examined = search.examined,
                        .pruned = 0};
}

// ---------------------------------------------------------------------------
// Restricted check
// ---------------------------------------------------------------------------

bool verify_restricted(const StrategyTable& strategy) {
    const GameSpec& game = strategy.game();
    if (!(game == GameSpec::new_line(game.n, game.q)))
        throw DomainError("restricted strategies are defined for the new hats-on-a-line game");
    const std::uint64_t total = game.configuration_count();
    for (std::uint64_t k = 0; k < total; ++k) {
        Configuration cfg = unrank_configuration(k, game.n, game.q);
        Trace trace = play(game, strategy, cfg);
        for (int player = 2; player <= game.n; ++player) {
            const Response& r = trace.responses[static_cast<std::size_t>(player - 1)];
            if (!r.is_pass && r.colour != cfg[static_cast<std::size_t>(player - 1)]) return false;
        }
    }
    return true;
}

}  // namespace hatlab
