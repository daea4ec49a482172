#include "hatlab/eval.hpp"

#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

namespace hatlab {

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

Rational Rational::of(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw DomainError("rational denominator must be positive");
    if (num < 0) throw DomainError("rational numerator must be nonnegative");
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// Exact evaluation
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kExactGuard = 100'000'000;
constexpr std::uint64_t kTraceGuard = 4096;

struct Tally {
    std::uint64_t wins = 0;
    std::uint64_t all_correct = 0;
    std::uint64_t correct_sum = 0;
};

Tally tally_range(const GameSpec& game, const StrategyTable& strategy, std::uint64_t begin,
                  std::uint64_t end) {
    Tally t;
    for (std::uint64_t k = begin; k < end; ++k) {
        Trace trace = play(game, strategy, unrank_configuration(k, game.n, game.q));
        if (trace.win.value_or(false)) ++t.wins;
        if (trace.correct_count == game.n) ++t.all_correct;
        t.correct_sum += static_cast<std::uint64_t>(trace.correct_count);
    }
    return t;
}

EvalReport report_from_tally(const GameSpec& game, const StrategyTable& strategy, const Tally& t,
                             std::uint64_t total) {
    EvalReport report;
    report.game = game;
    report.strategy = strategy.name();
    report.total = total;
    if (game.objective == Objective::CountCorrect) {
        report.wins = t.all_correct;
        report.mean_correct = Rational::of(static_cast<std::int64_t>(t.correct_sum),
                                           static_cast<std::int64_t>(total));
    } else {
        report.wins = t.wins;
    }
    report.probability = Rational::of(static_cast<std::int64_t>(report.wins),
                                      static_cast<std::int64_t>(total));
    return report;
}

}  // namespace

EvalReport evaluate_exact(const GameSpec& game, const StrategyTable& strategy, int workers) {
    game.validate();
    if (workers < 1) throw DomainError("worker count must be >= 1");
    const std::uint64_t total = game.configuration_count();
    if (total > kExactGuard)
        throw CapacityError("exact evaluation refuses q^n > 1e8 configurations");

    if (workers == 1 || total < 2 * static_cast<std::uint64_t>(workers)) {
        return report_from_tally(game, strategy, tally_range(game, strategy, 0, total), total);
    }

    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    std::vector<Tally> parts(w);
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t begin = total * i / w;
        const std::uint64_t end = total * (i + 1) / w;
        threads.emplace_back([&, i, begin, end] {
            parts[i] = tally_range(game, strategy, begin, end);
        });
    }
    for (auto& th : threads) th.join();

    Tally merged;  // merged in chunk order; addition is schedule-independent
    for (const Tally& part : parts) {
        merged.wins += part.wins;
        merged.all_correct += part.all_correct;
        merged.correct_sum += part.correct_sum;
    }
    return report_from_tally(game, strategy, merged, total);
}

EvalReport trace_table(const GameSpec& game, const StrategyTable& strategy) {
    game.validate();
    const std::uint64_t total = game.configuration_count();
    if (total > kTraceGuard) throw CapacityError("trace tables refuse q^n > 4096 configurations");

    Tally t;
    std::vector<Trace> traces;
    traces.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t k = 0; k < total; ++k) {
        Trace trace = play(game, strategy, unrank_configuration(k, game.n, game.q));
        if (trace.win.value_or(false)) ++t.wins;
        if (trace.correct_count == game.n) ++t.all_correct;
        t.correct_sum += static_cast<std::uint64_t>(trace.correct_count);
        traces.push_back(std::move(trace));
    }
    EvalReport report = report_from_tally(game, strategy, t, total);
    report.traces = std::move(traces);
    return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t trial_configuration_rank(std::uint64_t seed, std::uint64_t trial, std::uint64_t total) {
    const std::uint64_t value = mix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ull);
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(value) * static_cast<unsigned __int128>(total)) >> 64);
}

McReport evaluate_monte_carlo(const GameSpec& game, const StrategyTable& strategy,
                              std::uint64_t trials, std::uint64_t seed, int workers) {
    game.validate();
    if (trials == 0) throw DomainError("trial count must be >= 1");
    if (workers < 1) throw DomainError("worker count must be >= 1");
    const std::uint64_t total = game.configuration_count();

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t wins = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            const std::uint64_t k = trial_configuration_rank(seed, t, total);
            Trace trace = play(game, strategy, unrank_configuration(k, game.n, game.q));
            const bool won = game.objective == Objective::CountCorrect
                                 ? trace.correct_count == game.n
                                 : trace.win.value_or(false);
            if (won) ++wins;
        }
        return wins;
    };

    std::uint64_t wins = 0;
    if (workers == 1 || trials < 2 * static_cast<std::uint64_t>(workers)) {
        wins = run_range(0, trials);
    } else {
        const std::uint64_t w = static_cast<std::uint64_t>(workers);
        std::vector<std::uint64_t> parts(w, 0);
        std::vector<std::thread> threads;
        threads.reserve(w);
        for (std::uint64_t i = 0; i < w; ++i) {
            const std::uint64_t begin = trials * i / w;
            const std::uint64_t end = trials * (i + 1) / w;
            threads.emplace_back([&, i, begin, end] { parts[i] = run_range(begin, end); });
        }
        for (auto& th : threads) th.join();
        for (std::uint64_t part : parts) wins += part;
    }

    McReport report;
    report.trials = trials;
    report.seed = seed;
    report.wins = wins;
    report.estimate = static_cast<double>(wins) / static_cast<double>(trials);
    report.half_width_95 =
        1.96 * std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(trials));
    return report;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string colour_name(Colour c) {
    if (c == 0) return "gray";
    if (c == 1) return "brown";
    return "c" + std::to_string(c);
}

nlohmann::ordered_json game_json(const GameSpec& game) {
    return {{"n", game.n},
            {"q", game.q},
            {"visibility", to_token(game.visibility)},
            {"protocol", to_token(game.protocol)},
            {"objective", to_token(game.objective)}};
}

namespace {

nlohmann::ordered_json rational_json(const Rational& r) {
    return {{"num", r.num}, {"den", r.den}};
}

std::string outcome_text(const GameSpec& game, const Trace& trace) {
    if (game.objective == Objective::CountCorrect) return std::to_string(trace.correct_count);
    return *trace.win ? "win" : "lose";
}

}  // namespace

nlohmann::ordered_json report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["game"] = game_json(report.game);
    j["strategy"] = report.strategy;
    j["wins"] = report.wins;
    j["total"] = report.total;
    j["probability"] = rational_json(report.probability);
    if (report.mean_correct) j["mean_correct"] = rational_json(*report.mean_correct);
    if (report.traces) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const Trace& trace : *report.traces) {
            nlohmann::ordered_json row;
            row["configuration"] = format_configuration(trace.configuration, report.game.q);
            std::string responses;
            for (const Response& r : trace.responses) responses.push_back(r.symbol());
            row["responses"] = responses;
            row["correct_count"] = trace.correct_count;
            row["outcome"] = outcome_text(report.game, trace);
            rows.push_back(std::move(row));
        }
        j["traces"] = std::move(rows);
    }
    return j;
}

nlohmann::ordered_json mc_json(const GameSpec& game, const std::string& strategy,
                               const McReport& report) {
    nlohmann::ordered_json j;
    j["game"] = game_json(game);
    j["strategy"] = strategy;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["wins"] = report.wins;
    j["estimate"] = report.estimate;
    j["half_width_95"] = report.half_width_95;
    return j;
}

std::string trace_csv(const EvalReport& report) {
    if (!report.traces) throw DomainError("report carries no traces");
    const int n = report.game.n;
    std::ostringstream out;
    out << "configuration";
    for (int i = 1; i <= n; ++i) out << ",r" << i;
    for (int i = 1; i <= n; ++i) out << ",correct" << i;
    out << ",outcome\n";
    for (const Trace& trace : *report.traces) {
        out << format_configuration(trace.configuration, report.game.q);
        for (const Response& r : trace.responses) out << ',' << r.symbol();
        for (int i = 1; i <= n; ++i) out << ',' << (trace.response_correct(i) ? 1 : 0);
        out << ',' << outcome_text(report.game, trace) << '\n';
    }
    return out.str();
}

namespace {

std::string summary_line(const EvalReport& report) {
    std::ostringstream out;
    out << "wins " << report.wins << "/" << report.total << "  probability "
        << report.probability.str();
    if (report.mean_correct) out << "  mean_correct " << report.mean_correct->str();
    out << '\n';
    return out.str();
}

}  // namespace

std::string render_table(const EvalReport& report) {
    std::ostringstream out;
    const GameSpec& game = report.game;
    out << "game " << to_token(game.visibility) << " " << to_token(game.protocol) << " "
        << to_token(game.objective) << "  n=" << game.n << " q=" << game.q << "  strategy "
        << report.strategy << '\n';
    if (!report.traces) {
        out << summary_line(report);
        return out.str();
    }

    // Column width fits the widest colour word plus the correctness mark.
    std::size_t width = 4;  // "gray"
    for (int c = 0; c < game.q; ++c) width = std::max(width, colour_name(c).size());
    width += 1;

    auto pad = [width](const std::string& s) {
        std::string cell = s;
        cell.resize(width, ' ');
        return cell;
    };

    for (const Trace& trace : *report.traces) {
        for (int i = 1; i <= game.n; ++i)
            out << pad(colour_name(trace.configuration[static_cast<std::size_t>(i - 1)])) << ' ';
        out << "| ";
        for (int i = 1; i <= game.n; ++i) {
            const Response& r = trace.responses[static_cast<std::size_t>(i - 1)];
            std::string cell = r.is_pass ? "-" : colour_name(r.colour);
            if (trace.response_correct(i)) cell += '*';
            out << pad(cell) << ' ';
        }
        out << "| " << outcome_text(game, trace) << '\n';
    }
    out << summary_line(report);
    return out.str();
}

std::string mc_csv(const McReport& report) {
    std::ostringstream out;
    out << "trials,seed,wins,estimate,half_width_95\n";
    out << report.trials << ',' << report.seed << ',' << report.wins << ','
        << std::setprecision(17) << report.estimate << ',' << report.half_width_95 << '\n';
    return out.str();
}

std::string render_mc(const GameSpec& game, const std::string& strategy, const McReport& report) {
    std::ostringstream out;
    out << "game " << to_token(game.visibility) << " " << to_token(game.protocol) << " "
        << to_token(game.objective) << "  n=" << game.n << " q=" << game.q << "  strategy "
        << strategy << '\n';
    out << "trials " << report.trials << "  seed " << report.seed << "  wins " << report.wins
        << '\n';
    out << std::setprecision(6) << std::fixed << "estimate " << report.estimate << " +/- "
        << report.half_width_95 << " (95%)\n";
    return out.str();
}

}  // namespace hatlab
