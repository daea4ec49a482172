#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/stat.h>

#include "CLI11.hpp"

#include "hatlab/codes.hpp"
#include "hatlab/eval.hpp"
#include "hatlab/search.hpp"
#include "hatlab/strategies.hpp"

namespace {

using namespace hatlab;

enum class Format { Table, Json, Csv };

struct Options {
    std::string game;
    int n = 0;
    int q = 2;
    std::string strategy;
    Format format = Format::Table;
    bool exact = false;
    bool mc = false;
    std::uint64_t trials = 0;
    std::int64_t seed = -1;
    bool seed_set = false;
    bool prune = false;
    std::string objective;
    int m = 0;
    int radius = 1;
    std::string file;
    std::string out;
    int workers = 1;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

GameSpec game_by_name(const std::string& name, int n, int q) {
    if (n < 1) throw UsageError("player count -n must be >= 1");
    if (name == "ebert") return GameSpec::ebert(n, q);
    if (name == "majority") return GameSpec::majority(n, q);
    if (name == "line") return GameSpec::line(n, q);
    if (name == "newline") return GameSpec::new_line(n, q);
    throw UsageError("unknown game \"" + name + "\" (ebert, majority, line, newline)");
}

bool file_exists(const std::string& path) {
    struct stat st{};
    return ::stat(path.c_str(), &st) == 0;
}

StrategyTable resolve_strategy(const std::string& selector, const GameSpec& game) {
    if (file_exists(selector)) {
        StrategyTable table = load_strategy_file(selector);
        if (!(table.game() == game))
            throw FormatError("strategy file \"" + selector + "\" was written for a different game");
        return table;
    }
    try {
        return make_builtin_strategy(selector, game);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

void add_format_flags(CLI::App* cmd, Options& opt) {
    cmd->fallthrough();  // global options such as --workers may follow the subcommand
    std::map<std::string, Format> names{
        {"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};
    cmd->add_option("--format", opt.format, "output format")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    cmd->add_flag_callback("--json", [&opt] { opt.format = Format::Json; }, "shorthand for --format json");
    cmd->add_flag_callback("--csv", [&opt] { opt.format = Format::Csv; }, "shorthand for --format csv");
    cmd->add_flag_callback("--table", [&opt] { opt.format = Format::Table; }, "shorthand for --format table");
}

void add_game_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--game", opt.game, "ebert | majority | line | newline")->required();
    cmd->add_option("-n,--players", opt.n, "player count")->required();
    cmd->add_option("-q,--colours", opt.q, "colour count (default 2)");
    cmd->add_option("--strategy", opt.strategy, "built-in strategy name or strategy file path")
        ->required();
}

void emit(const std::string& text) { std::cout << text; }
void emit_json(const nlohmann::ordered_json& j) { std::cout << j.dump() << '\n'; }

void write_out_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write file: " + path);
    out << text;
}

int run_evaluate(const Options& opt, bool force_mc) {
    GameSpec game = game_by_name(opt.game, opt.n, opt.q);
    StrategyTable strategy = resolve_strategy(opt.strategy, game);

    const bool monte_carlo = force_mc || opt.mc;
    if (monte_carlo && opt.exact) throw UsageError("choose one of --exact and --mc");
    if (monte_carlo) {
        if (opt.trials == 0) throw UsageError("--trials is required for simulation");
        if (!opt.seed_set) throw UsageError("--seed is required for simulation (no implicit seeds)");
        McReport report = evaluate_monte_carlo(game, strategy, opt.trials,
                                               static_cast<std::uint64_t>(opt.seed), opt.workers);
        switch (opt.format) {
            case Format::Json: emit_json(mc_json(game, strategy.name(), report)); break;
            case Format::Csv: emit(mc_csv(report)); break;
            case Format::Table: emit(render_mc(game, strategy.name(), report)); break;
        }
        return 0;
    }

    EvalReport report = evaluate_exact(game, strategy, opt.workers);
    switch (opt.format) {
        case Format::Json: emit_json(report_json(report)); break;
        case Format::Csv: {
            std::string csv = "wins,total,probability_num,probability_den\n" +
                              std::to_string(report.wins) + "," + std::to_string(report.total) +
                              "," + std::to_string(report.probability.num) + "," +
                              std::to_string(report.probability.den) + "\n";
            emit(csv);
            break;
        }
        case Format::Table: emit(render_table(report)); break;
    }
    return 0;
}

int run_trace(const Options& opt) {
    GameSpec game = game_by_name(opt.game, opt.n, opt.q);
    StrategyTable strategy = resolve_strategy(opt.strategy, game);
    EvalReport report = trace_table(game, strategy);
    switch (opt.format) {
        case Format::Json: emit_json(report_json(report)); break;
        case Format::Csv: emit(trace_csv(report)); break;
        case Format::Table: emit(render_table(report)); break;
    }
    return 0;
}

nlohmann::ordered_json search_json(const SearchResult& result) {
    nlohmann::ordered_json j;
    j["optimum"] = {{"num", result.optimum.num}, {"den", result.optimum.den}};
    j["wins"] = result.wins;
    j["total"] = result.total;
    j["strategies_examined"] = result.strategies_examined;
    j["pruned"] = result.pruned;
    j["witness"] = strategy_to_string(result.witness);
    return j;
}

int emit_search_result(const Options& opt, const SearchResult& result) {
    if (!opt.out.empty()) write_out_file(opt.out, strategy_to_string(result.witness));
    switch (opt.format) {
        case Format::Json: emit_json(search_json(result)); break;
        case Format::Csv:
            emit("optimum_num,optimum_den,wins,total,strategies_examined,pruned\n" +
                 std::to_string(result.optimum.num) + "," + std::to_string(result.optimum.den) +
                 "," + std::to_string(result.wins) + "," + std::to_string(result.total) + "," +
                 std::to_string(result.strategies_examined) + "," + std::to_string(result.pruned) +
                 "\n");
            break;
        case Format::Table:
            emit("optimum " + result.optimum.str() + " (" + std::to_string(result.wins) + "/" +
                 std::to_string(result.total) + ")\nstrategies examined " +
                 std::to_string(result.strategies_examined) + ", pruned " +
                 std::to_string(result.pruned) + "\n" +
                 (opt.out.empty() ? "witness:\n" + strategy_to_string(result.witness)
                                  : "witness written to " + opt.out + "\n"));
            break;
    }
    return 0;
}

int run_search_sequential(const Options& opt) {
    if (opt.n < 1) throw UsageError("player count -n must be >= 1");
    return emit_search_result(opt, search_optimal_sequential(opt.n, opt.q, opt.prune));
}

int run_search_simultaneous(const Options& opt) {
    if (opt.n < 1) throw UsageError("player count -n must be >= 1");
    Objective objective;
    if (opt.objective == "ebert" || opt.objective == "one-correct-none-wrong")
        objective = Objective::OneCorrectNoneWrong;
    else if (opt.objective == "majority" || opt.objective == "majority-correct")
        objective = Objective::MajorityCorrect;
    else
        throw UsageError("unknown objective \"" + opt.objective + "\" (ebert, majority)");
    return emit_search_result(opt, search_optimal_simultaneous(opt.n, opt.q, objective));
}

int run_search_beta(const Options& opt) {
    if (opt.n < 1) throw UsageError("player count -n must be >= 1");
    BetaResult result = max_first_player_passes(opt.n, opt.q);
    switch (opt.format) {
        case Format::Json: {
            nlohmann::ordered_json j;
            j["n"] = result.n;
            j["q"] = result.q;
            j["beta"] = result.beta;
            j["bound"] = result.bound;
            emit_json(j);
            break;
        }
        case Format::Csv:
            emit("n,q,beta,bound\n" + std::to_string(result.n) + "," + std::to_string(result.q) +
                 "," + std::to_string(result.beta) + "," + std::to_string(result.bound) + "\n");
            break;
        case Format::Table:
            emit("beta " + std::to_string(result.beta) + "  bound " + std::to_string(result.bound) +
                 "  (optimum " + result.optimum.str() + ")\n");
            break;
    }
    return 0;
}

int run_codes_hamming(const Options& opt) {
    Code code = hamming_code(opt.m);
    std::ostringstream text;
    save_code(code, text);
    if (!opt.out.empty()) write_out_file(opt.out, text.str());
    if (opt.format == Format::Json) {
        nlohmann::ordered_json j;
        j["n"] = code.n;
        j["q"] = code.q;
        j["size"] = code.words.size();
        j["radius"] = *code.radius;
        emit_json(j);
    } else if (opt.out.empty()) {
        emit(text.str());
    } else {
        emit("hamming code n=" + std::to_string(code.n) + " size " +
             std::to_string(code.words.size()) + " written to " + opt.out + "\n");
    }
    return 0;
}

int run_codes_verify(const Options& opt) {
    Code code = load_code_file(opt.file);
    CoveringCheck check = covering_check(code, opt.radius);
    if (opt.format == Format::Json) {
        nlohmann::ordered_json j;
        j["n"] = code.n;
        j["q"] = code.q;
        j["size"] = code.words.size();
        j["radius"] = opt.radius;
        j["covered"] = check.covered;
        if (check.witness)
            j["witness"] = format_configuration(
                unrank_configuration(*check.witness, code.n, code.q), code.q);
        emit_json(j);
    } else if (check.covered) {
        emit("covered: every word is within distance " + std::to_string(opt.radius) +
             " of a codeword\n");
    } else {
        emit("not covered: witness " +
             format_configuration(unrank_configuration(*check.witness, code.n, code.q), code.q) +
             "\n");
    }
    return 0;
}

int run_codes_min(const Options& opt) {
    MinCoveringResult result = min_covering_code(opt.n, opt.radius);
    std::ostringstream text;
    save_code(result.witness, text);
    if (!opt.out.empty()) write_out_file(opt.out, text.str());
    if (opt.format == Format::Json) {
        nlohmann::ordered_json j;
        j["n"] = opt.n;
        j["r"] = opt.radius;
        j["size"] = result.size;
        nlohmann::ordered_json words = nlohmann::ordered_json::array();
        for (std::uint64_t w : result.witness.words)
            words.push_back(format_configuration(unrank_configuration(w, opt.n, 2), 2));
        j["witness"] = words;
        emit_json(j);
    } else if (opt.format == Format::Csv) {
        emit("n,r,size\n" + std::to_string(opt.n) + "," + std::to_string(opt.radius) + "," +
             std::to_string(result.size) + "\n");
    } else {
        emit("minimum covering code size " + std::to_string(result.size) + " at n=" +
             std::to_string(opt.n) + ", r=" + std::to_string(opt.radius) + "\n" + text.str());
    }
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"hatlab: hat-game strategies, exact evaluation, and strategy-space search"};
    app.require_subcommand(0, 1);

    Options opt;
    if (const char* env = std::getenv("HATLAB_WORKERS")) {
        try {
            opt.workers = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw UsageError("HATLAB_WORKERS is not a number");
        }
    }
    app.add_option("--workers", opt.workers, "worker thread cap (default HATLAB_WORKERS or 1)");
    bool list_strategies = false;
    app.add_flag("--list-strategies", list_strategies, "list built-in strategies and exit");

    CLI::App* evaluate = app.add_subcommand("evaluate", "exact or Monte Carlo strategy evaluation");
    add_game_options(evaluate, opt);
    add_format_flags(evaluate, opt);
    evaluate->add_flag("--exact", opt.exact, "exact sweep over all configurations (default)");
    evaluate->add_flag("--mc", opt.mc, "Monte Carlo instead of the exact sweep");
    evaluate->add_option("--trials", opt.trials, "Monte Carlo trial count");
    evaluate->add_option("--seed", opt.seed, "Monte Carlo seed")->each([&opt](const std::string&) {
        opt.seed_set = true;
    });

    CLI::App* trace = app.add_subcommand("trace", "full per-configuration trace table");
    add_game_options(trace, opt);
    add_format_flags(trace, opt);

    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo simulation");
    add_game_options(simulate, opt);
    add_format_flags(simulate, opt);
    simulate->add_option("--trials", opt.trials, "trial count")->required();
    simulate->add_option("--seed", opt.seed, "seed (required; no implicit seeds)")
        ->each([&opt](const std::string&) { opt.seed_set = true; });

    CLI::App* search = app.add_subcommand("search", "exhaustive strategy-space search");
    search->require_subcommand(1);
    search->fallthrough();
    CLI::App* seq = search->add_subcommand("sequential", "new hats-on-a-line optimum");
    seq->add_option("-n,--players", opt.n, "player count")->required();
    seq->add_option("-q,--colours", opt.q, "colour count (default 2)");
    seq->add_flag("--prune", opt.prune, "enumerate restricted strategies only");
    add_format_flags(seq, opt);
    seq->add_option("--out", opt.out, "write the witness strategy to a file");

    CLI::App* sim = search->add_subcommand("simultaneous", "Ebert/majority optimum");
    sim->add_option("-n,--players", opt.n, "player count")->required();
    sim->add_option("-q,--colours", opt.q, "colour count (default 2)");
    sim->add_option("--objective", opt.objective, "ebert | majority")->required();
    add_format_flags(sim, opt);
    sim->add_option("--out", opt.out, "write the witness strategy to a file");

    CLI::App* beta = search->add_subcommand("beta", "max first-player pass count at the optimum");
    beta->add_option("-n,--players", opt.n, "player count")->required();
    beta->add_option("-q,--colours", opt.q, "colour count (default 2)");
    add_format_flags(beta, opt);

    CLI::App* codes = app.add_subcommand("codes", "covering-code construction and verification");
    codes->require_subcommand(1);
    codes->fallthrough();
    CLI::App* hamming = codes->add_subcommand("hamming", "construct a Hamming code");
    hamming->add_option("-m", opt.m, "parameter m in 2..4 (n = 2^m - 1)")->required();
    hamming->add_option("--out", opt.out, "write the code to a file");
    add_format_flags(hamming, opt);

    CLI::App* verify = codes->add_subcommand("verify", "verify a covering radius");
    verify->add_option("--file", opt.file, "code file")->required();
    verify->add_option("-r,--radius", opt.radius, "radius to verify (default 1)");
    add_format_flags(verify, opt);

    CLI::App* minimum = codes->add_subcommand("min", "minimal binary covering code (n <= 6)");
    minimum->add_option("-n,--length", opt.n, "word length")->required();
    minimum->add_option("-r,--radius", opt.radius, "radius (must be 1)");
    minimum->add_option("--out", opt.out, "write the witness code to a file");
    add_format_flags(minimum, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "USAGE: " << e.what() << '\n';
        return 2;
    }

    if (list_strategies) {
        for (const BuiltinStrategy& s : builtin_strategies())
            std::cout << s.name << "  " << s.summary << '\n';
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << "USAGE: a subcommand is required (see --help)\n";
        return 2;
    }

    if (evaluate->parsed()) return run_evaluate(opt, /*force_mc=*/false);
    if (trace->parsed()) return run_trace(opt);
    if (simulate->parsed()) return run_evaluate(opt, /*force_mc=*/true);
    if (search->parsed()) {
        if (seq->parsed()) return run_search_sequential(opt);
        if (sim->parsed()) return run_search_simultaneous(opt);
        if (beta->parsed()) return run_search_beta(opt);
    }
    if (codes->parsed()) {
        if (hamming->parsed()) return run_codes_hamming(opt);
        if (verify->parsed()) return run_codes_verify(opt);
        if (minimum->parsed()) return run_codes_min(opt);
    }
    std::cerr << "USAGE: a subcommand is required (see --help)\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "USAGE: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "CAPACITY: " << e.what() << '\n';
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "FORMAT: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "ERROR: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ERROR: " << e.what() << '\n';
        return 1;
    }
}
