#include "hatlab/game.hpp"

#include <limits>

namespace hatlab {

namespace {

constexpr std::uint64_t kRankLimit = std::numeric_limits<std::uint64_t>::max();

}  // namespace

// ---------------------------------------------------------------------------
// Enum tokens
// ---------------------------------------------------------------------------

std::string to_token(Visibility v) {
    return v == Visibility::AllOthers ? "all-others" : "ahead-only";
}

std::string to_token(Protocol p) {
    return p == Protocol::Simultaneous ? "simultaneous" : "sequential";
}

std::string to_token(Objective o) {
    switch (o) {
        case Objective::OneCorrectNoneWrong: return "one-correct-none-wrong";
        case Objective::MajorityCorrect: return "majority-correct";
        case Objective::CountCorrect: return "count-correct";
    }
    throw DomainError("unknown objective");
}

Visibility parse_visibility(const std::string& token) {
    if (token == "all-others") return Visibility::AllOthers;
    if (token == "ahead-only") return Visibility::AheadOnly;
    throw FormatError("unknown visibility token: " + token);
}

Protocol parse_protocol(const std::string& token) {
    if (token == "simultaneous") return Protocol::Simultaneous;
    if (token == "sequential") return Protocol::SequentialFullAudition;
    throw FormatError("unknown protocol token: " + token);
}

Objective parse_objective(const std::string& token) {
    if (token == "one-correct-none-wrong") return Objective::OneCorrectNoneWrong;
    if (token == "majority-correct") return Objective::MajorityCorrect;
    if (token == "count-correct") return Objective::CountCorrect;
    throw FormatError("unknown objective token: " + token);
}

// ---------------------------------------------------------------------------
// GameSpec
// ---------------------------------------------------------------------------

GameSpec GameSpec::ebert(int n, int q) {
    return GameSpec{n, q, Visibility::AllOthers, Protocol::Simultaneous,
                    Objective::OneCorrectNoneWrong};
}

GameSpec GameSpec::majority(int n, int q) {
    return GameSpec{n, q, Visibility::AllOthers, Protocol::Simultaneous,
                    Objective::MajorityCorrect};
}

GameSpec GameSpec::line(int n, int q) {
    return GameSpec{n, q, Visibility::AheadOnly, Protocol::SequentialFullAudition,
                    Objective::CountCorrect};
}

GameSpec GameSpec::new_line(int n, int q) {
    return GameSpec{n, q, Visibility::AheadOnly, Protocol::SequentialFullAudition,
                    Objective::OneCorrectNoneWrong};
}

void GameSpec::validate() const {
    if (n < 1) throw DomainError("player count must be >= 1");
    if (q < 2) throw DomainError("colour count must be >= 2");
    if (q > 10) throw DomainError("colour count must be <= 10 (colours are base-q digits)");
}

std::uint64_t GameSpec::configuration_count() const {
    validate();
    return pow_u64(static_cast<std::uint64_t>(q), n);
}

// ---------------------------------------------------------------------------
// Response
// ---------------------------------------------------------------------------

char Response::symbol() const {
    if (is_pass) return 'p';
    if (colour < 0 || colour > 9) throw DomainError("colour has no digit form");
    return static_cast<char>('0' + colour);
}

Response Response::from_symbol(char c, int q) {
    if (c == 'p') return pass();
    if (c < '0' || c > '9') throw FormatError(std::string("bad response symbol: ") + c);
    int colour = c - '0';
    if (colour >= q) throw FormatError(std::string("colour digit out of range: ") + c);
    return guess(colour);
}

// ---------------------------------------------------------------------------
// View / Trace
// ---------------------------------------------------------------------------

std::string View::key() const {
    std::string k;
    k.reserve(visible.size() + 1 + heard.size());
    for (const auto& [player, colour] : visible) {
        (void)player;
        if (colour < 0 || colour > 9) throw DomainError("colour has no digit form");
        k.push_back(static_cast<char>('0' + colour));
    }
    k.push_back('|');
    for (const Response& r : heard) k.push_back(r.symbol());
    return k;
}

bool Trace::response_correct(int player) const {
    const Response& r = responses.at(static_cast<std::size_t>(player - 1));
    return !r.is_pass && r.colour == configuration[static_cast<std::size_t>(player - 1)];
}

// ---------------------------------------------------------------------------
// Ranking
// ---------------------------------------------------------------------------

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && result > kRankLimit / base)
            throw CapacityError("q^n overflows 64 bits");
        result *= base;
    }
    return result;
}

std::uint64_t rank_configuration(const Configuration& cfg, int q) {
    if (q < 2) throw DomainError("colour count must be >= 2");
    std::uint64_t rank = 0;
    for (Colour c : cfg) {
        if (c < 0 || c >= q) throw DomainError("colour out of range for q");
        rank = rank * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c);
    }
    return rank;
}

Configuration unrank_configuration(std::uint64_t k, int n, int q) {
    if (n < 0) throw DomainError("negative length");
    if (q < 2) throw DomainError("colour count must be >= 2");
    if (k >= pow_u64(static_cast<std::uint64_t>(q), n))
        throw DomainError("rank out of range for q^n");
    Configuration cfg(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        cfg[static_cast<std::size_t>(i)] = static_cast<Colour>(k % static_cast<std::uint64_t>(q));
        k /= static_cast<std::uint64_t>(q);
    }
    return cfg;
}

std::string format_configuration(const Configuration& cfg, int q) {
    std::string s;
    s.reserve(cfg.size());
    for (Colour c : cfg) {
        if (c < 0 || c >= q) throw DomainError("colour out of range for q");
        if (c > 9) throw DomainError("colour has no digit form");
        s.push_back(static_cast<char>('0' + c));
    }
    return s;
}

Configuration parse_configuration(const std::string& text, int n, int q) {
    if (static_cast<int>(text.size()) != n)
        throw FormatError("configuration \"" + text + "\" is not " + std::to_string(n) + " digits");
    Configuration cfg;
    cfg.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw FormatError(std::string("bad colour digit: ") + ch);
        int c = ch - '0';
        if (c >= q) throw FormatError(std::string("colour digit out of range: ") + ch);
        cfg.push_back(c);
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Play
// ---------------------------------------------------------------------------

View view_of(const GameSpec& game, const Configuration& cfg, int player,
             const std::vector<Response>& heard) {
    game.validate();
    if (static_cast<int>(cfg.size()) != game.n) throw DomainError("configuration length != n");
    if (player < 1 || player > game.n) throw DomainError("player index out of range");

    if (game.sequential()) {
        if (static_cast<int>(heard.size()) != player - 1)
            throw ProtocolError("heard prefix must cover players 1..observer-1");
    } else if (!heard.empty()) {
        throw ProtocolError("simultaneous players hear nothing");
    }

    View view;
    view.observer = player;
    const int first = game.visibility == Visibility::AheadOnly ? player + 1 : 1;
    for (int i = first; i <= game.n; ++i) {
        if (i == player) continue;
        view.visible.emplace_back(i, cfg[static_cast<std::size_t>(i - 1)]);
    }
    view.heard = heard;
    return view;
}

Trace play(const GameSpec& game, const StrategyFn& strategy, const Configuration& cfg) {
    game.validate();
    if (static_cast<int>(cfg.size()) != game.n) throw DomainError("configuration length != n");

    Trace trace;
    trace.configuration = cfg;
    trace.responses.reserve(static_cast<std::size_t>(game.n));

    std::vector<Response> heard;
    for (int player = 1; player <= game.n; ++player) {
        View view = view_of(game, cfg, player, game.sequential() ? heard : std::vector<Response>{});
        Response r = strategy(player, view);
        if (r.is_pass && !game.pass_allowed())
            throw StrategyError("pass is illegal under objective " + to_token(game.objective));
        if (!r.is_pass && (r.colour < 0 || r.colour >= game.q))
            throw StrategyError("guess colour out of range for q");
        trace.responses.push_back(r);
        if (game.sequential()) heard.push_back(r);
    }

    trace.correct_count = 0;
    bool any_wrong = false;
    for (int player = 1; player <= game.n; ++player) {
        const Response& r = trace.responses[static_cast<std::size_t>(player - 1)];
        if (r.is_pass) continue;
        if (r.colour == cfg[static_cast<std::size_t>(player - 1)])
            ++trace.correct_count;
        else
            any_wrong = true;
    }

    switch (game.objective) {
        case Objective::OneCorrectNoneWrong:
            trace.win = trace.correct_count >= 1 && !any_wrong;
            break;
        case Objective::MajorityCorrect:
            trace.win = 2 * trace.correct_count > game.n;
            break;
        case Objective::CountCorrect:
            trace.win.reset();
            break;
    }
    return trace;
}

}  // namespace hatlab
