#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hatlab {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad value for the ambient game (colour out of range, rank out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A size guard was exceeded; the computation was refused, not truncated.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Malformed strategy/code file or text form.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A strategy broke its contract (missing view, illegal pass, colour >= q).
class StrategyError : public Error {
public:
    using Error::Error;
};

/// Heard prefix inconsistent with the game's response protocol.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Core types
// ---------------------------------------------------------------------------

using Colour = int;                         // value in [0, q); 0 is "gray", 1 is "brown"
using Configuration = std::vector<Colour>;  // colours[i] is player i+1's hat

enum class Visibility { AllOthers, AheadOnly };
enum class Protocol { Simultaneous, SequentialFullAudition };
enum class Objective { OneCorrectNoneWrong, MajorityCorrect, CountCorrect };

std::string to_token(Visibility v);
std::string to_token(Protocol p);
std::string to_token(Objective o);
Visibility parse_visibility(const std::string& token);
Protocol parse_protocol(const std::string& token);
Objective parse_objective(const std::string& token);

struct GameSpec {
    int n = 0;
    int q = 0;
    Visibility visibility = Visibility::AllOthers;
    Protocol protocol = Protocol::Simultaneous;
    Objective objective = Objective::OneCorrectNoneWrong;

    // The four named games.
    static GameSpec ebert(int n, int q = 2);
    static GameSpec majority(int n, int q = 2);
    static GameSpec line(int n, int q);      // hats-on-a-line, count-correct
    static GameSpec new_line(int n, int q);  // line visibility, Ebert win condition

    /// n >= 1, 2 <= q <= 10 (all text forms encode colours as base-q digits).
    void validate() const;

    bool pass_allowed() const { return objective == Objective::OneCorrectNoneWrong; }
    bool sequential() const { return protocol == Protocol::SequentialFullAudition; }

    /// q^n, guarded against overflow.
    std::uint64_t configuration_count() const;

    bool operator==(const GameSpec&) const = default;
};

struct Response {
    bool is_pass = true;
    Colour colour = 0;  // meaningful only when !is_pass

    static Response pass() { return Response{true, 0}; }
    static Response guess(Colour c) { return Response{false, c}; }

    /// 'p' for pass, otherwise the colour digit.
    char symbol() const;
    static Response from_symbol(char c, int q);

    bool operator==(const Response&) const = default;
};

/// What one player can observe: sight per the visibility model plus the
/// responses heard so far (empty under the simultaneous protocol).
struct View {
    int observer = 0;                               // 1-based player index
    std::vector<std::pair<int, Colour>> visible;    // (player, colour), ascending player
    std::vector<Response> heard;                    // responses of players 1..observer-1

    /// Canonical key: visible colours as base-q digits, '|', heard symbols.
    std::string key() const;
};

struct Trace {
    Configuration configuration;
    std::vector<Response> responses;  // one per player
    int correct_count = 0;
    std::optional<bool> win;          // empty for the count-correct objective

    bool response_correct(int player) const;  // 1-based; pass is never correct
};

// ---------------------------------------------------------------------------
// Configuration ranking and text form
// ---------------------------------------------------------------------------

/// base^exp with an overflow guard.
std::uint64_t pow_u64(std::uint64_t base, int exp);

/// Lexicographic rank, player 1 most significant: sum of c_i * q^(n-i).
std::uint64_t rank_configuration(const Configuration& cfg, int q);

/// Inverse of rank_configuration over [0, q^n).
Configuration unrank_configuration(std::uint64_t k, int n, int q);

/// Digit string, player 1 leftmost (e.g. "110").
std::string format_configuration(const Configuration& cfg, int q);
Configuration parse_configuration(const std::string& text, int n, int q);

// ---------------------------------------------------------------------------
// Play engine
// ---------------------------------------------------------------------------

/// Observation of `player` (1-based) in `cfg`. `heard` must already match the
/// protocol (length player-1 when sequential, empty when simultaneous).
View view_of(const GameSpec& game, const Configuration& cfg, int player,
             const std::vector<Response>& heard = {});

using StrategyFn = std::function<Response(int player, const View& view)>;

/// Deterministic play of one configuration. Sequential protocols feed each
/// player the full heard prefix; simultaneous players respond independently.
/// Throws StrategyError on an illegal pass or an out-of-range guess.
Trace play(const GameSpec& game, const StrategyFn& strategy, const Configuration& cfg);

}  // namespace hatlab
