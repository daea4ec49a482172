#include "doctest.h"

#include <sstream>

#include "hatlab/strategies.hpp"
#include "hatlab/strategy_table.hpp"

using namespace hatlab;

TEST_CASE("from_rule materializes every reachable view") {
    GameSpec game = GameSpec::new_line(2, 2);
    StrategyTable table = StrategyTable::from_rule(game, "t", [](int, const View& view) {
        for (const auto& [other, colour] : view.visible) {
            (void)other;
            if (colour == 0) return Response::pass();
        }
        return Response::guess(0);
    });
    CHECK_NOTHROW(verify_table(table));
    // Player 1's two sight views plus player 2's heard variants.
    CHECK(table.has(1, "0|"));
    CHECK(table.has(1, "1|"));
    CHECK(table.has(2, "|p"));
}

TEST_CASE("respond throws on a missing view") {
    GameSpec game = GameSpec::ebert(3);
    StrategyTable table(game, "empty");
    View view = view_of(game, {0, 0, 0}, 1);
    CHECK_THROWS_AS(table.respond(1, view), StrategyError);
}

TEST_CASE("verify_table rejects illegal entries") {
    GameSpec majority = GameSpec::majority(3);
    StrategyTable bad_pass(majority, "bad");
    bad_pass.set(1, "00|", Response::pass());
    CHECK_THROWS_AS(verify_table(bad_pass), StrategyError);

    GameSpec ebert = GameSpec::ebert(3);
    StrategyTable bad_colour(ebert, "bad");
    bad_colour.set(1, "00|", Response::guess(5));
    CHECK_THROWS_AS(verify_table(bad_colour), StrategyError);
}

TEST_CASE("strategy files round-trip exactly") {
    StrategyTable original = gray_strategy(3, 2);
    std::string text = strategy_to_string(original);

    std::istringstream in(text);
    StrategyTable loaded = load_strategy(in, "gray");
    CHECK(loaded == original);
    CHECK(strategy_to_string(loaded) == text);
}

TEST_CASE("loading a partial strategy names the missing view") {
    StrategyTable original = gray_strategy(3, 2);
    std::string text = strategy_to_string(original);
    // Drop player 1's all-brown view line.
    const std::string needle = "player 1 view 11| -> 0\n";
    auto at = text.find(needle);
    REQUIRE(at != std::string::npos);
    text.erase(at, needle.size());

    std::istringstream in(text);
    try {
        load_strategy(in, "partial");
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("11|") != std::string::npos);
    }
}

TEST_CASE("loading rejects out-of-range colours and illegal passes") {
    SUBCASE("colour digit beyond q") {
        std::istringstream in(
            "game 2 3 ahead-only sequential one-correct-none-wrong\n"
            "player 1 view 0| -> 5\n");
        CHECK_THROWS_AS(load_strategy(in, "bad"), FormatError);
    }
    SUBCASE("pass under a mandatory-guess objective") {
        std::istringstream in(
            "game 2 2 ahead-only sequential count-correct\n"
            "player 1 view 0| -> pass\n");
        CHECK_THROWS_AS(load_strategy(in, "bad"), FormatError);
    }
    SUBCASE("garbled header") {
        std::istringstream in("games 2 2 ahead-only sequential count-correct\n");
        CHECK_THROWS_AS(load_strategy(in, "bad"), FormatError);
    }
    SUBCASE("empty file") {
        std::istringstream in("");
        CHECK_THROWS_AS(load_strategy(in, "bad"), FormatError);
    }
}

TEST_CASE("every built-in strategy round-trips through the file format") {
    std::vector<StrategyTable> strategies;
    strategies.push_back(ebert_three_player());
    strategies.push_back(covering_code_strategy(hamming_code(2)));
    strategies.push_back(line_sum_strategy(3, 3));
    strategies.push_back(gray_strategy(4, 2));
    strategies.push_back(cyclic_majority_strategy());
    strategies.push_back(orientation_majority_strategy(berlekamp_orientation(2)));
    for (const StrategyTable& original : strategies) {
        std::istringstream in(strategy_to_string(original));
        StrategyTable loaded = load_strategy(in, original.name());
        CHECK(loaded == original);
    }
}

TEST_CASE("every generated strategy is total and legal for its game") {
    CHECK_NOTHROW(verify_table(ebert_three_player()));
    CHECK_NOTHROW(verify_table(cyclic_majority_strategy()));
    for (int q = 2; q <= 4; ++q)
        for (int n = 1; n <= 5; ++n) CHECK_NOTHROW(verify_table(gray_strategy(n, q)));
    for (int q = 2; q <= 4; ++q)
        for (int n = 2; n <= 5; ++n) CHECK_NOTHROW(verify_table(line_sum_strategy(n, q)));
    CHECK_NOTHROW(verify_table(covering_code_strategy(hamming_code(3))));
    CHECK_NOTHROW(verify_table(orientation_majority_strategy(berlekamp_orientation(3))));
}
