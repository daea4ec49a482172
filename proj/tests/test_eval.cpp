#include "doctest.h"

#include <cmath>

#include "hatlab/eval.hpp"
#include "hatlab/strategies.hpp"

using namespace hatlab;

TEST_CASE("rationals reduce to lowest terms") {
    CHECK(Rational::of(6, 8) == Rational{3, 4});
    CHECK(Rational::of(0, 8) == Rational{0, 1});
    CHECK(Rational::of(8, 8) == Rational{1, 1});
    CHECK(Rational::of(19, 27) == Rational{19, 27});
    CHECK(Rational::of(3, 4).str() == "3/4");
    CHECK_THROWS_AS(Rational::of(1, 0), DomainError);
}

TEST_CASE("exact evaluation of the named strategies") {
    StrategyTable ebert = ebert_three_player();
    EvalReport r = evaluate_exact(ebert.game(), ebert);
    CHECK(r.wins == 6);
    CHECK(r.total == 8);
    CHECK(r.probability == Rational{3, 4});
    CHECK(!r.mean_correct.has_value());

    StrategyTable gray = gray_strategy(3, 2);
    CHECK(evaluate_exact(gray.game(), gray).probability == Rational{7, 8});

    StrategyTable hamming7 = covering_code_strategy(hamming_code(3));
    EvalReport h = evaluate_exact(hamming7.game(), hamming7);
    CHECK(h.total == 128);
    CHECK(h.probability == Rational{7, 8});
}

TEST_CASE("gray strategy evaluates to the closed form everywhere") {
    for (int q = 2; q <= 4; ++q) {
        for (int n = 1; n <= 5; ++n) {
            StrategyTable s = gray_strategy(n, q);
            EvalReport r = evaluate_exact(s.game(), s);
            const std::int64_t total = static_cast<std::int64_t>(pow_u64(q, n));
            const std::int64_t losses = static_cast<std::int64_t>(pow_u64(q - 1, n));
            CHECK(r.probability == Rational::of(total - losses, total));
        }
    }
}

TEST_CASE("count-correct evaluation reports the exact mean") {
    StrategyTable s = line_sum_strategy(4, 3);
    EvalReport r = evaluate_exact(s.game(), s);
    CHECK(r.mean_correct == Rational{10, 3});  // (n-1) + 1/q
    // All-correct configurations are exactly those where P1 is right.
    CHECK(r.wins == 27);
    CHECK(r.total == 81);
    CHECK(r.probability == Rational{1, 3});
}

TEST_CASE("exact evaluation is identical across worker counts") {
    StrategyTable s = gray_strategy(4, 3);
    EvalReport base = evaluate_exact(s.game(), s, 1);
    for (int workers : {2, 3, 7}) {
        EvalReport r = evaluate_exact(s.game(), s, workers);
        CHECK(r.wins == base.wins);
        CHECK(r.total == base.total);
        CHECK(r.probability == base.probability);
    }
}

TEST_CASE("exact evaluation refuses oversized games") {
    GameSpec huge = GameSpec::ebert(30);
    StrategyTable s(huge, "none");
    CHECK_THROWS_AS(evaluate_exact(huge, s), CapacityError);
}

TEST_CASE("trace tables carry one row per configuration in rank order") {
    StrategyTable s = ebert_three_player();
    EvalReport r = trace_table(s.game(), s);
    REQUIRE(r.traces.has_value());
    REQUIRE(r.traces->size() == 8);
    for (std::uint64_t k = 0; k < 8; ++k)
        CHECK(rank_configuration((*r.traces)[k].configuration, 2) == k);
    CHECK(*(*r.traces)[0].win == false);
    for (std::uint64_t k = 1; k < 7; ++k) CHECK(*(*r.traces)[k].win == true);
    CHECK(*(*r.traces)[7].win == false);
}

TEST_CASE("single-player gray trace") {
    StrategyTable s = gray_strategy(1, 2);
    EvalReport r = trace_table(s.game(), s);
    REQUIRE(r.traces->size() == 2);
    CHECK((*r.traces)[0].responses == std::vector<Response>{Response::guess(0)});
    CHECK(*(*r.traces)[0].win == true);
    CHECK((*r.traces)[1].responses == std::vector<Response>{Response::guess(0)});
    CHECK(*(*r.traces)[1].win == false);
    CHECK(r.probability == Rational{1, 2});
}

TEST_CASE("trace tables refuse oversized games") {
    GameSpec game = GameSpec::new_line(13, 2);  // 8192 > 4096
    StrategyTable s = gray_strategy(13, 2);
    CHECK_THROWS_AS(trace_table(game, s), CapacityError);
}

TEST_CASE("trace CSV and JSON carry the table rows") {
    StrategyTable s = ebert_three_player();
    EvalReport r = trace_table(s.game(), s);
    std::string csv = trace_csv(r);
    CHECK(csv.find("configuration,r1,r2,r3,correct1,correct2,correct3,outcome\n") == 0);
    CHECK(csv.find("110,p,p,0,0,0,1,win") != std::string::npos);
    CHECK(csv.find("111,0,0,0,0,0,0,lose") != std::string::npos);

    nlohmann::ordered_json j = report_json(r);
    CHECK(j["wins"] == 6);
    CHECK(j["probability"]["num"] == 3);
    CHECK(j["probability"]["den"] == 4);
    CHECK(j["traces"].size() == 8);
    CHECK(j["traces"][7]["outcome"] == "lose");
}

TEST_CASE("monte carlo reports are a pure function of seed and trials") {
    StrategyTable s = gray_strategy(3, 2);
    McReport a = evaluate_monte_carlo(s.game(), s, 20000, 42);
    McReport b = evaluate_monte_carlo(s.game(), s, 20000, 42);
    CHECK(a.wins == b.wins);
    CHECK(a.estimate == b.estimate);
    CHECK(a.half_width_95 == b.half_width_95);

    for (int workers : {2, 5}) {
        McReport c = evaluate_monte_carlo(s.game(), s, 20000, 42, workers);
        CHECK(c.wins == a.wins);
    }

    McReport other = evaluate_monte_carlo(s.game(), s, 20000, 43);
    CHECK(other.wins != a.wins);  // different seed, different sample
}

TEST_CASE("monte carlo estimates track the exact value") {
    StrategyTable s = gray_strategy(3, 2);
    const double exact = 7.0 / 8.0;
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        McReport r = evaluate_monte_carlo(s.game(), s, 100000, seed);
        if (std::abs(r.estimate - exact) <= r.half_width_95) ++covered;
    }
    CHECK(covered >= 18);
}

TEST_CASE("monte carlo boundary cases") {
    StrategyTable s = gray_strategy(2, 2);
    McReport one = evaluate_monte_carlo(s.game(), s, 1, 7);
    CHECK((one.wins == 0 || one.wins == 1));
    CHECK(one.half_width_95 ==
          doctest::Approx(1.96 * std::sqrt(one.estimate * (1 - one.estimate))));
    CHECK_THROWS_AS(evaluate_monte_carlo(s.game(), s, 0, 7), DomainError);
}

TEST_CASE("trial configurations are uniform enough over small spaces") {
    // Counter-based derivation: every configuration of a 2^3 space shows up
    // with frequency close to 1/8 over many trials.
    std::vector<int> counts(8, 0);
    for (std::uint64_t t = 0; t < 80000; ++t)
        ++counts[static_cast<std::size_t>(trial_configuration_rank(123, t, 8))];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("colour names are gray/brown at q=2 and generic beyond") {
    CHECK(colour_name(0) == "gray");
    CHECK(colour_name(1) == "brown");
    CHECK(colour_name(2) == "c2");
    CHECK(colour_name(3) == "c3");
}

TEST_CASE("rendered tables are byte-stable") {
    StrategyTable s = ebert_three_player();
    EvalReport r = trace_table(s.game(), s);
    CHECK(render_table(r) == render_table(r));
    CHECK(render_table(r).find("wins 6/8  probability 3/4") != std::string::npos);
}
