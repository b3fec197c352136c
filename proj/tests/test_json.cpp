#include <doctest.h>

#include <congame/gen.hpp>
#include <congame/json_io.hpp>
#include <congame/samples.hpp>

using namespace congame;

TEST_CASE("game form round trip and stability")
{
    Rng rng(81);
    for (int i = 0; i < 50; ++i) {
        auto f = gen_form(rng, 4, 4, 4);
        auto text = dump_json(to_json(f));
        auto g = gameform_from_json(parse_json(text));
        CHECK(g.table == f.table);
        CHECK(g.outcome_names == f.outcome_names);
        CHECK(dump_json(to_json(g)) == text);
    }
}

TEST_CASE("arena round trip, including the sequential version")
{
    Rng rng(82);
    for (int i = 0; i < 25; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(1, 3);
        opt.stochastic = rng.chance(1, 2);
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        auto text = dump_json(to_json(c));
        auto d = arena_from_json(parse_json(text));
        CHECK(d.delta == c.delta);
        CHECK(d.col == c.col);
        CHECK(dump_json(to_json(d)) == text);

        auto seq = sequentialize(c);
        auto stext = dump_json(to_json(seq.tb));
        auto back = arena_from_json(parse_json(stext));
        CHECK(back.delta == seq.tb.delta);
    }
}

TEST_CASE("deterministic arenas load from the state-target shorthand")
{
    Json j = parse_json(R"({
      "states": ["q0", "q1"], "q0": "q0",
      "actions_A": ["a"], "actions_B": ["b1", "b2"],
      "delta": {"q0,a,b1": "q0", "q0,a,b2": "q1", "q1,a,b1": "q1", "q1,a,b2": "q1"},
      "colors": ["x", "y"],
      "col": {"q1,q1": "y"}
    })");
    auto c = arena_from_json(j);
    CHECK(c.nd() == 2);
    CHECK(classify(c).deterministic);
    CHECK(c.color(1, 1) == 1);
    CHECK(c.color(0, 0) == 0); // missing pairs default to the first color
}

TEST_CASE("loader errors carry locations")
{
    CHECK_THROWS_WITH_AS(parse_json("{"), doctest::Contains("malformed JSON"), error);

    Json j = parse_json(R"({
      "states": ["q"], "q0": "q", "actions_A": ["a"], "actions_B": ["b"],
      "nature": ["d"], "delta": {"q,a,b": "d"},
      "dist": {"d": {"q": "3/4"}}, "colors": ["k"], "col": {}
    })");
    CHECK_THROWS_WITH_AS(arena_from_json(j), doctest::Contains("d"), error);

    Json bad = parse_json(R"({
      "states": ["q"], "q0": "nope", "actions_A": ["a"], "actions_B": ["b"],
      "delta": {"q,a,b": "q"}, "colors": ["k"]
    })");
    CHECK_THROWS_WITH_AS(arena_from_json(bad), doctest::Contains("nope"), error);
}

TEST_CASE("rationals parse and print canonically")
{
    CHECK(rat_to_string(Rat(2, 3)) == "2/3");
    CHECK(rat_to_string(Rat(4, 2)) == "2");
    CHECK(rat_from_string("6/9") == Rat(2, 3));
    CHECK(rat_from_string("1") == Rat(1));
    CHECK_THROWS_AS(rat_from_string("x/y"), error);
    CHECK_THROWS_AS(rat_from_string("1/0"), error);
}

TEST_CASE("strategy and monitor round trips")
{
    auto c = samples::retry_game();
    Rng rng(83);
    for (int i = 0; i < 20; ++i) {
        auto s = gen_strategy(rng, c, rng.chance(1, 2) ? Player::A : Player::B, 3);
        auto text = dump_json(to_json(s, c));
        auto t = strategy_from_json(parse_json(text), c);
        CHECK(t.player == s.player);
        CHECK(t.skeleton.update == s.skeleton.update);
        CHECK(t.action == s.action);
    }

    auto mon = seen_color_monitor(c.nk(), 1);
    auto text = dump_json(to_json(mon, c.colors));
    auto back = monitor_from_json(parse_json(text), c.colors);
    CHECK(back.delta == mon.delta);
    CHECK(back.priority == mon.priority);

    Rng nrng(84);
    for (int i = 0; i < 20; ++i) {
        auto n = gen_nfa(nrng, 4, 3);
        std::vector<std::string> alphabet{"#", "x", "y"};
        auto jtext = dump_json(to_json(n, alphabet));
        auto m = nfa_from_json(parse_json(jtext));
        CHECK(m.num_states == n.num_states);
        CHECK(m.initial == n.initial);
        CHECK(m.accepting == n.accepting);
        // Transition multisets agree.
        auto sorted = [](std::vector<std::tuple<int, int, int>> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(m.transitions) == sorted(n.transitions));
    }
}

TEST_CASE("parity objectives round trip against an arena")
{
    auto c = samples::retry_game();
    ParityObjective obj{{1, 2}};
    auto j = to_json(obj, c);
    auto back = parity_from_json(j, c);
    CHECK(back.priority == obj.priority);

    Json missing = parse_json(R"({"priorities": {"x": 1}})");
    CHECK_THROWS_WITH_AS(parity_from_json(missing, c), doctest::Contains("y"), error);
}
