#include <doctest.h>

#include <congame/arena.hpp>
#include <congame/gen.hpp>
#include <congame/samples.hpp>

using namespace congame;

TEST_CASE("validation reports the offending component")
{
    auto c = samples::retry_game();
    CHECK(validate(c).empty());

    c.dist[0].entries = {{1, Rat(1, 4)}, {2, Rat(1, 2)}}; // sums to 3/4
    auto bad = validate(c);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front().find("d1") != std::string::npos);
    CHECK(bad.front().find("3/4") != std::string::npos);
}

TEST_CASE("one-state arena is valid")
{
    ConcurrentArena c;
    c.states = {"q"};
    c.q0 = 0;
    c.actions_a = {"a"};
    c.actions_b = {"b"};
    c.nature = {"d"};
    c.dist = {RationalDist::dirac(0)};
    c.colors = {"k"};
    c.delta = {0};
    c.col = {0};
    CHECK(validate(c).empty());
}

TEST_CASE("classification of the catalog arenas")
{
    auto safety = classify(samples::safety_loop());
    CHECK(safety.deterministic);
    CHECK(safety.turn_based);
    CHECK(safety.locally_determined);

    auto rmp = classify(samples::repeated_matching_pennies());
    CHECK(rmp.deterministic);
    CHECK_FALSE(rmp.locally_determined);

    auto retry = classify(samples::retry_game());
    CHECK_FALSE(retry.deterministic);
    CHECK(retry.turn_based);
    CHECK(retry.locally_determined);
}

TEST_CASE("local interactions")
{
    auto c = samples::row_pairs_arena();
    auto f = local_interaction(c, 0);
    CHECK(f.rows() == 3);
    CHECK(f.outcomes() == 3);
    CHECK(is_determined(f));
    CHECK(f.table == samples::row_pairs().table);

    auto mp = local_interaction(samples::repeated_matching_pennies(), 0);
    CHECK_FALSE(is_determined(mp));

    // The all-or-nothing bet has a non-determined initial interaction too.
    CHECK_FALSE(is_determined(local_interaction(samples::near_win(), 0)));

    CHECK_THROWS_AS(local_interaction(c, 99), error);
}

TEST_CASE("a state ignoring B's action has constant rows")
{
    auto c = samples::safety_loop();
    auto f = local_interaction(c, 0); // A-owned state
    for (int r = 0; r < f.rows(); ++r)
        for (int cc = 1; cc < f.cols(); ++cc) CHECK(f.at(r, cc) == f.at(r, 0));
    // Offer-equivalent to its single-column restriction.
    GameForm one;
    one.row_names = f.row_names;
    one.col_names = {"b"};
    one.outcome_names = f.outcome_names;
    for (int r = 0; r < f.rows(); ++r) one.table.push_back({f.at(r, 0)});
    CHECK(detail::offer_family(f, Player::A) == detail::offer_family(one, Player::A));
}

TEST_CASE("turn-based arenas are locally determined")
{
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(1, 4);
        opt.na = rng.range(1, 3);
        opt.nb = rng.range(1, 3);
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        auto cls = classify(c);
        if (cls.turn_based) CHECK(cls.locally_determined);
    }
}

TEST_CASE("local interaction is stable under action renaming")
{
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        ArenaGenOptions opt;
        opt.nq = 2;
        opt.na = 3;
        opt.nb = 2;
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        // Swap A's first two actions everywhere.
        auto d = c;
        std::swap(d.actions_a[0], d.actions_a[1]);
        for (int q = 0; q < c.nq(); ++q)
            for (int b = 0; b < c.nb(); ++b) {
                d.d(q, 0, b) = c.d(q, 1, b);
                d.d(q, 1, b) = c.d(q, 0, b);
            }
        for (int q = 0; q < c.nq(); ++q) {
            auto f = local_interaction(c, q);
            auto g = local_interaction(d, q);
            std::swap(f.table[0], f.table[1]);
            std::swap(f.row_names[0], f.row_names[1]);
            CHECK(f.table == g.table);
        }
    }
}
