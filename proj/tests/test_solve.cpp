#include <doctest.h>

#include <congame/gen.hpp>
#include <congame/oracle.hpp>
#include <congame/samples.hpp>
#include <congame/semantics.hpp>
#include <congame/solve.hpp>

using namespace congame;

TEST_CASE("attractor basics")
{
    auto eg = edge_game(samples::safety_loop());
    TurnGame g;
    g.n = eg.n;
    g.owner = eg.owner;
    g.succ.resize(g.n);
    for (int v = 0; v < g.n; ++v)
        for (auto [act, succ, color] : eg.moves[v]) g.succ[v].push_back(succ);

    auto all = attractor(g, Player::A, {0, 1});
    CHECK(all.in == std::vector<char>{1, 1});

    Rng rng(41);
    for (int i = 0; i < 60; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 5);
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        // Force a turn-based arena by rebuilding rows.
        for (int q = 0; q < c.nq(); ++q) {
            int dd = c.d(q, 0, 0);
            for (int a = 0; a < c.na(); ++a)
                for (int b = 0; b < c.nb(); ++b)
                    c.d(q, a, b) = rng.chance(1, 2) ? c.d(q, a, 0) : dd;
        }
        if (!classify(c).turn_based) continue;
        auto eg2 = edge_game(c);
        TurnGame g2;
        g2.n = eg2.n;
        g2.owner = eg2.owner;
        g2.succ.resize(g2.n);
        for (int v = 0; v < g2.n; ++v)
            for (auto [act, succ, color] : eg2.moves[v]) g2.succ[v].push_back(succ);
        std::vector<int> targets{rng.below(g2.n)};
        Player p = rng.chance(1, 2) ? Player::A : Player::B;
        auto fast = attractor(g2, p, targets);
        auto naive = oracle::attractor_naive(g2, p, targets);
        CHECK(fast.in == naive);
    }
}

TEST_CASE("the y edge cannot be forced when B owns the looping state")
{
    // Subdivided view of the safety loop: the y edge is an edge node; B
    // controls its source, so A's attractor to it contains neither state.
    auto eg = edge_game(samples::safety_loop());
    auto pv = subdivide(eg, samples::y_infinitely_often());
    int y_edge = -1;
    for (int v = pv.num_states; v < pv.g.n; ++v)
        if (pv.g.priority[v] == 2) y_edge = v;
    REQUIRE(y_edge >= 0);
    auto att = attractor(pv.g, Player::A, {y_edge});
    CHECK_FALSE(att.in[0]);
    CHECK_FALSE(att.in[1]);
}

TEST_CASE("zielonka on the catalog games")
{
    // A single even color: A wins everywhere.
    ConcurrentArena c = samples::safety_loop();
    ParityObjective all_even{{0, 0}};
    auto res = zielonka(c, all_even);
    CHECK(res.winner == std::vector<Player>{Player::A, Player::A});

    // y infinitely often: B wins from q0 by never self-looping at q1.
    auto res2 = zielonka(c, samples::y_infinitely_often());
    CHECK(res2.winner[0] == Player::B);
    CHECK(res2.winner[1] == Player::B);
}

TEST_CASE("zielonka matches the positional brute force")
{
    Rng rng(42);
    for (int i = 0; i < 60; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 4);
        opt.na = rng.range(1, 3);
        opt.nb = rng.range(1, 3);
        opt.nk = rng.range(1, 3);
        auto c = gen_arena(rng, opt);
        // Turn-based by construction: collapse each state to one owner.
        for (int q = 0; q < c.nq(); ++q) {
            if (rng.chance(1, 2))
                for (int a = 0; a < c.na(); ++a)
                    for (int b = 1; b < c.nb(); ++b) c.d(q, a, b) = c.d(q, a, 0);
            else
                for (int b = 0; b < c.nb(); ++b)
                    for (int a = 1; a < c.na(); ++a) c.d(q, a, b) = c.d(q, 0, b);
        }
        auto obj = gen_parity(rng, c.nk(), 3);
        auto res = zielonka(c, obj);
        CHECK(res.winner[c.q0] == oracle::positional_winner(c, obj));
    }
}

TEST_CASE("threshold remapping")
{
    // Accepting exactly the even classes is the original parity condition.
    Rng rng(43);
    for (int i = 0; i < 40; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.nk = 3;
        auto c = gen_arena(rng, opt);
        ThresholdSet evens{{0, 2}};
        ParityObjective ident{{0, 1, 2}};
        auto direct = solve_concurrent(c, ident);
        auto remapped = solve_concurrent(c, remap_threshold(evens, 2));
        CHECK(direct.winner == remapped.winner);

        // Empty threshold set: B wins everywhere.
        auto none = solve_concurrent(c, remap_threshold(ThresholdSet{}, 2));
        CHECK(none.winner == Player::B);
    }
    CHECK_THROWS_AS(remap_threshold(ThresholdSet{{5}}, 3), error);
}

TEST_CASE("remapped games match the direct evaluation of max(inf)")
{
    Rng rng(44);
    for (int i = 0; i < 40; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.nk = rng.range(1, 4);
        auto c = gen_arena(rng, opt);
        int n = c.nk() - 1;
        ThresholdSet ts;
        for (int k = 0; k <= n; ++k)
            if (rng.chance(1, 2)) ts.h.insert(k);
        auto solved = solve_concurrent(c, remap_threshold(ts, n));
        // Brute force on the original colors: A wins iff some positional
        // profile forces max(inf) into the set against every response.
        ParityObjective ident;
        for (int k = 0; k <= n; ++k) ident.priority.push_back(k);
        bool a_wins = false;
        std::vector<int> pa(c.nq(), 0);
        do {
            bool all = true;
            std::vector<int> pb(c.nq(), 0);
            do {
                auto sa = FiniteStrategy::positional_of(Player::A, c.nk(), pa);
                auto sb = FiniteStrategy::positional_of(Player::B, c.nk(), pb);
                int cls = outcome_lasso(c, sa, sb, ident).max_priority;
                if (!ts.h.count(cls)) { all = false; break; }
            } while (detail::next_profile(pb, c.nb()));
            if (all) { a_wins = true; break; }
        } while (detail::next_profile(pa, c.na()));
        CHECK((solved.winner == Player::A) == a_wins);
    }
}

TEST_CASE("solve_concurrent on turn-based input equals direct solving")
{
    auto c = samples::safety_loop();
    auto obj = samples::y_infinitely_often();
    auto direct = zielonka(c, obj);
    auto via_seq = solve_concurrent(c, obj);
    CHECK(via_seq.winner == direct.winner[c.q0]);
}

TEST_CASE("solve_concurrent refuses non-determined interactions by name")
{
    auto c = samples::repeated_matching_pennies();
    CHECK_THROWS_WITH_AS(solve_concurrent(c, samples::y_infinitely_often()),
                         doctest::Contains("q0: local interaction not determined"), error);
}

TEST_CASE("winner flips under player swap with complemented parities")
{
    Rng rng(45);
    for (int i = 0; i < 30; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.na = 2;
        opt.nb = 2;
        opt.nk = 2;
        auto c = gen_arena(rng, opt);
        auto obj = gen_parity(rng, c.nk(), 2);
        ConcurrentArena swapped = c;
        std::swap(swapped.actions_a, swapped.actions_b);
        for (int q = 0; q < c.nq(); ++q)
            for (int a = 0; a < c.na(); ++a)
                for (int b = 0; b < c.nb(); ++b)
                    swapped.delta[(q * c.nb() + b) * c.na() + a] = c.d(q, a, b);
        ParityObjective flipped;
        for (int p : obj.priority) flipped.priority.push_back(p + 1);
        auto w1 = solve_concurrent(c, obj).winner;
        auto w2 = solve_concurrent(swapped, flipped).winner;
        CHECK(w1 == opponent(w2));
    }
}
