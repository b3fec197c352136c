#include <doctest.h>

#include <congame/gen.hpp>
#include <congame/samples.hpp>
#include <congame/semantics.hpp>
#include <congame/solve.hpp>
#include <congame/strategy.hpp>

using namespace congame;

TEST_CASE("running a skeleton")
{
    MemorySkeleton sk = MemorySkeleton::trivial(2);
    CHECK(run_skeleton(sk, std::vector<int>{}) == 0);
    CHECK_THROWS_AS(run_skeleton(sk, std::vector<int>{5}), error);
}

TEST_CASE("sequential and parallel skeletons compose to the identity")
{
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        auto sk = gen_skeleton(rng, 4, 4);
        auto back = par_skeleton(seq_skeleton(sk));
        CHECK(back.update == sk.update);
        CHECK(back.num_states == sk.num_states);
        auto rho = gen_word(rng, 5, rng.range(0, 10));
        CHECK(run_skeleton(seq_skeleton(sk), rho) == run_skeleton(sk, project_colors(rho)));
        auto word = gen_word(rng, 4, rng.range(0, 10));
        auto seq = seq_skeleton(sk);
        CHECK(run_skeleton(par_skeleton(seq), word) == run_skeleton(seq, extend_rho_kc(word)));
    }
}

TEST_CASE("sequentialization of strategies keeps memory and copies the map")
{
    auto c = samples::row_pairs_arena();
    auto seq = sequentialize(c);

    // B's concurrent choice b2 reappears at every pair state.
    FiniteStrategy b2 = FiniteStrategy::positional_of(Player::B, c.nk(), {1, 0, 0, 0});
    auto sb = seq_strategy(b2, c, seq);
    CHECK(sb.skeleton.num_states == 1);
    for (int a = 0; a < c.na(); ++a) CHECK(sb.act(0, seq.vb(0, a)) == 1);

    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        auto s = gen_strategy(rng, c, Player::A, 3);
        auto t = seq_strategy(s, c, seq);
        CHECK(t.skeleton.num_states == s.skeleton.num_states);
        CHECK(par_strategy_a(t, seq).skeleton.num_states == s.skeleton.num_states);
    }
}

TEST_CASE("parallelization of the second mover uses the confined column")
{
    auto c = samples::row_pairs_arena();
    auto seq = sequentialize(c);
    // rech = (x, x, y): reachable Nature states {x, y}; the only column of
    // the interaction confined to {x,y} is the second one.
    FiniteStrategy sigma;
    sigma.player = Player::B;
    sigma.skeleton = MemorySkeleton::trivial(seq.tb.nk());
    sigma.num_locations = seq.tb.nq();
    sigma.action.assign(seq.tb.nq(), 0);
    sigma.action[seq.vb(0, 0)] = 0;
    sigma.action[seq.vb(0, 1)] = 1;
    sigma.action[seq.vb(0, 2)] = 1;
    auto par = par_strategy_b(sigma, c, seq);
    CHECK(par.act(0, 0) == 1);

    // Every Nature state reachable under the parallel strategy lies in the
    // reachable set of the sequential one.
    for (int a = 0; a < c.na(); ++a) {
        int reached = c.d(0, a, par.act(0, 0));
        bool in_rech = false;
        for (int a2 = 0; a2 < c.na(); ++a2)
            if (c.d(0, a2, sigma.act(0, seq.vb(0, a2))) == reached) in_rech = true;
        CHECK(in_rech);
    }
}

TEST_CASE("parallelization for B requires local determinacy")
{
    auto c = samples::repeated_matching_pennies();
    auto seq = sequentialize(c);
    FiniteStrategy sigma;
    sigma.player = Player::B;
    sigma.skeleton = MemorySkeleton::trivial(seq.tb.nk());
    sigma.num_locations = seq.tb.nq();
    sigma.action.assign(seq.tb.nq(), 0);
    CHECK_THROWS_WITH_AS(par_strategy_b(sigma, c, seq),
                         doctest::Contains("local interaction not determined"), error);
}

TEST_CASE("turn-based arenas: the parallel strategy replays the choice")
{
    auto c = samples::safety_loop();
    auto seq = sequentialize(c);
    FiniteStrategy never = FiniteStrategy::positional_of(Player::B, c.nk(), {1, 1});
    auto sigma = seq_strategy(never, c, seq);
    auto back = par_strategy_b(sigma, c, seq);
    // q1 is B's state; the replayed choice leads to the same Nature state.
    CHECK(c.d(1, 0, back.act(0, 1)) == c.d(1, 0, never.act(0, 1)));
}

TEST_CASE("winning strategies stay winning through Seq and Par")
{
    Rng rng(33);
    int checked = 0;
    for (unsigned long long seed = 1; seed <= 40; ++seed) {
        Rng g(seed);
        ArenaGenOptions opt;
        opt.nq = g.range(2, 3);
        opt.na = 2;
        opt.nb = 2;
        opt.nk = 2;
        auto c = gen_arena(g, opt);
        auto obj = gen_parity(g, c.nk(), 2);
        auto solved = solve_concurrent(c, obj); // already certified winning in C
        auto seq = sequentialize(c);
        auto sobj = seq_objective(obj);
        auto lifted = seq_strategy(solved.strategy, c, seq);
        CHECK(certify_winning(seq.tb, lifted, sobj));
        ++checked;
    }
    CHECK(checked == 40);
    (void)rng;
}

TEST_CASE("transfer operators are well defined up to implementation")
{
    // Refine a skeleton by splitting every memory state in two; both
    // encodings implement the same color strategy, and the transferred
    // machines stay behaviorally equivalent.
    Rng rng(34);
    auto c = samples::row_pairs_arena();
    auto seq = sequentialize(c);
    for (int i = 0; i < 30; ++i) {
        auto s = gen_strategy(rng, c, Player::B, 3);
        FiniteStrategy refined;
        refined.player = s.player;
        refined.num_locations = s.num_locations;
        int m0 = s.skeleton.num_states;
        refined.skeleton.num_states = 2 * m0;
        refined.skeleton.initial = s.skeleton.initial;
        refined.skeleton.num_colors = s.skeleton.num_colors;
        refined.skeleton.update.assign(2 * m0 * s.skeleton.num_colors, 0);
        for (int m = 0; m < 2 * m0; ++m)
            for (int k = 0; k < s.skeleton.num_colors; ++k)
                refined.skeleton.update[m * s.skeleton.num_colors + k] =
                    s.skeleton.step(m % m0, k) + m0 * rng.below(2);
        refined.action.assign(2 * m0 * s.num_locations, 0);
        for (int m = 0; m < 2 * m0; ++m)
            for (int q = 0; q < s.num_locations; ++q)
                refined.action[m * s.num_locations + q] = s.act(m % m0, q);
        REQUIRE(mealy_equivalent(s, refined));
        CHECK(mealy_equivalent(seq_strategy(s, c, seq), seq_strategy(refined, c, seq)));
    }
    for (int i = 0; i < 30; ++i) {
        auto sigma = gen_strategy(rng, seq.tb, Player::A, 3);
        sigma.player = Player::A;
        FiniteStrategy refined = sigma;
        int m0 = sigma.skeleton.num_states;
        refined.skeleton.num_states = 2 * m0;
        refined.skeleton.update.assign(2 * m0 * sigma.skeleton.num_colors, 0);
        for (int m = 0; m < 2 * m0; ++m)
            for (int k = 0; k < sigma.skeleton.num_colors; ++k)
                refined.skeleton.update[m * sigma.skeleton.num_colors + k] =
                    sigma.skeleton.step(m % m0, k) + m0 * rng.below(2);
        refined.action.assign(2 * m0 * sigma.num_locations, 0);
        for (int m = 0; m < 2 * m0; ++m)
            for (int q = 0; q < sigma.num_locations; ++q)
                refined.action[m * sigma.num_locations + q] = sigma.act(m % m0, q);
        REQUIRE(mealy_equivalent(sigma, refined));
        CHECK(mealy_equivalent(par_strategy_a(sigma, seq), par_strategy_a(refined, seq)));
    }
}
