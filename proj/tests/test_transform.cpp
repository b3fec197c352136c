#include <doctest.h>

#include <congame/gen.hpp>
#include <congame/oracle.hpp>
#include <congame/samples.hpp>
#include <congame/semantics.hpp>
#include <congame/solve.hpp>
#include <congame/transform.hpp>

using namespace congame;

TEST_CASE("sequentialization shape")
{
    auto c = samples::near_win();
    auto s = sequentialize(c);
    CHECK(s.tb.nq() == c.nq() + c.nq() * c.na());
    CHECK(s.tb.nd() == c.nq() * c.na() + c.nd());
    CHECK(s.tb.nk() == c.nk() + 1);
    auto cls = classify(s.tb);
    CHECK(cls.turn_based);
    CHECK(cls.locally_determined);

    // With a single action for A the move is forced: |Q| pair states.
    ConcurrentArena one = c;
    one.actions_a = {"only"};
    one.delta.assign(one.nq() * 1 * one.nb(), 0);
    for (int q = 0; q < one.nq(); ++q)
        for (int b = 0; b < one.nb(); ++b) one.d(q, 0, b) = c.d(q, 0, b);
    auto s1 = sequentialize(one);
    CHECK(s1.tb.nq() == one.nq() + one.nq());
}

TEST_CASE("random sequentializations classify as turn-based and determined")
{
    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(1, 3);
        opt.na = rng.range(1, 3);
        opt.nb = rng.range(1, 3);
        opt.stochastic = rng.chance(1, 2);
        opt.locally_determined = false; // not needed for Seq itself
        auto c = gen_arena(rng, opt);
        auto s = sequentialize(c);
        auto cls = classify(s.tb);
        CHECK(cls.turn_based);
        CHECK(cls.locally_determined);
        CHECK(classify(s.tb).deterministic == classify(c).deterministic);
    }
}

TEST_CASE("plays of the sequential version alternate and project back")
{
    Rng rng(22);
    for (int i = 0; i < 30; ++i) {
        ArenaGenOptions opt;
        opt.nq = 3;
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        auto s = sequentialize(c);
        // Random walk in Seq(C).
        std::vector<int> path{s.tb.q0};
        for (int step = 0; step < 12; ++step) {
            int v = path.back();
            int a = rng.below(s.tb.na()), b = rng.below(s.tb.nb());
            int dd = s.tb.d(v, a, b);
            const auto& entries = s.tb.dist[dd].entries;
            path.push_back(entries[rng.below(static_cast<int>(entries.size()))].first);
        }
        for (size_t j = 0; j < path.size(); ++j)
            CHECK(s.is_vb(path[j]) == (j % 2 == 1));
        // Color projection commutes with path projection.
        auto colors = color_trace(s.tb, path);
        auto projected_path = project_path(path, s.num_states);
        CHECK(project_colors(colors) == color_trace(c, projected_path));
    }
}

TEST_CASE("state reachability is preserved by sequentialization")
{
    Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        ArenaGenOptions opt;
        opt.nq = 4;
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        auto s = sequentialize(c);
        auto reach = [](const ConcurrentArena& a) {
            std::vector<std::vector<int>> succ(a.nq());
            for (int q = 0; q < a.nq(); ++q)
                for (int x = 0; x < a.na(); ++x)
                    for (int y = 0; y < a.nb(); ++y)
                        for (const auto& [t, p] : a.dist[a.d(q, x, y)].entries)
                            succ[q].push_back(t);
            return reachable_from(a.nq(), succ, a.q0);
        };
        auto rc = reach(c);
        auto rs = reach(s.tb);
        for (int q = 0; q < c.nq(); ++q) CHECK(static_cast<bool>(rc[q]) == static_cast<bool>(rs[q]));
    }
}

TEST_CASE("objective extension with the fresh color")
{
    ParityObjective obj{{1, 2}};
    auto seq = seq_objective(obj, 1);
    CHECK(seq.priority == std::vector<int>{0, 1, 2});

    ParityObjective zero{{0, 1}};
    auto shifted = seq_objective(zero, 0);
    CHECK(shifted.priority == std::vector<int>{1, 2, 3});

    CHECK_THROWS_AS(seq_objective(ParityObjective{{0, 2}}, 1), error);
}

TEST_CASE("word projections")
{
    CHECK(extend_rho_kc(std::vector<int>{0, 1}) == std::vector<int>{0, 1, 0, 2});
    CHECK(project_colors(std::vector<int>{}).empty());
    Rng rng(24);
    for (int i = 0; i < 200; ++i) {
        auto w = gen_word(rng, 4, rng.range(0, 8));
        CHECK(project_colors(extend_rho_kc(w)) == w);
    }
}

TEST_CASE("NFA projection and lifting")
{
    // Automaton accepting exactly the two-letter word (fresh, k0).
    ColorNFA n;
    n.num_states = 3;
    n.initial = {0};
    n.accepting = {2};
    n.transitions = {{0, 0, 1}, {1, 1, 2}};
    auto p = nfa_project(n);
    CHECK(p.accepts(std::vector<int>{0}));
    CHECK_FALSE(p.accepts(std::vector<int>{}));

    Rng rng(25);
    for (int t = 0; t < 40; ++t) {
        auto m = gen_nfa(rng, 4, 3);
        auto projected = nfa_project(m);
        auto lifted = nfa_lift(projected);
        for (int i = 0; i < 60; ++i) {
            auto w = gen_word(rng, 3, rng.range(0, 6));
            CHECK(lifted.accepts(w) == projected.accepts(project_colors(w)));
        }
        for (int i = 0; i < 30; ++i) {
            auto v = gen_word(rng, 2, rng.range(0, 6));
            CHECK(projected.accepts(v) == oracle::proj_member(m, v));
            CHECK(nfa_project(lifted).accepts(v) == projected.accepts(v));
        }
    }
}

TEST_CASE("limit membership of ultimately periodic words")
{
    ColorNFA all;
    all.num_states = 1;
    all.initial = {0};
    all.accepting = {0};
    all.transitions = {{0, 0, 0}};
    CHECK(limit_contains(all, std::vector<int>{}, std::vector<int>{0}));

    ColorNFA just_one; // accepts exactly the one-letter word k0
    just_one.num_states = 2;
    just_one.initial = {0};
    just_one.accepting = {1};
    just_one.transitions = {{0, 0, 1}};
    CHECK_FALSE(limit_contains(just_one, std::vector<int>{}, std::vector<int>{0}));
    CHECK_THROWS_AS(limit_contains(just_one, std::vector<int>{}, std::vector<int>{}), error);

    // Agreement with bounded unrolling.
    Rng rng(26);
    for (int t = 0; t < 60; ++t) {
        auto n = gen_nfa(rng, 4, 2);
        std::vector<int> prefix = gen_word(rng, 2, rng.range(0, 3));
        std::vector<int> cycle = gen_word(rng, 2, rng.range(1, 3));
        int bound = 2 * n.num_states * static_cast<int>(prefix.size() + cycle.size()) + 4;
        bool expected = true;
        std::vector<int> word = prefix;
        for (int len = 0; len <= bound; ++len) {
            // The prefix extends to a word of L(n) iff some NFA state
            // reachable on it can reach an accepting state.
            bool extendable = false;
            std::set<int> states = n.closure(n.initial);
            for (int k : word) states = n.step(states, k);
            for (int s : states) {
                // forward reachability to accepting
                std::set<int> seen2{s};
                std::vector<int> queue{s};
                while (!queue.empty()) {
                    int u = queue.back();
                    queue.pop_back();
                    if (n.accepting.count(u)) { extendable = true; break; }
                    for (const auto& [x, l, y] : n.transitions)
                        if (x == u && !seen2.count(y)) {
                            seen2.insert(y);
                            queue.push_back(y);
                        }
                }
                if (extendable) break;
            }
            if (!extendable) { expected = false; break; }
            word.push_back(cycle[len % cycle.size()]);
        }
        CHECK(limit_contains(n, prefix, cycle) == expected);
    }
}

TEST_CASE("monitor products")
{
    // A one-state monitor only renames colors.
    auto c = samples::safety_loop();
    ColorMonitor trivial;
    trivial.num_states = 1;
    trivial.initial = 0;
    trivial.num_colors = c.nk();
    trivial.delta = {0, 0};
    trivial.priority = {0};
    trivial.state_names = {"m"};
    auto prod = monitor_product(c, trivial);
    CHECK(prod.arena.nq() == c.nq());
    CHECK(prod.arena.nk() == 1);

    // Local interactions of the product stay isomorphic, so local
    // determinacy is preserved.
    auto mon = seen_color_monitor(c.nk(), 1);
    auto p2 = monitor_product(samples::repeated_matching_pennies(), mon);
    CHECK_FALSE(classify(p2.arena).locally_determined);
    auto p3 = monitor_product(c, mon);
    CHECK(classify(p3.arena).locally_determined);

    // Player B wins "y occurs" on the safety loop.
    auto solved = solve_concurrent(p3.arena, p3.objective);
    CHECK(solved.winner == Player::B);
}
