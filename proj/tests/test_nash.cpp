#include <doctest.h>

#include <congame/gen.hpp>
#include <congame/nash.hpp>
#include <congame/oracle.hpp>
#include <congame/samples.hpp>

using namespace congame;

namespace {

// Two-state priority game: colors are the classes {0, 1}; the players can
// stay on the low cycle or move to the high one.
ConcurrentArena two_cycle()
{
    ConcurrentArena c;
    c.states = {"lo", "hi"};
    c.q0 = 0;
    c.actions_a = {"stay", "move"};
    c.actions_b = {"only"};
    c.nature = {"d_lo", "d_hi"};
    c.dist = {RationalDist::dirac(0), RationalDist::dirac(1)};
    c.colors = {"0", "1"};
    c.delta.assign(2 * 2 * 1, 0);
    c.d(0, 0, 0) = 0;
    c.d(0, 1, 0) = 1;
    c.d(1, 0, 0) = 1;
    c.d(1, 1, 0) = 0;
    c.col.assign(4, 0);
    c.color(0, 1) = 1;
    c.color(1, 1) = 1;
    c.color(1, 0) = 0;
    return c;
}

} // namespace

TEST_CASE("preference validation")
{
    Preference ok{{{0, 1}, {1, 2}}};
    CHECK(is_acyclic(ok, 2));
    Preference cyc{{{0, 1}, {1, 0}}};
    CHECK_FALSE(is_acyclic(cyc, 1));
    Preference self{{{1, 1}}};
    CHECK_FALSE(is_acyclic(self, 1));
    CHECK_THROWS_AS(is_acyclic(Preference{{{0, 9}}}, 2), error);
}

TEST_CASE("achievable classes")
{
    auto c = two_cycle();
    // B has a single action: fixing B leaves A in control of everything.
    auto fixed_b = FiniteStrategy::positional_of(Player::B, c.nk(), {0, 0});
    CHECK(achievable_classes(c, fixed_b) == std::set<int>{0, 1});

    // Fixing A to "stay" forces the low cycle.
    auto fixed_a = FiniteStrategy::positional_of(Player::A, c.nk(), {0, 0});
    CHECK(achievable_classes(c, fixed_a) == std::set<int>{0});

    Rng rng(61);
    for (int i = 0; i < 40; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.na = 2;
        opt.nb = 2;
        opt.nk = rng.range(1, 3);
        auto a = gen_arena(rng, opt);
        Player fixed_player = rng.chance(1, 2) ? Player::A : Player::B;
        int count = (fixed_player == Player::A) ? a.na() : a.nb();
        std::vector<int> prof(a.nq());
        for (int& x : prof) x = rng.below(count);
        auto fixed = FiniteStrategy::positional_of(fixed_player, a.nk(), prof);
        CHECK(achievable_classes(a, fixed) == oracle::achievable_by_profiles(a, fixed));
    }
}

TEST_CASE("equilibrium verification")
{
    auto c = two_cycle();
    Preference empty;
    auto sa = FiniteStrategy::positional_of(Player::A, c.nk(), {0, 0});
    auto sb = FiniteStrategy::positional_of(Player::B, c.nk(), {0, 0});
    // With empty preferences nothing is ever preferred: every profile is an
    // equilibrium.
    CHECK(verify_ne(c, empty, empty, sa, sb));

    // A prefers class 1 over 0 and can deviate to reach it.
    Preference wants_high{{{0, 1}}};
    CHECK_FALSE(verify_ne(c, wants_high, empty, sa, sb));
    auto sa_hi = FiniteStrategy::positional_of(Player::A, c.nk(), {1, 0});
    int cls = -1;
    CHECK(verify_ne(c, wants_high, empty, sa_hi, sb, &cls));
    CHECK(cls == 1);
}

TEST_CASE("verification agrees with full deviation enumeration")
{
    Rng rng(62);
    for (int i = 0; i < 40; ++i) {
        ArenaGenOptions opt;
        opt.nq = 2;
        opt.na = 2;
        opt.nb = 2;
        opt.nk = rng.range(1, 3);
        auto c = gen_arena(rng, opt);
        auto pa = gen_acyclic_preference(rng, c.nk() - 1);
        auto pb = gen_acyclic_preference(rng, c.nk() - 1);
        std::vector<int> profa(c.nq()), profb(c.nq());
        for (int& x : profa) x = rng.below(c.na());
        for (int& x : profb) x = rng.below(c.nb());
        auto sa = FiniteStrategy::positional_of(Player::A, c.nk(), profa);
        auto sb = FiniteStrategy::positional_of(Player::B, c.nk(), profb);
        ParityObjective ident;
        for (int k = 0; k < c.nk(); ++k) ident.priority.push_back(k);
        int base = outcome_lasso(c, sa, sb, ident).max_priority;
        bool expected = true;
        for (int k : oracle::achievable_by_profiles(c, sb))
            if (pa.prefers_over(base, k)) expected = false;
        for (int k : oracle::achievable_by_profiles(c, sa))
            if (pb.prefers_over(base, k)) expected = false;
        CHECK(verify_ne(c, pa, pb, sa, sb) == expected);
    }
}

TEST_CASE("equilibrium synthesis")
{
    // Single state, single priority: the unique profile is the witness.
    ConcurrentArena c;
    c.states = {"q"};
    c.q0 = 0;
    c.actions_a = {"a"};
    c.actions_b = {"b"};
    c.nature = {"d"};
    c.dist = {RationalDist::dirac(0)};
    c.colors = {"0"};
    c.delta = {0};
    c.col = {0};
    auto w = find_positional_ne(c, Preference{}, Preference{});
    CHECK(w.certified);
    CHECK(w.outcome_class == 0);

    // Antagonistic preferences from a winning set of classes: the outcome
    // class agrees with the determinacy winner.
    Rng rng(63);
    for (int i = 0; i < 20; ++i) {
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.nk = rng.range(1, 3);
        auto a = gen_arena(rng, opt);
        int n = a.nk() - 1;
        ThresholdSet ts;
        for (int k = 0; k <= n; ++k)
            if (rng.chance(1, 2)) ts.h.insert(k);
        Preference pa, pb;
        for (int k1 = 0; k1 <= n; ++k1)
            for (int k2 = 0; k2 <= n; ++k2) {
                if (!ts.h.count(k1) && ts.h.count(k2)) pa.edges.emplace_back(k1, k2);
                if (ts.h.count(k1) && !ts.h.count(k2)) pb.edges.emplace_back(k1, k2);
            }
        auto w2 = find_positional_ne(a, pa, pb);
        REQUIRE(w2.certified);
        CHECK(verify_ne(a, pa, pb, w2.a, w2.b));
        auto solved = solve_concurrent(a, remap_threshold(ts, n));
        CHECK((solved.winner == Player::A) == (ts.h.count(w2.outcome_class) > 0));
    }

    // Cyclic preferences are rejected up front.
    auto arena = two_cycle();
    Preference cyc{{{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(find_positional_ne(arena, cyc, Preference{}), error);

    // The non-determined interaction is reported.
    CHECK_THROWS_WITH_AS(find_positional_ne(samples::repeated_matching_pennies(), Preference{},
                                            Preference{}),
                         doctest::Contains("local interaction not determined"), error);
}
