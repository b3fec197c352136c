#include <doctest.h>

#include <congame/gameform.hpp>
#include <congame/gen.hpp>
#include <congame/oracle.hpp>
#include <congame/samples.hpp>

using namespace congame;

TEST_CASE("winning strategies in matching pennies")
{
    auto mp = samples::matching_pennies();
    Valuation x_wins = Valuation::of({0});
    CHECK(winning_strategies(mp, x_wins, Player::A).empty());
    CHECK(winning_strategies(mp, x_wins, Player::B).empty());

    Valuation all = Valuation::of({0, 1});
    CHECK(winning_strategies(mp, all, Player::A) == std::vector<int>{0, 1});
    CHECK(is_determined_for(mp, x_wins) == Winner::None);

    GameForm unit;
    unit.row_names = {"a"};
    unit.col_names = {"b"};
    unit.outcome_names = {"o"};
    unit.table = {{0}};
    CHECK(is_determined_for(unit, Valuation::of({0})) == Winner::A);
    CHECK(is_determined_for(unit, Valuation{0}) == Winner::B);
}

TEST_CASE("winning strategies match the exhaustive quantifier oracle")
{
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        auto f = gen_form(rng, 3, 3, 4);
        std::uint32_t all = 1u << f.outcomes();
        for (std::uint32_t bits = 0; bits < all; ++bits) {
            Valuation v{bits};
            auto wa = winning_strategies(f, v, Player::A);
            auto wb = winning_strategies(f, v, Player::B);
            // Mutual exclusion holds for every valuation.
            CHECK((wa.empty() || wb.empty()));
            CHECK(is_determined_for(f, v) == oracle::determined_for_naive(f, v));
        }
    }
}

TEST_CASE("valuation over unknown outcomes is rejected")
{
    auto mp = samples::matching_pennies();
    CHECK_THROWS_AS(winning_strategies(mp, Valuation{0b100}, Player::A), error);
}

TEST_CASE("determinacy of the catalog forms")
{
    CHECK_FALSE(is_determined(samples::matching_pennies()));
    CHECK_FALSE(is_determined(samples::diagonal_trap()));
    CHECK(is_determined(samples::row_pairs()));
    CHECK(is_determined(samples::offer_gap()));

    // A single-row form decides every valuation.
    GameForm single;
    single.row_names = {"a"};
    single.col_names = {"b1", "b2"};
    single.outcome_names = {"x", "y"};
    single.table = {{0, 1}};
    CHECK(is_determined(single));
}

TEST_CASE("determinacy is invariant under duplication and permutation")
{
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        auto f = gen_form(rng, 3, 3, 3);
        auto g = duplicate_mutation(rng, f);
        CHECK(is_determined(f) == is_determined(g));
    }
}

TEST_CASE("tree translations")
{
    // Depth-1 tree owned by A with leaves (x,y): one column, two rows.
    TreeGameForm t;
    t.outcome_names = {"x", "y"};
    t.nodes.resize(3);
    t.nodes[0].owner = Player::A;
    t.nodes[0].children = {1, 2};
    t.nodes[1].outcome = 0;
    t.nodes[2].outcome = 1;
    auto f = tree_to_gameform(t, TreeTranslation::Minimalist);
    CHECK(f.rows() == 2);
    CHECK(f.cols() == 1);
    CHECK(f.table == std::vector<std::vector<int>>{{0}, {1}});

    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        auto tree = gen_tree(rng, 2, 3, 3);
        auto mini = tree_to_gameform(tree, TreeTranslation::Minimalist);
        auto comp = tree_to_gameform(tree, TreeTranslation::Complete);
        CHECK(is_determined(mini));
        CHECK(is_determined(comp));
        if (mini.outcome_names == comp.outcome_names)
            CHECK(sim_check(mini, comp, SimRelation::Duplicate));
    }
}

TEST_CASE("similarity relations")
{
    auto f = samples::row_pairs();
    for (auto rel : {SimRelation::Duplicate, SimRelation::Offer, SimRelation::Winning})
        CHECK(sim_check(f, f, rel));

    auto g = samples::matching_pennies();
    CHECK_THROWS_AS(sim_check(f, g, SimRelation::Offer), error); // outcome sets differ

    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        auto a = gen_form(rng, 3, 3, 3);
        auto b = duplicate_mutation(rng, a);
        CHECK(sim_check(a, b, SimRelation::Duplicate));
        CHECK(sim_check(a, b, SimRelation::Offer));
        CHECK(sim_check(a, b, SimRelation::Winning));
        CHECK(sim_w_by_offers(a, b) == sim_w_by_valuations(a, b));
    }
}

TEST_CASE("the similarity chain holds up to 4x4 forms with 4 outcomes")
{
    Rng rng(10);
    for (int i = 0; i < 300; ++i) {
        auto f = gen_form(rng, 4, 4, 4);
        GameForm g = f;
        if (rng.chance(1, 2)) {
            g = duplicate_mutation(rng, f);
        } else {
            int flips = rng.range(0, 2);
            for (int j = 0; j < flips; ++j) {
                int o = g.at(rng.below(g.rows()), rng.below(g.cols()));
                g.table[rng.below(g.rows())][rng.below(g.cols())] = o;
            }
        }
        bool d = sim_check(f, g, SimRelation::Duplicate);
        bool offer = sim_check(f, g, SimRelation::Offer);
        bool w = sim_check(f, g, SimRelation::Winning);
        if (d) CHECK(offer);
        if (offer) CHECK(w);
        CHECK(w == sim_w_by_valuations(f, g));
    }
}

TEST_CASE("bounded search for offer-similar trees")
{
    // The offer_gap form is determined but matches no tree within the bound.
    CHECK_FALSE(offer_similar_tree_exists_depth2(samples::offer_gap()));

    // Translations of depth <= 2 trees are found again.
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        auto tree = gen_tree(rng, 2, 3, 3);
        auto f = tree_to_gameform(tree, TreeTranslation::Minimalist);
        CHECK(offer_similar_tree_exists_depth2(f));
    }
}
