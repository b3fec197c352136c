/*
 * Copyright 2026 The congame authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gadgets.hpp"
#include "gen.hpp"
#include "nash.hpp"
#include "oracle.hpp"
#include "samples.hpp"
#include "semantics.hpp"
#include "solve.hpp"

namespace congame {
namespace acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

namespace detail_acc {

inline std::string counted(int ok, int total)
{
    return std::to_string(ok) + "/" + std::to_string(total);
}

// 1. Determinacy classification against the per-valuation quantifier oracle.
inline CriterionResult criterion_gameform_classification()
{
    CriterionResult r{1, "game-form classification"};
    int ok = 0, total = 0;

    auto check = [&](bool cond) {
        ++total;
        if (cond) ++ok;
    };
    check(!is_determined(samples::matching_pennies()));
    check(!is_determined(samples::diagonal_trap()));

    Rng tree_rng(101);
    for (int i = 0; i < 40; ++i) {
        auto t = gen_tree(tree_rng, 3, 2, 4);
        check(is_determined(tree_to_gameform(t, TreeTranslation::Minimalist)));
        check(is_determined(tree_to_gameform(t, TreeTranslation::Complete)));
    }

    Rng rng(1);
    int agree = 0;
    for (int i = 0; i < 1000; ++i) {
        auto f = gen_form(rng, 4, 4, 4);
        bool all_match = true;
        std::uint32_t all = 1u << f.outcomes();
        for (std::uint32_t bits = 0; bits < all; ++bits) {
            Valuation v{bits};
            if (is_determined_for(f, v) != oracle::determined_for_naive(f, v)) all_match = false;
        }
        if (all_match && is_determined(f) == oracle::determined_naive(f)) ++agree;
    }
    check(agree == 1000);
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " checks, oracle agreement " + counted(agree, 1000);
    return r;
}

// 2. sim_d => sim_offer => sim_w on random pairs; minimalist and complete
// tree translations are duplicate-similar.
inline CriterionResult criterion_similarity_chain()
{
    CriterionResult r{2, "similarity chain"};
    Rng rng(2);
    // A second form over exactly the same outcome set, so the relations are
    // defined: random refill or entry mutation of the first.
    auto sibling = [&](const GameForm& f) {
        GameForm g = f;
        if (rng.chance(1, 2)) {
            for (auto& row : g.table)
                for (int& e : row) e = rng.below(f.outcomes());
        } else {
            int flips = rng.range(1, 3);
            for (int i = 0; i < flips; ++i)
                g.table[rng.below(g.rows())][rng.below(g.cols())] = rng.below(f.outcomes());
        }
        for (int o = 0; o < f.outcomes(); ++o) {
            bool used = false;
            for (const auto& row : g.table)
                for (int e : row) used = used || (e == o);
            if (!used) g.table[rng.below(g.rows())][rng.below(g.cols())] = o;
        }
        return g;
    };
    int chain_ok = 0, d_count = 0, offer_count = 0;
    bool cross_ok = true;
    for (int i = 0; i < 500; ++i) {
        auto f = gen_form(rng, 3, 3, 4);
        GameForm g = (rng.below(3) == 0) ? sibling(f) : duplicate_mutation(rng, f);
        bool d = sim_check(f, g, SimRelation::Duplicate);
        bool offer = sim_check(f, g, SimRelation::Offer);
        bool w = sim_check(f, g, SimRelation::Winning);
        if ((!d || offer) && (!offer || w)) ++chain_ok;
        if (d) ++d_count;
        if (offer) ++offer_count;
        if (w != sim_w_by_valuations(f, g)) cross_ok = false;
    }
    int trees_ok = 0;
    Rng tree_rng(202);
    for (int i = 0; i < 100; ++i) {
        auto t = gen_tree(tree_rng, 3, 2, 3);
        auto mini = tree_to_gameform(t, TreeTranslation::Minimalist);
        auto comp = tree_to_gameform(t, TreeTranslation::Complete);
        if (mini.outcome_names == comp.outcome_names
            && sim_check(mini, comp, SimRelation::Duplicate))
            ++trees_ok;
    }
    r.pass = (chain_ok == 500 && trees_ok == 100 && cross_ok);
    std::ostringstream os;
    os << "chain " << counted(chain_ok, 500) << " (d-similar pairs: " << d_count
       << ", offer-similar: " << offer_count << "), trees " << counted(trees_ok, 100)
       << (cross_ok ? "" : ", sim_w cross-check FAILED");
    r.detail = os.str();
    return r;
}

// 3. The stochastic retry game against the "y occurs" monitor has value
// exactly 2/3 with matching maximin and minimax.
inline CriterionResult criterion_retry_value()
{
    CriterionResult r{3, "stochastic retry-game value 2/3"};
    auto c = samples::retry_game(Rat(1, 2));
    auto prod = monitor_product(c, seen_color_monitor(c.nk(), 1));
    auto rep = bruteforce_value(prod.arena, prod.objective);
    r.pass = rep.equal && rep.maximin == Rat(2, 3);
    r.detail = "value " + rat_to_string(rep.maximin) + ", equal="
             + (rep.equal ? std::string("true") : std::string("false"));
    return r;
}

// 4. Sequentialize-solve-parallelize equals the positional brute force on
// 200 deterministic instances, with certified transferred strategies.
inline CriterionResult criterion_determinacy_transfer()
{
    CriterionResult r{4, "determinacy transfer (deterministic)"};
    int ok = 0;
    const int total = 200;
    for (unsigned long long seed = 1; seed <= total; ++seed) {
        Rng rng(seed);
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 4);
        opt.na = rng.range(2, 3);
        opt.nb = rng.range(2, 3);
        opt.nk = rng.range(2, 3);
        auto c = gen_arena(rng, opt);
        auto obj = gen_parity(rng, c.nk(), 3);
        auto solved = solve_concurrent(c, obj);
        Player brute = oracle::positional_winner(c, obj);
        if (solved.winner == brute && solved.strategy.positional()
            && certify_winning(c, solved.strategy, obj))
            ++ok;
    }
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " instances";
    return r;
}

// 5. Stochastic positional determinacy: maximin = minimax, and the same
// value on the sequential version with the extended objective.
inline CriterionResult criterion_stochastic_positional()
{
    CriterionResult r{5, "stochastic positional determinacy"};
    int ok = 0;
    const int total = 50;
    for (unsigned long long seed = 1; seed <= total; ++seed) {
        Rng rng(seed);
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.na = 2;
        opt.nb = 2;
        opt.nk = 2;
        opt.stochastic = true;
        auto c = gen_arena(rng, opt);
        auto obj = gen_parity(rng, c.nk(), 3);
        auto rep = bruteforce_value(c, obj);
        auto seq = sequentialize(c);
        auto srep = bruteforce_value(seq.tb, seq_objective(obj));
        if (rep.equal && srep.equal && rep.maximin == srep.maximin) ++ok;
    }
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " instances";
    return r;
}

// 6. Strategy-operator algebra: exact identities on the update tables and
// the memory runs.
inline CriterionResult criterion_strategy_algebra()
{
    CriterionResult r{6, "strategy-operator algebra"};
    Rng rng(6);
    int table_ok = 0;
    for (int i = 0; i < 1000; ++i) {
        auto sk = gen_skeleton(rng, 4, 4);
        auto back = par_skeleton(seq_skeleton(sk));
        if (back.update == sk.update && back.initial == sk.initial
            && back.num_states == sk.num_states)
            ++table_ok;
    }
    int run_ok = 0;
    for (int i = 0; i < 10000; ++i) {
        auto sk = gen_skeleton(rng, 4, 4);
        auto seq = seq_skeleton(sk);
        auto rho = gen_word(rng, sk.num_colors + 1, rng.range(0, 10)); // over K_C
        auto word = gen_word(rng, sk.num_colors, rng.range(0, 10));    // over K
        bool a = run_skeleton(seq, rho) == run_skeleton(sk, project_colors(rho));
        bool b = run_skeleton(par_skeleton(seq), word) == run_skeleton(seq, extend_rho_kc(word));
        if (a && b) ++run_ok;
    }
    r.pass = (table_ok == 1000 && run_ok == 10000);
    r.detail = "tables " + counted(table_ok, 1000) + ", runs " + counted(run_ok, 10000);
    return r;
}

// 7. Projection-language lemmas on random NFAs, all words up to length 6.
inline CriterionResult criterion_projection_lemmas()
{
    CriterionResult r{7, "projection-language lemmas"};
    Rng rng(7);
    const int alphabet = 3; // fresh color plus two originals
    int ok = 0;
    const int total = 200;
    for (int t = 0; t < total; ++t) {
        auto n = gen_nfa(rng, 5, alphabet);
        auto projected = nfa_project(n);
        auto lifted = nfa_lift(projected);
        bool good = true;
        // Words over the original colors, length <= 6.
        std::vector<std::vector<int>> base_words{{}};
        for (size_t i = 0; i < base_words.size() && good; ++i) {
            const auto v = base_words[i];
            if (projected.accepts(v) != oracle::proj_member(n, v)) good = false;
            // proj[proj^{-1}[L]] = L on the projected language.
            if (nfa_project(lifted).accepts(v) != projected.accepts(v)) good = false;
            if (v.size() < 6)
                for (int k = 0; k < alphabet - 1; ++k) {
                    auto w = v;
                    w.push_back(k);
                    base_words.push_back(std::move(w));
                }
        }
        // Words over the extended colors: the lift is the exact preimage.
        std::vector<std::vector<int>> ext_words{{}};
        for (size_t i = 0; i < ext_words.size() && good; ++i) {
            const auto w = ext_words[i];
            if (lifted.accepts(w) != projected.accepts(project_colors(w))) good = false;
            if (w.size() < 6)
                for (int k = 0; k < alphabet; ++k) {
                    auto w2 = w;
                    w2.push_back(k);
                    ext_words.push_back(std::move(w2));
                }
        }
        if (good) ++ok;
    }
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " automata";
    return r;
}

// 8. Cylinder-probability transfer at horizon 6 for stochastic arenas with
// stochastic memoryless strategy pairs.
inline CriterionResult criterion_cylinder_transfer()
{
    CriterionResult r{8, "cylinder-probability transfer"};
    int ok = 0;
    const int total = 20;
    for (unsigned long long seed = 1; seed <= total; ++seed) {
        Rng rng(seed);
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 3);
        opt.na = 2;
        opt.nb = 2;
        opt.nk = 2;
        opt.stochastic = true;
        opt.locally_determined = false;
        auto c = gen_arena(rng, opt);
        // Random memoryless stochastic state strategies.
        const Rat mix[] = {Rat(1, 2), Rat(1, 3), Rat(1), Rat(0)};
        std::vector<std::vector<Rat>> wa(c.nq()), wb(c.nq());
        for (int q = 0; q < c.nq(); ++q) {
            Rat pa = mix[rng.below(4)];
            wa[q] = {pa, 1 - pa};
            Rat pb = mix[rng.below(4)];
            wb[q] = {pb, 1 - pb};
        }
        StateStrategy sa = [wa](const std::vector<int>& path) { return wa[path.back()]; };
        StateStrategy sb = [wb](const std::vector<int>& path) { return wb[path.back()]; };
        if (seq_prob_equal(c, sa, sb, 6)) ++ok;
    }
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " arenas, horizon 6";
    return r;
}

// 9. Positional Nash equilibria in priority games with random acyclic
// preferences, every witness re-verified.
inline CriterionResult criterion_nash()
{
    CriterionResult r{9, "positional Nash synthesis"};
    int ok = 0;
    const int total = 50;
    for (unsigned long long seed = 1; seed <= total; ++seed) {
        Rng rng(seed);
        ArenaGenOptions opt;
        opt.nq = rng.range(2, 4);
        opt.na = rng.range(2, 3);
        opt.nb = rng.range(2, 3);
        opt.nk = rng.range(1, 4); // colors are the classes [0, n], n <= 3
        auto c = gen_arena(rng, opt);
        auto pa = gen_acyclic_preference(rng, c.nk() - 1);
        auto pb = gen_acyclic_preference(rng, c.nk() - 1);
        auto w = find_positional_ne(c, pa, pb);
        if (w.certified && w.a.positional() && w.b.positional()
            && verify_ne(c, pa, pb, w.a, w.b))
            ++ok;
    }
    r.pass = (ok == total);
    r.detail = counted(ok, total) + " games";
    return r;
}

// 10. The gadget games admit no winning strategy for either player within
// three memory states, while their sequential versions are determined.
inline CriterionResult criterion_gadgets()
{
    CriterionResult r{10, "gadget non-determinacy"};
    bool ok = true;
    std::ostringstream os;

    auto tt = build_two_tail_gadget(samples::matching_pennies(), ColorWord{{}, {"y"}},
                                    ColorWord{{}, {"x"}});
    auto ttp = monitor_product(tt.arena, tt.monitor);
    bool tt_a = refute_winning_up_to_memory(ttp.arena, ttp.objective, Player::A, 3);
    bool tt_b = refute_winning_up_to_memory(ttp.arena, ttp.objective, Player::B, 3);
    auto tt_seq = sequentialize(ttp.arena);
    auto tt_owners = tt_seq.owners();
    auto tt_solved = zielonka(tt_seq.tb, seq_objective(ttp.objective), &tt_owners);
    os << "two-tail refuted A/B: " << tt_a << "/" << tt_b
       << ", sequential winner " << player_name(tt_solved.winner[tt_seq.tb.q0]);
    ok = ok && tt_a && tt_b;

    // Chain arena whose final interaction is matching pennies.
    ConcurrentArena chain;
    chain.states = {"q0", "q1", "q2"};
    chain.q0 = 0;
    chain.actions_a = {"a1", "a2"};
    chain.actions_b = {"b1", "b2"};
    chain.nature = {"d_q0", "d_q1", "d_q2"};
    chain.dist = {RationalDist::dirac(0), RationalDist::dirac(1), RationalDist::dirac(2)};
    chain.colors = {"c"};
    chain.delta.assign(12, 0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) chain.d(0, a, b) = 1;
    chain.d(1, 0, 0) = 2;
    chain.d(1, 0, 1) = 0;
    chain.d(1, 1, 0) = 0;
    chain.d(1, 1, 1) = 2;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) chain.d(2, a, b) = 2;
    chain.col.assign(9, 0);
    auto oc = build_open_counterexample(chain, 1);
    auto ocp = monitor_product(oc.arena, oc.monitor);
    bool oc_a = refute_winning_up_to_memory(ocp.arena, ocp.objective, Player::A, 3);
    bool oc_b = refute_winning_up_to_memory(ocp.arena, ocp.objective, Player::B, 3);
    auto oc_seq = sequentialize(ocp.arena);
    auto oc_owners = oc_seq.owners();
    auto oc_solved = zielonka(oc_seq.tb, seq_objective(ocp.objective), &oc_owners);
    os << "; open refuted A/B: " << oc_a << "/" << oc_b << ", sequential winner "
       << player_name(oc_solved.winner[oc_seq.tb.q0]);
    ok = ok && oc_a && oc_b;

    r.pass = ok;
    r.detail = os.str();
    return r;
}

} // namespace detail_acc

inline std::vector<CriterionResult> run_all()
{
    using detail_acc::criterion_cylinder_transfer;
    using detail_acc::criterion_determinacy_transfer;
    using detail_acc::criterion_gadgets;
    using detail_acc::criterion_gameform_classification;
    using detail_acc::criterion_nash;
    using detail_acc::criterion_projection_lemmas;
    using detail_acc::criterion_retry_value;
    using detail_acc::criterion_similarity_chain;
    using detail_acc::criterion_stochastic_positional;
    using detail_acc::criterion_strategy_algebra;

    std::vector<CriterionResult (*)()> criteria = {
        criterion_gameform_classification, criterion_similarity_chain, criterion_retry_value,
        criterion_determinacy_transfer,    criterion_stochastic_positional,
        criterion_strategy_algebra,        criterion_projection_lemmas,
        criterion_cylinder_transfer,       criterion_nash,
        criterion_gadgets,
    };
    std::vector<CriterionResult> results;
    for (auto* fn : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.id == 0) r.id = static_cast<int>(results.size()) + 1;
        results.push_back(std::move(r));
    }
    return results;
}

inline int report(std::ostream& out)
{
    auto results = run_all();
    int failures = 0;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS]" : "[FAIL]") << " " << r.id << ". " << r.name << ": "
            << r.detail << " (" << r.seconds << "s)\n";
        if (!r.pass) ++failures;
    }
    out << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
        << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace acceptance
} // namespace congame
