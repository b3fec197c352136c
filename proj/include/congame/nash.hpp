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

#include <set>
#include <vector>

#include "semantics.hpp"
#include "solve.hpp"

namespace congame {

/**
 * Priority games: the arena's colors are the priorities 0..n and the
 * outcome classes are "the maximum color seen infinitely often equals k".
 */
struct PriorityPartition {
    int n = 0; // classes are [0, n]
    static PriorityPartition of(const ConcurrentArena& c) { return {c.nk() - 1}; }
};

// Strict preference over outcome classes; must be acyclic.
struct Preference {
    std::vector<std::pair<int, int>> edges; // (k, k') meaning k' is preferred to k

    bool prefers_over(int worse, int better) const
    {
        for (auto [w, b] : edges)
            if (w == worse && b == better) return true;
        return false;
    }
};

inline bool is_acyclic(const Preference& pref, int n)
{
    std::vector<std::vector<int>> succ(n + 1);
    for (auto [w, b] : pref.edges) {
        if (w < 0 || w > n || b < 0 || b > n) throw error("preference references unknown class");
        succ[w].push_back(b);
    }
    int ncomp = 0;
    auto comp = tarjan_scc(n + 1, succ, &ncomp);
    std::vector<int> size(ncomp, 0);
    for (int k = 0; k <= n; ++k) ++size[comp[k]];
    for (int k = 0; k <= n; ++k) {
        if (size[comp[k]] > 1) return false;
        for (int b : succ[k])
            if (b == k) return false;
    }
    return true;
}

/**
 * Classes the free player can force once the other player is pinned to a
 * positional strategy: the remaining one-player game realizes max(inf)=k
 * iff the free player wins the singleton-threshold parity objective.
 */
inline std::set<int> achievable_classes(const ConcurrentArena& c, const FiniteStrategy& fixed)
{
    auto cls = classify(c);
    if (!cls.deterministic) throw error("achievable_classes: arena is not deterministic");
    if (!fixed.positional()) throw error("achievable_classes: fixed strategy must be positional");
    Player free = opponent(fixed.player);
    int n = c.nk() - 1;

    // Auxiliary one-player game: the free player's choices become Player A
    // moves, so the parity winner answers "does some play realize the
    // class" regardless of which player is actually deviating.
    EdgeGame g;
    g.n = c.nq();
    g.owner.assign(g.n, Player::A);
    g.moves.resize(g.n);
    for (int q = 0; q < g.n; ++q) {
        std::map<int, int> min_action;
        int count = (free == Player::A) ? c.na() : c.nb();
        for (int act = 0; act < count; ++act) {
            int a = (free == Player::A) ? act : fixed.act(0, q);
            int b = (free == Player::A) ? fixed.act(0, q) : act;
            min_action.try_emplace(c.step(q, a, b), act);
        }
        for (const auto& [succ, act] : min_action)
            g.moves[q].emplace_back(act, succ, c.color(q, succ));
    }

    std::set<int> result;
    for (int k = 0; k <= n; ++k) {
        auto obj = remap_threshold(ThresholdSet{{k}}, n);
        auto solved = zielonka(g, obj);
        if (solved.winner[c.q0] == Player::A) result.insert(k);
    }
    return result;
}

struct NEWitness {
    FiniteStrategy a, b;
    int outcome_class = -1;
    bool certified = false;
};

/**
 * Nash equilibrium check for a positional profile: neither player may have
 * any deviation, over arbitrary strategies, whose outcome class they
 * strictly prefer. Deviations are quantified exactly through the
 * one-player games above.
 */
inline bool verify_ne(const ConcurrentArena& c, const Preference& pref_a,
                      const Preference& pref_b, const FiniteStrategy& sa,
                      const FiniteStrategy& sb, int* outcome_class = nullptr)
{
    int n = c.nk() - 1;
    ParityObjective colors_as_priorities;
    for (int k = 0; k <= n; ++k) colors_as_priorities.priority.push_back(k);
    Lasso lasso = outcome_lasso(c, sa, sb, colors_as_priorities);
    int kstar = lasso.max_priority;
    if (outcome_class) *outcome_class = kstar;
    for (int k : achievable_classes(c, sb))
        if (pref_a.prefers_over(kstar, k)) return false;
    for (int k : achievable_classes(c, sa))
        if (pref_b.prefers_over(kstar, k)) return false;
    return true;
}

/**
 * Positional Nash equilibrium synthesis. Candidates come from the
 * threshold games: every subset H of classes yields a parity game via the
 * strictly increasing remap, solved through the sequential pipeline, and
 * the transferred positional strategies of both players are combined
 * across subsets. If no candidate pair verifies (the guiding theorem is
 * non-constructive), an exhaustive positional search finishes the job.
 * Every returned witness has passed verify_ne.
 */
inline NEWitness find_positional_ne(const ConcurrentArena& c, const Preference& pref_a,
                                    const Preference& pref_b,
                                    unsigned long long cap = 1ull << 20)
{
    require_valid(c);
    auto cls = classify(c);
    if (!cls.deterministic) throw error("find_positional_ne: arena is not deterministic");
    require_locally_determined(c);
    int n = c.nk() - 1;
    if (!is_acyclic(pref_a, n) || !is_acyclic(pref_b, n))
        throw error("find_positional_ne: preferences must be acyclic");

    std::vector<FiniteStrategy> cand_a, cand_b;
    SeqArena seq = sequentialize(c);
    auto owners = seq.owners();
    for (unsigned long long h = 0; h < (1ull << (n + 1)); ++h) {
        ThresholdSet ts;
        for (int k = 0; k <= n; ++k)
            if ((h >> k) & 1) ts.h.insert(k);
        auto obj = remap_threshold(ts, n);
        auto sobj = seq_objective(obj);
        auto solved = zielonka(seq.tb, sobj, &owners);
        FiniteStrategy sig_a =
            FiniteStrategy::positional_of(Player::A, seq.tb.nk(), solved.strategy_a);
        FiniteStrategy sig_b =
            FiniteStrategy::positional_of(Player::B, seq.tb.nk(), solved.strategy_b);
        cand_a.push_back(par_strategy_a(sig_a, seq));
        cand_b.push_back(par_strategy_b(sig_b, c, seq));
    }

    NEWitness w;
    for (const auto& sa : cand_a)
        for (const auto& sb : cand_b)
            if (verify_ne(c, pref_a, pref_b, sa, sb, &w.outcome_class)) {
                w.a = sa;
                w.b = sb;
                w.certified = true;
                return w;
            }

    auto reps_a = detail::action_class_reps(c, Player::A);
    auto reps_b = detail::action_class_reps(c, Player::B);
    unsigned long long count = 1;
    for (int q = 0; q < c.nq(); ++q) {
        count *= static_cast<unsigned long long>(reps_a[q].size()) * reps_b[q].size();
        if (count > cap) throw cap_error("find_positional_ne: profile space exceeds the cap");
    }
    std::vector<int> ia(c.nq(), 0);
    do {
        std::vector<int> ib(c.nq(), 0);
        do {
            FiniteStrategy sa = FiniteStrategy::positional_of(
                Player::A, c.nk(), detail::indexed_profile(ia, reps_a));
            FiniteStrategy sb = FiniteStrategy::positional_of(
                Player::B, c.nk(), detail::indexed_profile(ib, reps_b));
            if (verify_ne(c, pref_a, pref_b, sa, sb, &w.outcome_class)) {
                w.a = sa;
                w.b = sb;
                w.certified = true;
                return w;
            }
        } while (detail::next_indexed_profile(ib, reps_b));
    } while (detail::next_indexed_profile(ia, reps_a));
    throw error("find_positional_ne: no positional equilibrium found");
}

} // namespace congame
