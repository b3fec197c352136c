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

#include "arena.hpp"
#include "gameform.hpp"
#include "semantics.hpp"
#include "solve.hpp"
#include "strategy.hpp"
#include "transform.hpp"

namespace congame {
namespace oracle {

// Brute-force backends kept deliberately independent of the main
// implementations; the test suites and the `oracle` CLI subcommand
// cross-check against them.

// Winner of a win/lose game by direct quantifier evaluation over all
// action pairs.
inline Winner determined_for_naive(const GameForm& f, const Valuation& v)
{
    for (int r = 0; r < f.rows(); ++r) {
        bool wins = true;
        for (int c = 0; c < f.cols(); ++c)
            if (!v.contains(f.at(r, c))) { wins = false; break; }
        if (wins) return Winner::A;
    }
    for (int c = 0; c < f.cols(); ++c) {
        bool wins = true;
        for (int r = 0; r < f.rows(); ++r)
            if (v.contains(f.at(r, c))) { wins = false; break; }
        if (wins) return Winner::B;
    }
    return Winner::None;
}

inline bool determined_naive(const GameForm& f)
{
    std::uint32_t all = 1u << f.outcomes();
    for (std::uint32_t bits = 0; bits < all; ++bits)
        if (determined_for_naive(f, Valuation{bits}) == Winner::None) return false;
    return true;
}

// Winner of a deterministic concurrent parity game over raw positional
// profiles, evaluated by lasso simulation.
inline Player positional_winner(const ConcurrentArena& c, const ParityObjective& obj)
{
    std::vector<int> pa(c.nq(), 0);
    do {
        bool all_win = true;
        std::vector<int> pb(c.nq(), 0);
        do {
            auto sa = FiniteStrategy::positional_of(Player::A, c.nk(), pa);
            auto sb = FiniteStrategy::positional_of(Player::B, c.nk(), pb);
            if (outcome_lasso(c, sa, sb, obj).max_priority % 2 != 0) {
                all_win = false;
                break;
            }
        } while (detail::next_profile(pb, c.nb()));
        if (all_win) return Player::A;
    } while (detail::next_profile(pa, c.na()));
    return Player::B;
}

// Membership of a word in the projection of an NFA language, decided
// directly on the original automaton: epsilon and fresh-color transitions
// are free moves, other labels consume the next letter.
inline bool proj_member(const ColorNFA& n, std::span<const int> word)
{
    auto free_closure = [&](std::set<int> s) {
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [u, l, v] : n.transitions)
                if ((l == ColorNFA::eps || l == 0) && s.count(u) && !s.count(v)) {
                    s.insert(v);
                    grew = true;
                }
        }
        return s;
    };
    std::set<int> s = free_closure(n.initial);
    for (int k : word) {
        std::set<int> next;
        for (const auto& [u, l, v] : n.transitions)
            if (l == k + 1 && s.count(u)) next.insert(v);
        s = free_closure(std::move(next));
        if (s.empty()) return false;
    }
    for (int q : s)
        if (n.accepting.count(q)) return true;
    return false;
}

// Attractor by plain iteration to stability.
inline std::vector<char> attractor_naive(const TurnGame& g, Player player,
                                         const std::vector<int>& targets)
{
    std::vector<char> in(g.n, 0);
    for (int t : targets) in[t] = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = 0; v < g.n; ++v) {
            if (in[v]) continue;
            bool can = false;
            if (g.owner[v] == player) {
                for (int w : g.succ[v])
                    if (in[w]) { can = true; break; }
            } else {
                can = !g.succ[v].empty();
                for (int w : g.succ[v])
                    if (!in[w]) { can = false; break; }
            }
            if (can) {
                in[v] = 1;
                grew = true;
            }
        }
    }
    return in;
}

// Classes achievable by the free player once the other is fixed, by lasso
// enumeration over the free player's positional profiles.
inline std::set<int> achievable_by_profiles(const ConcurrentArena& c, const FiniteStrategy& fixed)
{
    ParityObjective ident;
    for (int k = 0; k < c.nk(); ++k) ident.priority.push_back(k);
    Player free = opponent(fixed.player);
    int count = (free == Player::A) ? c.na() : c.nb();
    std::set<int> out;
    std::vector<int> prof(c.nq(), 0);
    do {
        auto dev = FiniteStrategy::positional_of(free, c.nk(), prof);
        const FiniteStrategy& sa = (free == Player::A) ? dev : fixed;
        const FiniteStrategy& sb = (free == Player::A) ? fixed : dev;
        out.insert(outcome_lasso(c, sa, sb, ident).max_priority);
    } while (detail::next_profile(prof, count));
    return out;
}

// Strong-reachability fixpoint recomputed from the definition each round.
inline std::set<int> strong_reach_naive(const ConcurrentArena& c, int target)
{
    std::set<int> r{target};
    while (true) {
        std::set<int> next = r;
        for (int q = 0; q < c.nq(); ++q) {
            std::vector<int> local_of;
            GameForm f = local_interaction(c, q, &local_of);
            std::uint32_t mask = 0;
            for (int dd = 0; dd < c.nd(); ++dd)
                if (local_of[dd] >= 0 && r.count(c.dirac_target(dd))) mask |= 1u << local_of[dd];
            if (!winning_for_target(f, mask, Player::A).empty()
                || !winning_for_target(f, mask, Player::B).empty())
                next.insert(q);
        }
        if (next == r) return r;
        r = std::move(next);
    }
}

} // namespace oracle
} // namespace congame
