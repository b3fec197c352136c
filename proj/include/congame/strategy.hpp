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

#include <span>
#include <vector>

#include "arena.hpp"
#include "transform.hpp"

namespace congame {

/**
 * A memory skeleton: a deterministic finite automaton over colors driving a
 * finite-memory strategy. The implemented color strategy also needs an
 * action map, see FiniteStrategy.
 */
struct MemorySkeleton {
    int num_states = 1;
    int initial = 0;
    int num_colors = 0;
    std::vector<int> update; // (m,k) -> m'

    int step(int m, int k) const { return update[m * num_colors + k]; }
    int run(std::span<const int> colors) const
    {
        int m = initial;
        for (int k : colors) m = step(m, k);
        return m;
    }
    static MemorySkeleton trivial(int num_colors)
    {
        MemorySkeleton s;
        s.num_colors = num_colors;
        s.update.assign(num_colors, 0);
        return s;
    }
};

inline int run_skeleton(const MemorySkeleton& sk, std::span<const int> colors)
{
    for (int k : colors)
        if (k < 0 || k >= sk.num_colors) throw error("run_skeleton: unknown color in word");
    return sk.run(colors);
}

/**
 * A finite-memory color strategy: skeleton plus action map. `num_locations`
 * is the number of states of the arena the strategy targets; positional
 * strategies have a single memory state.
 */
struct FiniteStrategy {
    Player player = Player::A;
    MemorySkeleton skeleton;
    int num_locations = 0;
    std::vector<int> action; // (m,q) -> action id

    int act(int m, int q) const { return action[m * num_locations + q]; }
    bool positional() const { return skeleton.num_states == 1; }

    static FiniteStrategy positional_of(Player p, int num_colors, std::vector<int> per_state)
    {
        FiniteStrategy s;
        s.player = p;
        s.skeleton = MemorySkeleton::trivial(num_colors);
        s.num_locations = static_cast<int>(per_state.size());
        s.action = std::move(per_state);
        return s;
    }
};

// Sequential version of a skeleton: ignore the fresh color, mimic the
// update on shifted original colors.
inline MemorySkeleton seq_skeleton(const MemorySkeleton& sk)
{
    MemorySkeleton out;
    out.num_states = sk.num_states;
    out.initial = sk.initial;
    out.num_colors = sk.num_colors + 1;
    out.update.assign(out.num_states * out.num_colors, 0);
    for (int m = 0; m < sk.num_states; ++m) {
        out.update[m * out.num_colors + 0] = m;
        for (int k = 0; k < sk.num_colors; ++k)
            out.update[m * out.num_colors + (k + 1)] = sk.step(m, k);
    }
    return out;
}

// Parallel version: one observed color corresponds to two sequential steps,
// first the fresh color and then the color itself.
inline MemorySkeleton par_skeleton(const MemorySkeleton& sk)
{
    if (sk.num_colors < 1) throw error("par_skeleton: skeleton lacks the fresh color");
    MemorySkeleton out;
    out.num_states = sk.num_states;
    out.initial = sk.initial;
    out.num_colors = sk.num_colors - 1;
    out.update.assign(out.num_states * out.num_colors, 0);
    for (int m = 0; m < sk.num_states; ++m)
        for (int k = 0; k < out.num_colors; ++k)
            out.update[m * out.num_colors + k] = sk.step(sk.step(m, 0), k + 1);
    return out;
}

/**
 * Sequential version of a strategy: same memory, action map copied onto the
 * relevant half of the turn-based state space, minimum action elsewhere.
 */
inline FiniteStrategy seq_strategy(const FiniteStrategy& s, const ConcurrentArena& c,
                                   const SeqArena& seq)
{
    if (s.num_locations != c.nq()) throw error("seq_strategy: strategy does not target the arena");
    FiniteStrategy out;
    out.player = s.player;
    out.skeleton = seq_skeleton(s.skeleton);
    out.num_locations = seq.tb.nq();
    out.action.assign(out.skeleton.num_states * out.num_locations, 0);
    for (int m = 0; m < out.skeleton.num_states; ++m)
        for (int v = 0; v < out.num_locations; ++v) {
            if (s.player == Player::A) {
                if (!seq.is_vb(v)) out.action[m * out.num_locations + v] = s.act(m, v);
            } else {
                if (seq.is_vb(v)) {
                    auto [q, a] = seq.vb_pair(v);
                    (void)a;
                    out.action[m * out.num_locations + v] = s.act(m, q);
                }
            }
        }
    return out;
}

// Parallelization for the first mover: restrict the action map to the
// original states, compose the update through the fresh color.
inline FiniteStrategy par_strategy_a(const FiniteStrategy& s, const SeqArena& seq)
{
    if (s.player != Player::A) throw error("par_strategy_a: expected a strategy for Player A");
    if (s.num_locations != seq.tb.nq())
        throw error("par_strategy_a: strategy does not target the sequential arena");
    FiniteStrategy out;
    out.player = Player::A;
    out.skeleton = par_skeleton(s.skeleton);
    out.num_locations = seq.num_states;
    out.action.assign(out.skeleton.num_states * out.num_locations, 0);
    for (int m = 0; m < out.skeleton.num_states; ++m)
        for (int q = 0; q < seq.num_states; ++q)
            out.action[m * out.num_locations + q] = s.act(m, seq.va(q));
    return out;
}

/**
 * Parallelization for the second mover. The sequential strategy reacts to A's
 * half-step, so its choices at the pair states pin down which Nature states
 * remain reachable; local determinacy guarantees a single column confined to
 * that set, and we commit to the least such column.
 */
inline FiniteStrategy par_strategy_b(const FiniteStrategy& s, const ConcurrentArena& c,
                                     const SeqArena& seq)
{
    if (s.player != Player::B) throw error("par_strategy_b: expected a strategy for Player B");
    if (s.num_locations != seq.tb.nq())
        throw error("par_strategy_b: strategy does not target the sequential arena");
    require_locally_determined(c);
    FiniteStrategy out;
    out.player = Player::B;
    out.skeleton = par_skeleton(s.skeleton);
    out.num_locations = c.nq();
    out.action.assign(out.skeleton.num_states * out.num_locations, 0);
    for (int m = 0; m < out.skeleton.num_states; ++m) {
        int after_kc = s.skeleton.step(m, seq.kc);
        for (int q = 0; q < c.nq(); ++q) {
            std::vector<int> local_of;
            GameForm f = local_interaction(c, q, &local_of);
            std::uint32_t reach = 0;
            for (int a = 0; a < c.na(); ++a) {
                int b = s.act(after_kc, seq.vb(q, a));
                reach |= 1u << local_of[c.d(q, a, b)];
            }
            auto cols = winning_for_target(f, reach, Player::B);
            if (cols.empty())
                throw error("par_strategy_b: no confined column at state " + c.states[q]);
            out.action[m * out.num_locations + q] = cols.front();
        }
    }
    return out;
}

// Behavioral equivalence of two finite-memory strategies on the same arena:
// product walk over memory pairs, comparing actions everywhere and updates
// on every color.
inline bool mealy_equivalent(const FiniteStrategy& s1, const FiniteStrategy& s2)
{
    if (s1.player != s2.player || s1.num_locations != s2.num_locations
        || s1.skeleton.num_colors != s2.skeleton.num_colors)
        return false;
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> queue{{s1.skeleton.initial, s2.skeleton.initial}};
    seen.insert(queue.front());
    while (!queue.empty()) {
        auto [m1, m2] = queue.back();
        queue.pop_back();
        for (int q = 0; q < s1.num_locations; ++q)
            if (s1.act(m1, q) != s2.act(m2, q)) return false;
        for (int k = 0; k < s1.skeleton.num_colors; ++k) {
            std::pair<int, int> next{s1.skeleton.step(m1, k), s2.skeleton.step(m2, k)};
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return true;
}

} // namespace congame
