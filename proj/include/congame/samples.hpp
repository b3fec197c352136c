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

#include "arena.hpp"
#include "gameform.hpp"
#include "transform.hpp"

namespace congame {
namespace samples {

// Small well-known games used in tests and the sample files.

// Matching pennies: no winning strategies once x is declared winning.
inline GameForm matching_pennies()
{
    GameForm f;
    f.row_names = {"a1", "a2"};
    f.col_names = {"b1", "b2"};
    f.outcome_names = {"x", "y"};
    f.table = {{0, 1}, {1, 0}};
    return f;
}

// Three outcomes on a 2x2 diagonal; declaring z winning leaves neither a
// full row nor a full column, so the form is not determined.
inline GameForm diagonal_trap()
{
    GameForm f;
    f.row_names = {"a1", "a2"};
    f.col_names = {"b1", "b2"};
    f.outcome_names = {"x", "y", "z"};
    f.table = {{2, 0}, {1, 2}};
    return f;
}

// Determined 3x3 form in which every row offers two of the three outcomes
// and the middle column is the only one confined to {x,y}.
inline GameForm row_pairs()
{
    GameForm f;
    f.row_names = {"a1", "a2", "a3"};
    f.col_names = {"b1", "b2", "b3"};
    f.outcome_names = {"x", "y", "z"};
    f.table = {{0, 1, 1}, {2, 0, 2}, {2, 1, 1}};
    return f;
}

// Determined form whose players can offer exactly {z} or {x,y,z}; it is not
// offer-similar to any tree game form.
inline GameForm offer_gap()
{
    GameForm f;
    f.row_names = {"a1", "a2", "a3"};
    f.col_names = {"b1", "b2", "b3"};
    f.outcome_names = {"x", "y", "z"};
    f.table = {{2, 2, 2}, {2, 0, 1}, {2, 1, 0}};
    return f;
}

// Deterministic turn-based game: Player A moves at q0 (self-loop or step to
// q1), Player B at q1 may self-loop emitting y or return emitting x. B
// avoids y forever by never self-looping.
inline ConcurrentArena safety_loop()
{
    ConcurrentArena c;
    c.states = {"q0", "q1"};
    c.q0 = 0;
    c.actions_a = {"stay", "go"};
    c.actions_b = {"loop", "back"};
    c.nature = {"d_q0", "d_q1"};
    c.dist = {RationalDist::dirac(0), RationalDist::dirac(1)};
    c.colors = {"x", "y"};
    c.delta.assign(2 * 2 * 2, 0);
    for (int b = 0; b < 2; ++b) {
        c.d(0, 0, b) = 0;
        c.d(0, 1, b) = 1;
    }
    for (int a = 0; a < 2; ++a) {
        c.d(1, a, 0) = 1;
        c.d(1, a, 1) = 0;
    }
    c.col.assign(4, 0);
    c.color(1, 1) = 1; // the only y edge
    return c;
}

// Stochastic turn-based game: B picks between a risky and a safe Nature
// state; A may repeatedly gamble to reach the y edge from q2. The value of
// "y occurs at some point" from q0 is exactly 2/3 at p = 1/2.
inline ConcurrentArena retry_game(const Rat& p = Rat(1, 2))
{
    ConcurrentArena c;
    c.states = {"q0", "q1", "q2"};
    c.q0 = 0;
    c.actions_a = {"stay", "gamble"};
    c.actions_b = {"risky", "safe"};
    c.nature = {"d1", "d2", "d3", "d_q1", "d_q2"};
    c.dist.resize(5);
    c.dist[0].entries = {{1, Rat(1, 3)}, {2, Rat(2, 3)}};
    c.dist[1] = RationalDist::dirac(2);
    c.dist[2].entries = {{1, p}, {2, 1 - p}};
    c.dist[3] = RationalDist::dirac(1);
    c.dist[4] = RationalDist::dirac(2);
    c.colors = {"x", "y"};
    c.delta.assign(3 * 2 * 2, 0);
    for (int a = 0; a < 2; ++a) {
        c.d(0, a, 0) = 0; // B: risky
        c.d(0, a, 1) = 1; // B: safe
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.d(1, a, b) = 3; // q1 absorbs
    for (int b = 0; b < 2; ++b) {
        c.d(2, 0, b) = 4; // A stays
        c.d(2, 1, b) = 2; // A gambles
    }
    c.col.assign(9, 0);
    c.color(2, 1) = 1; // y only on the q2 -> q1 edge
    return c;
}

// Concurrent game with the matching-pennies interaction at q0; q1 emits y
// forever. A has no deterministic strategy to reach y but wins almost
// surely with a coin flip.
inline ConcurrentArena repeated_matching_pennies()
{
    ConcurrentArena c;
    c.states = {"q0", "q1"};
    c.q0 = 0;
    c.actions_a = {"a1", "a2"};
    c.actions_b = {"b1", "b2"};
    c.nature = {"d_q0", "d_q1"};
    c.dist = {RationalDist::dirac(0), RationalDist::dirac(1)};
    c.colors = {"x", "y"};
    c.delta.assign(2 * 2 * 2, 0);
    c.d(0, 0, 0) = 0;
    c.d(0, 0, 1) = 1;
    c.d(0, 1, 0) = 1;
    c.d(0, 1, 1) = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.d(1, a, b) = 1;
    c.col.assign(4, 0);
    c.color(1, 1) = 1;
    return c;
}

// Concurrent game where the second row is an all-or-nothing bet: the win
// state emits y forever, the losing state only x. Deterministic positional
// play gives maximin 0 but minimax 1.
inline ConcurrentArena near_win()
{
    ConcurrentArena c;
    c.states = {"q0", "qw", "ql"};
    c.q0 = 0;
    c.actions_a = {"a1", "a2"};
    c.actions_b = {"b1", "b2"};
    c.nature = {"d_q0", "d_qw", "d_ql"};
    c.dist = {RationalDist::dirac(0), RationalDist::dirac(1), RationalDist::dirac(2)};
    c.colors = {"x", "y"};
    c.delta.assign(3 * 2 * 2, 0);
    c.d(0, 0, 0) = 0;
    c.d(0, 0, 1) = 1;
    c.d(0, 1, 0) = 1;
    c.d(0, 1, 1) = 2;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            c.d(1, a, b) = 1;
            c.d(2, a, b) = 2;
        }
    c.col.assign(9, 0);
    c.color(1, 1) = 1;
    return c;
}

// Arena embedding the row_pairs interaction at q0, with the three Nature
// outcomes leading to absorbing states.
inline ConcurrentArena row_pairs_arena()
{
    GameForm f = row_pairs();
    ConcurrentArena c;
    c.states = {"q", "x", "y", "z"};
    c.q0 = 0;
    c.actions_a = f.row_names;
    c.actions_b = f.col_names;
    c.nature = {"dx", "dy", "dz"};
    c.dist = {RationalDist::dirac(1), RationalDist::dirac(2), RationalDist::dirac(3)};
    c.colors = {"x", "y", "z"};
    c.delta.assign(4 * 3 * 3, 0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) c.d(0, a, b) = f.at(a, b);
    for (int s = 1; s <= 3; ++s)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) c.d(s, a, b) = s - 1;
    c.col.assign(16, 0);
    for (int s = 1; s <= 3; ++s)
        for (int t = 0; t < 4; ++t) c.color(s, t) = s - 1;
    for (int t = 1; t <= 3; ++t) c.color(0, t) = t - 1;
    return c;
}

// Parity objective over the two-color alphabet {x,y}: y infinitely often.
inline ParityObjective y_infinitely_often()
{
    return ParityObjective{{1, 2}};
}

} // namespace samples
} // namespace congame
