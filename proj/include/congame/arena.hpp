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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gameform.hpp"
#include "rational.hpp"

namespace congame {

// Discrete distribution with exact rational weights. Entries are sorted by
// id, weights are non-zero and sum to one.
struct RationalDist {
    std::vector<std::pair<int, Rat>> entries;

    static RationalDist dirac(int id) { return RationalDist{{{id, Rat(1)}}}; }
    bool is_dirac() const { return entries.size() == 1; }
    Rat at(int id) const
    {
        for (const auto& [k, p] : entries)
            if (k == id) return p;
        return Rat(0);
    }
    Rat total() const
    {
        Rat s(0);
        for (const auto& [k, p] : entries) s += p;
        return s;
    }
};

/**
 * A colored stochastic concurrent graph arena. Both players pick an action
 * simultaneously at every state; the pair selects a Nature state, whose
 * distribution picks the successor. Colors sit on ordered state pairs, so
 * Nature states never influence the observable color sequence.
 *
 * Everything is dense integer ids plus name tables; probabilities are exact
 * rationals end to end.
 */
struct ConcurrentArena {
    std::vector<std::string> states;    // Q
    int q0 = 0;
    std::vector<std::string> actions_a; // A, ordered by id (the order <_A)
    std::vector<std::string> actions_b; // B
    std::vector<std::string> nature;    // D
    std::vector<int> delta;             // (q,a,b) -> nature id, dense
    std::vector<RationalDist> dist;     // per Nature state, over Q
    std::vector<std::string> colors;    // K
    std::vector<int> col;               // (q,q') -> color id, dense over QxQ

    int nq() const { return static_cast<int>(states.size()); }
    int na() const { return static_cast<int>(actions_a.size()); }
    int nb() const { return static_cast<int>(actions_b.size()); }
    int nd() const { return static_cast<int>(nature.size()); }
    int nk() const { return static_cast<int>(colors.size()); }

    int d(int q, int a, int b) const { return delta[(q * na() + a) * nb() + b]; }
    int& d(int q, int a, int b) { return delta[(q * na() + a) * nb() + b]; }
    int color(int q, int q2) const { return col[q * nq() + q2]; }
    int& color(int q, int q2) { return col[q * nq() + q2]; }

    // Dirac successor of a Nature state, or -1 when genuinely stochastic.
    int dirac_target(int dd) const
    {
        return dist[dd].is_dirac() ? dist[dd].entries[0].first : -1;
    }
    // Successor under a deterministic arena; throws on stochastic Nature.
    int step(int q, int a, int b) const
    {
        int t = dirac_target(d(q, a, b));
        if (t < 0) throw error("step: arena is not deterministic at state " + states[q]);
        return t;
    }
};

inline std::vector<std::string> validate(const ConcurrentArena& c)
{
    std::vector<std::string> bad;
    if (c.states.empty()) bad.push_back("no states");
    if (c.actions_a.empty() || c.actions_b.empty()) bad.push_back("empty action set");
    if (c.colors.empty()) bad.push_back("no colors");
    auto check_names = [&](const std::vector<std::string>& names, const char* what) {
        std::set<std::string> seen;
        for (const auto& n : names) {
            if (n.empty()) bad.push_back(std::string(what) + ": empty name");
            if (n.find(',') != std::string::npos)
                bad.push_back(std::string(what) + " \"" + n + "\": names may not contain commas");
            if (!seen.insert(n).second)
                bad.push_back(std::string(what) + " \"" + n + "\": duplicate name");
        }
    };
    check_names(c.states, "state");
    check_names(c.actions_a, "action of A");
    check_names(c.actions_b, "action of B");
    check_names(c.nature, "Nature state");
    check_names(c.colors, "color");
    if (c.q0 < 0 || c.q0 >= c.nq()) bad.push_back("initial state out of range");
    if (static_cast<int>(c.delta.size()) != c.nq() * c.na() * c.nb())
        bad.push_back("delta is not total over Q x A x B");
    else
        for (int i = 0; i < static_cast<int>(c.delta.size()); ++i)
            if (c.delta[i] < 0 || c.delta[i] >= c.nd()) {
                bad.push_back("delta entry " + std::to_string(i) + " references unknown Nature state");
                break;
            }
    if (static_cast<int>(c.dist.size()) != c.nd())
        bad.push_back("dist is not total over Nature states");
    else
        for (int dd = 0; dd < c.nd(); ++dd) {
            const auto& e = c.dist[dd].entries;
            if (e.empty()) {
                bad.push_back("Nature state " + c.nature[dd] + ": empty distribution");
                continue;
            }
            std::set<int> targets;
            for (const auto& [q, p] : e) {
                if (q < 0 || q >= c.nq())
                    bad.push_back("Nature state " + c.nature[dd] + ": unknown target state");
                if (p <= 0)
                    bad.push_back("Nature state " + c.nature[dd] + ": non-positive weight");
                if (!targets.insert(q).second)
                    bad.push_back("Nature state " + c.nature[dd] + ": duplicate target state");
            }
            if (c.dist[dd].total() != Rat(1))
                bad.push_back("Nature state " + c.nature[dd] + ": distribution sums to "
                              + rat_to_string(c.dist[dd].total()) + ", not 1");
        }
    if (static_cast<int>(c.col.size()) != c.nq() * c.nq())
        bad.push_back("col is not total over Q x Q");
    else
        for (int i = 0; i < static_cast<int>(c.col.size()); ++i)
            if (c.col[i] < 0 || c.col[i] >= c.nk()) {
                bad.push_back("col entry " + std::to_string(i) + " references unknown color");
                break;
            }
    return bad;
}

inline void require_valid(const ConcurrentArena& c)
{
    auto bad = validate(c);
    if (!bad.empty()) throw error("invalid arena: " + bad.front());
}

/**
 * The local interaction at q: the game form whose rows are A's actions,
 * columns B's actions, and outcomes the Nature states reachable at q.
 */
inline GameForm local_interaction(const ConcurrentArena& c, int q,
                                  std::vector<int>* nature_to_outcome = nullptr)
{
    if (q < 0 || q >= c.nq()) throw error("local_interaction: unknown state");
    std::vector<int> local_of(c.nd(), -1);
    GameForm f;
    f.row_names = c.actions_a;
    f.col_names = c.actions_b;
    f.table.assign(c.na(), std::vector<int>(c.nb(), 0));
    for (int dd = 0; dd < c.nd(); ++dd) {
        bool used = false;
        for (int a = 0; a < c.na() && !used; ++a)
            for (int b = 0; b < c.nb() && !used; ++b) used = (c.d(q, a, b) == dd);
        if (used) {
            local_of[dd] = f.outcomes();
            f.outcome_names.push_back(c.nature[dd]);
        }
    }
    for (int a = 0; a < c.na(); ++a)
        for (int b = 0; b < c.nb(); ++b) f.table[a][b] = local_of[c.d(q, a, b)];
    if (nature_to_outcome) *nature_to_outcome = local_of;
    return f;
}

struct ArenaClass {
    bool deterministic = false;
    bool turn_based = false;
    bool locally_determined = false;
};

// Turn-based ownership: A owns q when B's action never matters there, B owns
// q when A's never does. Trivial states may satisfy both; the tie goes to A
// by convention.
inline std::optional<Player> state_owner(const ConcurrentArena& c, int q)
{
    bool a_owns = true;
    for (int a = 0; a < c.na() && a_owns; ++a)
        for (int b = 1; b < c.nb() && a_owns; ++b)
            a_owns = (c.d(q, a, b) == c.d(q, a, 0));
    if (a_owns) return Player::A;
    bool b_owns = true;
    for (int b = 0; b < c.nb() && b_owns; ++b)
        for (int a = 1; a < c.na() && b_owns; ++a)
            b_owns = (c.d(q, a, b) == c.d(q, 0, b));
    if (b_owns) return Player::B;
    return std::nullopt;
}

// First state whose local interaction is not a determined game form, or -1.
inline int first_non_determined_state(const ConcurrentArena& c)
{
    for (int q = 0; q < c.nq(); ++q)
        if (!is_determined(local_interaction(c, q))) return q;
    return -1;
}

inline ArenaClass classify(const ConcurrentArena& c)
{
    ArenaClass k;
    k.deterministic = true;
    for (int dd = 0; dd < c.nd(); ++dd)
        if (!c.dist[dd].is_dirac()) { k.deterministic = false; break; }
    k.turn_based = true;
    for (int q = 0; q < c.nq() && k.turn_based; ++q)
        k.turn_based = state_owner(c, q).has_value();
    k.locally_determined = (first_non_determined_state(c) == -1);
    return k;
}

inline void require_locally_determined(const ConcurrentArena& c)
{
    int q = first_non_determined_state(c);
    if (q >= 0)
        throw error("state " + c.states[q] + ": local interaction not determined");
}

} // namespace congame
