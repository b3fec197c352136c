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
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "arena.hpp"

namespace congame {

// Max-parity winning condition: Player A wins a play iff the maximum
// priority seen infinitely often is even. Priorities are per color id.
struct ParityObjective {
    std::vector<int> priority;

    int min_priority() const
    {
        int m = priority.empty() ? 0 : priority[0];
        for (int p : priority) m = std::min(m, p);
        return m;
    }
    int max_priority() const
    {
        int m = 0;
        for (int p : priority) m = std::max(m, p);
        return m;
    }
};

/**
 * The sequential version of a concurrent arena. Player A's states are the
 * original states (same ids), Player B's states are the pairs (q,a); each
 * pair is also materialized as a Dirac Nature state so the construction is
 * literal. The fresh half-step color has id 0; original color k becomes
 * k+1, with a stable name map.
 */
struct SeqArena {
    ConcurrentArena tb;   // the turn-based arena
    int num_states = 0;   // |Q| of the source; V_A = [0, num_states)
    int num_actions_a = 0;
    int kc = 0;           // fresh color id in tb.colors

    int va(int q) const { return q; }
    int vb(int q, int a) const { return num_states + q * num_actions_a + a; }
    bool is_vb(int v) const { return v >= num_states; }
    std::pair<int, int> vb_pair(int v) const
    {
        int off = v - num_states;
        return {off / num_actions_a, off % num_actions_a};
    }
    // Partition V = V_A + V_B as turn-based ownership.
    std::vector<Player> owners() const
    {
        std::vector<Player> o(tb.nq(), Player::B);
        for (int q = 0; q < num_states; ++q) o[q] = Player::A;
        return o;
    }
};

inline SeqArena sequentialize(const ConcurrentArena& c)
{
    require_valid(c);
    SeqArena s;
    s.num_states = c.nq();
    s.num_actions_a = c.na();
    ConcurrentArena& t = s.tb;

    t.states = c.states;
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a)
            t.states.push_back(c.states[q] + "#" + c.actions_a[a]);
    t.q0 = c.q0;
    t.actions_a = c.actions_a;
    t.actions_b = c.actions_b;

    // Nature: one Dirac state per (q,a) pair, then the original ones.
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a) {
            t.nature.push_back("@" + c.states[q] + "#" + c.actions_a[a]);
            t.dist.push_back(RationalDist::dirac(s.vb(q, a)));
        }
    int nature_base = c.nq() * c.na();
    t.nature.insert(t.nature.end(), c.nature.begin(), c.nature.end());
    for (int dd = 0; dd < c.nd(); ++dd) t.dist.push_back(c.dist[dd]); // targets are V_A ids

    t.colors.push_back("#");
    for (const auto& k : c.colors) t.colors.push_back(k);

    int nv = t.nq();
    t.delta.assign(nv * c.na() * c.nb(), 0);
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a)
            for (int b = 0; b < c.nb(); ++b)
                t.d(q, a, b) = q * c.na() + a; // to the Dirac pair state
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a) {
            int v = s.vb(q, a);
            for (int a2 = 0; a2 < c.na(); ++a2)
                for (int b = 0; b < c.nb(); ++b)
                    t.d(v, a2, b) = nature_base + c.d(q, a, b);
        }

    // col: fresh color on the half-step, shifted original color after B's
    // reply; color id 0 (the fresh color) on all remaining pairs.
    t.col.assign(nv * nv, 0);
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a)
            for (int q2 = 0; q2 < c.nq(); ++q2)
                t.color(s.vb(q, a), q2) = c.color(q, q2) + 1;
    require_valid(t);
    return s;
}

/**
 * Extends a parity objective over the original colors (priorities within
 * [m,n]) to the sequentialized color set: the fresh color gets priority
 * m-1, which never changes the winner. When m = 0 all priorities are first
 * shifted by +2; an even shift leaves max-parity winners untouched.
 */
inline ParityObjective seq_objective(const ParityObjective& obj, int m)
{
    for (int p : obj.priority)
        if (p < m) throw error("seq_objective: priority below the declared minimum");
    int shift = (m == 0) ? 2 : 0;
    ParityObjective out;
    out.priority.push_back(m + shift - 1);
    for (int p : obj.priority) out.priority.push_back(p + shift);
    return out;
}

inline ParityObjective seq_objective(const ParityObjective& obj)
{
    return seq_objective(obj, obj.min_priority());
}

// Color words over the sequential id space: 0 is the fresh color, original
// color k appears as k+1. Projection erases the fresh color.
inline std::vector<int> project_colors(std::span<const int> word)
{
    std::vector<int> out;
    for (int k : word)
        if (k != 0) out.push_back(k - 1);
    return out;
}

inline std::vector<int> project_path(std::span<const int> path, int num_va)
{
    std::vector<int> out;
    for (int v : path)
        if (v < num_va) out.push_back(v);
    return out;
}

inline std::vector<int> extend_rho_kc(std::span<const int> word)
{
    std::vector<int> out;
    out.reserve(word.size() * 2);
    for (int k : word) {
        out.push_back(0);
        out.push_back(k + 1);
    }
    return out;
}

// Trace of colors along a path of the arena.
inline std::vector<int> color_trace(const ConcurrentArena& c, std::span<const int> path)
{
    std::vector<int> out;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        out.push_back(c.color(path[i], path[i + 1]));
    return out;
}

/**
 * Nondeterministic finite automaton over color ids, with epsilon moves
 * (label -1). Used for the projection/lifting language transforms.
 */
struct ColorNFA {
    static constexpr int eps = -1;
    int num_states = 0;
    std::set<int> initial;
    std::set<int> accepting;
    std::vector<std::tuple<int, int, int>> transitions; // (from, label, to)

    std::set<int> closure(std::set<int> s) const
    {
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [u, l, v] : transitions)
                if (l == eps && s.count(u) && !s.count(v)) {
                    s.insert(v);
                    grew = true;
                }
        }
        return s;
    }
    std::set<int> step(const std::set<int>& s, int label) const
    {
        std::set<int> out;
        for (const auto& [u, l, v] : transitions)
            if (l == label && s.count(u)) out.insert(v);
        return closure(std::move(out));
    }
    bool accepts(std::span<const int> word) const
    {
        std::set<int> s = closure(initial);
        for (int k : word) {
            s = step(s, k);
            if (s.empty()) return false;
        }
        for (int q : s)
            if (accepting.count(q)) return true;
        return false;
    }
};

// Projection of the recognized language: transitions labeled with the fresh
// color (id 0) become epsilon moves; other labels shift down into the
// original color space.
inline ColorNFA nfa_project(const ColorNFA& n)
{
    ColorNFA out = n;
    out.transitions.clear();
    for (const auto& [u, l, v] : n.transitions) {
        if (l == 0)
            out.transitions.emplace_back(u, ColorNFA::eps, v);
        else if (l == ColorNFA::eps)
            out.transitions.emplace_back(u, ColorNFA::eps, v);
        else
            out.transitions.emplace_back(u, l - 1, v);
    }
    return out;
}

// Preimage of the recognized language under the projection: labels shift up
// and every state gets a self loop on the fresh color.
inline ColorNFA nfa_lift(const ColorNFA& n)
{
    ColorNFA out = n;
    out.transitions.clear();
    for (const auto& [u, l, v] : n.transitions) {
        if (l == ColorNFA::eps)
            out.transitions.emplace_back(u, ColorNFA::eps, v);
        else
            out.transitions.emplace_back(u, l + 1, v);
    }
    for (int q = 0; q < n.num_states; ++q) out.transitions.emplace_back(q, 0, q);
    return out;
}

/**
 * Membership of the ultimately periodic word prefix.cycle^w in [L(n)], the
 * set of infinite words all of whose finite prefixes extend to a word of
 * L(n). States that cannot reach an accepting state are dead; a prefix
 * extends to a word of L iff some run on it stays within live states, so we
 * trim to live states and iterate the subset construction on the lasso
 * until the subset repeats or dies.
 */
inline bool limit_contains(const ColorNFA& n, std::span<const int> prefix,
                           std::span<const int> cycle)
{
    if (cycle.empty()) throw error("limit_contains: empty cycle");
    // Live states: co-reachable from an accepting state.
    std::vector<std::vector<int>> pred(n.num_states);
    for (const auto& [u, l, v] : n.transitions) pred[v].push_back(u);
    std::vector<char> live(n.num_states, 0);
    std::vector<int> queue;
    for (int q : n.accepting)
        if (!live[q]) { live[q] = 1; queue.push_back(q); }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int u : pred[v])
            if (!live[u]) { live[u] = 1; queue.push_back(u); }
    }
    ColorNFA trimmed = n;
    trimmed.transitions.clear();
    for (const auto& [u, l, v] : n.transitions)
        if (live[u] && live[v]) trimmed.transitions.emplace_back(u, l, v);
    trimmed.initial.clear();
    for (int q : n.initial)
        if (live[q]) trimmed.initial.insert(q);

    std::set<int> s = trimmed.closure(trimmed.initial);
    if (s.empty()) return false;
    for (int k : prefix) {
        s = trimmed.step(s, k);
        if (s.empty()) return false;
    }
    std::set<std::set<int>> seen;
    while (seen.insert(s).second) {
        for (int k : cycle) {
            s = trimmed.step(s, k);
            if (s.empty()) return false;
        }
    }
    return true;
}

/**
 * Deterministic color automaton with a priority per monitor state. The
 * product construction below turns any objective expressible this way into
 * a parity game over the product arena.
 */
struct ColorMonitor {
    int num_states = 0;
    int initial = 0;
    int num_colors = 0;
    std::vector<int> delta;    // (m,k) -> m'
    std::vector<int> priority; // per monitor state
    std::vector<std::string> state_names;

    int step(int m, int k) const { return delta[m * num_colors + k]; }
};

inline void require_valid(const ColorMonitor& m)
{
    if (m.num_states <= 0) throw error("monitor: no states");
    if (static_cast<int>(m.delta.size()) != m.num_states * m.num_colors)
        throw error("monitor: transition table not total");
    for (int t : m.delta)
        if (t < 0 || t >= m.num_states) throw error("monitor: bad transition target");
    if (static_cast<int>(m.priority.size()) != m.num_states)
        throw error("monitor: missing priorities");
}

struct MonitorProduct {
    ConcurrentArena arena;
    ParityObjective objective;
    std::vector<std::pair<int, int>> state_pair; // product state -> (q, m)
};

/**
 * Product of an arena with a color monitor. Product states are reachable
 * (q, m) pairs; the new colors are the monitor states, so the parity
 * objective is read off the monitor priorities. Local interactions are
 * isomorphic to those of the source arena.
 */
inline MonitorProduct monitor_product(const ConcurrentArena& c, const ColorMonitor& mon)
{
    require_valid(c);
    require_valid(mon);
    if (mon.num_colors != c.nk())
        throw error("monitor product: monitor alphabet does not match arena colors");

    MonitorProduct out;
    std::map<std::pair<int, int>, int> id_of;
    std::vector<std::pair<int, int>> order;
    auto state_id = [&](int q, int m) {
        auto [it, fresh] = id_of.try_emplace({q, m}, static_cast<int>(order.size()));
        if (fresh) order.emplace_back(q, m);
        return it->second;
    };
    state_id(c.q0, mon.initial);
    // Breadth-first discovery in ascending (a,b,dist-entry) order keeps ids
    // deterministic.
    for (size_t i = 0; i < order.size(); ++i) {
        auto [q, m] = order[i];
        for (int a = 0; a < c.na(); ++a)
            for (int b = 0; b < c.nb(); ++b) {
                int dd = c.d(q, a, b);
                for (const auto& [q2, p] : c.dist[dd].entries)
                    state_id(q2, mon.step(m, c.color(q, q2)));
            }
    }

    ConcurrentArena& pr = out.arena;
    int n = static_cast<int>(order.size());
    for (auto [q, m] : order)
        pr.states.push_back(c.states[q] + "*" + mon.state_names[m]);
    pr.q0 = 0;
    pr.actions_a = c.actions_a;
    pr.actions_b = c.actions_b;
    for (int ms = 0; ms < mon.num_states; ++ms) pr.colors.push_back(mon.state_names[ms]);

    // One product Nature state per (source product state, source Nature
    // state) combination in use.
    std::map<std::pair<int, int>, int> nat_of;
    pr.delta.assign(n * c.na() * c.nb(), 0);
    for (int v = 0; v < n; ++v) {
        auto [q, m] = order[v];
        for (int a = 0; a < c.na(); ++a)
            for (int b = 0; b < c.nb(); ++b) {
                int dd = c.d(q, a, b);
                auto [it, fresh] = nat_of.try_emplace({v, dd}, static_cast<int>(pr.nature.size()));
                if (fresh) {
                    pr.nature.push_back(c.nature[dd] + "*" + std::to_string(v));
                    RationalDist rd;
                    for (const auto& [q2, p] : c.dist[dd].entries) {
                        int m2 = mon.step(m, c.color(q, q2));
                        rd.entries.emplace_back(id_of.at({q2, m2}), p);
                    }
                    std::sort(rd.entries.begin(), rd.entries.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    pr.dist.push_back(std::move(rd));
                }
                pr.delta[(v * c.na() + a) * c.nb() + b] = it->second;
            }
    }

    // Total coloring: the color of (v,v') is the monitor state the edge
    // would reach, which matches the target's monitor component on real edges.
    pr.col.assign(n * n, 0);
    for (int v = 0; v < n; ++v) {
        auto [q, m] = order[v];
        for (int v2 = 0; v2 < n; ++v2) {
            auto [q2, m2] = order[v2];
            pr.color(v, v2) = mon.step(m, c.color(q, q2));
        }
    }

    out.objective.priority = mon.priority;
    out.state_pair = order;
    require_valid(pr);
    return out;
}

// Two-state monitor for "the given color occurs at some point".
inline ColorMonitor seen_color_monitor(int num_colors, int target_color)
{
    ColorMonitor m;
    m.num_states = 2;
    m.initial = 0;
    m.num_colors = num_colors;
    m.state_names = {"waiting", "seen"};
    m.delta.assign(2 * num_colors, 0);
    for (int k = 0; k < num_colors; ++k) {
        m.delta[0 * num_colors + k] = (k == target_color) ? 1 : 0;
        m.delta[1 * num_colors + k] = 1;
    }
    m.priority = {1, 2};
    return m;
}

} // namespace congame
