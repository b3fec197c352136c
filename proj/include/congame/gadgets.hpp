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
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "arena.hpp"
#include "semantics.hpp"
#include "transform.hpp"

namespace congame {

/**
 * Strong reachability levels toward a target state: level i+1 states are
 * those where one of the players can unilaterally force the next state
 * into the current level set, decided through the local interactions.
 */
struct StrongReachLevels {
    int target = 0;
    std::vector<std::set<int>> r_sets; // R_0, R_1, ... up to the fixpoint
    std::vector<int> level_a;          // least i >= 1 with q in P_i(A), or -1
    std::vector<int> level_b;

    bool reachable(int q) const { return r_sets.back().count(q) > 0; }
    int level(int q) const
    {
        for (size_t i = 0; i < r_sets.size(); ++i)
            if (r_sets[i].count(q)) return static_cast<int>(i);
        return -1;
    }
    // Label per the leveling function: the player and level of q, with the
    // A-level taking precedence when it exists.
    std::pair<Player, int> label(int q) const
    {
        if (level_a[q] >= 0) return {Player::A, level_a[q]};
        if (level_b[q] >= 0) return {Player::B, level_b[q]};
        return {Player::A, -1};
    }
};

inline StrongReachLevels strong_reach(const ConcurrentArena& c, int target)
{
    if (target < 0 || target >= c.nq()) throw error("strong_reach: unknown state");
    if (!classify(c).deterministic) throw error("strong_reach: arena is not deterministic");
    StrongReachLevels sr;
    sr.target = target;
    sr.level_a.assign(c.nq(), -1);
    sr.level_b.assign(c.nq(), -1);
    std::set<int> r{target};
    sr.r_sets.push_back(r);
    for (int i = 1; i <= c.nq(); ++i) {
        std::set<int> next = r;
        for (int q = 0; q < c.nq(); ++q) {
            std::vector<int> local_of;
            GameForm f = local_interaction(c, q, &local_of);
            std::uint32_t target_mask = 0;
            for (int dd = 0; dd < c.nd(); ++dd)
                if (local_of[dd] >= 0 && r.count(c.dirac_target(dd)))
                    target_mask |= 1u << local_of[dd];
            if (!winning_for_target(f, target_mask, Player::A).empty()) {
                if (sr.level_a[q] == -1) sr.level_a[q] = i;
                next.insert(q);
            }
            if (!winning_for_target(f, target_mask, Player::B).empty()) {
                if (sr.level_b[q] == -1) sr.level_b[q] = i;
                next.insert(q);
            }
        }
        if (next == r) break;
        r = std::move(next);
        sr.r_sets.push_back(r);
    }
    return sr;
}

// Ultimately periodic word of color names: prefix followed by a repeated
// non-empty cycle.
struct ColorWord {
    std::vector<std::string> prefix;
    std::vector<std::string> cycle;

    std::vector<std::string> unroll(size_t n) const
    {
        std::vector<std::string> out;
        for (size_t i = 0; out.size() < n && i < prefix.size(); ++i) out.push_back(prefix[i]);
        while (out.size() < n) {
            for (const auto& k : cycle) {
                if (out.size() >= n) break;
                out.push_back(k);
            }
        }
        return out;
    }
};

inline bool same_omega_word(const ColorWord& x, const ColorWord& y)
{
    size_t pre = std::max(x.prefix.size(), y.prefix.size());
    size_t period = std::lcm(x.cycle.size(), y.cycle.size());
    size_t n = pre + period;
    return x.unroll(n) == y.unroll(n);
}

struct TwoTailGadget {
    ConcurrentArena arena;
    ColorMonitor monitor;        // accepts exactly the winning tail's color word
    std::uint32_t valuation = 0; // the witness non-determined valuation of the form
};

/**
 * Counterexample arena from a non-determined game form: the form is the
 * interaction at the initial state, outcomes inside the witness valuation
 * feed a lasso emitting one color word and the others a second word. The
 * monitor accepts exactly plays producing the first word, so the game is
 * not determined precisely because the initial interaction is not.
 */
inline TwoTailGadget build_two_tail_gadget(const GameForm& form, const ColorWord& tail_win,
                                           const ColorWord& tail_lose)
{
    require_valid(form);
    if (tail_win.cycle.empty() || tail_lose.cycle.empty())
        throw error("two-tail gadget: cycles must be non-empty");
    if (same_omega_word(tail_win, tail_lose))
        throw error("two-tail gadget: the two tails must differ as infinite words");
    long v = first_undetermined_valuation(form);
    if (v < 0) throw error("two-tail gadget: the game form is determined");

    TwoTailGadget out;
    out.valuation = static_cast<std::uint32_t>(v);
    ConcurrentArena& c = out.arena;

    std::vector<std::string> palette;
    auto color_id = [&](const std::string& name) {
        for (size_t i = 0; i < palette.size(); ++i)
            if (palette[i] == name) return static_cast<int>(i);
        palette.push_back(name);
        return static_cast<int>(palette.size() - 1);
    };
    size_t lw = tail_win.prefix.size() + tail_win.cycle.size();
    size_t ll = tail_lose.prefix.size() + tail_lose.cycle.size();
    auto wword = tail_win.unroll(lw);
    auto lword = tail_lose.unroll(ll);
    for (const auto& k : wword) color_id(k);
    for (const auto& k : lword) color_id(k);

    c.states.push_back("q0");
    int win_base = 1, lose_base = win_base + static_cast<int>(lw);
    for (size_t i = 0; i < lw; ++i) c.states.push_back("w" + std::to_string(i));
    for (size_t i = 0; i < ll; ++i) c.states.push_back("l" + std::to_string(i));
    c.q0 = 0;
    c.actions_a = form.row_names;
    c.actions_b = form.col_names;
    c.colors = palette;

    for (int s = 1; s < c.nq(); ++s) {
        c.nature.push_back("d_" + c.states[s]);
        c.dist.push_back(RationalDist::dirac(s));
    }
    auto nature_of = [&](int state) { return state - 1; };

    c.delta.assign(c.nq() * c.na() * c.nb(), 0);
    for (int r = 0; r < form.rows(); ++r)
        for (int cc = 0; cc < form.cols(); ++cc) {
            bool inside = (out.valuation >> form.at(r, cc)) & 1u;
            c.d(0, r, cc) = nature_of(inside ? win_base : lose_base);
        }
    auto chain = [&](int base, size_t len, size_t pre) {
        for (size_t i = 0; i < len; ++i) {
            int succ = (i + 1 < len) ? base + static_cast<int>(i) + 1
                                     : base + static_cast<int>(pre);
            for (int a = 0; a < c.na(); ++a)
                for (int b = 0; b < c.nb(); ++b) c.d(base + static_cast<int>(i), a, b) = nature_of(succ);
        }
    };
    chain(win_base, lw, tail_win.prefix.size());
    chain(lose_base, ll, tail_lose.prefix.size());

    c.col.assign(c.nq() * c.nq(), 0);
    c.color(0, win_base) = color_id(wword[0]);
    c.color(0, lose_base) = color_id(lword[0]);
    auto paint = [&](int base, size_t len, size_t pre, const std::vector<std::string>& word) {
        for (size_t i = 0; i < len; ++i) {
            int src = base + static_cast<int>(i);
            int succ = (i + 1 < len) ? src + 1 : base + static_cast<int>(pre);
            size_t emitted = (i + 1 < len) ? i + 1 : pre;
            c.color(src, succ) = color_id(word[emitted]);
        }
    };
    paint(win_base, lw, tail_win.prefix.size(), wword);
    paint(lose_base, ll, tail_lose.prefix.size(), lword);
    require_valid(c);

    // Monitor: walk the winning word, fall into a rejecting sink on the
    // first mismatch.
    ColorMonitor& m = out.monitor;
    m.num_colors = c.nk();
    m.num_states = static_cast<int>(lw) + 1;
    m.initial = 0;
    int sink = static_cast<int>(lw);
    for (size_t i = 0; i < lw; ++i) m.state_names.push_back("expect" + std::to_string(i));
    m.state_names.push_back("off");
    m.delta.assign(m.num_states * m.num_colors, sink);
    for (size_t i = 0; i < lw; ++i) {
        int good = color_id(wword[i]);
        size_t next = (i + 1 < lw) ? i + 1 : tail_win.prefix.size();
        m.delta[static_cast<int>(i) * m.num_colors + good] = static_cast<int>(next);
    }
    m.priority.assign(m.num_states, 2);
    m.priority[sink] = 1;
    require_valid(m);
    return out;
}

struct OpenCounterexample {
    ConcurrentArena arena;   // the input arena with the leveling coloring
    ColorMonitor monitor;    // open objective over the new colors
    StrongReachLevels levels;
    std::uint32_t valuation = 0; // over successor states of the pivot
    int pivot = 0;
};

/**
 * Recoloring of a deterministic arena that turns one strongly reachable
 * non-determined interaction into a game with an open objective and no
 * winning strategy for either player. Edges out of the pivot announce
 * whether the successor sits in the witness valuation; all other edges
 * announce the level and forcing player of their source.
 */
inline OpenCounterexample build_open_counterexample(const ConcurrentArena& input, int pivot)
{
    require_valid(input);
    if (!classify(input).deterministic)
        throw error("open counterexample: arena is not deterministic");
    OpenCounterexample out;
    out.pivot = pivot;
    out.levels = strong_reach(input, pivot);
    if (!out.levels.reachable(input.q0))
        throw error("open counterexample: pivot is not strongly reachable from the start");

    // Witness valuation over the pivot's successors, constrained to be
    // expressible at the state level.
    std::vector<int> local_of;
    GameForm f = local_interaction(input, pivot, &local_of);
    std::vector<int> succs; // distinct successor states of the pivot
    for (int dd = 0; dd < input.nd(); ++dd)
        if (local_of[dd] >= 0) {
            int t = input.dirac_target(dd);
            if (std::find(succs.begin(), succs.end(), t) == succs.end()) succs.push_back(t);
        }
    std::sort(succs.begin(), succs.end());
    bool found = false;
    std::uint32_t chosen_states = 0;
    for (std::uint32_t s = 0; !found && s < (1u << succs.size()); ++s) {
        std::uint32_t vmask = 0;
        for (int dd = 0; dd < input.nd(); ++dd)
            if (local_of[dd] >= 0) {
                int t = input.dirac_target(dd);
                size_t pos = std::find(succs.begin(), succs.end(), t) - succs.begin();
                if ((s >> pos) & 1u) vmask |= 1u << local_of[dd];
            }
        if (is_determined_for(f, Valuation{vmask}) == Winner::None) {
            found = true;
            chosen_states = s;
        }
    }
    if (!found)
        throw error("open counterexample: pivot interaction is determined at the state level");
    out.valuation = chosen_states;
    std::set<int> vstates;
    for (size_t pos = 0; pos < succs.size(); ++pos)
        if ((chosen_states >> pos) & 1u) vstates.insert(succs[pos]);

    // New color set: the pivot verdicts, a neutral color, and one color per
    // (player, level) pair in use.
    ConcurrentArena c = input;
    c.colors.clear();
    c.colors = {"wA", "wB", "n"};
    int max_level = 0;
    for (int q = 0; q < input.nq(); ++q) {
        max_level = std::max(max_level, out.levels.level_a[q]);
        max_level = std::max(max_level, out.levels.level_b[q]);
    }
    auto level_color = [&](Player p, int lvl) {
        return 3 + 2 * (lvl - 1) + (p == Player::A ? 0 : 1);
    };
    for (int lvl = 1; lvl <= max_level; ++lvl) {
        c.colors.push_back("A" + std::to_string(lvl));
        c.colors.push_back("B" + std::to_string(lvl));
    }
    c.col.assign(c.nq() * c.nq(), 2);
    for (int q2 = 0; q2 < c.nq(); ++q2)
        c.color(pivot, q2) = vstates.count(q2) ? 0 : 1;
    for (int q = 0; q < c.nq(); ++q) {
        if (q == pivot) continue;
        auto [p, lvl] = out.levels.label(q);
        int color = (lvl >= 1) ? level_color(p, lvl) : 2;
        for (int q2 = 0; q2 < c.nq(); ++q2) c.color(q, q2) = color;
    }
    require_valid(c);
    out.arena = c;

    // Monitor for the open winning set: Player A wins as soon as either
    // some level color for B is followed by a color outside the allowed
    // follow-up set (B failed to make progress although it could have), or
    // the pivot resolves to wA before any wB and without a prior failure
    // of A. The automaton tracks the last color, whether the previous step
    // was such a failure of A, and whether wB has been seen.
    ColorMonitor& m = out.monitor;
    m.num_colors = c.nk();
    int kinds = c.nk() + 1; // last color, or none yet
    m.num_states = kinds * 4 + 1;
    int acc = m.num_states - 1;
    m.initial = 0; // (none, no failure, wB unseen)
    auto state_of = [&](int last_plus1, bool aviol, bool wbseen) {
        return (last_plus1 * 2 + (aviol ? 1 : 0)) * 2 + (wbseen ? 1 : 0);
    };
    auto parse_level = [&](int color, Player* p, int* lvl) {
        if (color < 3) return false;
        *p = ((color - 3) % 2 == 0) ? Player::A : Player::B;
        *lvl = (color - 3) / 2 + 1;
        return true;
    };
    auto allowed_after = [&](int lvl_above, int color) {
        // After seeing a level-(i+1) color the follower must reach the
        // pivot or a strictly lower level.
        if (color == 0 || color == 1) return true;
        Player p;
        int lvl;
        if (!parse_level(color, &p, &lvl)) return false;
        return lvl <= lvl_above - 1;
    };
    m.state_names.resize(m.num_states);
    for (int last = 0; last < kinds; ++last)
        for (int av = 0; av < 2; ++av)
            for (int wb = 0; wb < 2; ++wb) {
                std::string nm = (last == 0) ? "start" : c.colors[last - 1];
                if (av) nm += "+avFail";
                if (wb) nm += "+wB";
                m.state_names[state_of(last, av, wb)] = nm;
            }
    m.state_names[acc] = "won";
    m.delta.assign(m.num_states * m.num_colors, acc);
    for (int k = 0; k < m.num_colors; ++k) m.delta[acc * m.num_colors + k] = acc;
    for (int last = 0; last < kinds; ++last)
        for (int av = 0; av < 2; ++av)
            for (int wb = 0; wb < 2; ++wb) {
                int from = state_of(last, av, wb);
                for (int k = 0; k < m.num_colors; ++k) {
                    Player lp;
                    int llvl = 0;
                    bool last_is_level = last > 0 && parse_level(last - 1, &lp, &llvl);
                    bool violation = last_is_level && !allowed_after(llvl, k);
                    int to;
                    if (violation && lp == Player::B)
                        to = acc; // a bad prefix for B: Player A has won
                    else if (k == 0 && !av && !wb)
                        to = acc; // wA reached with a clean record
                    else
                        to = state_of(k + 1, violation && lp == Player::A, wb || k == 1);
                    m.delta[from * m.num_colors + k] = to;
                }
            }
    m.priority.assign(m.num_states, 1);
    m.priority[acc] = 2;
    require_valid(m);
    return out;
}

namespace detail {

// Search for a winning finite-memory strategy with exactly the given
// memory budget over the product colors. Cells of the update and action
// tables are fixed lazily, only where product play can actually reach, and
// memory states are numbered in order of first use so isomorphic skeletons
// are enumerated once.
struct BoundedStrategySearch {
    const ConcurrentArena& c;
    const ParityObjective& obj;
    Player player;
    int mem;
    unsigned long long cap;
    unsigned long long work = 0;
    std::map<std::pair<int, int>, int> act;  // (m,q) -> action
    std::map<std::pair<int, int>, int> upd;  // (m,k) -> m'
    int used = 1;
    std::vector<std::vector<int>> classes;   // representative actions per state

    BoundedStrategySearch(const ConcurrentArena& arena, const ParityObjective& o, Player p,
                          int memory, unsigned long long work_cap)
        : c(arena), obj(o), player(p), mem(memory), cap(work_cap)
    {
        classes.resize(c.nq());
        for (int q = 0; q < c.nq(); ++q) {
            std::map<std::vector<int>, int> seen;
            int count = (player == Player::A) ? c.na() : c.nb();
            int other = (player == Player::A) ? c.nb() : c.na();
            for (int mine = 0; mine < count; ++mine) {
                std::vector<int> row(other);
                for (int o2 = 0; o2 < other; ++o2)
                    row[o2] = (player == Player::A) ? c.step(q, mine, o2) : c.step(q, o2, mine);
                if (seen.try_emplace(row, mine).second) classes[q].push_back(mine);
            }
        }
    }

    bool search()
    {
        if (++work > cap) throw cap_error("bounded strategy search: work cap exceeded");
        // Walk the reachable product until an undecided table cell shows up.
        std::map<std::pair<int, int>, int> id_of;
        std::vector<std::pair<int, int>> order;
        std::vector<std::vector<std::pair<int, int>>> edges;
        auto push = [&](int q, int m) {
            auto [it, fresh] = id_of.try_emplace({q, m}, static_cast<int>(order.size()));
            if (fresh) order.emplace_back(q, m);
            return it->second;
        };
        push(c.q0, 0);
        int opp_count = (player == Player::A) ? c.nb() : c.na();
        for (size_t i = 0; i < order.size(); ++i) {
            auto [q, m] = order[i];
            auto a_it = act.find({m, q});
            if (a_it == act.end()) {
                for (int rep : classes[q]) {
                    act[{m, q}] = rep;
                    if (search()) { act.erase({m, q}); return true; }
                    act.erase({m, q});
                }
                return false;
            }
            edges.resize(order.size());
            for (int o2 = 0; o2 < opp_count; ++o2) {
                int a = (player == Player::A) ? a_it->second : o2;
                int b = (player == Player::A) ? o2 : a_it->second;
                int q2 = c.step(q, a, b);
                int k = c.color(q, q2);
                auto u_it = upd.find({m, k});
                if (u_it == upd.end()) {
                    int limit = std::min(used + 1, mem);
                    for (int t = 0; t < limit; ++t) {
                        upd[{m, k}] = t;
                        int saved = used;
                        if (t == used) ++used;
                        bool ok = search();
                        used = saved;
                        upd.erase({m, k});
                        if (ok) return true;
                    }
                    return false;
                }
                edges[i].emplace_back(push(q2, u_it->second), obj.priority.at(k));
            }
        }
        // Fully decided on the reachable part: exact certification.
        TurnGame g;
        g.n = static_cast<int>(order.size());
        int pmin = obj.min_priority();
        g.owner.assign(g.n, Player::A);
        g.priority.assign(g.n, pmin);
        g.succ.resize(g.n);
        edges.resize(order.size());
        for (int v = 0; v < static_cast<int>(edges.size()); ++v)
            for (auto [w, pr] : edges[v]) {
                int e = g.n++;
                g.owner.push_back(Player::A);
                g.priority.push_back(pr);
                g.succ.push_back({w});
                g.succ[v].push_back(e);
            }
        std::vector<char> all(g.n, 1);
        int bad_parity = (player == Player::A) ? 1 : 0;
        return !has_cycle_with_max_parity(g, all, g.succ, bad_parity);
    }
};

} // namespace detail

// Does the player have a winning finite-memory color strategy with at most
// `mem` memory states? Exact decision by canonical enumeration of reachable
// strategy tables.
inline bool exists_winning_with_memory(const ConcurrentArena& c, const ParityObjective& obj,
                                       Player player, int mem,
                                       unsigned long long cap = 1ull << 22)
{
    if (!classify(c).deterministic)
        throw error("exists_winning_with_memory: arena is not deterministic");
    detail::BoundedStrategySearch s(c, obj, player, mem, cap);
    return s.search();
}

inline bool refute_winning_up_to_memory(const ConcurrentArena& c, const ParityObjective& obj,
                                        Player player, int max_mem,
                                        unsigned long long cap = 1ull << 22)
{
    for (int mem = 1; mem <= max_mem; ++mem)
        if (exists_winning_with_memory(c, obj, player, mem, cap)) return false;
    return true;
}

inline bool refute_winning_up_to_memory(const ConcurrentArena& c, const ColorMonitor& monitor,
                                        Player player, int max_mem,
                                        unsigned long long cap = 1ull << 22)
{
    auto product = monitor_product(c, monitor);
    return refute_winning_up_to_memory(product.arena, product.objective, player, max_mem, cap);
}

} // namespace congame
