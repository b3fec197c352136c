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
#include <vector>

#include "arena.hpp"
#include "graph.hpp"
#include "strategy.hpp"
#include "transform.hpp"

namespace congame {

/**
 * A deterministic turn-based game graph. Nodes carry an owner and an
 * optional priority; `succ` lists successors in ascending order.
 */
struct TurnGame {
    int n = 0;
    std::vector<Player> owner;
    std::vector<std::vector<int>> succ;
    std::vector<int> priority; // empty means all zero

    int pr(int v) const { return priority.empty() ? 0 : priority[v]; }
};

struct AttractorResult {
    std::vector<char> in;     // membership
    std::vector<int> choice;  // forced successor for the player, -1 elsewhere
};

/**
 * Least set from which `player` can force reaching `targets`: the player
 * needs one edge into the set, the opponent must have all edges inside.
 * The recorded strategy covers attracted player nodes outside the target.
 */
inline AttractorResult attractor(const TurnGame& g, Player player,
                                 const std::vector<int>& targets,
                                 const std::vector<char>* subgame = nullptr)
{
    auto inside = [&](int v) { return !subgame || (*subgame)[v]; };
    AttractorResult r;
    r.in.assign(g.n, 0);
    r.choice.assign(g.n, -1);
    std::vector<int> out_count(g.n, 0);
    std::vector<std::vector<int>> pred(g.n);
    for (int v = 0; v < g.n; ++v) {
        if (!inside(v)) continue;
        for (int w : g.succ[v])
            if (inside(w)) {
                ++out_count[v];
                pred[w].push_back(v);
            }
    }
    std::vector<int> queue;
    for (int t : targets)
        if (inside(t) && !r.in[t]) {
            r.in[t] = 1;
            queue.push_back(t);
        }
    while (!queue.empty()) {
        int w = queue.back();
        queue.pop_back();
        for (int v : pred[w]) {
            if (r.in[v]) continue;
            if (g.owner[v] == player) {
                r.in[v] = 1;
                r.choice[v] = w;
                queue.push_back(v);
            } else if (--out_count[v] == 0) {
                r.in[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return r;
}

namespace detail {

// No cycle in the graph restricted to `nodes` whose maximum priority has
// the given parity. Used both to certify solver output and to certify
// strategies against a free opponent.
inline bool has_cycle_with_max_parity(const TurnGame& g, const std::vector<char>& nodes,
                                      const std::vector<std::vector<int>>& succ, int parity)
{
    int maxp = 0;
    for (int v = 0; v < g.n; ++v)
        if (nodes[v]) maxp = std::max(maxp, g.pr(v));
    for (int d = maxp; d >= 0; --d) {
        if ((d & 1) != parity) continue;
        // Subgraph of nodes with priority <= d.
        std::vector<int> id(g.n, -1);
        std::vector<int> order;
        for (int v = 0; v < g.n; ++v)
            if (nodes[v] && g.pr(v) <= d) {
                id[v] = static_cast<int>(order.size());
                order.push_back(v);
            }
        if (order.empty()) continue;
        std::vector<std::vector<int>> sub(order.size());
        std::vector<char> self_loop(order.size(), 0);
        for (size_t i = 0; i < order.size(); ++i)
            for (int w : succ[order[i]])
                if (id[w] >= 0) {
                    sub[i].push_back(id[w]);
                    if (id[w] == static_cast<int>(i)) self_loop[i] = 1;
                }
        int ncomp = 0;
        auto comp = tarjan_scc(static_cast<int>(order.size()), sub, &ncomp);
        std::vector<int> size(ncomp, 0);
        for (int cmp : comp) ++size[cmp];
        for (size_t i = 0; i < order.size(); ++i)
            if (g.pr(order[i]) == d && (size[comp[i]] > 1 || self_loop[i])) return true;
    }
    return false;
}

struct ZlkState {
    const TurnGame* g;
    std::vector<int> strat_a, strat_b; // successor choices
};

inline std::vector<int>& strat_of(ZlkState& z, Player p)
{
    return p == Player::A ? z.strat_a : z.strat_b;
}

// Classic recursive algorithm; positional strategies are extracted on the
// fly into the shared arrays.
inline std::pair<std::vector<char>, std::vector<char>> zlk_rec(ZlkState& z,
                                                               const std::vector<char>& sub)
{
    const TurnGame& g = *z.g;
    int d = -1;
    for (int v = 0; v < g.n; ++v)
        if (sub[v]) d = std::max(d, g.pr(v));
    std::vector<char> none(g.n, 0);
    if (d == -1) return {none, none};

    Player i = (d % 2 == 0) ? Player::A : Player::B;
    std::vector<int> top;
    for (int v = 0; v < g.n; ++v)
        if (sub[v] && g.pr(v) == d) top.push_back(v);

    auto a1 = attractor(g, i, top, &sub);
    std::vector<char> rest(g.n, 0);
    for (int v = 0; v < g.n; ++v) rest[v] = sub[v] && !a1.in[v];
    auto [wa, wb] = zlk_rec(z, rest);
    auto& wi = (i == Player::A) ? wa : wb;
    auto& wopp = (i == Player::A) ? wb : wa;

    bool opp_empty = true;
    for (int v = 0; v < g.n; ++v)
        if (wopp[v]) { opp_empty = false; break; }

    if (opp_empty) {
        for (int v = 0; v < g.n; ++v) {
            if (!sub[v]) continue;
            if (a1.in[v] && g.owner[v] == i) {
                if (a1.choice[v] != -1)
                    strat_of(z, i)[v] = a1.choice[v];
                else {
                    // Top node: any move staying inside the subgame.
                    for (int w : g.succ[v])
                        if (sub[w]) { strat_of(z, i)[v] = w; break; }
                }
            }
        }
        std::vector<char> all(g.n, 0);
        for (int v = 0; v < g.n; ++v) all[v] = sub[v];
        if (i == Player::A) return {all, none};
        return {none, all};
    }

    Player opp = opponent(i);
    auto b1 = attractor(g, opp, [&] {
        std::vector<int> t;
        for (int v = 0; v < g.n; ++v)
            if (wopp[v]) t.push_back(v);
        return t;
    }(), &sub);
    // Attractor moves toward the opponent's recursive region; strategies
    // inside that region were already written by the recursive call.
    for (int v = 0; v < g.n; ++v)
        if (b1.in[v] && !wopp[v] && g.owner[v] == opp && b1.choice[v] != -1)
            strat_of(z, opp)[v] = b1.choice[v];
    std::vector<char> rest2(g.n, 0);
    for (int v = 0; v < g.n; ++v) rest2[v] = sub[v] && !b1.in[v];
    auto [wa2, wb2] = zlk_rec(z, rest2);
    auto& wopp2 = (i == Player::A) ? wb2 : wa2;
    for (int v = 0; v < g.n; ++v)
        if (b1.in[v]) wopp2[v] = 1;
    return {wa2, wb2};
}

} // namespace detail

/**
 * Turn-based game view of a deterministic turn-based arena, with the action
 * and color of every move. Owners may be forced (the sequential arena pins
 * its bipartition); otherwise they are derived, ties to Player A.
 */
struct EdgeGame {
    int n = 0;
    std::vector<Player> owner;
    // moves[v]: (action id, successor, color id), deduplicated by successor
    // keeping the least action.
    std::vector<std::vector<std::tuple<int, int, int>>> moves;
};

inline EdgeGame edge_game(const ConcurrentArena& c, const std::vector<Player>* owners = nullptr)
{
    auto cls = classify(c);
    if (!cls.deterministic) throw error("edge_game: arena is not deterministic");
    EdgeGame g;
    g.n = c.nq();
    g.owner.resize(g.n);
    g.moves.resize(g.n);
    for (int q = 0; q < g.n; ++q) {
        if (owners)
            g.owner[q] = (*owners)[q];
        else {
            auto o = state_owner(c, q);
            if (!o) throw error("edge_game: arena is not turn-based at state " + c.states[q]);
            g.owner[q] = *o;
        }
        std::map<int, int> min_action; // successor -> least action
        int count = (g.owner[q] == Player::A) ? c.na() : c.nb();
        for (int act = 0; act < count; ++act) {
            int succ = (g.owner[q] == Player::A) ? c.step(q, act, 0) : c.step(q, 0, act);
            min_action.try_emplace(succ, act);
        }
        for (const auto& [succ, act] : min_action)
            g.moves[q].emplace_back(act, succ, c.color(q, succ));
    }
    return g;
}

/**
 * Node-priority view of an edge-priority parity game: every move gets an
 * intermediate node carrying the priority of its color, original nodes get
 * the globally minimal priority, which cannot disturb the maximum seen
 * infinitely often.
 */
struct ParityView {
    TurnGame g;
    int num_states = 0;
    std::vector<std::pair<int, int>> edge_desc; // edge node -> (source, action)
};

inline ParityView subdivide(const EdgeGame& eg, const ParityObjective& obj)
{
    ParityView pv;
    pv.num_states = eg.n;
    int pmin = obj.min_priority();
    pv.g.n = eg.n;
    pv.g.owner = eg.owner;
    pv.g.succ.resize(eg.n);
    pv.g.priority.assign(eg.n, pmin);
    for (int v = 0; v < eg.n; ++v)
        for (const auto& [act, succ, color] : eg.moves[v]) {
            int e = pv.g.n++;
            pv.g.owner.push_back(eg.owner[v]);
            pv.g.succ.push_back({succ});
            pv.g.priority.push_back(obj.priority.at(color));
            pv.g.succ[v].push_back(e);
            pv.edge_desc.emplace_back(v, act);
        }
    return pv;
}

struct SolveResult {
    std::vector<Player> winner;      // per state of the arena
    std::vector<int> strategy_a;     // action per state (meaningful on A's region)
    std::vector<int> strategy_b;
};

namespace detail {

inline void verify_regions(const TurnGame& g, const std::vector<char>& wa,
                           const std::vector<int>& strat_a, const std::vector<int>& strat_b)
{
    for (Player p : {Player::A, Player::B}) {
        const auto& strat = (p == Player::A) ? strat_a : strat_b;
        std::vector<char> mine(g.n, 0);
        for (int v = 0; v < g.n; ++v) mine[v] = (p == Player::A) ? wa[v] : !wa[v];
        std::vector<std::vector<int>> restricted(g.n);
        for (int v = 0; v < g.n; ++v) {
            if (!mine[v]) continue;
            if (g.owner[v] == p) {
                int w = strat[v];
                if (w < 0 || !mine[w])
                    throw error("solver certification failed: strategy leaves the region");
                restricted[v].push_back(w);
            } else {
                for (int w : g.succ[v]) {
                    if (!mine[w])
                        throw error("solver certification failed: region is not a trap");
                    restricted[v].push_back(w);
                }
            }
        }
        int bad_parity = (p == Player::A) ? 1 : 0;
        if (has_cycle_with_max_parity(g, mine, restricted, bad_parity))
            throw error("solver certification failed: losing cycle inside a winning region");
    }
}

} // namespace detail

/**
 * Zielonka's recursive algorithm over the subdivided view, with mandatory
 * self-certification: winning regions must be traps and the strategy-
 * restricted subgraph may only contain cycles of the winner's parity.
 */
inline SolveResult zielonka(const EdgeGame& eg, const ParityObjective& obj)
{
    ParityView pv = subdivide(eg, obj);
    detail::ZlkState z{&pv.g, std::vector<int>(pv.g.n, -1), std::vector<int>(pv.g.n, -1)};
    std::vector<char> all(pv.g.n, 1);
    auto [wa, wb] = detail::zlk_rec(z, all);
    detail::verify_regions(pv.g, wa, z.strat_a, z.strat_b);

    SolveResult r;
    r.winner.resize(eg.n);
    r.strategy_a.assign(eg.n, 0);
    r.strategy_b.assign(eg.n, 0);
    for (int v = 0; v < eg.n; ++v) {
        r.winner[v] = wa[v] ? Player::A : Player::B;
        auto& strat = (r.winner[v] == Player::A) ? z.strat_a : z.strat_b;
        if (eg.owner[v] == r.winner[v]) {
            int e = strat[v];
            if (e < eg.n) throw error("zielonka: missing strategy on a winning node");
            auto [src, act] = pv.edge_desc[e - eg.n];
            (void)src;
            auto& out = (r.winner[v] == Player::A) ? r.strategy_a : r.strategy_b;
            out[v] = act;
        }
    }
    return r;
}

inline SolveResult zielonka(const ConcurrentArena& tb, const ParityObjective& obj,
                            const std::vector<Player>* owners = nullptr)
{
    if (static_cast<int>(obj.priority.size()) != tb.nk())
        throw error("zielonka: priorities are not total over the colors");
    return zielonka(edge_game(tb, owners), obj);
}

struct ThresholdSet {
    std::set<int> h; // accepted values of max(inf)
};

/**
 * Priority relabeling reducing "the maximum color seen infinitely often
 * lies in H" to max-parity: k maps to 2k when k is in H and to 2k+1
 * otherwise. The map is strictly increasing, which is exactly what the
 * reduction needs, and is asserted here.
 */
inline ParityObjective remap_threshold(const ThresholdSet& ts, int n)
{
    for (int k : ts.h)
        if (k < 0 || k > n) throw error("remap_threshold: class outside [0,n]");
    ParityObjective obj;
    for (int k = 0; k <= n; ++k) obj.priority.push_back(ts.h.count(k) ? 2 * k : 2 * k + 1);
    for (size_t k = 1; k < obj.priority.size(); ++k)
        if (obj.priority[k - 1] >= obj.priority[k])
            throw error("remap_threshold: relabeling is not strictly increasing");
    return obj;
}

struct ConcurrentSolve {
    Player winner = Player::A;   // at q0
    FiniteStrategy strategy;     // winning positional strategy in the source arena
    SeqArena seq;
    SolveResult seq_result;
};

bool certify_winning(const ConcurrentArena&, const FiniteStrategy&, const ParityObjective&);

/**
 * Full pipeline for deterministic arenas with determined local
 * interactions: sequentialize, extend the objective with the fresh color,
 * solve the turn-based game positionally, and transfer the winner's
 * strategy back. The transferred strategy is re-certified by an exact
 * product check before being returned.
 */
inline ConcurrentSolve solve_concurrent(const ConcurrentArena& c, const ParityObjective& obj)
{
    require_valid(c);
    if (static_cast<int>(obj.priority.size()) != c.nk())
        throw error("solve_concurrent: priorities are not total over the colors");
    auto cls = classify(c);
    if (!cls.deterministic) throw error("solve_concurrent: arena is not deterministic");
    require_locally_determined(c);

    ConcurrentSolve out;
    out.seq = sequentialize(c);
    ParityObjective sobj = seq_objective(obj);
    auto owners = out.seq.owners();
    out.seq_result = zielonka(out.seq.tb, sobj, &owners);
    out.winner = out.seq_result.winner[out.seq.tb.q0];

    if (out.winner == Player::A) {
        FiniteStrategy sigma =
            FiniteStrategy::positional_of(Player::A, out.seq.tb.nk(), out.seq_result.strategy_a);
        out.strategy = par_strategy_a(sigma, out.seq);
    } else {
        FiniteStrategy sigma =
            FiniteStrategy::positional_of(Player::B, out.seq.tb.nk(), out.seq_result.strategy_b);
        out.strategy = par_strategy_b(sigma, c, out.seq);
    }
    if (!certify_winning(c, out.strategy, obj))
        throw error("solve_concurrent: transferred strategy failed certification");
    return out;
}

} // namespace congame
