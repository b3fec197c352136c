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

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "arena.hpp"
#include "graph.hpp"
#include "solve.hpp"
#include "strategy.hpp"
#include "transform.hpp"

namespace congame {

// A state strategy: a distribution over the player's actions for every
// finite state history. The play semantics below is the only consumer.
using StateStrategy = std::function<std::vector<Rat>(const std::vector<int>&)>;

inline StateStrategy positional_state_strategy(int num_actions, std::vector<int> per_state)
{
    return [num_actions, per_state = std::move(per_state)](const std::vector<int>& path) {
        std::vector<Rat> d(num_actions, Rat(0));
        d[per_state[path.back()]] = 1;
        return d;
    };
}

inline StateStrategy uniform_state_strategy(int num_actions)
{
    return [num_actions](const std::vector<int>&) {
        return std::vector<Rat>(num_actions, Rat(1, num_actions));
    };
}

// Deterministic state strategy induced by a finite-memory color strategy:
// feed the color trace of the history to the skeleton, read the action map.
inline StateStrategy from_finite_strategy(const ConcurrentArena& c, const FiniteStrategy& s)
{
    int num_actions = (s.player == Player::A) ? c.na() : c.nb();
    return [&c, s, num_actions](const std::vector<int>& path) {
        int m = s.skeleton.initial;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            m = s.skeleton.step(m, c.color(path[i], path[i + 1]));
        std::vector<Rat> d(num_actions, Rat(0));
        d[s.act(m, path.back())] = 1;
        return d;
    };
}

/**
 * Distribution over Nature states after a finite path: for each action pair
 * mapping to the Nature state, multiply the two strategies' weights. The
 * identity binding it to the one-step state distribution is asserted on
 * every call.
 */
inline RationalDist nabla(const ConcurrentArena& c, const StateStrategy& sa,
                          const StateStrategy& sb, const std::vector<int>& path)
{
    int q = path.back();
    auto da = sa(path), db = sb(path);
    std::map<int, Rat> acc;
    for (int a = 0; a < c.na(); ++a) {
        if (da[a] == 0) continue;
        for (int b = 0; b < c.nb(); ++b) {
            if (db[b] == 0) continue;
            acc[c.d(q, a, b)] += da[a] * db[b];
        }
    }
    RationalDist out;
    for (const auto& [dd, p] : acc)
        if (p != 0) out.entries.emplace_back(dd, p);
    if (out.total() != Rat(1)) throw error("nabla: distribution does not sum to 1");
    return out;
}

// One-step distribution over successor states after a finite path, computed
// through the Nature distribution and cross-checked against the direct
// action-pair sum.
inline RationalDist next_state_dist(const ConcurrentArena& c, const StateStrategy& sa,
                                    const StateStrategy& sb, const std::vector<int>& path)
{
    RationalDist nd = nabla(c, sa, sb, path);
    std::map<int, Rat> acc;
    for (const auto& [dd, p] : nd.entries)
        for (const auto& [q2, w] : c.dist[dd].entries) acc[q2] += p * w;

    int q = path.back();
    auto da = sa(path), db = sb(path);
    std::map<int, Rat> direct;
    for (int a = 0; a < c.na(); ++a) {
        if (da[a] == 0) continue;
        for (int b = 0; b < c.nb(); ++b) {
            if (db[b] == 0) continue;
            for (const auto& [q2, w] : c.dist[c.d(q, a, b)].entries)
                direct[q2] += da[a] * db[b] * w;
        }
    }
    for (auto it = direct.begin(); it != direct.end();)
        it = (it->second == 0) ? direct.erase(it) : std::next(it);
    for (auto it = acc.begin(); it != acc.end();)
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    if (acc != direct) throw error("next_state_dist: Nature and direct routes disagree");

    RationalDist out;
    for (const auto& [q2, p] : acc) out.entries.emplace_back(q2, p);
    return out;
}

struct CylinderProb {
    std::vector<int> path;
    Rat probability;
};

// Exact probability of the cylinder generated by a finite path.
inline CylinderProb cylinder_prob(const ConcurrentArena& c, const StateStrategy& sa,
                                  const StateStrategy& sb, const std::vector<int>& path)
{
    if (path.empty()) return {path, Rat(1)};
    if (path.front() != c.q0) return {path, Rat(0)};
    Rat p(1);
    std::vector<int> prefix{path.front()};
    for (size_t i = 1; i < path.size(); ++i) {
        RationalDist step = next_state_dist(c, sa, sb, prefix);
        p *= step.at(path[i]);
        if (p == 0) break;
        prefix.push_back(path[i]);
    }
    return {path, p};
}

struct Lasso {
    std::vector<int> prefix; // states before the cycle
    std::vector<int> cycle;  // the repeated part, non-empty
    int max_priority = 0;    // max priority among the cycle's edge colors
};

/**
 * The unique play of two deterministic finite-memory strategies on a
 * deterministic arena, folded into its lasso shape by simulating the
 * product of the arena with both Mealy machines until a repeat.
 */
inline Lasso outcome_lasso(const ConcurrentArena& c, const FiniteStrategy& sa,
                           const FiniteStrategy& sb, const ParityObjective& obj)
{
    if (sa.player != Player::A || sb.player != Player::B)
        throw error("outcome_lasso: strategies must be one per player");
    std::map<std::tuple<int, int, int>, int> seen; // (q, ma, mb) -> position
    std::vector<int> states;
    int q = c.q0, ma = sa.skeleton.initial, mb = sb.skeleton.initial;
    while (true) {
        auto key = std::make_tuple(q, ma, mb);
        auto it = seen.find(key);
        if (it != seen.end()) {
            Lasso l;
            l.prefix.assign(states.begin(), states.begin() + it->second);
            l.cycle.assign(states.begin() + it->second, states.end());
            int n = static_cast<int>(l.cycle.size());
            l.max_priority = 0;
            for (int i = 0; i < n; ++i) {
                int u = l.cycle[i], v = l.cycle[(i + 1) % n];
                l.max_priority = std::max(l.max_priority, obj.priority.at(c.color(u, v)));
            }
            return l;
        }
        seen[key] = static_cast<int>(states.size());
        states.push_back(q);
        int a = sa.act(ma, q), b = sb.act(mb, q);
        int q2 = c.step(q, a, b);
        int k = c.color(q, q2);
        ma = sa.skeleton.step(ma, k);
        mb = sb.skeleton.step(mb, k);
        q = q2;
    }
}

namespace detail {

// Exact solution of A x = rhs by Gaussian elimination over the rationals.
inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs)
{
    int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) throw error("linear system is singular");
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        Rat inv = a[col][col];
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat factor = a[r][col] / inv;
            for (int cc = col; cc < n; ++cc) a[r][cc] -= factor * a[col][cc];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[i] / a[i][i];
    return x;
}

} // namespace detail

/**
 * Value of a positional profile: the induced Markov chain is decomposed
 * into strongly connected components; a bottom component wins iff the
 * maximum priority among its recurrent edge colors is even, and the value
 * is the exact reachability probability of the winning components.
 */
inline Rat mc_value(const ConcurrentArena& c, const std::vector<int>& profile_a,
                    const std::vector<int>& profile_b, const ParityObjective& obj)
{
    int n = c.nq();
    // Transition matrix of the chain.
    std::vector<std::vector<Rat>> p(n, std::vector<Rat>(n, Rat(0)));
    std::vector<std::vector<int>> succ(n);
    for (int q = 0; q < n; ++q) {
        int dd = c.d(q, profile_a[q], profile_b[q]);
        for (const auto& [q2, w] : c.dist[dd].entries) {
            p[q][q2] += w;
            succ[q].push_back(q2);
        }
    }
    int ncomp = 0;
    auto comp = tarjan_scc(n, succ, &ncomp);
    std::vector<char> bottom(ncomp, 1);
    for (int q = 0; q < n; ++q)
        for (int q2 : succ[q])
            if (comp[q2] != comp[q]) bottom[comp[q]] = 0;
    std::vector<char> winning(ncomp, 0);
    for (int k = 0; k < ncomp; ++k) {
        if (!bottom[k]) continue;
        int maxp = -1;
        for (int q = 0; q < n; ++q) {
            if (comp[q] != k) continue;
            for (int q2 : succ[q])
                maxp = std::max(maxp, obj.priority.at(c.color(q, q2)));
        }
        winning[k] = (maxp % 2 == 0);
    }

    // Reachability of winning bottom components from every state.
    std::vector<int> unknown; // transient states get variables
    std::vector<int> var(n, -1);
    std::vector<Rat> value(n, Rat(0));
    for (int q = 0; q < n; ++q) {
        if (bottom[comp[q]])
            value[q] = winning[comp[q]] ? Rat(1) : Rat(0);
        else {
            var[q] = static_cast<int>(unknown.size());
            unknown.push_back(q);
        }
    }
    if (!unknown.empty()) {
        int m = static_cast<int>(unknown.size());
        std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m, Rat(0)));
        std::vector<Rat> rhs(m, Rat(0));
        for (int i = 0; i < m; ++i) {
            int q = unknown[i];
            a[i][i] = 1;
            for (int q2 = 0; q2 < n; ++q2) {
                if (p[q][q2] == 0) continue;
                if (var[q2] >= 0)
                    a[i][var[q2]] -= p[q][q2];
                else
                    rhs[i] += p[q][q2] * value[q2];
            }
        }
        auto x = detail::solve_linear(std::move(a), std::move(rhs));
        for (int i = 0; i < m; ++i) value[unknown[i]] = x[i];
    }
    Rat v = value[c.q0];
    if (v < 0 || v > 1) throw error("mc_value: probability out of range");
    return v;
}

struct ValueReport {
    Rat maximin, minimax;
    bool equal = false;
    std::vector<int> maximin_a, maximin_b; // A's optimal profile and B's best response
    std::vector<int> minimax_b, minimax_a; // B's optimal profile and A's best response
    const Rat& value() const
    {
        if (!equal) throw error("value report: maximin and minimax differ");
        return maximin;
    }
};

namespace detail {

inline bool next_profile(std::vector<int>& prof, int base)
{
    for (size_t i = 0; i < prof.size(); ++i) {
        if (++prof[i] < base) return true;
        prof[i] = 0;
    }
    return false;
}

// Representative actions per state: one per distinct effect row, so states
// where a player's choice is irrelevant contribute a single candidate.
inline std::vector<std::vector<int>> action_class_reps(const ConcurrentArena& c, Player p)
{
    std::vector<std::vector<int>> reps(c.nq());
    int mine = (p == Player::A) ? c.na() : c.nb();
    int other = (p == Player::A) ? c.nb() : c.na();
    for (int q = 0; q < c.nq(); ++q) {
        std::map<std::vector<int>, int> seen;
        for (int m = 0; m < mine; ++m) {
            std::vector<int> row(other);
            for (int o = 0; o < other; ++o)
                row[o] = (p == Player::A) ? c.d(q, m, o) : c.d(q, o, m);
            if (seen.try_emplace(row, m).second) reps[q].push_back(m);
        }
    }
    return reps;
}

// Iterate mixed-radix profile indices over per-state candidate lists.
inline bool next_indexed_profile(std::vector<int>& idx, const std::vector<std::vector<int>>& reps)
{
    for (size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < static_cast<int>(reps[i].size())) return true;
        idx[i] = 0;
    }
    return false;
}

inline std::vector<int> indexed_profile(const std::vector<int>& idx,
                                        const std::vector<std::vector<int>>& reps)
{
    std::vector<int> prof(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) prof[i] = reps[i][idx[i]];
    return prof;
}

} // namespace detail

/**
 * Exact maximin and minimax over positional profiles. Fixing one side makes
 * the other face a finite MDP where positional strategies attain the parity
 * optimum, so at desk scale this is the game value whenever the two bounds
 * agree.
 */
inline ValueReport bruteforce_value(const ConcurrentArena& c, const ParityObjective& obj,
                                    unsigned long long cap = 1ull << 20)
{
    require_valid(c);
    auto reps_a = detail::action_class_reps(c, Player::A);
    auto reps_b = detail::action_class_reps(c, Player::B);
    unsigned long long count = 1;
    for (int q = 0; q < c.nq(); ++q) {
        count *= static_cast<unsigned long long>(reps_a[q].size()) * reps_b[q].size();
        if (count > cap) throw cap_error("bruteforce_value: profile space exceeds the cap");
    }
    ValueReport rep;
    bool first_a = true;
    std::vector<int> ia(c.nq(), 0);
    do {
        auto pa = detail::indexed_profile(ia, reps_a);
        bool first_b = true;
        Rat worst;
        std::vector<int> worst_b;
        std::vector<int> ib(c.nq(), 0);
        do {
            auto pb = detail::indexed_profile(ib, reps_b);
            Rat v = mc_value(c, pa, pb, obj);
            if (first_b || v < worst) {
                worst = v;
                worst_b = pb;
                first_b = false;
            }
        } while (detail::next_indexed_profile(ib, reps_b));
        if (first_a || worst > rep.maximin) {
            rep.maximin = worst;
            rep.maximin_a = pa;
            rep.maximin_b = worst_b;
            first_a = false;
        }
    } while (detail::next_indexed_profile(ia, reps_a));

    bool first_bb = true;
    std::vector<int> ib(c.nq(), 0);
    do {
        auto pb = detail::indexed_profile(ib, reps_b);
        bool first_a2 = true;
        Rat best;
        std::vector<int> best_a;
        std::vector<int> ia2(c.nq(), 0);
        do {
            auto pa2 = detail::indexed_profile(ia2, reps_a);
            Rat v = mc_value(c, pa2, pb, obj);
            if (first_a2 || v > best) {
                best = v;
                best_a = pa2;
                first_a2 = false;
            }
        } while (detail::next_indexed_profile(ia2, reps_a));
        if (first_bb || best < rep.minimax) {
            rep.minimax = best;
            rep.minimax_b = pb;
            rep.minimax_a = best_a;
            first_bb = false;
        }
    } while (detail::next_indexed_profile(ib, reps_b));

    if (rep.maximin > rep.minimax)
        throw error("bruteforce_value: maximin exceeds minimax");
    rep.equal = (rep.maximin == rep.minimax);
    return rep;
}

/**
 * Exact certification of a finite-memory strategy on a deterministic
 * arena: build the product with the strategy's Mealy machine, leave the
 * opponent as the only chooser, and verify that no reachable cycle has a
 * maximum priority of the opponent's parity.
 */
inline bool certify_winning(const ConcurrentArena& c, const FiniteStrategy& s,
                            const ParityObjective& obj)
{
    auto cls = classify(c);
    if (!cls.deterministic) throw error("certify_winning: arena is not deterministic");
    if (s.num_locations != c.nq())
        throw error("certify_winning: strategy does not target the arena");
    int opp_actions = (s.player == Player::A) ? c.nb() : c.na();
    std::map<std::pair<int, int>, int> id_of;
    std::vector<std::pair<int, int>> order;
    auto node = [&](int q, int m) {
        auto [it, fresh] = id_of.try_emplace({q, m}, static_cast<int>(order.size()));
        if (fresh) order.emplace_back(q, m);
        return it->second;
    };
    node(c.q0, s.skeleton.initial);
    std::vector<std::vector<std::pair<int, int>>> edges; // per node: (succ, priority)
    for (size_t i = 0; i < order.size(); ++i) {
        auto [q, m] = order[i];
        edges.emplace_back();
        for (int o = 0; o < opp_actions; ++o) {
            int a = (s.player == Player::A) ? s.act(m, q) : o;
            int b = (s.player == Player::A) ? o : s.act(m, q);
            int q2 = c.step(q, a, b);
            int k = c.color(q, q2);
            int m2 = s.skeleton.step(m, k);
            edges[i].emplace_back(node(q2, m2), obj.priority.at(k));
        }
    }
    // Edge priorities: subdivide so the shared cycle check applies.
    TurnGame g;
    g.n = static_cast<int>(order.size());
    int pmin = obj.min_priority();
    g.owner.assign(g.n, Player::A);
    g.priority.assign(g.n, pmin);
    g.succ.resize(g.n);
    for (int v = 0; v < static_cast<int>(edges.size()); ++v)
        for (auto [w, pr] : edges[v]) {
            int e = g.n++;
            g.owner.push_back(Player::A);
            g.priority.push_back(pr);
            g.succ.push_back({w});
            g.succ[v].push_back(e);
        }
    std::vector<char> all(g.n, 1);
    int bad_parity = (s.player == Player::A) ? 1 : 0;
    return !detail::has_cycle_with_max_parity(g, all, g.succ, bad_parity);
}

/**
 * Finite-horizon check that cylinder probabilities transfer to the
 * sequential version: the given state strategies are replayed in the
 * sequential arena (the first mover ignores the half step, the second
 * mover answers as it would have concurrently), and the probability of
 * every path of length <= h must equal the probability of its preimage.
 */
inline bool seq_prob_equal(const ConcurrentArena& c, const StateStrategy& sa,
                           const StateStrategy& sb, int h)
{
    SeqArena seq = sequentialize(c);
    const ConcurrentArena& t = seq.tb;

    auto project = [&](const std::vector<int>& rho) {
        std::vector<int> out;
        for (int v : rho)
            if (!seq.is_vb(v)) out.push_back(v);
        return out;
    };
    StateStrategy sigma_a = [&](const std::vector<int>& rho) {
        std::vector<Rat> d(t.na(), Rat(0));
        if (seq.is_vb(rho.back())) { d[0] = 1; return d; }
        return sa(project(rho));
    };
    StateStrategy sigma_b = [&](const std::vector<int>& rho) {
        std::vector<Rat> d(t.nb(), Rat(0));
        if (!seq.is_vb(rho.back())) { d[0] = 1; return d; }
        std::vector<int> head(rho.begin(), rho.end() - 1);
        return sb(project(head));
    };

    auto check = [&](const std::vector<int>& pi) {
        Rat lhs = cylinder_prob(c, sa, sb, pi).probability;
        // Preimage cylinders ending at the same state: interleave every
        // choice of half step.
        Rat rhs(0);
        std::vector<std::vector<int>> lifts{{pi[0]}};
        for (size_t i = 1; i < pi.size(); ++i) {
            std::vector<std::vector<int>> grown;
            for (const auto& rho : lifts)
                for (int a = 0; a < c.na(); ++a) {
                    auto ext = rho;
                    ext.push_back(seq.vb(pi[i - 1], a));
                    ext.push_back(pi[i]);
                    grown.push_back(std::move(ext));
                }
            lifts = std::move(grown);
        }
        for (const auto& rho : lifts)
            rhs += cylinder_prob(t, sigma_a, sigma_b, rho).probability;
        return lhs == rhs;
    };

    // Every path over Q of length up to h, reachable or not.
    std::vector<std::vector<int>> frontier;
    for (int q = 0; q < c.nq(); ++q) frontier.push_back({q});
    for (int len = 1; len <= h; ++len) {
        for (const auto& pi : frontier)
            if (!check(pi)) return false;
        if (len == h) break;
        std::vector<std::vector<int>> next;
        for (const auto& pi : frontier)
            for (int q = 0; q < c.nq(); ++q) {
                auto ext = pi;
                ext.push_back(q);
                next.push_back(std::move(ext));
            }
        frontier = std::move(next);
    }
    return true;
}

} // namespace congame
