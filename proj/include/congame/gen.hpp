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

#include <random>
#include <string>
#include <vector>

#include "arena.hpp"
#include "gameform.hpp"
#include "nash.hpp"
#include "strategy.hpp"
#include "transform.hpp"

namespace congame {

/**
 * Deterministic random source for the property suites and the instance
 * generator. Values come straight from the mt19937_64 stream (no standard
 * distributions, which differ between library implementations), so a seed
 * pins the exact instance on every platform.
 */
struct Rng {
    std::mt19937_64 engine;
    explicit Rng(unsigned long long seed) : engine(seed) {}

    int below(int n) { return static_cast<int>(engine() % static_cast<unsigned long long>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool chance(int num, int den) { return below(den) < num; }
};

inline GameForm gen_form(Rng& rng, int max_rows = 4, int max_cols = 4, int max_outcomes = 4)
{
    int rows = rng.range(1, max_rows);
    int cols = rng.range(1, max_cols);
    int pool = rng.range(1, max_outcomes);
    std::vector<std::vector<int>> table(rows, std::vector<int>(cols));
    std::vector<int> used_ids;
    std::vector<int> remap(pool, -1);
    for (auto& row : table)
        for (int& e : row) {
            int o = rng.below(pool);
            if (remap[o] == -1) {
                remap[o] = static_cast<int>(used_ids.size());
                used_ids.push_back(o);
            }
            e = remap[o];
        }
    GameForm f;
    for (int r = 0; r < rows; ++r) f.row_names.push_back("a" + std::to_string(r + 1));
    for (int cc = 0; cc < cols; ++cc) f.col_names.push_back("b" + std::to_string(cc + 1));
    for (size_t i = 0; i < used_ids.size(); ++i) f.outcome_names.push_back("o" + std::to_string(i));
    f.table = std::move(table);
    return f;
}

// Mutation that preserves duplicate-similarity: duplicate random rows and
// columns of `f`, then shuffle both axes.
inline GameForm duplicate_mutation(Rng& rng, const GameForm& f)
{
    GameForm g;
    g.outcome_names = f.outcome_names;
    std::vector<int> row_src, col_src;
    for (int r = 0; r < f.rows(); ++r) {
        row_src.push_back(r);
        if (rng.chance(1, 3)) row_src.push_back(r);
    }
    for (int cc = 0; cc < f.cols(); ++cc) {
        col_src.push_back(cc);
        if (rng.chance(1, 3)) col_src.push_back(cc);
    }
    for (size_t i = row_src.size(); i > 1; --i) std::swap(row_src[i - 1], row_src[rng.below(static_cast<int>(i))]);
    for (size_t i = col_src.size(); i > 1; --i) std::swap(col_src[i - 1], col_src[rng.below(static_cast<int>(i))]);
    for (size_t r = 0; r < row_src.size(); ++r) g.row_names.push_back("a" + std::to_string(r + 1));
    for (size_t cc = 0; cc < col_src.size(); ++cc) g.col_names.push_back("b" + std::to_string(cc + 1));
    g.table.assign(row_src.size(), std::vector<int>(col_src.size()));
    for (size_t r = 0; r < row_src.size(); ++r)
        for (size_t cc = 0; cc < col_src.size(); ++cc) g.table[r][cc] = f.at(row_src[r], col_src[cc]);
    return g;
}

inline TreeGameForm gen_tree(Rng& rng, int depth, int max_branch, int num_outcomes)
{
    TreeGameForm t;
    for (int o = 0; o < num_outcomes; ++o) t.outcome_names.push_back("o" + std::to_string(o));
    std::function<int(int, Player)> build = [&](int remaining, Player owner) {
        TreeGameForm::Node node;
        bool leaf = (remaining == 0) || (remaining < rng.below(3));
        if (leaf) {
            node.outcome = rng.below(num_outcomes);
            t.nodes.push_back(node);
            return static_cast<int>(t.nodes.size() - 1);
        }
        node.owner = owner;
        int id = static_cast<int>(t.nodes.size());
        t.nodes.push_back(node);
        int branches = rng.range(1, max_branch);
        std::vector<int> kids;
        for (int i = 0; i < branches; ++i)
            kids.push_back(build(remaining - 1, rng.chance(1, 2) ? Player::A : Player::B));
        t.nodes[id].children = std::move(kids);
        return id;
    };
    Player root_owner = rng.chance(1, 2) ? Player::A : Player::B;
    // Force an internal root so the tree has depth >= 1.
    TreeGameForm::Node root;
    root.owner = root_owner;
    t.nodes.push_back(root);
    int branches = rng.range(1, max_branch);
    std::vector<int> kids;
    for (int i = 0; i < branches; ++i)
        kids.push_back(build(depth - 1, rng.chance(1, 2) ? Player::A : Player::B));
    t.nodes[0].children = std::move(kids);
    t.root = 0;
    return t;
}

struct ArenaGenOptions {
    int nq = 3;
    int na = 2;
    int nb = 2;
    int nk = 2;
    bool stochastic = false;
    bool locally_determined = true;
};

/**
 * Random concurrent arena. Dirac Nature states exist for every state;
 * stochastic arenas add two-point distributions. Local determinacy is
 * enforced per state by resampling the interaction, with a turn-based
 * fallback row pattern, so generation always terminates.
 */
inline ConcurrentArena gen_arena(Rng& rng, const ArenaGenOptions& opt)
{
    ConcurrentArena c;
    for (int q = 0; q < opt.nq; ++q) c.states.push_back("q" + std::to_string(q));
    c.q0 = 0;
    for (int a = 0; a < opt.na; ++a) c.actions_a.push_back("a" + std::to_string(a + 1));
    for (int b = 0; b < opt.nb; ++b) c.actions_b.push_back("b" + std::to_string(b + 1));
    for (int q = 0; q < opt.nq; ++q) {
        c.nature.push_back("d_" + c.states[q]);
        c.dist.push_back(RationalDist::dirac(q));
    }
    if (opt.stochastic && opt.nq > 1) {
        const Rat weights[] = {Rat(1, 2), Rat(1, 3), Rat(1, 4), Rat(2, 3)};
        for (int q = 0; q < opt.nq; ++q) {
            int q2 = (q + 1 + rng.below(opt.nq - 1)) % opt.nq;
            if (q2 == q) q2 = (q + 1) % opt.nq;
            Rat w = weights[rng.below(4)];
            RationalDist d;
            if (q < q2)
                d.entries = {{q, w}, {q2, 1 - w}};
            else
                d.entries = {{q2, w}, {q, 1 - w}};
            c.nature.push_back("r" + std::to_string(q));
            c.dist.push_back(d);
        }
    }
    int nd = c.nd();
    c.delta.assign(opt.nq * opt.na * opt.nb, 0);
    for (int q = 0; q < opt.nq; ++q) {
        bool ok = false;
        for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
            for (int a = 0; a < opt.na; ++a)
                for (int b = 0; b < opt.nb; ++b) c.d(q, a, b) = rng.below(nd);
            ok = !opt.locally_determined || is_determined(local_interaction(c, q));
        }
        if (!ok) {
            // Turn-based rows are always determined.
            for (int a = 0; a < opt.na; ++a) {
                int dd = rng.below(nd);
                for (int b = 0; b < opt.nb; ++b) c.d(q, a, b) = dd;
            }
        }
    }
    for (int k = 0; k < opt.nk; ++k) c.colors.push_back("k" + std::to_string(k));
    c.col.assign(opt.nq * opt.nq, 0);
    for (int& k : c.col) k = rng.below(opt.nk);
    return c;
}

inline ParityObjective gen_parity(Rng& rng, int nk, int max_priority)
{
    ParityObjective obj;
    for (int k = 0; k < nk; ++k) obj.priority.push_back(rng.range(0, max_priority));
    return obj;
}

inline Preference gen_acyclic_preference(Rng& rng, int n)
{
    std::vector<int> order(n + 1);
    for (int k = 0; k <= n; ++k) order[k] = k;
    for (int i = n; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    Preference p;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.chance(1, 3)) p.edges.emplace_back(order[i], order[j]);
    return p;
}

inline MemorySkeleton gen_skeleton(Rng& rng, int max_states, int num_colors)
{
    MemorySkeleton sk;
    sk.num_states = rng.range(1, max_states);
    sk.initial = rng.below(sk.num_states);
    sk.num_colors = num_colors;
    sk.update.resize(sk.num_states * num_colors);
    for (int& m : sk.update) m = rng.below(sk.num_states);
    return sk;
}

inline std::vector<int> gen_word(Rng& rng, int num_colors, int len)
{
    std::vector<int> w(len);
    for (int& k : w) k = rng.below(num_colors);
    return w;
}

inline FiniteStrategy gen_strategy(Rng& rng, const ConcurrentArena& c, Player p, int max_mem)
{
    FiniteStrategy s;
    s.player = p;
    s.skeleton = gen_skeleton(rng, max_mem, c.nk());
    s.num_locations = c.nq();
    s.action.resize(s.skeleton.num_states * c.nq());
    int count = (p == Player::A) ? c.na() : c.nb();
    for (int& a : s.action) a = rng.below(count);
    return s;
}

inline ColorNFA gen_nfa(Rng& rng, int max_states, int alphabet)
{
    ColorNFA n;
    n.num_states = rng.range(1, max_states);
    n.initial.insert(0);
    for (int s = 0; s < n.num_states; ++s)
        if (rng.chance(1, 3)) n.accepting.insert(s);
    if (n.accepting.empty()) n.accepting.insert(rng.below(n.num_states));
    for (int s = 0; s < n.num_states; ++s)
        for (int l = -1; l < alphabet; ++l)
            for (int t = 0; t < n.num_states; ++t)
                if (rng.chance(1, 4)) n.transitions.emplace_back(s, l, t);
    return n;
}

} // namespace congame
