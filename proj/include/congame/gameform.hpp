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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rational.hpp"

namespace congame {

enum class Player { A, B };

inline Player opponent(Player p) { return p == Player::A ? Player::B : Player::A; }
inline const char* player_name(Player p) { return p == Player::A ? "A" : "B"; }

/**
 * A game form: a finite table of outcomes, rows chosen by Player A and
 * columns by Player B simultaneously. No winning condition is attached;
 * valuations (two-colorings of the outcomes) are supplied separately.
 *
 * Ids are dense integers; names are kept for I/O only. Iteration is always
 * in ascending id order so all derived data is deterministic.
 */
struct GameForm {
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    std::vector<std::string> outcome_names;
    std::vector<std::vector<int>> table; // table[row][col] = outcome id

    int rows() const { return static_cast<int>(row_names.size()); }
    int cols() const { return static_cast<int>(col_names.size()); }
    int outcomes() const { return static_cast<int>(outcome_names.size()); }
    int at(int r, int c) const { return table[r][c]; }
};

// Determinacy checks enumerate all 2^|O| valuations, so keep forms desk-scale.
inline constexpr int kMaxOutcomesForDeterminacy = 16;

inline void require_valid(const GameForm& f)
{
    if (f.row_names.empty() || f.col_names.empty())
        throw error("game form: action lists must be non-empty");
    if (f.table.size() != f.row_names.size())
        throw error("game form: table has wrong number of rows");
    std::vector<char> used(f.outcome_names.size(), 0);
    for (const auto& row : f.table) {
        if (row.size() != f.col_names.size())
            throw error("game form: table has ragged rows");
        for (int o : row) {
            if (o < 0 || o >= f.outcomes())
                throw error("game form: table entry is not a declared outcome");
            used[o] = 1;
        }
    }
    for (int o = 0; o < f.outcomes(); ++o)
        if (!used[o])
            throw error("game form: unused outcome id \"" + f.outcome_names[o] + "\"");
}

// Player A's winning outcomes. Stored as a bitmask over outcome ids.
struct Valuation {
    std::uint32_t bits = 0;
    bool contains(int o) const { return (bits >> o) & 1u; }
    static Valuation of(std::initializer_list<int> outcomes)
    {
        Valuation v;
        for (int o : outcomes) v.bits |= (1u << o);
        return v;
    }
};

inline void require_valid(const GameForm& f, const Valuation& v)
{
    if (f.outcomes() > kMaxOutcomesForDeterminacy)
        throw error("game form has more than 16 outcomes");
    if (v.bits >> f.outcomes())
        throw error("valuation references unknown outcome");
}

/**
 * Strategies of `player` guaranteeing that the outcome lands in `target`,
 * regardless of the opponent's choice: rows entirely inside the target for
 * Player A, columns entirely inside it for Player B.
 */
inline std::vector<int> winning_for_target(const GameForm& f, std::uint32_t target, Player player)
{
    std::vector<int> result;
    if (player == Player::A) {
        for (int r = 0; r < f.rows(); ++r) {
            bool ok = true;
            for (int c = 0; c < f.cols() && ok; ++c)
                ok = (target >> f.at(r, c)) & 1u;
            if (ok) result.push_back(r);
        }
    } else {
        for (int c = 0; c < f.cols(); ++c) {
            bool ok = true;
            for (int r = 0; r < f.rows() && ok; ++r)
                ok = (target >> f.at(r, c)) & 1u;
            if (ok) result.push_back(c);
        }
    }
    return result;
}

// Winning strategies in the win/lose game: A wins on the valuation, B on its
// complement. Either set may be empty; never both non-empty.
inline std::vector<int> winning_strategies(const GameForm& f, const Valuation& v, Player player)
{
    require_valid(f, v);
    std::uint32_t all = (f.outcomes() >= 32) ? ~0u : ((1u << f.outcomes()) - 1u);
    std::uint32_t target = (player == Player::A) ? v.bits : (all & ~v.bits);
    return winning_for_target(f, target, player);
}

enum class Winner { A, B, None };

inline Winner is_determined_for(const GameForm& f, const Valuation& v)
{
    if (!winning_strategies(f, v, Player::A).empty()) return Winner::A;
    if (!winning_strategies(f, v, Player::B).empty()) return Winner::B;
    return Winner::None;
}

inline bool is_determined(const GameForm& f)
{
    if (f.outcomes() > kMaxOutcomesForDeterminacy)
        throw error("game form has more than 16 outcomes");
    std::uint32_t all = (1u << f.outcomes());
    for (std::uint32_t bits = 0; bits < all; ++bits) {
        Valuation v{bits};
        if (is_determined_for(f, v) == Winner::None) return false;
    }
    return true;
}

// Smallest valuation (in ascending bitmask order) with no winning strategy
// for either player, or -1 if the form is determined.
inline long first_undetermined_valuation(const GameForm& f)
{
    if (f.outcomes() > kMaxOutcomesForDeterminacy)
        throw error("game form has more than 16 outcomes");
    std::uint32_t all = (1u << f.outcomes());
    for (std::uint32_t bits = 0; bits < all; ++bits)
        if (is_determined_for(f, Valuation{bits}) == Winner::None)
            return static_cast<long>(bits);
    return -1;
}

/**
 * A finite turn-based game tree with outcomes at the leaves. Internal nodes
 * are owned by one of the players; leaves carry an outcome id.
 */
struct TreeGameForm {
    struct Node {
        int outcome = -1;          // leaf iff outcome >= 0
        Player owner = Player::A;  // for internal nodes
        std::vector<int> children;
        bool leaf() const { return outcome >= 0; }
    };
    std::vector<Node> nodes;
    int root = 0;
    std::vector<std::string> outcome_names;

    int depth_of(int u) const
    {
        if (nodes[u].leaf()) return 0;
        int d = 0;
        for (int c : nodes[u].children) d = std::max(d, depth_of(c));
        return d + 1;
    }
    int depth() const { return depth_of(root); }
};

enum class TreeTranslation { Minimalist, Complete };

namespace detail {

// A tree strategy maps controlled nodes to a child index. Minimalist
// strategies leave choices unspecified inside subgames discarded by the
// strategy's own earlier choices; complete strategies specify every node.
using TreeStrategy = std::map<int, int>;

inline std::vector<TreeStrategy> tree_strategies(const TreeGameForm& t, int u, Player p,
                                                 TreeTranslation mode)
{
    const auto& node = t.nodes[u];
    if (node.leaf()) return {TreeStrategy{}};

    std::vector<std::vector<TreeStrategy>> per_child;
    per_child.reserve(node.children.size());
    for (int c : node.children) per_child.push_back(tree_strategies(t, c, p, mode));

    std::vector<TreeStrategy> result;
    if (node.owner == p && mode == TreeTranslation::Minimalist) {
        for (size_t i = 0; i < node.children.size(); ++i)
            for (const auto& s : per_child[i]) {
                TreeStrategy merged = s;
                merged[u] = static_cast<int>(i);
                result.push_back(std::move(merged));
            }
        return result;
    }
    // Cross product over all children; for an owned node in complete mode,
    // additionally pick the move at u.
    std::vector<TreeStrategy> cross{TreeStrategy{}};
    for (const auto& options : per_child) {
        std::vector<TreeStrategy> next;
        for (const auto& base : cross)
            for (const auto& s : options) {
                TreeStrategy merged = base;
                merged.insert(s.begin(), s.end());
                next.push_back(std::move(merged));
            }
        cross = std::move(next);
    }
    if (node.owner != p) return cross;
    for (size_t i = 0; i < node.children.size(); ++i)
        for (const auto& base : cross) {
            TreeStrategy merged = base;
            merged[u] = static_cast<int>(i);
            result.push_back(std::move(merged));
        }
    return result;
}

inline int tree_outcome(const TreeGameForm& t, const TreeStrategy& sa, const TreeStrategy& sb)
{
    int u = t.root;
    while (!t.nodes[u].leaf()) {
        const auto& s = (t.nodes[u].owner == Player::A) ? sa : sb;
        u = t.nodes[u].children[s.at(u)];
    }
    return t.nodes[u].outcome;
}

} // namespace detail

inline GameForm tree_to_gameform(const TreeGameForm& t, TreeTranslation mode)
{
    if (t.depth() < 1) throw error("tree game form must have depth >= 1");
    auto sa = detail::tree_strategies(t, t.root, Player::A, mode);
    auto sb = detail::tree_strategies(t, t.root, Player::B, mode);
    GameForm f;
    f.outcome_names = t.outcome_names;
    f.table.assign(sa.size(), std::vector<int>(sb.size(), 0));
    std::vector<char> used(t.outcome_names.size(), 0);
    for (size_t r = 0; r < sa.size(); ++r)
        for (size_t c = 0; c < sb.size(); ++c) {
            int o = detail::tree_outcome(t, sa[r], sb[c]);
            f.table[r][c] = o;
            used[o] = 1;
        }
    // Drop outcomes that no strategy pair realizes, keeping ids dense.
    std::vector<int> remap(t.outcome_names.size(), -1);
    int next = 0;
    for (size_t o = 0; o < used.size(); ++o)
        if (used[o]) {
            remap[o] = next++;
            f.outcome_names[remap[o]] = t.outcome_names[o];
        }
    f.outcome_names.resize(next);
    for (auto& row : f.table)
        for (int& o : row) o = remap[o];
    for (size_t r = 0; r < sa.size(); ++r) f.row_names.push_back("a" + std::to_string(r));
    for (size_t c = 0; c < sb.size(); ++c) f.col_names.push_back("b" + std::to_string(c));
    return f;
}

enum class SimRelation { Duplicate, Offer, Winning };

namespace detail {

inline std::vector<std::vector<int>> transposed(const std::vector<std::vector<int>>& m)
{
    if (m.empty()) return {};
    std::vector<std::vector<int>> t(m[0].size(), std::vector<int>(m.size()));
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
    return t;
}

inline std::vector<std::vector<int>> dedup_rows(std::vector<std::vector<int>> m)
{
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

// Canonical representative of a matrix under independent row and column
// permutations: minimum over column permutations of the row-sorted matrix.
inline std::vector<std::vector<int>> canonical_matrix(std::vector<std::vector<int>> m)
{
    if (m.empty()) return m;
    size_t ncols = m[0].size();
    if (ncols > 8) throw cap_error("canonical form: too many distinct columns");
    std::vector<int> perm(ncols);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> best;
    do {
        std::vector<std::vector<int>> cand(m.size(), std::vector<int>(ncols));
        for (size_t r = 0; r < m.size(); ++r)
            for (size_t c = 0; c < ncols; ++c) cand[r][c] = m[r][perm[c]];
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = std::move(cand);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::uint32_t row_mask(const GameForm& f, int r)
{
    std::uint32_t m = 0;
    for (int c = 0; c < f.cols(); ++c) m |= 1u << f.at(r, c);
    return m;
}

inline std::uint32_t col_mask(const GameForm& f, int c)
{
    std::uint32_t m = 0;
    for (int r = 0; r < f.rows(); ++r) m |= 1u << f.at(r, c);
    return m;
}

inline std::set<std::uint32_t> offer_family(const GameForm& f, Player p)
{
    std::set<std::uint32_t> fam;
    if (p == Player::A)
        for (int r = 0; r < f.rows(); ++r) fam.insert(row_mask(f, r));
    else
        for (int c = 0; c < f.cols(); ++c) fam.insert(col_mask(f, c));
    return fam;
}

// Closure of an offer family under supersets within [0, 2^n): whether a
// row/column exists inside O' is determined by the subset-offers below O'.
inline bool has_offer_within(const std::set<std::uint32_t>& fam, std::uint32_t limit)
{
    for (std::uint32_t m : fam)
        if ((m & ~limit) == 0) return true;
    return false;
}

} // namespace detail

// sim_w via the subset-offer characterization: for every outcome subset O',
// a row (resp. column) with entries only inside O' exists in f iff in g.
inline bool sim_w_by_offers(const GameForm& f, const GameForm& g)
{
    auto fr = detail::offer_family(f, Player::A), gr = detail::offer_family(g, Player::A);
    auto fc = detail::offer_family(f, Player::B), gc = detail::offer_family(g, Player::B);
    std::uint32_t all = 1u << f.outcomes();
    for (std::uint32_t limit = 0; limit < all; ++limit) {
        if (detail::has_offer_within(fr, limit) != detail::has_offer_within(gr, limit)) return false;
        if (detail::has_offer_within(fc, limit) != detail::has_offer_within(gc, limit)) return false;
    }
    return true;
}

// sim_w by direct replay of every valuation; cross-checked against the offer
// characterization in the test suite.
inline bool sim_w_by_valuations(const GameForm& f, const GameForm& g)
{
    std::uint32_t all = 1u << f.outcomes();
    for (std::uint32_t bits = 0; bits < all; ++bits) {
        Valuation v{bits};
        for (Player p : {Player::A, Player::B})
            if (winning_strategies(f, v, p).empty() != winning_strategies(g, v, p).empty())
                return false;
    }
    return true;
}

inline bool sim_check(const GameForm& f, const GameForm& g, SimRelation rel)
{
    if (f.outcome_names != g.outcome_names)
        throw error("sim_check: game forms must share one outcome set");
    switch (rel) {
    case SimRelation::Duplicate: {
        auto reduce = [](std::vector<std::vector<int>> m) {
            m = detail::dedup_rows(std::move(m));
            m = detail::transposed(detail::dedup_rows(detail::transposed(m)));
            return m;
        };
        auto fm = reduce(f.table), gm = reduce(g.table);
        size_t fc = fm.empty() ? 0 : fm[0].size(), gc = gm.empty() ? 0 : gm[0].size();
        if (fm.size() != gm.size() || fc != gc) return false;
        // Canonicalize over the smaller dimension to keep the permutation
        // search cheap; transposing both sides preserves the equivalence.
        if (!fm.empty() && fc > fm.size()) {
            fm = detail::transposed(fm);
            gm = detail::transposed(gm);
        }
        return detail::canonical_matrix(fm) == detail::canonical_matrix(gm);
    }
    case SimRelation::Offer:
        return detail::offer_family(f, Player::A) == detail::offer_family(g, Player::A)
            && detail::offer_family(f, Player::B) == detail::offer_family(g, Player::B);
    case SimRelation::Winning:
        return sim_w_by_offers(f, g);
    }
    return false;
}

/**
 * Bounded search for a tree game form offer-similar to `f`: enumerates the
 * offer families realizable by trees of depth <= 2 (branching up to the
 * number of outcomes plus one collapses to subsets, so family enumeration is
 * exhaustive at this depth). Returns true iff some such tree matches both
 * the row and column offer family of `f`.
 */
inline bool offer_similar_tree_exists_depth2(const GameForm& f)
{
    if (f.outcomes() > 8) throw cap_error("offer similarity search: too many outcomes");
    using Fam = std::set<std::uint32_t>;
    using Pair = std::pair<Fam, Fam>; // (row family, column family)
    std::set<Pair> depth_le1;
    // Leaves.
    for (int o = 0; o < f.outcomes(); ++o) {
        Fam s{1u << o};
        depth_le1.insert({s, s});
    }
    // Depth-1 trees: one internal node with a non-empty leaf set S.
    std::uint32_t all = 1u << f.outcomes();
    for (std::uint32_t s = 1; s < all; ++s) {
        Fam singles;
        for (int o = 0; o < f.outcomes(); ++o)
            if ((s >> o) & 1u) singles.insert(1u << o);
        depth_le1.insert({singles, Fam{s}}); // A-owned root: A picks a leaf
        depth_le1.insert({Fam{s}, singles}); // B-owned root
    }
    auto matches = [&](const Pair& p) {
        return p.first == detail::offer_family(f, Player::A)
            && p.second == detail::offer_family(f, Player::B);
    };
    for (const auto& p : depth_le1)
        if (matches(p)) return true;

    // Depth-2 trees: root over a set of depth<=1 children. Duplicate children
    // only duplicate strategies, so sets of child family-pairs are exhaustive.
    std::vector<Pair> pool(depth_le1.begin(), depth_le1.end());
    int n = static_cast<int>(pool.size());
    std::vector<int> chosen;
    // Enumerate non-empty subsets of the pool of size <= outcomes()+1.
    int max_children = f.outcomes() + 1;
    std::vector<Pair> stackfam;
    std::set<Pair> seen;
    std::function<bool(int)> rec = [&](int start) -> bool {
        if (!chosen.empty()) {
            for (Player rootp : {Player::A, Player::B}) {
                Fam rows, cols;
                if (rootp == Player::A) {
                    // A picks a child; rows = union of child row families.
                    for (int i : chosen)
                        rows.insert(pool[i].first.begin(), pool[i].first.end());
                    // B plays in every child; columns = cross-unions.
                    std::set<std::uint32_t> acc{0};
                    for (int i : chosen) {
                        std::set<std::uint32_t> next;
                        for (auto base : acc)
                            for (auto c : pool[i].second) next.insert(base | c);
                        acc = std::move(next);
                    }
                    cols = std::move(acc);
                } else {
                    for (int i : chosen)
                        cols.insert(pool[i].second.begin(), pool[i].second.end());
                    std::set<std::uint32_t> acc{0};
                    for (int i : chosen) {
                        std::set<std::uint32_t> next;
                        for (auto base : acc)
                            for (auto r : pool[i].first) next.insert(base | r);
                        acc = std::move(next);
                    }
                    rows = std::move(acc);
                }
                if (matches({rows, cols})) return true;
            }
        }
        if (static_cast<int>(chosen.size()) == max_children) return false;
        for (int i = start; i < n; ++i) {
            chosen.push_back(i);
            if (rec(i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace congame
