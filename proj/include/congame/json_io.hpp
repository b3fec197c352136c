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

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "arena.hpp"
#include "gameform.hpp"
#include "nash.hpp"
#include "semantics.hpp"
#include "strategy.hpp"
#include "transform.hpp"

namespace congame {

using Json = nlohmann::json;

// Object keys are kept sorted (nlohmann's default map) and rationals are
// strings, so serialization is byte-stable and float-free.
inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw error(std::string("malformed JSON: ") + e.what());
    }
}

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

namespace detail {

inline int index_of(const std::vector<std::string>& names, const std::string& name,
                    const std::string& what)
{
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw error("unknown " + what + ": \"" + name + "\"");
}

inline std::vector<std::string> name_list(const Json& j, const std::string& key)
{
    if (!j.contains(key) || !j[key].is_array())
        throw error("expected array field \"" + key + "\"");
    std::vector<std::string> out;
    for (const auto& e : j[key]) out.push_back(e.get<std::string>());
    return out;
}

inline std::pair<std::string, std::string> split2(const std::string& s, const std::string& what)
{
    auto comma = s.find(',');
    if (comma == std::string::npos) throw error("expected \"x,y\" key in " + what);
    return {s.substr(0, comma), s.substr(comma + 1)};
}

} // namespace detail

inline int state_index(const ConcurrentArena& c, const std::string& name)
{
    return detail::index_of(c.states, name, "state");
}

inline Json to_json(const GameForm& f)
{
    Json j;
    j["rows"] = f.row_names;
    j["cols"] = f.col_names;
    j["outcomes"] = f.outcome_names;
    Json table = Json::array();
    for (const auto& row : f.table) {
        Json r = Json::array();
        for (int o : row) r.push_back(f.outcome_names[o]);
        table.push_back(r);
    }
    j["table"] = table;
    return j;
}

inline GameForm gameform_from_json(const Json& j)
{
    GameForm f;
    f.row_names = detail::name_list(j, "rows");
    f.col_names = detail::name_list(j, "cols");
    f.outcome_names = detail::name_list(j, "outcomes");
    if (!j.contains("table")) throw error("game form: missing table");
    for (const auto& row : j["table"]) {
        std::vector<int> r;
        for (const auto& e : row)
            r.push_back(detail::index_of(f.outcome_names, e.get<std::string>(), "outcome"));
        f.table.push_back(std::move(r));
    }
    require_valid(f);
    return f;
}

inline Json to_json(const ConcurrentArena& c)
{
    Json j;
    j["states"] = c.states;
    j["q0"] = c.states[c.q0];
    j["actions_A"] = c.actions_a;
    j["actions_B"] = c.actions_b;
    j["nature"] = c.nature;
    Json delta;
    for (int q = 0; q < c.nq(); ++q)
        for (int a = 0; a < c.na(); ++a)
            for (int b = 0; b < c.nb(); ++b)
                delta[c.states[q] + "," + c.actions_a[a] + "," + c.actions_b[b]] =
                    c.nature[c.d(q, a, b)];
    j["delta"] = delta;
    Json dist;
    for (int dd = 0; dd < c.nd(); ++dd) {
        Json d;
        for (const auto& [q, p] : c.dist[dd].entries) d[c.states[q]] = rat_to_string(p);
        dist[c.nature[dd]] = d;
    }
    j["dist"] = dist;
    j["colors"] = c.colors;
    Json col;
    for (int q = 0; q < c.nq(); ++q)
        for (int q2 = 0; q2 < c.nq(); ++q2)
            col[c.states[q] + "," + c.states[q2]] = c.colors[c.color(q, q2)];
    j["col"] = col;
    return j;
}

/**
 * Arena loader. Deterministic arenas may omit "dist" and point "delta"
 * straight at states; Dirac Nature states are inserted for the targets.
 * Missing "col" pairs default to the first color.
 */
inline ConcurrentArena arena_from_json(const Json& j)
{
    ConcurrentArena c;
    c.states = detail::name_list(j, "states");
    c.actions_a = detail::name_list(j, "actions_A");
    c.actions_b = detail::name_list(j, "actions_B");
    if (!j.contains("q0")) throw error("arena: missing q0");
    c.q0 = detail::index_of(c.states, j["q0"].get<std::string>(), "state");
    c.colors = detail::name_list(j, "colors");

    bool with_nature = j.contains("dist");
    if (with_nature) {
        c.nature = detail::name_list(j, "nature");
        for (int dd = 0; dd < c.nd(); ++dd) {
            RationalDist d;
            const Json& spec = j["dist"].contains(c.nature[dd]) ? j["dist"][c.nature[dd]] : Json();
            if (spec.is_null())
                throw error("arena: Nature state " + c.nature[dd] + " has no distribution");
            for (auto it = spec.begin(); it != spec.end(); ++it) {
                int q = detail::index_of(c.states, it.key(), "state");
                d.entries.emplace_back(q, rat_from_string(it.value().get<std::string>()));
            }
            std::sort(d.entries.begin(), d.entries.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            c.dist.push_back(std::move(d));
        }
    } else {
        for (const auto& s : c.states) {
            c.nature.push_back("d_" + s);
            c.dist.push_back(RationalDist::dirac(detail::index_of(c.states, s, "state")));
        }
    }

    if (!j.contains("delta")) throw error("arena: missing delta");
    c.delta.assign(c.nq() * c.na() * c.nb(), -1);
    for (auto it = j["delta"].begin(); it != j["delta"].end(); ++it) {
        std::string key = it.key();
        auto c1 = key.find(',');
        auto c2 = key.find(',', c1 == std::string::npos ? 0 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw error("arena: delta key must be \"state,actionA,actionB\"");
        int q = detail::index_of(c.states, key.substr(0, c1), "state");
        int a = detail::index_of(c.actions_a, key.substr(c1 + 1, c2 - c1 - 1), "action of A");
        int b = detail::index_of(c.actions_b, key.substr(c2 + 1), "action of B");
        std::string target = it.value().get<std::string>();
        int dd = with_nature ? detail::index_of(c.nature, target, "Nature state")
                             : detail::index_of(c.states, target, "state");
        c.d(q, a, b) = dd;
    }
    for (int e : c.delta)
        if (e < 0) throw error("arena: delta is not total");

    c.col.assign(c.nq() * c.nq(), 0);
    if (j.contains("col"))
        for (auto it = j["col"].begin(); it != j["col"].end(); ++it) {
            auto [qs, q2s] = detail::split2(it.key(), "col");
            int q = detail::index_of(c.states, qs, "state");
            int q2 = detail::index_of(c.states, q2s, "state");
            c.color(q, q2) = detail::index_of(c.colors, it.value().get<std::string>(), "color");
        }
    auto bad = validate(c);
    if (!bad.empty()) throw error("arena: " + bad.front());
    return c;
}

inline Json to_json(const ParityObjective& obj, const ConcurrentArena& c)
{
    Json pr;
    for (int k = 0; k < c.nk(); ++k) pr[c.colors[k]] = obj.priority[k];
    Json j;
    j["priorities"] = pr;
    return j;
}

inline ParityObjective parity_from_json(const Json& j, const ConcurrentArena& c)
{
    if (!j.contains("priorities")) throw error("parity objective: missing priorities");
    ParityObjective obj;
    obj.priority.assign(c.nk(), -1);
    for (auto it = j["priorities"].begin(); it != j["priorities"].end(); ++it) {
        int k = detail::index_of(c.colors, it.key(), "color");
        obj.priority[k] = it.value().get<int>();
    }
    for (int k = 0; k < c.nk(); ++k)
        if (obj.priority[k] < 0)
            throw error("parity objective: color " + c.colors[k] + " has no priority");
    return obj;
}

inline Json to_json(const FiniteStrategy& s, const ConcurrentArena& c)
{
    const auto& acts = (s.player == Player::A) ? c.actions_a : c.actions_b;
    Json j;
    j["player"] = player_name(s.player);
    std::vector<std::string> mem;
    for (int m = 0; m < s.skeleton.num_states; ++m) mem.push_back("m" + std::to_string(m));
    j["memory"] = mem;
    j["m_init"] = mem[s.skeleton.initial];
    Json mu;
    for (int m = 0; m < s.skeleton.num_states; ++m)
        for (int k = 0; k < s.skeleton.num_colors; ++k)
            mu[mem[m] + "," + c.colors[k]] = mem[s.skeleton.step(m, k)];
    j["mu"] = mu;
    Json lambda;
    for (int m = 0; m < s.skeleton.num_states; ++m)
        for (int q = 0; q < s.num_locations; ++q)
            lambda[mem[m] + "," + c.states[q]] = acts[s.act(m, q)];
    j["lambda"] = lambda;
    return j;
}

inline FiniteStrategy strategy_from_json(const Json& j, const ConcurrentArena& c)
{
    FiniteStrategy s;
    std::string p = j.value("player", "");
    if (p == "A")
        s.player = Player::A;
    else if (p == "B")
        s.player = Player::B;
    else
        throw error("strategy: player must be \"A\" or \"B\"");
    const auto& acts = (s.player == Player::A) ? c.actions_a : c.actions_b;
    std::vector<std::string> mem = detail::name_list(j, "memory");
    s.skeleton.num_states = static_cast<int>(mem.size());
    s.skeleton.initial = detail::index_of(mem, j["m_init"].get<std::string>(), "memory state");
    s.skeleton.num_colors = c.nk();
    s.skeleton.update.assign(mem.size() * c.nk(), -1);
    for (auto it = j["mu"].begin(); it != j["mu"].end(); ++it) {
        auto [ms, ks] = detail::split2(it.key(), "mu");
        int m = detail::index_of(mem, ms, "memory state");
        int k = detail::index_of(c.colors, ks, "color");
        s.skeleton.update[m * c.nk() + k] =
            detail::index_of(mem, it.value().get<std::string>(), "memory state");
    }
    for (int u : s.skeleton.update)
        if (u < 0) throw error("strategy: mu is not total");
    s.num_locations = c.nq();
    s.action.assign(mem.size() * c.nq(), -1);
    for (auto it = j["lambda"].begin(); it != j["lambda"].end(); ++it) {
        auto [ms, qs] = detail::split2(it.key(), "lambda");
        int m = detail::index_of(mem, ms, "memory state");
        int q = detail::index_of(c.states, qs, "state");
        s.action[m * c.nq() + q] = detail::index_of(acts, it.value().get<std::string>(), "action");
    }
    for (int a : s.action)
        if (a < 0) throw error("strategy: lambda is not total");
    return s;
}

inline Json to_json(const ColorMonitor& m, const std::vector<std::string>& colors)
{
    Json j;
    j["states"] = m.state_names;
    j["initial"] = m.state_names[m.initial];
    j["colors"] = colors;
    Json delta;
    for (int s = 0; s < m.num_states; ++s)
        for (int k = 0; k < m.num_colors; ++k)
            delta[m.state_names[s] + "," + colors[k]] = m.state_names[m.step(s, k)];
    j["delta"] = delta;
    Json pr;
    for (int s = 0; s < m.num_states; ++s) pr[m.state_names[s]] = m.priority[s];
    j["priority"] = pr;
    return j;
}

inline ColorMonitor monitor_from_json(const Json& j, const std::vector<std::string>& colors)
{
    ColorMonitor m;
    m.state_names = detail::name_list(j, "states");
    m.num_states = static_cast<int>(m.state_names.size());
    m.initial = detail::index_of(m.state_names, j["initial"].get<std::string>(), "monitor state");
    m.num_colors = static_cast<int>(colors.size());
    m.delta.assign(m.num_states * m.num_colors, -1);
    for (auto it = j["delta"].begin(); it != j["delta"].end(); ++it) {
        auto [ms, ks] = detail::split2(it.key(), "monitor delta");
        int s = detail::index_of(m.state_names, ms, "monitor state");
        int k = detail::index_of(colors, ks, "color");
        m.delta[s * m.num_colors + k] =
            detail::index_of(m.state_names, it.value().get<std::string>(), "monitor state");
    }
    for (int t : m.delta)
        if (t < 0) throw error("monitor: delta is not total");
    m.priority.assign(m.num_states, 0);
    for (auto it = j["priority"].begin(); it != j["priority"].end(); ++it)
        m.priority[detail::index_of(m.state_names, it.key(), "monitor state")] =
            it.value().get<int>();
    require_valid(m);
    return m;
}

inline Json to_json(const ColorNFA& n, const std::vector<std::string>& alphabet)
{
    Json j;
    std::vector<std::string> names;
    for (int s = 0; s < n.num_states; ++s) names.push_back("s" + std::to_string(s));
    j["states"] = names;
    Json init = Json::array(), acc = Json::array(), trans = Json::array();
    for (int s : n.initial) init.push_back(names[s]);
    for (int s : n.accepting) acc.push_back(names[s]);
    for (const auto& [u, l, v] : n.transitions)
        trans.push_back(Json::array({names[u], l == ColorNFA::eps ? "" : alphabet[l], names[v]}));
    j["initial"] = init;
    j["accepting"] = acc;
    j["transitions"] = trans;
    j["alphabet"] = alphabet;
    return j;
}

inline ColorNFA nfa_from_json(const Json& j, std::vector<std::string>* alphabet_out = nullptr)
{
    ColorNFA n;
    auto names = detail::name_list(j, "states");
    auto alphabet = detail::name_list(j, "alphabet");
    n.num_states = static_cast<int>(names.size());
    for (const auto& s : detail::name_list(j, "initial"))
        n.initial.insert(detail::index_of(names, s, "NFA state"));
    for (const auto& s : detail::name_list(j, "accepting"))
        n.accepting.insert(detail::index_of(names, s, "NFA state"));
    for (const auto& t : j["transitions"]) {
        if (!t.is_array() || t.size() != 3) throw error("NFA: transition must be [from,label,to]");
        int u = detail::index_of(names, t[0].get<std::string>(), "NFA state");
        std::string lbl = t[1].get<std::string>();
        int l = lbl.empty() ? ColorNFA::eps : detail::index_of(alphabet, lbl, "color");
        int v = detail::index_of(names, t[2].get<std::string>(), "NFA state");
        n.transitions.emplace_back(u, l, v);
    }
    if (alphabet_out) *alphabet_out = alphabet;
    return n;
}

inline std::pair<Preference, Preference> prefs_from_json(const Json& j)
{
    auto read = [&](const char* key) {
        Preference p;
        if (!j.contains(key)) return p;
        for (const auto& e : j[key]) {
            if (!e.is_array() || e.size() != 2)
                throw error("preferences: entries must be [worse, better] pairs");
            p.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return p;
    };
    return {read("A"), read("B")};
}

inline Json to_json(const ValueReport& rep, const ConcurrentArena& c)
{
    Json j;
    j["maximin"] = rat_to_string(rep.maximin);
    j["minimax"] = rat_to_string(rep.minimax);
    j["equal"] = rep.equal;
    if (rep.equal) j["value"] = rat_to_string(rep.maximin);
    auto profile = [&](const std::vector<int>& pa, const std::vector<int>& pb) {
        Json p;
        for (int q = 0; q < c.nq(); ++q) {
            p["A"][c.states[q]] = c.actions_a[pa[q]];
            p["B"][c.states[q]] = c.actions_b[pb[q]];
        }
        return p;
    };
    j["maximin_profile"] = profile(rep.maximin_a, rep.maximin_b);
    j["minimax_profile"] = profile(rep.minimax_a, rep.minimax_b);
    return j;
}

inline Json to_json(const NEWitness& w, const ConcurrentArena& c)
{
    Json j;
    j["certified"] = w.certified;
    j["outcome_class"] = w.outcome_class;
    j["A"] = to_json(w.a, c);
    j["B"] = to_json(w.b, c);
    return j;
}

// Sidecar emitted with `transform seq`: pair notation to state id.
inline Json seq_sidecar(const SeqArena& s)
{
    Json vb;
    for (int q = 0; q < s.num_states; ++q)
        for (int a = 0; a < s.num_actions_a; ++a) {
            std::string key = "(" + s.tb.states[q] + "," + s.tb.actions_a[a] + ")";
            vb[key] = s.vb(q, a);
        }
    Json j;
    j["VB"] = vb;
    return j;
}

} // namespace congame
