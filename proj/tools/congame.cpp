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

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <congame/acceptance.hpp>
#include <congame/congame.hpp>
#include <congame/oracle.hpp>

namespace {

using namespace congame;

constexpr const char* kVersion = "congame 1.0.0";

// Exit codes: 0 success (or property holds / Player A wins), 1 property
// refuted or Player B wins, 2 input error, 3 enumeration cap exceeded.
constexpr int kExitRefuted = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCap = 3;

// Written output files, recorded for the run manifest.
std::vector<std::pair<std::string, std::string>> g_outputs;

std::string fnv1a64(const std::string& data)
{
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

void emit(const Json& j, const std::string& out_path)
{
    std::string text = dump_json(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw error("cannot write file: " + out_path);
    out << text;
    g_outputs.emplace_back(out_path, fnv1a64(text));
}

ColorWord parse_color_word(const std::string& text)
{
    ColorWord w;
    auto bar = text.find('|');
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == '.') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else
                cur.push_back(ch);
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };
    if (bar == std::string::npos) {
        w.cycle = split(text);
    } else {
        w.prefix = split(text.substr(0, bar));
        w.cycle = split(text.substr(bar + 1));
    }
    if (w.cycle.empty()) throw error("color word needs a non-empty cycle: \"" + text + "\"");
    return w;
}

int run(int argc, char** argv)
{
    CLI::App app{"solver and toolbox for two-player concurrent graph games"};
    app.require_subcommand(1);
    bool json_out = false;
    std::string manifest_path;
    app.add_flag("--json", json_out, "machine-readable JSON output");
    app.add_option("--manifest", manifest_path,
                   "write a reproducibility manifest (inputs, digests, timing) here");

    // ---- gf ----------------------------------------------------------
    auto* gf = app.add_subcommand("gf", "game-form analysis");
    gf->require_subcommand(1);
    std::string gf_form, gf_other, gf_relation = "w";
    auto* gf_analyze = gf->add_subcommand("analyze", "classify a game form");
    gf_analyze->add_option("form", gf_form, "game form JSON file")->required();
    auto* gf_sim = gf->add_subcommand("sim", "compare two game forms");
    gf_sim->add_option("--form", gf_form)->required();
    gf_sim->add_option("--other", gf_other)->required();
    gf_sim->add_option("--relation", gf_relation, "d | offer | w");

    // ---- arena -------------------------------------------------------
    auto* ar = app.add_subcommand("arena", "arena validation and classification");
    ar->require_subcommand(1);
    std::string ar_arena, ar_state;
    auto* ar_validate = ar->add_subcommand("validate", "list invariant violations");
    ar_validate->add_option("--arena", ar_arena)->required();
    auto* ar_classify = ar->add_subcommand("classify", "deterministic / turn-based / locally determined");
    ar_classify->add_option("--arena", ar_arena)->required();
    auto* ar_local = ar->add_subcommand("local", "local interaction at a state");
    ar_local->add_option("--arena", ar_arena)->required();
    ar_local->add_option("--state", ar_state)->required();

    // ---- transform ---------------------------------------------------
    auto* tr = app.add_subcommand("transform", "arena and automaton transforms");
    tr->require_subcommand(1);
    std::string tr_arena, tr_out, tr_map, tr_nfa, tr_prefix, tr_cycle;
    auto* tr_seq = tr->add_subcommand("seq", "sequential version of an arena");
    tr_seq->add_option("arena", tr_arena, "arena JSON file")->required();
    tr_seq->add_option("--out", tr_out, "write the turn-based arena here");
    tr_seq->add_option("--map", tr_map, "write the pair-state sidecar here");
    auto* tr_proj = tr->add_subcommand("nfa-project", "project an NFA language");
    tr_proj->add_option("--nfa", tr_nfa)->required();
    auto* tr_lift = tr->add_subcommand("nfa-lift", "lift an NFA language to the preimage");
    tr_lift->add_option("--nfa", tr_nfa)->required();
    auto* tr_limit = tr->add_subcommand("limit", "lasso membership in the limit language");
    tr_limit->add_option("--nfa", tr_nfa)->required();
    tr_limit->add_option("--prefix", tr_prefix, "dot-separated colors, may be empty");
    tr_limit->add_option("--cycle", tr_cycle, "dot-separated colors")->required();

    // ---- solve -------------------------------------------------------
    auto* so = app.add_subcommand("solve", "parity solving");
    std::string so_arena, so_parity;
    bool so_via_seq = false, so_verify = false;
    so->add_option("--arena", so_arena)->required();
    so->add_option("--parity", so_parity)->required();
    so->add_flag("--via-seq", so_via_seq, "sequentialize, solve, parallelize");
    so->add_flag("--verify", so_verify, "re-certify the winning strategy");

    // ---- value -------------------------------------------------------
    auto* va = app.add_subcommand("value", "exact game value over positional profiles");
    std::string va_arena, va_parity, va_monitor;
    unsigned long long va_cap = 1ull << 20;
    va->add_option("--arena", va_arena)->required();
    va->add_option("--parity", va_parity);
    va->add_option("--monitor", va_monitor);
    va->add_option("--cap", va_cap, "profile enumeration cap");

    // ---- strategy ----------------------------------------------------
    auto* st = app.add_subcommand("strategy", "strategy transfer operators");
    st->require_subcommand(1);
    std::string st_arena, st_strategy;
    auto* st_seq = st->add_subcommand("seq", "sequentialize a strategy");
    auto* st_para = st->add_subcommand("par-a", "parallelize a first-mover strategy");
    auto* st_parb = st->add_subcommand("par-b", "parallelize a second-mover strategy");
    for (auto* cmd : {st_seq, st_para, st_parb}) {
        cmd->add_option("--arena", st_arena, "the concurrent arena")->required();
        cmd->add_option("--strategy", st_strategy)->required();
    }

    // ---- nash --------------------------------------------------------
    auto* na = app.add_subcommand("nash", "positional Nash equilibrium in a priority game");
    std::string na_arena, na_prefs;
    unsigned long long na_cap = 1ull << 20;
    na->add_option("--arena", na_arena)->required();
    na->add_option("--prefs", na_prefs)->required();
    na->add_option("--cap", na_cap);

    // ---- gadget ------------------------------------------------------
    auto* ga = app.add_subcommand("gadget", "counterexample constructions");
    ga->require_subcommand(1);
    std::string ga_form, ga_win, ga_lose, ga_arena, ga_state;
    auto* ga_tt = ga->add_subcommand("two-tail", "two-tail gadget from a non-determined form");
    ga_tt->add_option("--form", ga_form)->required();
    ga_tt->add_option("--win", ga_win, "winning tail, e.g. \"y\" or \"x.y|y\"")->required();
    ga_tt->add_option("--lose", ga_lose, "losing tail")->required();
    auto* ga_open = ga->add_subcommand("open", "open-objective counterexample coloring");
    ga_open->add_option("--arena", ga_arena)->required();
    ga_open->add_option("--state", ga_state, "pivot state")->required();

    // ---- oracle ------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "brute-force backends and instance generation");
    orc->require_subcommand(1);
    std::string orc_arena, orc_parity, orc_monitor, orc_kind = "arena";
    unsigned long long orc_seed = 1, orc_cap = 1ull << 20;
    bool orc_stochastic = false;
    std::string orc_form;
    auto* orc_det = orc->add_subcommand("determined", "quantifier-scan determinacy check");
    orc_det->add_option("--form", orc_form)->required();
    auto* orc_winner = orc->add_subcommand("winner", "positional brute-force winner");
    orc_winner->add_option("--arena", orc_arena)->required();
    orc_winner->add_option("--parity", orc_parity)->required();
    auto* orc_value = orc->add_subcommand("value", "brute-force value report");
    orc_value->add_option("--arena", orc_arena)->required();
    orc_value->add_option("--parity", orc_parity);
    orc_value->add_option("--monitor", orc_monitor);
    orc_value->add_option("--cap", orc_cap);
    auto* orc_gen = orc->add_subcommand("gen", "seeded random instance");
    orc_gen->add_option("--kind", orc_kind, "form | arena | parity | prefs");
    orc_gen->add_option("--seed", orc_seed)->required();
    orc_gen->add_flag("--stochastic", orc_stochastic);

    // ---- repro -------------------------------------------------------
    auto* re = app.add_subcommand("repro", "run the full acceptance suite");
    (void)re;

    CLI11_PARSE(app, argc, argv);

    auto dispatch = [&]() -> int {

        if (gf_analyze->parsed()) {
            auto f = gameform_from_json(load_json_file(gf_form));
            bool det = is_determined(f);
            if (json_out) {
                Json j;
                j["rows"] = f.rows();
                j["cols"] = f.cols();
                j["outcomes"] = f.outcomes();
                j["determined"] = det;
                if (!det) {
                    long v = first_undetermined_valuation(f);
                    Json names = Json::array();
                    for (int o = 0; o < f.outcomes(); ++o)
                        if ((v >> o) & 1) names.push_back(f.outcome_names[o]);
                    j["undetermined_valuation"] = names;
                }
                emit(j, "");
            } else {
                std::cout << "rows: " << f.rows() << "\ncols: " << f.cols()
                          << "\noutcomes: " << f.outcomes() << "\n"
                          << "determined: " << (det ? "true" : "false") << "\n";
                if (!det) {
                    long v = first_undetermined_valuation(f);
                    std::cout << "undetermined valuation:";
                    for (int o = 0; o < f.outcomes(); ++o)
                        if ((v >> o) & 1) std::cout << " " << f.outcome_names[o];
                    std::cout << "\n";
                }
            }
            return det ? 0 : kExitRefuted;
        }
        if (gf_sim->parsed()) {
            auto f = gameform_from_json(load_json_file(gf_form));
            auto g = gameform_from_json(load_json_file(gf_other));
            SimRelation rel;
            if (gf_relation == "d")
                rel = SimRelation::Duplicate;
            else if (gf_relation == "offer")
                rel = SimRelation::Offer;
            else if (gf_relation == "w")
                rel = SimRelation::Winning;
            else
                throw error("unknown relation: " + gf_relation);
            bool sim = sim_check(f, g, rel);
            std::cout << "similar(" << gf_relation << "): " << (sim ? "true" : "false") << "\n";
            return sim ? 0 : kExitRefuted;
        }

        if (ar_validate->parsed()) {
            auto j = load_json_file(ar_arena);
            auto c = arena_from_json(j); // structural errors throw
            auto bad = validate(c);
            if (bad.empty()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& b : bad) std::cout << "violation: " << b << "\n";
            return kExitRefuted;
        }
        if (ar_classify->parsed()) {
            auto c = arena_from_json(load_json_file(ar_arena));
            auto cls = classify(c);
            if (json_out) {
                Json j;
                j["deterministic"] = cls.deterministic;
                j["turn_based"] = cls.turn_based;
                j["locally_determined"] = cls.locally_determined;
                emit(j, "");
            } else {
                std::cout << "deterministic: " << (cls.deterministic ? "true" : "false") << "\n"
                          << "turn_based: " << (cls.turn_based ? "true" : "false") << "\n"
                          << "locally_determined: " << (cls.locally_determined ? "true" : "false")
                          << "\n";
            }
            return 0;
        }
        if (ar_local->parsed()) {
            auto c = arena_from_json(load_json_file(ar_arena));
            int q = state_index(c, ar_state);
            emit(to_json(local_interaction(c, q)), "");
            return 0;
        }

        if (tr_seq->parsed()) {
            auto c = arena_from_json(load_json_file(tr_arena));
            auto seq = sequentialize(c);
            Json arena_json = to_json(seq.tb);
            Json sidecar = seq_sidecar(seq);
            if (tr_out.empty() && tr_map.empty()) {
                Json j;
                j["arena"] = arena_json;
                j["sidecar"] = sidecar;
                emit(j, "");
            } else {
                if (!tr_out.empty()) emit(arena_json, tr_out);
                if (!tr_map.empty()) emit(sidecar, tr_map);
            }
            return 0;
        }
        if (tr_proj->parsed() || tr_lift->parsed()) {
            std::vector<std::string> alphabet;
            auto n = nfa_from_json(load_json_file(tr_nfa), &alphabet);
            if (tr_proj->parsed()) {
                if (alphabet.empty()) throw error("nfa-project: empty alphabet");
                std::vector<std::string> reduced(alphabet.begin() + 1, alphabet.end());
                emit(to_json(nfa_project(n), reduced), "");
            } else {
                std::vector<std::string> extended{"#"};
                extended.insert(extended.end(), alphabet.begin(), alphabet.end());
                emit(to_json(nfa_lift(n), extended), "");
            }
            return 0;
        }
        if (tr_limit->parsed()) {
            std::vector<std::string> alphabet;
            auto n = nfa_from_json(load_json_file(tr_nfa), &alphabet);
            auto to_ids = [&](const std::string& text) {
                std::vector<int> out;
                std::string cur;
                auto flush = [&] {
                    if (cur.empty()) return;
                    for (size_t i = 0; i < alphabet.size(); ++i)
                        if (alphabet[i] == cur) {
                            out.push_back(static_cast<int>(i));
                            cur.clear();
                            return;
                        }
                    throw error("unknown color: \"" + cur + "\"");
                };
                for (char ch : text) {
                    if (ch == '.')
                        flush();
                    else
                        cur.push_back(ch);
                }
                flush();
                return out;
            };
            bool in_limit = limit_contains(n, to_ids(tr_prefix), to_ids(tr_cycle));
            std::cout << "in_limit: " << (in_limit ? "true" : "false") << "\n";
            return in_limit ? 0 : kExitRefuted;
        }

        if (so->parsed()) {
            auto c = arena_from_json(load_json_file(so_arena));
            auto obj = parity_from_json(load_json_file(so_parity), c);
            Json j;
            Player winner;
            if (so_via_seq) {
                auto solved = solve_concurrent(c, obj);
                winner = solved.winner;
                Json regions;
                for (int v = 0; v < solved.seq.tb.nq(); ++v)
                    regions[solved.seq.tb.states[v]] = player_name(solved.seq_result.winner[v]);
                j["winner"] = player_name(winner);
                j["sequential_regions"] = regions;
                j["strategy"] = to_json(solved.strategy, c);
                if (so_verify) j["verified"] = certify_winning(c, solved.strategy, obj);
            } else {
                auto solved = zielonka(c, obj);
                winner = solved.winner[c.q0];
                Json regions;
                for (int q = 0; q < c.nq(); ++q) regions[c.states[q]] = player_name(solved.winner[q]);
                j["winner"] = player_name(winner);
                j["regions"] = regions;
                auto sa = FiniteStrategy::positional_of(Player::A, c.nk(), solved.strategy_a);
                auto sb = FiniteStrategy::positional_of(Player::B, c.nk(), solved.strategy_b);
                j["strategy_A"] = to_json(sa, c);
                j["strategy_B"] = to_json(sb, c);
                if (so_verify) {
                    auto& s = (winner == Player::A) ? sa : sb;
                    j["verified"] = certify_winning(c, s, obj);
                }
            }
            if (json_out)
                emit(j, "");
            else
                std::cout << "winner: " << player_name(winner) << "\n" << dump_json(j);
            return winner == Player::A ? 0 : kExitRefuted;
        }

        if (va->parsed() || orc_value->parsed()) {
            std::string arena_path = va->parsed() ? va_arena : orc_arena;
            std::string parity_path = va->parsed() ? va_parity : orc_parity;
            std::string monitor_path = va->parsed() ? va_monitor : orc_monitor;
            unsigned long long cap = va->parsed() ? va_cap : orc_cap;
            auto c = arena_from_json(load_json_file(arena_path));
            ParityObjective obj;
            ConcurrentArena target = c;
            if (!monitor_path.empty()) {
                auto mon = monitor_from_json(load_json_file(monitor_path), c.colors);
                auto prod = monitor_product(c, mon);
                target = prod.arena;
                obj = prod.objective;
            } else if (!parity_path.empty()) {
                obj = parity_from_json(load_json_file(parity_path), c);
            } else {
                throw error("value: need --parity or --monitor");
            }
            auto rep = bruteforce_value(target, obj, cap);
            emit(to_json(rep, target), "");
            return 0;
        }

        if (st_seq->parsed() || st_para->parsed() || st_parb->parsed()) {
            auto c = arena_from_json(load_json_file(st_arena));
            auto seq = sequentialize(c);
            if (st_seq->parsed()) {
                auto s = strategy_from_json(load_json_file(st_strategy), c);
                emit(to_json(seq_strategy(s, c, seq), seq.tb), "");
            } else {
                auto s = strategy_from_json(load_json_file(st_strategy), seq.tb);
                if (st_para->parsed())
                    emit(to_json(par_strategy_a(s, seq), c), "");
                else
                    emit(to_json(par_strategy_b(s, c, seq), c), "");
            }
            return 0;
        }

        if (na->parsed()) {
            auto c = arena_from_json(load_json_file(na_arena));
            auto [pa, pb] = prefs_from_json(load_json_file(na_prefs));
            auto w = find_positional_ne(c, pa, pb, na_cap);
            emit(to_json(w, c), "");
            return w.certified ? 0 : kExitRefuted;
        }

        if (ga_tt->parsed()) {
            auto f = gameform_from_json(load_json_file(ga_form));
            auto g = build_two_tail_gadget(f, parse_color_word(ga_win), parse_color_word(ga_lose));
            Json j;
            j["arena"] = to_json(g.arena);
            j["monitor"] = to_json(g.monitor, g.arena.colors);
            emit(j, "");
            return 0;
        }
        if (ga_open->parsed()) {
            auto c = arena_from_json(load_json_file(ga_arena));
            int q = state_index(c, ga_state);
            auto oc = build_open_counterexample(c, q);
            Json j;
            j["arena"] = to_json(oc.arena);
            j["monitor"] = to_json(oc.monitor, oc.arena.colors);
            emit(j, "");
            return 0;
        }

        if (orc_det->parsed()) {
            auto f = gameform_from_json(load_json_file(orc_form));
            bool det = oracle::determined_naive(f);
            std::cout << "determined: " << (det ? "true" : "false") << "\n";
            return det ? 0 : kExitRefuted;
        }
        if (orc_winner->parsed()) {
            auto c = arena_from_json(load_json_file(orc_arena));
            auto obj = parity_from_json(load_json_file(orc_parity), c);
            Player w = oracle::positional_winner(c, obj);
            std::cout << "winner: " << player_name(w) << "\n";
            return w == Player::A ? 0 : kExitRefuted;
        }
        if (orc_gen->parsed()) {
            Rng rng(orc_seed);
            if (orc_kind == "form") {
                emit(to_json(gen_form(rng)), "");
            } else if (orc_kind == "arena") {
                ArenaGenOptions opt;
                opt.nq = rng.range(2, 4);
                opt.na = rng.range(2, 3);
                opt.nb = rng.range(2, 3);
                opt.nk = rng.range(2, 3);
                opt.stochastic = orc_stochastic;
                emit(to_json(gen_arena(rng, opt)), "");
            } else if (orc_kind == "parity") {
                // Mirrors the arena generator's stream so the parity file for
                // seed N matches the arena for seed N.
                ArenaGenOptions opt;
                opt.nq = rng.range(2, 4);
                opt.na = rng.range(2, 3);
                opt.nb = rng.range(2, 3);
                opt.nk = rng.range(2, 3);
                opt.stochastic = orc_stochastic;
                auto c = gen_arena(rng, opt);
                emit(to_json(gen_parity(rng, c.nk(), 3), c), "");
            } else if (orc_kind == "prefs") {
                auto p = gen_acyclic_preference(rng, 3);
                auto p2 = gen_acyclic_preference(rng, 3);
                Json j;
                Json ja = Json::array(), jb = Json::array();
                for (auto [w2, b] : p.edges) ja.push_back(Json::array({w2, b}));
                for (auto [w2, b] : p2.edges) jb.push_back(Json::array({w2, b}));
                j["A"] = ja;
                j["B"] = jb;
                emit(j, "");
            } else {
                throw error("unknown generator kind: " + orc_kind);
            }
            return 0;
        }

        if (re->parsed()) return acceptance::report(std::cout);

        return 0;
    };

    if (manifest_path.empty()) return dispatch();

    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream captured;
    auto* old_buf = std::cout.rdbuf(captured.rdbuf());
    int code;
    try {
        code = dispatch();
    } catch (...) {
        std::cout.rdbuf(old_buf);
        throw;
    }
    std::cout.rdbuf(old_buf);
    std::cout << captured.str();

    Json manifest;
    std::string command;
    for (int i = 0; i < argc; ++i) {
        if (i) command += " ";
        command += argv[i];
    }
    manifest["command"] = command;
    manifest["version"] = kVersion;
    Json inputs;
    for (const std::string& path :
         {gf_form, gf_other, ar_arena, tr_arena, so_arena, so_parity, va_arena, va_parity,
          va_monitor, st_arena, st_strategy, na_arena, na_prefs, ga_form, ga_arena, orc_arena,
          orc_parity, orc_monitor}) {
        if (path.empty()) continue;
        std::ifstream in(path);
        if (!in) continue;
        std::stringstream ss;
        ss << in.rdbuf();
        inputs[path] = fnv1a64(ss.str());
    }
    manifest["inputs"] = inputs;
    Json outputs;
    outputs["stdout"] = fnv1a64(captured.str());
    for (const auto& [path, digest] : g_outputs) outputs[path] = digest;
    manifest["outputs"] = outputs;
    if (orc_gen->parsed()) manifest["seed"] = orc_seed;
    manifest["exit"] = code;
    manifest["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::ofstream mout(manifest_path);
    if (!mout) throw error("cannot write manifest: " + manifest_path);
    mout << dump_json(manifest);
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const congame::cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const congame::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
