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
#include <vector>

namespace congame {

// Tarjan strongly connected components, iterative. Components are numbered
// in reverse topological order (edges go from higher to lower component id).
inline std::vector<int> tarjan_scc(int n, const std::vector<std::vector<int>>& succ,
                                   int* num_components = nullptr)
{
    std::vector<int> comp(n, -1), low(n, 0), idx(n, -1);
    std::vector<int> stk;
    std::vector<char> on_stack(n, 0);
    int counter = 0, comps = 0;

    struct Frame { int v; size_t child; };
    for (int root = 0; root < n; ++root) {
        if (idx[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        idx[root] = low[root] = counter++;
        stk.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child < succ[v].size()) {
                int w = succ[v][child++];
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                if (low[v] == idx[v]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stack[w] = 0;
                        comp[w] = comps;
                        if (w == v) break;
                    }
                    ++comps;
                }
                int done = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[done]);
            }
        }
    }
    if (num_components) *num_components = comps;
    return comp;
}

inline std::vector<char> reachable_from(int n, const std::vector<std::vector<int>>& succ, int start)
{
    std::vector<char> seen(n, 0);
    std::vector<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : succ[v])
            if (!seen[w]) { seen[w] = 1; queue.push_back(w); }
    }
    return seen;
}

} // namespace congame
