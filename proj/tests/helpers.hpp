#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles enumerate raw paths in the input graph and never touch the
// subset-automaton code paths they are checking.

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sofic/model.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(SOFIC_DATA_DIR) + "/" + name + ".json";
}

inline sofic::model::LabeledDigraph load_system(const std::string& name) {
    std::ifstream in(data_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return sofic::model::forward_prune(sofic::model::parse_spec(ss.str()));
}

// Single vertex carrying one loop per element of D_r.
inline sofic::model::LabeledDigraph full_shift(const std::vector<int>& bases) {
    sofic::model::LabeledDigraph g;
    g.bases = sofic::model::Bases(bases);
    g.vertex_count = 1;
    std::vector<int> digits(bases.size(), 0);
    for (;;) {
        g.edges.push_back({0, 0, {digits}});
        int i = 0;
        while (i < static_cast<int>(bases.size())) {
            if (++digits[static_cast<std::size_t>(i)] <
                bases[static_cast<std::size_t>(i)])
                break;
            digits[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == static_cast<int>(bases.size())) break;
    }
    return g;
}

// The classical carpet pattern with unequal row counts: one vertex, loops
// (0,0), (1,0), (1,1) over bases [2,3].
inline sofic::model::LabeledDigraph mcmullen_pattern() {
    sofic::model::LabeledDigraph g;
    g.bases = sofic::model::Bases({2, 3});
    g.vertex_count = 1;
    g.edges.push_back({0, 0, {{0, 0}}});
    g.edges.push_back({0, 0, {{1, 0}}});
    g.edges.push_back({0, 0, {{1, 1}}});
    return g;
}

inline sofic::model::LabeledDigraph permute_vertices(const sofic::model::LabeledDigraph& g,
                                                     const std::vector<int>& perm) {
    sofic::model::LabeledDigraph out;
    out.bases = g.bases;
    out.vertex_count = g.vertex_count;
    for (const auto& e : g.edges)
        out.edges.push_back({perm[static_cast<std::size_t>(e.from)],
                             perm[static_cast<std::size_t>(e.to)], e.label});
    return out;
}

// Brute-force N_i(k): collect the level-i projections of the label sequences
// of all length-k paths, from every start vertex.
inline std::set<std::vector<std::vector<int>>> brute_word_set(
    const sofic::model::LabeledDigraph& g, int level, int k) {
    std::set<std::vector<std::vector<int>>> words;
    std::vector<std::vector<const sofic::model::Edge*>> out_edges(
        static_cast<std::size_t>(g.vertex_count));
    for (const auto& e : g.edges) out_edges[static_cast<std::size_t>(e.from)].push_back(&e);
    std::vector<std::vector<int>> current;
    std::function<void(int, int)> rec = [&](int v, int depth) {
        if (depth == k) {
            words.insert(current);
            return;
        }
        for (const auto* e : out_edges[static_cast<std::size_t>(v)]) {
            current.emplace_back(e->label.digits.begin(), e->label.digits.begin() + level);
            rec(e->to, depth + 1);
            current.pop_back();
        }
    };
    for (int v = 0; v < g.vertex_count; ++v) rec(v, 0);
    return words;
}

inline long long brute_word_count(const sofic::model::LabeledDigraph& g, int level, int k) {
    return static_cast<long long>(brute_word_set(g, level, k).size());
}

// Brute-force fiber count: level-(i+1) words projecting onto s.
inline long long brute_fiber_count(const sofic::model::LabeledDigraph& g,
                                   const std::vector<std::vector<int>>& s, int level) {
    long long count = 0;
    for (const auto& w : brute_word_set(g, level + 1, static_cast<int>(s.size()))) {
        bool match = true;
        for (std::size_t p = 0; p < s.size() && match; ++p)
            for (std::size_t d = 0; d < s[p].size() && match; ++d)
                if (w[p][d] != s[p][d]) match = false;
        if (match) ++count;
    }
    return count;
}

}  // namespace testutil
