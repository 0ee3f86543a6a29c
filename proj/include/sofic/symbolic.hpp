#pragma once

// Word-level machinery: coordinate projections, subset-construction
// determinization of the projected shifts, exact word counting N_i(k), and
// exact fiber counting |p_{i-1}^{-1}(s)|.
//
// Projections of a right-resolving presentation are usually not
// right-resolving, so counting words at level i < r goes through the subset
// construction over the i-digit-projected edge labels.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sofic/big_uint.hpp"
#include "sofic/matrix.hpp"
#include "sofic/model.hpp"

namespace sofic::symbolic {

// A finite word of level-i prefixes; symbols are stored as digit vectors.
struct Word {
    int level = 0;
    std::vector<std::vector<int>> symbols;

    int length() const { return static_cast<int>(symbols.size()); }
};

// Coordinatewise truncation of every symbol to its first j digits.
Word project_word(const Word& w, int j);

// Per-level transition tables: for each encoded level-i symbol, the bitmask
// of head vertices reachable from each tail vertex.
struct LevelTables {
    int level = 0;
    int symbol_count = 0;
    int vertex_count = 0;
    std::vector<std::vector<std::uint64_t>> vertex_move;  // [symbol][vertex] -> head mask
    std::vector<int> occurring_symbols;                   // sorted encoded ids
    std::vector<std::vector<int>> extensions;             // [level-(i-1) id] -> level-i ids

    std::uint64_t move(std::uint64_t mask, int symbol) const {
        std::uint64_t out = 0;
        const std::vector<std::uint64_t>& mv = vertex_move[static_cast<std::size_t>(symbol)];
        while (mask != 0) {
            int v = __builtin_ctzll(mask);
            mask &= mask - 1;
            out |= mv[static_cast<std::size_t>(v)];
        }
        return out;
    }
};

LevelTables build_level_tables(const model::LabeledDigraph& g, int level);

// Deterministic presentation of the level-i projected shift. States are
// nonempty vertex subsets stored as bitmasks; the initial state is the full
// (pruned) vertex set, so path labels from it are exactly S^(i)|_k.
struct SubsetAutomaton {
    int level = 0;
    int symbol_count = 0;
    std::uint64_t initial = 0;
    std::vector<std::uint64_t> states;       // discovery (BFS) order, states[0] = initial
    std::vector<std::vector<int>> next;      // [state][symbol] -> state index or -1
    std::vector<char> essential;             // state lies on a directed cycle
    std::vector<int> essential_states;       // indices, ascending
    Matrix essential_adjacency;              // symbol multiplicities between essential states

    bool empty() const { return states.empty(); }
    std::string dump_edges() const;          // diagnostic edge-list text
};

// Subset construction over the i-digit-projected labels. Requires a pruned,
// nonempty graph with at most 64 vertices.
SubsetAutomaton determinize(const model::LabeledDigraph& g, int level);

// Exact number of length-k words accepted from the initial state.
BigUint count_words(const SubsetAutomaton& aut, int k);

// N_i(k) for a pruned graph; empty graphs give 0 for k >= 1 and 1 for k = 0.
BigUint count_words(const model::LabeledDigraph& g, int level, int k);

// Exact |p_i^{-1}(s)| where i = s.level: the number of level-(i+1) words in
// S^(i+1)|_N projecting to s. Illegal s gives 0. Dynamic programming over
// (position, reachable-subset) pairs with exact integer counts.
BigUint fiber_count_exact(const model::LabeledDigraph& g, const Word& s);

// Sum-of-entries norm of A_{s(1)} ... A_{s(N)} for a level-(r-1) word.
// Returns the natural log when log_domain is set (and -inf for zero).
double fiber_surrogate_norm(const model::LabeledDigraph& g, const Word& s,
                            bool log_domain = false);

}  // namespace sofic::symbolic
