#include "sofic/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace sofic::symbolic {

Word project_word(const Word& w, int j) {
    if (j < 1 || j > w.level) throw model::SpecError("project_word: level out of range");
    if (j == w.level) return w;
    Word out;
    out.level = j;
    out.symbols.reserve(w.symbols.size());
    for (const auto& sym : w.symbols)
        out.symbols.emplace_back(sym.begin(), sym.begin() + j);
    return out;
}

LevelTables build_level_tables(const model::LabeledDigraph& g, int level) {
    if (level < 1 || level > g.dimension())
        throw model::SpecError("level out of range");
    if (g.vertex_count > 64)
        throw model::SpecError("vertex count exceeds bitmask capacity (64)");
    LevelTables t;
    t.level = level;
    t.vertex_count = g.vertex_count;
    long long sc = g.bases.prefix_count(level);
    if (sc > (1 << 22)) throw model::SpecError("alphabet too large at this level");
    t.symbol_count = static_cast<int>(sc);
    t.vertex_move.assign(static_cast<std::size_t>(t.symbol_count),
                         std::vector<std::uint64_t>(static_cast<std::size_t>(g.vertex_count), 0));
    std::vector<char> occurs(static_cast<std::size_t>(t.symbol_count), 0);
    for (const model::Edge& e : g.edges) {
        int id = model::encode_prefix(g.bases, e.label.digits, level);
        t.vertex_move[static_cast<std::size_t>(id)][static_cast<std::size_t>(e.from)] |=
            (1ull << e.to);
        occurs[static_cast<std::size_t>(id)] = 1;
    }
    for (int s = 0; s < t.symbol_count; ++s)
        if (occurs[static_cast<std::size_t>(s)]) t.occurring_symbols.push_back(s);
    // Occurring level-i symbols grouped under their level-(i-1) projection.
    long long parents = level == 1 ? 1 : g.bases.prefix_count(level - 1);
    t.extensions.assign(static_cast<std::size_t>(parents), {});
    int stride = static_cast<int>(parents);
    for (int s : t.occurring_symbols)
        t.extensions[static_cast<std::size_t>(s % stride)].push_back(s);
    return t;
}

SubsetAutomaton determinize(const model::LabeledDigraph& g, int level) {
    if (g.vertex_count == 0)
        throw model::SpecError("determinize: empty graph (pruned away)");
    LevelTables tables = build_level_tables(g, level);
    SubsetAutomaton aut;
    aut.level = level;
    aut.symbol_count = tables.symbol_count;
    aut.initial = g.vertex_count == 64 ? ~0ull : ((1ull << g.vertex_count) - 1);

    std::unordered_map<std::uint64_t, int> index;
    std::queue<std::uint64_t> todo;
    index.emplace(aut.initial, 0);
    aut.states.push_back(aut.initial);
    todo.push(aut.initial);
    while (!todo.empty()) {
        std::uint64_t mask = todo.front();
        todo.pop();
        int from = index[mask];
        if (static_cast<int>(aut.next.size()) <= from)
            aut.next.resize(static_cast<std::size_t>(from) + 1,
                            std::vector<int>(static_cast<std::size_t>(aut.symbol_count), -1));
        for (int sym : tables.occurring_symbols) {
            std::uint64_t target = tables.move(mask, sym);
            if (target == 0) continue;  // dead transition omitted
            auto [it, inserted] = index.emplace(target, static_cast<int>(aut.states.size()));
            if (inserted) {
                aut.states.push_back(target);
                todo.push(target);
            }
            aut.next[static_cast<std::size_t>(from)][static_cast<std::size_t>(sym)] = it->second;
        }
    }
    aut.next.resize(aut.states.size(),
                    std::vector<int>(static_cast<std::size_t>(aut.symbol_count), -1));

    // Essential part: states lying on directed cycles, i.e. members of a
    // nontrivial SCC or carrying a self-loop. Iterative Tarjan.
    int n = static_cast<int>(aut.states.size());
    std::vector<int> low(static_cast<std::size_t>(n), -1), disc(static_cast<std::size_t>(n), -1),
        comp(static_cast<std::size_t>(n), -1);
    std::vector<char> onstack(static_cast<std::size_t>(n), 0);
    std::vector<int> stk;
    int timer = 0, ncomp = 0;
    struct Frame {
        int v;
        int sym;
    };
    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        stk.push_back(root);
        onstack[static_cast<std::size_t>(root)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.sym < aut.symbol_count) {
                int w = aut.next[static_cast<std::size_t>(f.v)][static_cast<std::size_t>(f.sym)];
                ++f.sym;
                if (w < 0) continue;
                if (disc[static_cast<std::size_t>(w)] == -1) {
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    stk.push_back(w);
                    onstack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (onstack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 disc[static_cast<std::size_t>(w)]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<std::size_t>(frames.back().v)] =
                        std::min(low[static_cast<std::size_t>(frames.back().v)],
                                 low[static_cast<std::size_t>(v)]);
                if (low[static_cast<std::size_t>(v)] == disc[static_cast<std::size_t>(v)]) {
                    int member;
                    do {
                        member = stk.back();
                        stk.pop_back();
                        onstack[static_cast<std::size_t>(member)] = 0;
                        comp[static_cast<std::size_t>(member)] = ncomp;
                    } while (member != v);
                    ++ncomp;
                }
            }
        }
    }
    std::vector<int> comp_size(static_cast<std::size_t>(ncomp), 0);
    for (int v = 0; v < n; ++v) ++comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    aut.essential.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        bool cyc = comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] > 1;
        if (!cyc) {
            for (int s = 0; s < aut.symbol_count && !cyc; ++s)
                cyc = aut.next[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] == v;
        }
        aut.essential[static_cast<std::size_t>(v)] = cyc ? 1 : 0;
        if (cyc) aut.essential_states.push_back(v);
    }
    std::size_t ne = aut.essential_states.size();
    aut.essential_adjacency = Matrix(ne, ne);
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < ne; ++i)
        pos[static_cast<std::size_t>(aut.essential_states[i])] = static_cast<int>(i);
    for (int idx : aut.essential_states) {
        for (int s = 0; s < aut.symbol_count; ++s) {
            int w = aut.next[static_cast<std::size_t>(idx)][static_cast<std::size_t>(s)];
            if (w >= 0 && aut.essential[static_cast<std::size_t>(w)])
                aut.essential_adjacency(
                    static_cast<std::size_t>(pos[static_cast<std::size_t>(idx)]),
                    static_cast<std::size_t>(pos[static_cast<std::size_t>(w)])) += 1.0;
        }
    }
    return aut;
}

std::string SubsetAutomaton::dump_edges() const {
    std::ostringstream os;
    os << "level " << level << " automaton, " << states.size() << " states, initial=0x" << std::hex
       << initial << std::dec << "\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (int s = 0; s < symbol_count; ++s) {
            int w = next[i][static_cast<std::size_t>(s)];
            if (w >= 0)
                os << i << " -" << s << "-> " << w
                   << (essential[i] && essential[static_cast<std::size_t>(w)] ? "" : " (transient)")
                   << "\n";
        }
    }
    return os.str();
}

BigUint count_words(const SubsetAutomaton& aut, int k) {
    if (k < 0) throw model::SpecError("count_words: negative length");
    if (aut.empty()) return k == 0 ? BigUint(1) : BigUint(0);
    std::vector<BigUint> ways(aut.states.size());
    ways[0] = BigUint(1);
    for (int step = 0; step < k; ++step) {
        std::vector<BigUint> nxt(aut.states.size());
        for (std::size_t i = 0; i < aut.states.size(); ++i) {
            if (ways[i].is_zero()) continue;
            for (int s = 0; s < aut.symbol_count; ++s) {
                int w = aut.next[i][static_cast<std::size_t>(s)];
                if (w >= 0) nxt[static_cast<std::size_t>(w)] += ways[i];
            }
        }
        ways.swap(nxt);
    }
    BigUint total;
    for (const BigUint& w : ways) total += w;
    return total;
}

BigUint count_words(const model::LabeledDigraph& g, int level, int k) {
    if (g.vertex_count == 0) return k == 0 ? BigUint(1) : BigUint(0);
    return count_words(determinize(g, level), k);
}

BigUint fiber_count_exact(const model::LabeledDigraph& g, const Word& s) {
    if (g.vertex_count == 0) return BigUint(0);
    int target_level = s.level + 1;
    if (target_level > g.dimension())
        throw model::SpecError("fiber_count_exact: word already at top level");
    LevelTables tables = build_level_tables(g, target_level);
    std::uint64_t full = g.vertex_count == 64 ? ~0ull : ((1ull << g.vertex_count) - 1);
    // cnt[mask] = number of distinct level-(i+1) prefixes whose reachable
    // vertex set is exactly mask; determinism keeps the counts disjoint.
    std::map<std::uint64_t, BigUint> cnt;
    cnt[full] = BigUint(1);
    for (const auto& sym : s.symbols) {
        int parent = model::encode_prefix(g.bases, sym, s.level);
        std::map<std::uint64_t, BigUint> nxt;
        for (const auto& [mask, c] : cnt) {
            for (int ext : tables.extensions[static_cast<std::size_t>(parent)]) {
                std::uint64_t moved = tables.move(mask, ext);
                if (moved != 0) nxt[moved] += c;
            }
        }
        cnt.swap(nxt);
        if (cnt.empty()) return BigUint(0);
    }
    BigUint total;
    for (const auto& [mask, c] : cnt) total += c;
    return total;
}

double fiber_surrogate_norm(const model::LabeledDigraph& g, const Word& s, bool log_domain) {
    int r = g.dimension();
    if (s.level != r - 1)
        throw model::SpecError("fiber_surrogate_norm: word must be at level r-1");
    if (s.symbols.empty())
        throw model::SpecError("fiber_surrogate_norm: word must be nonempty");
    // ||A_{s1} ... A_{sN}|| = 1^T A_{s1} ... A_{sN} 1; carry the running row
    // vector rescaled by its sum, accumulating the log of the factors.
    std::size_t n = static_cast<std::size_t>(g.vertex_count);
    std::vector<double> row(n, 1.0);
    double log_scale = 0.0;
    for (const auto& sym : s.symbols) {
        NonnegMatrix a = model::restricted_adjacency(g, sym);
        row = row_times_matrix(row, a);
        double total = 0.0;
        for (double v : row) total += v;
        if (total == 0.0)
            return log_domain ? -std::numeric_limits<double>::infinity() : 0.0;
        for (double& v : row) v /= total;
        log_scale += std::log(total);
    }
    return log_domain ? log_scale : std::exp(log_scale);
}

}  // namespace sofic::symbolic
