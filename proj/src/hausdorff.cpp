#include "sofic/hausdorff.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "sofic/big_uint.hpp"
#include "sofic/symbolic.hpp"

namespace sofic::hausdorff {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Streaming log-sum-exp with a fixed accumulation order.
struct LogSum {
    double max_log = kNegInf;
    double sum = 0.0;

    void add(double lg) {
        if (lg == kNegInf) return;
        if (lg <= max_log) {
            sum += std::exp(lg - max_log);
        } else {
            sum = sum * std::exp(max_log - lg) + 1.0;
            max_log = lg;
        }
    }

    void merge(const LogSum& o) {
        if (o.max_log == kNegInf) return;
        if (o.max_log <= max_log) {
            sum += o.sum * std::exp(o.max_log - max_log);
        } else {
            sum = sum * std::exp(max_log - o.max_log) + o.sum;
            max_log = o.max_log;
        }
    }

    double value() const { return max_log == kNegInf ? kNegInf : max_log + std::log(sum); }
};

// Small map from subset bitmask to a count, kept as a flat sorted vector;
// reachable subset collections stay tiny for the graphs this targets.
struct CountMap {
    std::vector<std::pair<std::uint64_t, double>> items;

    bool empty() const { return items.empty(); }

    double total() const {
        double t = 0.0;
        for (const auto& [m, c] : items) t += c;
        return t;
    }

    void add(std::uint64_t mask, double c) {
        auto it = std::lower_bound(items.begin(), items.end(), mask,
                                   [](const auto& p, std::uint64_t m) { return p.first < m; });
        if (it != items.end() && it->first == mask)
            it->second += c;
        else
            items.insert(it, {mask, c});
    }
};

void run_tasks(int workers, int task_count, const std::function<void(int)>& fn) {
    if (workers <= 1 || task_count <= 1) {
        for (int i = 0; i < task_count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= task_count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min(workers, task_count);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Plain enumeration engine
// ---------------------------------------------------------------------------

struct Engine {
    const model::LabeledDigraph& g;
    int r;
    int n;  // word length N
    Options opt;
    std::vector<symbolic::LevelTables> tables;  // tables[i] = level i+1
    std::vector<double> a;                      // a[i] = exponent a_{i+1}
    std::uint64_t full_mask = 0;

    struct ShardState {
        LogSum top;
        std::vector<long long> words;
        std::uint64_t nodes = 0;
        // Depth-indexed scratch, reused across siblings: a child's state is
        // consumed before the next sibling overwrites its slot.
        std::vector<CountMap> cnt_scratch;
        std::vector<std::vector<double>> row_scratch;
    };

    std::vector<Matrix> restricted;  // by encoded (r-1)-prefix id, surrogate mode

    Engine(const model::LabeledDigraph& graph, int length, const Options& options)
        : g(graph), r(graph.dimension()), n(length), opt(options) {
        if (g.vertex_count == 0) throw model::SpecError("nested_sum: empty pruned graph");
        if (n < 1) throw model::SpecError("nested_sum: N must be >= 1");
        tables.reserve(static_cast<std::size_t>(r));
        for (int i = 1; i <= r; ++i) tables.push_back(symbolic::build_level_tables(g, i));
        for (int i = 1; i < r; ++i) a.push_back(g.bases.exponent(i));
        full_mask = g.vertex_count == 64 ? ~0ull : ((1ull << g.vertex_count) - 1);
        if (opt.mode == FiberMode::NormSurrogate && r >= 2) {
            // Subset moves drop edge multiplicities, so the surrogate carries
            // row vectors through the restricted matrices themselves.
            long long prefixes = g.bases.prefix_count(r - 1);
            restricted.reserve(static_cast<std::size_t>(prefixes));
            for (long long id = 0; id < prefixes; ++id)
                restricted.push_back(model::restricted_adjacency(
                    g, model::decode_prefix(g.bases, static_cast<int>(id), r - 1)));
        }
    }

    // Row-vector step through A_sym; false when the image vanishes.
    bool advance_row(const std::vector<double>& rv, int sym, std::vector<double>& out) const {
        const Matrix& m = restricted[static_cast<std::size_t>(sym)];
        std::size_t nv = static_cast<std::size_t>(g.vertex_count);
        out.assign(nv, 0.0);
        bool any = false;
        for (std::size_t i = 0; i < nv; ++i) {
            double x = rv[i];
            if (x == 0.0) continue;
            for (std::size_t j = 0; j < nv; ++j) {
                double mij = m(i, j);
                if (mij == 0.0) continue;
                out[j] += x * mij;
                any = true;
            }
        }
        return any;
    }

    // Every legal level-i word is enumerated exactly once (its projection to
    // level i-1 is unique), so the total work is sum_i N_i(n) and can be
    // checked against the budget before enumerating anything.
    void check_budget() const {
        BigUint bound;
        for (int level = 1; level < r; ++level)
            bound += symbolic::count_words(g, level, n);
        if (BigUint(opt.node_budget) < bound)
            throw BudgetError("nested_sum: N=" + std::to_string(n) + " would enumerate " +
                              bound.to_string() + " words; budget is " +
                              std::to_string(opt.node_budget));
    }

    // Innermost level r-1: enumerate extensions of `parent` while carrying
    // either the exact fiber-count map or the rescaled row vector.
    double sum_innermost(ShardState& st, const std::vector<int>& parent) {
        double acc = 0.0;
        const double expo = a[static_cast<std::size_t>(r - 2)];
        const symbolic::LevelTables& t = tables[static_cast<std::size_t>(r - 2)];
        if (opt.mode == FiberMode::ExactFibers) {
            const symbolic::LevelTables& top = tables[static_cast<std::size_t>(r - 1)];
            CountMap& start = st.cnt_scratch[0];
            start.items.clear();
            start.add(full_mask, 1.0);
            auto rec = [&](auto&& self, int pos, const CountMap& cnt) -> void {
                ++st.nodes;
                if (pos == n) {
                    ++st.words[static_cast<std::size_t>(r - 2)];
                    acc += std::pow(cnt.total(), expo);
                    return;
                }
                for (int sym : t.extensions[static_cast<std::size_t>(parent[
                         static_cast<std::size_t>(pos)])]) {
                    CountMap& next = st.cnt_scratch[static_cast<std::size_t>(pos) + 1];
                    next.items.clear();
                    const std::vector<int>& exts =
                        top.extensions[static_cast<std::size_t>(sym)];
                    for (const auto& [m, c] : cnt.items) {
                        for (int ext : exts) {
                            std::uint64_t m2 = top.move(m, ext);
                            if (m2 != 0) next.add(m2, c);
                        }
                    }
                    if (!next.items.empty()) self(self, pos + 1, next);
                }
            };
            rec(rec, 0, start);
        } else {
            std::vector<double>& start = st.row_scratch[0];
            start.assign(static_cast<std::size_t>(g.vertex_count), 1.0);
            auto rec = [&](auto&& self, int pos, const std::vector<double>& rv,
                           double log_scale) -> void {
                ++st.nodes;
                if (pos == n) {
                    ++st.words[static_cast<std::size_t>(r - 2)];
                    acc += std::exp(expo * log_scale);
                    return;
                }
                for (int sym : t.extensions[static_cast<std::size_t>(parent[
                         static_cast<std::size_t>(pos)])]) {
                    std::vector<double>& next =
                        st.row_scratch[static_cast<std::size_t>(pos) + 1];
                    if (!advance_row(rv, sym, next)) continue;
                    double total = 0.0;
                    for (double x : next) total += x;
                    for (double& x : next) x /= total;
                    self(self, pos + 1, next, log_scale + std::log(total));
                }
            };
            // Unnormalized all-ones start: the first advance sums 1^T A 1,
            // the entry-sum norm of the first matrix.
            rec(rec, 0, start, 0.0);
        }
        return acc;
    }

    // Middle levels 2..r-2 (only reached when r >= 4).
    double sum_middle(ShardState& st, int level, const std::vector<int>& parent) {
        double acc = 0.0;
        double expo = a[static_cast<std::size_t>(level - 1)];
        const symbolic::LevelTables& t = tables[static_cast<std::size_t>(level - 1)];
        std::vector<int> syms(static_cast<std::size_t>(n), 0);
        std::function<void(int, std::uint64_t)> rec = [&](int pos, std::uint64_t mask) {
            ++st.nodes;
            if (pos == n) {
                ++st.words[static_cast<std::size_t>(level - 1)];
                double inner = level + 1 == r - 1 ? sum_innermost(st, syms)
                                                  : sum_middle(st, level + 1, syms);
                acc += std::pow(inner, expo);
                return;
            }
            for (int sym : t.extensions[static_cast<std::size_t>(parent[
                     static_cast<std::size_t>(pos)])]) {
                std::uint64_t moved = t.move(mask, sym);
                if (moved == 0) continue;
                syms[static_cast<std::size_t>(pos)] = sym;
                rec(pos + 1, moved);
            }
        };
        rec(0, full_mask);
        return acc;
    }

    // Shards are the legal level-1 prefixes of a fixed depth. The depth
    // depends only on the input, so the shard list and the reduction tree are
    // identical for every worker count.
    int shard_depth() const {
        int prefixes = 1;
        int depth = 0;
        while (depth < n && depth < 8 && prefixes < 64) {
            prefixes *= g.bases.base(1);
            ++depth;
        }
        return depth;
    }

    std::vector<std::vector<int>> enumerate_prefixes(int depth) const {
        const symbolic::LevelTables& t = tables[0];
        std::vector<std::vector<int>> out;
        std::vector<int> syms;
        std::function<void(int, std::uint64_t)> rec = [&](int pos, std::uint64_t mask) {
            if (pos == depth) {
                out.push_back(syms);
                return;
            }
            for (int sym : t.occurring_symbols) {
                std::uint64_t moved = t.move(mask, sym);
                if (moved == 0) continue;
                syms.push_back(sym);
                rec(pos + 1, moved);
                syms.pop_back();
            }
        };
        rec(0, full_mask);
        return out;
    }

    // Top level for r >= 3: enumerate level-1 words, recurse per complete
    // word, accumulate a1 * log(T_2) into the shard's log-sum.
    void top_level(ShardState& st, const std::vector<int>& prefix) {
        const symbolic::LevelTables& t = tables[0];
        std::vector<int> syms(static_cast<std::size_t>(n), 0);
        std::uint64_t mask = full_mask;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            syms[i] = prefix[i];
            mask = t.move(mask, prefix[i]);
        }
        if (mask == 0) return;
        double expo = a[0];
        auto rec = [&](auto&& self, int pos, std::uint64_t m) -> void {
            ++st.nodes;
            if (pos == n) {
                ++st.words[0];
                double inner = r == 3 ? sum_innermost(st, syms) : sum_middle(st, 2, syms);
                st.top.add(expo * std::log(inner));
                return;
            }
            for (int sym : t.occurring_symbols) {
                std::uint64_t moved = t.move(m, sym);
                if (moved == 0) continue;
                syms[static_cast<std::size_t>(pos)] = sym;
                self(self, pos + 1, moved);
            }
        };
        rec(rec, static_cast<int>(prefix.size()), mask);
    }

    // Top level for r == 2: the level-1 words are already the innermost
    // words, so the DFS carries the fiber state along the single layer.
    void top_level_r2(ShardState& st, const std::vector<int>& prefix) {
        const symbolic::LevelTables& t = tables[0];
        double expo = a[0];
        if (opt.mode == FiberMode::ExactFibers) {
            const symbolic::LevelTables& top = tables[1];
            auto advance = [&](const CountMap& cnt, int sym, CountMap& next) {
                next.items.clear();
                const std::vector<int>& exts = top.extensions[static_cast<std::size_t>(sym)];
                for (const auto& [m, c] : cnt.items) {
                    for (int ext : exts) {
                        std::uint64_t m2 = top.move(m, ext);
                        if (m2 != 0) next.add(m2, c);
                    }
                }
            };
            CountMap& start = st.cnt_scratch[0];
            start.items.clear();
            start.add(full_mask, 1.0);
            int base = 0;
            for (int sym : prefix) {
                CountMap& next = st.cnt_scratch[static_cast<std::size_t>(base) + 1];
                advance(st.cnt_scratch[static_cast<std::size_t>(base)], sym, next);
                if (next.empty()) return;
                ++base;
            }
            auto rec = [&](auto&& self, int pos, const CountMap& c) -> void {
                ++st.nodes;
                if (pos == n) {
                    ++st.words[0];
                    st.top.add(expo * std::log(c.total()));
                    return;
                }
                for (int sym : t.occurring_symbols) {
                    CountMap& next = st.cnt_scratch[static_cast<std::size_t>(pos) + 1];
                    advance(c, sym, next);
                    if (!next.empty()) self(self, pos + 1, next);
                }
            };
            rec(rec, static_cast<int>(prefix.size()), st.cnt_scratch[static_cast<std::size_t>(base)]);
        } else {
            std::size_t nv = static_cast<std::size_t>(g.vertex_count);
            std::vector<double>& row = st.row_scratch[0];
            row.assign(nv, 1.0);
            double log_scale = 0.0;
            int base = 0;
            for (int sym : prefix) {
                std::vector<double>& next = st.row_scratch[static_cast<std::size_t>(base) + 1];
                if (!advance_row(st.row_scratch[static_cast<std::size_t>(base)], sym, next))
                    return;
                double total = 0.0;
                for (double x : next) total += x;
                for (double& x : next) x /= total;
                log_scale += std::log(total);
                ++base;
            }
            auto rec = [&](auto&& self, int pos, const std::vector<double>& rv,
                           double ls) -> void {
                ++st.nodes;
                if (pos == n) {
                    ++st.words[0];
                    st.top.add(expo * ls);
                    return;
                }
                for (int sym : t.occurring_symbols) {
                    std::vector<double>& next =
                        st.row_scratch[static_cast<std::size_t>(pos) + 1];
                    if (!advance_row(rv, sym, next)) continue;
                    double total = 0.0;
                    for (double x : next) total += x;
                    for (double& x : next) x /= total;
                    self(self, pos + 1, next, ls + std::log(total));
                }
            };
            rec(rec, static_cast<int>(prefix.size()),
                st.row_scratch[static_cast<std::size_t>(base)], log_scale);
        }
    }

    NestedSumResult run() {
        NestedSumResult result;
        result.length = n;
        result.mode = opt.mode;
        result.words_per_level.assign(static_cast<std::size_t>(std::max(r - 1, 1)), 0);

        if (r == 1) {
            // Degenerate case: g_N is the bare word count.
            BigUint cnt = symbolic::count_words(g, 1, n);
            if (cnt.is_zero()) throw model::SpecError("nested_sum: no words of this length");
            result.log_g = cnt.log();
            result.words_per_level[0] = static_cast<long long>(cnt.to_double());
            return result;
        }
        check_budget();

        std::vector<std::vector<int>> prefixes = enumerate_prefixes(shard_depth());
        if (prefixes.empty())
            throw model::SpecError("nested_sum: no legal words of length " + std::to_string(n));
        std::vector<ShardState> shards(prefixes.size());
        run_tasks(opt.workers, static_cast<int>(prefixes.size()), [&](int i) {
            ShardState& st = shards[static_cast<std::size_t>(i)];
            st.words.assign(static_cast<std::size_t>(r - 1), 0);
            st.cnt_scratch.resize(static_cast<std::size_t>(n) + 1);
            st.row_scratch.resize(static_cast<std::size_t>(n) + 1);
            if (r == 2)
                top_level_r2(st, prefixes[static_cast<std::size_t>(i)]);
            else
                top_level(st, prefixes[static_cast<std::size_t>(i)]);
        });

        // Pairwise reduction in shard order.
        std::vector<LogSum> layer;
        layer.reserve(shards.size());
        for (ShardState& s : shards) {
            layer.push_back(s.top);
            result.nodes_visited += s.nodes;
            for (std::size_t i = 0; i < s.words.size(); ++i)
                result.words_per_level[i] += s.words[i];
        }
        while (layer.size() > 1) {
            std::vector<LogSum> next;
            next.reserve((layer.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < layer.size(); i += 2) {
                LogSum m = layer[i];
                m.merge(layer[i + 1]);
                next.push_back(m);
            }
            if (layer.size() % 2 == 1) next.push_back(layer.back());
            layer.swap(next);
        }
        result.log_g = layer.empty() ? kNegInf : layer[0].value();
        if (result.log_g == kNegInf)
            throw model::SpecError("nested_sum: no legal words of length " + std::to_string(n));
        return result;
    }
};

}  // namespace

NestedSumResult nested_sum(const model::LabeledDigraph& g, int n, const Options& opt) {
    Engine engine(g, n, opt);
    return engine.run();
}

DimensionEstimate dimension_estimate(const model::LabeledDigraph& g, int n_max,
                                     const Options& opt) {
    if (n_max < 2) throw model::SpecError("dimension_estimate: N_max must be >= 2");
    DimensionEstimate est;
    est.n_max = n_max;
    est.mode = opt.mode;
    double log_m1 = std::log(static_cast<double>(g.bases.base(1)));
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        NestedSumResult r = nested_sum(g, n, opt);
        logs.push_back(r.log_g);
        est.e.push_back(r.log_g / (static_cast<double>(n) * log_m1));
    }
    for (int n = 1; n < n_max; ++n)
        est.d.push_back(
            (logs[static_cast<std::size_t>(n)] - logs[static_cast<std::size_t>(n - 1)]) / log_m1);
    est.estimate = est.d.back();
    est.uncertainty = std::abs(est.e.back() - est.estimate);
    return est;
}

// ---------------------------------------------------------------------------
// Accelerated evaluation via projective ray classes
// ---------------------------------------------------------------------------

namespace {

using Ray = std::vector<long long>;

long long gcd_ll(long long a, long long b) {
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Ray canonical(Ray v) {
    long long g = 0;
    for (long long x : v) g = gcd_ll(g, x);
    if (g > 1)
        for (long long& x : v) x /= g;
    return v;
}

struct AccelBudget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weights accumulate (entry sum of the partial product)^a_{r-1} per word;
// the ray identifies the projective class of the running row vector.
using ClassMap = std::map<Ray, double>;

struct RayEngine {
    const model::LabeledDigraph& g;
    int n_len;
    std::uint64_t class_budget;
    double expo_inner;  // a_{r-1}
    std::vector<Matrix> mats;           // restricted matrices, by encoded prefix id
    std::vector<std::vector<int>> ext;  // level-1 digit -> occurring (r-1)-prefix ids
    std::vector<int> level1_symbols;
    std::vector<std::vector<long long>>* observed;

    RayEngine(const model::LabeledDigraph& graph, int n, std::uint64_t budget,
              std::vector<std::vector<long long>>* obs)
        : g(graph), n_len(n), class_budget(budget), observed(obs) {
        int r = g.dimension();
        expo_inner = g.bases.exponent(r - 1);
        long long prefixes = g.bases.prefix_count(r - 1);
        mats.resize(static_cast<std::size_t>(prefixes));
        ext.assign(static_cast<std::size_t>(g.bases.base(1)), {});
        for (long long id = 0; id < prefixes; ++id) {
            std::vector<int> digits = model::decode_prefix(g.bases, static_cast<int>(id), r - 1);
            Matrix a = model::restricted_adjacency(g, digits);
            if (!a.is_zero()) {
                mats[static_cast<std::size_t>(id)] = a;
                ext[static_cast<std::size_t>(digits[0])].push_back(static_cast<int>(id));
            }
        }
        for (int u = 0; u < g.bases.base(1); ++u)
            if (!ext[static_cast<std::size_t>(u)].empty()) level1_symbols.push_back(u);
    }

    void note_class(const Ray& ray) {
        if (observed != nullptr && observed->size() < 4096 &&
            std::find(observed->begin(), observed->end(), ray) == observed->end())
            observed->push_back(ray);
    }

    bool step(const Ray& ray, int prefix_id, Ray& out, double& factor) const {
        const Matrix& m = mats[static_cast<std::size_t>(prefix_id)];
        std::size_t nv = static_cast<std::size_t>(g.vertex_count);
        Ray next(nv, 0);
        long long before = 0, after = 0;
        for (std::size_t i = 0; i < nv; ++i) before += ray[i];
        for (std::size_t i = 0; i < nv; ++i) {
            long long x = ray[i];
            if (x == 0) continue;
            for (std::size_t j = 0; j < nv; ++j) {
                double mij = m(i, j);
                if (mij == 0.0) continue;
                next[j] += x * static_cast<long long>(mij);
                if (next[j] > (1ll << 56))
                    throw AccelBudget("ray coordinates overflow");
            }
        }
        for (std::size_t i = 0; i < nv; ++i) after += next[i];
        if (after == 0) return false;
        factor = std::pow(static_cast<double>(after) / static_cast<double>(before), expo_inner);
        out = canonical(std::move(next));
        return true;
    }

    ClassMap evolve(const ClassMap& cur, int level1_symbol) {
        ClassMap out;
        for (const auto& [ray, w] : cur) {
            for (int id : ext[static_cast<std::size_t>(level1_symbol)]) {
                Ray moved;
                double factor = 0.0;
                if (!step(ray, id, moved, factor)) continue;
                note_class(moved);
                out[std::move(moved)] += w * factor;
            }
        }
        if (out.size() > class_budget) throw AccelBudget("class budget exceeded");
        return out;
    }

    static double total(const ClassMap& m) {
        double t = 0.0;
        for (const auto& [ray, w] : m) t += w;
        return t;
    }

    ClassMap initial() const {
        Ray ones(static_cast<std::size_t>(g.vertex_count), 1);
        ClassMap m;
        // Empty product: the entry sum of the identity is the vertex count.
        m[canonical(ones)] = std::pow(static_cast<double>(g.vertex_count), expo_inner);
        return m;
    }

    // r == 2: the exponent sits at the outermost sum, so classes merge across
    // all words and the whole computation is one linear evolution.
    double run_r2() {
        ClassMap cur = initial();
        double log_offset = 0.0;
        for (int stepi = 0; stepi < n_len; ++stepi) {
            ClassMap next;
            for (int u : level1_symbols) {
                ClassMap part = evolve(cur, u);
                for (auto& [ray, w] : part) next[ray] += w;
            }
            if (next.empty()) throw model::SpecError("accelerated_nested_sum: no legal words");
            double t = total(next);
            for (auto& [ray, w] : next) w /= t;
            log_offset += std::log(t);
            cur.swap(next);
            if (cur.size() > class_budget) throw AccelBudget("class budget exceeded");
        }
        return log_offset + std::log(total(cur));
    }

    // r == 3: per level-1 word the inner sum is linear in the class weights,
    // so a subtree's value depends on the class distribution only up to
    // scale; memoize on the normalized distribution per position.
    std::vector<std::unordered_map<std::string, double>> memo;
    double expo_outer = 0.0;

    static std::string key_of(const ClassMap& m) {
        std::string k;
        char buf[40];
        for (const auto& [ray, w] : m) {
            for (long long x : ray) {
                std::snprintf(buf, sizeof buf, "%lld,", x);
                k += buf;
            }
            std::snprintf(buf, sizeof buf, ":%.12e;", w);
            k += buf;
        }
        return k;
    }

    // Subtree value for a sum-normalized distribution; homogeneity of degree
    // a_1 in the weights supplies the scale factors at each split.
    double subtree(int pos, const ClassMap& normalized) {
        if (pos == n_len) return 1.0;
        std::string key = key_of(normalized);
        auto it = memo[static_cast<std::size_t>(pos)].find(key);
        if (it != memo[static_cast<std::size_t>(pos)].end()) return it->second;
        double acc = 0.0;
        for (int u : level1_symbols) {
            ClassMap next = evolve(normalized, u);
            if (next.empty()) continue;
            double t = total(next);
            for (auto& [ray, w] : next) w /= t;
            acc += std::pow(t, expo_outer) * subtree(pos + 1, next);
        }
        if (memo[static_cast<std::size_t>(pos)].size() > 4 * class_budget)
            throw AccelBudget("memo budget exceeded");
        memo[static_cast<std::size_t>(pos)].emplace(std::move(key), acc);
        return acc;
    }

    double run_r3() {
        expo_outer = g.bases.exponent(1);
        memo.assign(static_cast<std::size_t>(n_len) + 1, {});
        ClassMap cur = initial();
        double t = total(cur);
        for (auto& [ray, w] : cur) w /= t;
        return expo_outer * std::log(t) + std::log(subtree(0, cur));
    }
};

}  // namespace

AcceleratedResult accelerated_nested_sum(const model::LabeledDigraph& g, int n,
                                         std::uint64_t class_budget,
                                         std::uint64_t node_budget) {
    int r = g.dimension();
    if (r != 2 && r != 3)
        throw model::SpecError("accelerated_nested_sum: supported for r = 2 or 3 only");
    if (g.vertex_count == 0) throw model::SpecError("accelerated_nested_sum: empty graph");
    AcceleratedResult out;
    try {
        RayEngine engine(g, n, class_budget, &out.class_keys);
        double lg = r == 2 ? engine.run_r2() : engine.run_r3();
        out.sum.length = n;
        out.sum.log_g = lg;
        out.sum.mode = FiberMode::NormSurrogate;
        out.sum.accelerated = true;
        out.sum.words_per_level.assign(static_cast<std::size_t>(r - 1), 0);
        return out;
    } catch (const AccelBudget&) {
        Options opt;
        opt.mode = FiberMode::NormSurrogate;
        opt.node_budget = node_budget;
        out.sum = nested_sum(g, n, opt);
        out.fell_back = true;
        return out;
    }
}

}  // namespace sofic::hausdorff
