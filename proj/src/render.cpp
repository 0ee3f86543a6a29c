#include "sofic/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "sofic/hausdorff.hpp"

namespace sofic::render {

CellSet cells_at_depth(const model::LabeledDigraph& g, int level, int k, std::uint64_t budget) {
    if (g.vertex_count == 0) throw model::SpecError("cells_at_depth: empty system");
    if (k < 1) throw model::SpecError("cells_at_depth: depth must be >= 1");
    BigUint count = symbolic::count_words(g, level, k);
    if (BigUint(budget) < count)
        throw hausdorff::BudgetError("cells_at_depth: " + count.to_string() +
                                     " cells exceed the budget");
    symbolic::LevelTables t = symbolic::build_level_tables(g, level);
    std::uint64_t full = g.vertex_count == 64 ? ~0ull : ((1ull << g.vertex_count) - 1);
    CellSet out;
    out.depth = k;
    out.level = level;
    std::vector<int> syms;
    std::function<void(int, std::uint64_t)> rec = [&](int pos, std::uint64_t mask) {
        if (pos == k) {
            out.cells.push_back(syms);
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
    rec(0, full);
    return out;
}

Image raster_2d(const model::LabeledDigraph& g, int k, int width, int height,
                std::uint64_t budget) {
    if (g.dimension() != 2) throw model::SpecError("raster_2d: requires r = 2");
    if (width < 1 || height < 1) throw model::SpecError("raster_2d: empty image");
    CellSet cells = cells_at_depth(g, 2, k, budget);

    long long nx = 1, ny = 1;
    for (int i = 0; i < k; ++i) {
        nx *= g.bases.base(1);
        ny *= g.bases.base(2);
        if (nx * ny > static_cast<long long>(budget) * 32)
            throw hausdorff::BudgetError("raster_2d: cell grid exceeds the budget");
    }
    // Occupancy grid indexed by (cx, cy).
    std::vector<char> occupied(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
    for (const auto& word : cells.cells) {
        long long cx = 0, cy = 0;
        for (int sym : word) {
            std::vector<int> digits = model::decode_prefix(g.bases, sym, 2);
            cx = cx * g.bases.base(1) + digits[0];
            cy = cy * g.bases.base(2) + digits[1];
        }
        occupied[static_cast<std::size_t>(cx) * static_cast<std::size_t>(ny) +
                 static_cast<std::size_t>(cy)] = 1;
    }

    Image img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 255);
    for (int py = 0; py < height; ++py) {
        long long cy = static_cast<long long>(py) * ny / height;
        for (int px = 0; px < width; ++px) {
            long long cx = static_cast<long long>(px) * nx / width;
            if (occupied[static_cast<std::size_t>(cx) * static_cast<std::size_t>(ny) +
                         static_cast<std::size_t>(cy)])
                img.pixels[static_cast<std::size_t>(py) * static_cast<std::size_t>(width) +
                           static_cast<std::size_t>(px)] = 0;
        }
    }
    return img;
}

std::string encode_pgm(const Image& img) {
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

std::vector<int> approximate_square_cuts(const model::Bases& bases, int k) {
    int r = bases.dimension();
    std::vector<int> cuts(static_cast<std::size_t>(r), 0);
    BigUint target = BigUint::pow(static_cast<std::uint64_t>(bases.base(1)),
                                  static_cast<unsigned>(k));
    for (int i = 1; i <= r; ++i) {
        // floor(b_i k) = max { j : m_i^j <= m_1^k }
        int j = 0;
        BigUint p(1);
        for (;;) {
            BigUint nextp = p * BigUint(static_cast<std::uint64_t>(bases.base(i)));
            if (target < nextp) break;
            p = nextp;
            ++j;
        }
        cuts[static_cast<std::size_t>(i - 1)] = j;
    }
    return cuts;
}

BigUint approximate_square_count(const model::LabeledDigraph& g, int k, std::uint64_t budget) {
    if (g.vertex_count == 0) throw model::SpecError("approximate_square_count: empty system");
    if (k < 1) throw model::SpecError("approximate_square_count: depth must be >= 1");
    int r = g.dimension();
    std::vector<int> cuts = approximate_square_cuts(g.bases, k);

    // Position t (0-based) uses the deepest level i with t < floor(b_i k).
    std::vector<int> level_at(static_cast<std::size_t>(k), 1);
    for (int t = 0; t < k; ++t) {
        int level = 1;
        for (int i = r; i >= 1; --i) {
            if (t < cuts[static_cast<std::size_t>(i - 1)]) {
                level = i;
                break;
            }
        }
        level_at[static_cast<std::size_t>(t)] = level;
    }

    std::vector<symbolic::LevelTables> tables;
    for (int i = 1; i <= r; ++i) tables.push_back(symbolic::build_level_tables(g, i));
    std::uint64_t full = g.vertex_count == 64 ? ~0ull : ((1ull << g.vertex_count) - 1);

    // Distinct mixed sequences, grouped by the reachable vertex subset; the
    // projection level switches at the prescribed cut points.
    std::map<std::uint64_t, BigUint> cnt;
    cnt[full] = BigUint(1);
    for (int t = 0; t < k; ++t) {
        const symbolic::LevelTables& tab =
            tables[static_cast<std::size_t>(level_at[static_cast<std::size_t>(t)] - 1)];
        std::map<std::uint64_t, BigUint> nxt;
        for (const auto& [mask, c] : cnt) {
            for (int sym : tab.occurring_symbols) {
                std::uint64_t moved = tab.move(mask, sym);
                if (moved != 0) nxt[moved] += c;
            }
        }
        cnt.swap(nxt);
        if (cnt.size() > budget)
            throw hausdorff::BudgetError("approximate_square_count: state budget exceeded");
    }
    BigUint total;
    for (const auto& [mask, c] : cnt) total += c;
    return total;
}

std::string voxel_export(const model::LabeledDigraph& g, int k, std::uint64_t budget) {
    if (g.dimension() != 3) throw model::SpecError("voxel_export: requires r = 3");
    CellSet cells = cells_at_depth(g, 3, k, budget);

    double sx = std::pow(static_cast<double>(g.bases.base(1)), -k);
    double sy = std::pow(static_cast<double>(g.bases.base(2)), -k);
    double sz = std::pow(static_cast<double>(g.bases.base(3)), -k);
    std::string out = "x,y,z,sx,sy,sz\n";
    char buf[160];
    for (const auto& word : cells.cells) {
        double x = 0.0, y = 0.0, z = 0.0;
        double fx = 1.0, fy = 1.0, fz = 1.0;
        for (int sym : word) {
            std::vector<int> digits = model::decode_prefix(g.bases, sym, 3);
            fx /= g.bases.base(1);
            fy /= g.bases.base(2);
            fz /= g.bases.base(3);
            x += digits[0] * fx;
            y += digits[1] * fy;
            z += digits[2] * fz;
        }
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", x, y, z, sx, sy,
                      sz);
        out += buf;
    }
    return out;
}

}  // namespace sofic::render
