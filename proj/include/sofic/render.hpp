#pragma once

// Depth-k geometric approximations of sofic sets: digit-cell enumeration,
// binary rasters for planar systems, voxel lists for r = 3, and the exact
// approximate-square count M(k) behind the box-counting estimator.

#include <cstdint>
#include <string>
#include <vector>

#include "sofic/big_uint.hpp"
#include "sofic/model.hpp"
#include "sofic/symbolic.hpp"

namespace sofic::render {

// Occupied digit cells at one depth: each word denotes the half-open cuboid
// prod_j [digit expansion, digit expansion + m_j^{-k}).
struct CellSet {
    int depth = 0;
    int level = 0;
    std::vector<std::vector<int>> cells;  // encoded symbol sequences, lex order
};

// All legal level-i words of length k; cell count equals N_i(k).
CellSet cells_at_depth(const model::LabeledDigraph& g, int level, int k,
                       std::uint64_t budget = 10000000ull);

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major; 0 = ink, 255 = background
};

// Binary raster of the depth-k approximation for r = 2. A pixel is inked iff
// the cell containing its top-left corner is occupied; the cell index is
// floor(px * m1^k / width) computed in integer arithmetic.
Image raster_2d(const model::LabeledDigraph& g, int k, int width, int height,
                std::uint64_t budget = 10000000ull);

// Binary graymap, magic P5, max value 255.
std::string encode_pgm(const Image& img);

// Exact number of distinct mixed label sequences: full labels up to
// floor(b_r k), then level r-1 labels up to floor(b_{r-1} k), ..., then
// level-1 labels up to k, where b_i = log m_1 / log m_i. The cut points are
// computed exactly as max{ j : m_i^j <= m_1^k }.
BigUint approximate_square_count(const model::LabeledDigraph& g, int k,
                                 std::uint64_t budget = 10000000ull);

// floor(b_i k) per level, exact integer arithmetic.
std::vector<int> approximate_square_cuts(const model::Bases& bases, int k);

// Comma-separated voxel list for r = 3 with header "x,y,z,sx,sy,sz",
// lexicographic in the underlying words; bit-identical across runs.
std::string voxel_export(const model::LabeledDigraph& g, int k,
                         std::uint64_t budget = 10000000ull);

}  // namespace sofic::render
