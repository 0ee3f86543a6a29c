#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sofic/hausdorff.hpp"
#include "sofic/spectral.hpp"
#include "sofic/symbolic.hpp"

using namespace sofic;
using testutil::load_system;

namespace {

hausdorff::Options exact_mode() { return {}; }

hausdorff::Options surrogate_mode() {
    hausdorff::Options o;
    o.mode = hausdorff::FiberMode::NormSurrogate;
    return o;
}

}  // namespace

TEST_CASE("full shifts have torus dimension at every length") {
    model::LabeledDigraph g23 = testutil::full_shift({2, 3});
    model::LabeledDigraph g234 = testutil::full_shift({2, 3, 4});
    for (int n = 1; n <= 10; ++n) {
        double log_m1 = std::log(2.0);
        double e2 = hausdorff::nested_sum(g23, n).log_g / (n * log_m1);
        double e3 = hausdorff::nested_sum(g234, n).log_g / (n * log_m1);
        CHECK(e2 == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(e3 == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("four-level full shift exercises the middle enumeration layers") {
    model::LabeledDigraph g = testutil::full_shift({2, 3, 4, 5});
    for (int n = 1; n <= 3; ++n) {
        double e = hausdorff::nested_sum(g, n).log_g / (n * std::log(2.0));
        CHECK(e == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("equal bases collapse the nested sum to the top word count") {
    model::LabeledDigraph g = model::parse_spec(
        R"({"bases":[2,2],"vertices":2,"edges":[
            {"from":0,"to":0,"label":[0,0]},{"from":0,"to":0,"label":[0,1]},
            {"from":0,"to":1,"label":[1,0]},{"from":1,"to":0,"label":[1,1]}]})");
    for (int n = 1; n <= 8; ++n) {
        double log_g = hausdorff::nested_sum(g, n).log_g;
        double log_count = symbolic::count_words(g, 2, n).log();
        CHECK(log_g == doctest::Approx(log_count).epsilon(1e-12));
    }
}

TEST_CASE("one-vertex patterns factorize exactly") {
    model::LabeledDigraph mm = testutil::mcmullen_pattern();
    double a1 = std::log(2.0) / std::log(3.0);
    double target = std::log2(1.0 + std::pow(2.0, a1));
    for (int n = 1; n <= 10; ++n) {
        double e = hausdorff::nested_sum(mm, n).log_g / (n * std::log(2.0));
        CHECK(e == doctest::Approx(target).epsilon(1e-9));
    }
    hausdorff::DimensionEstimate est = hausdorff::dimension_estimate(mm, 10);
    CHECK(est.estimate == doctest::Approx(target).epsilon(1e-9));
}

TEST_CASE("two-base systems approach their closed-form dimensions") {
    hausdorff::DimensionEstimate f2 = hausdorff::dimension_estimate(load_system("fig2"), 14);
    CHECK(std::abs(f2.estimate - (1.0 + std::log(2.0) / std::log(5.0))) <= 0.02);
    hausdorff::DimensionEstimate f4 = hausdorff::dimension_estimate(load_system("fig4"), 14);
    CHECK(std::abs(f4.estimate - (1.0 + std::log(3.0) / std::log(5.0))) <= 0.02);
}

TEST_CASE("estimate bookkeeping") {
    hausdorff::DimensionEstimate est = hausdorff::dimension_estimate(load_system("fig2"), 8);
    REQUIRE(est.e.size() == 8);
    REQUIRE(est.d.size() == 7);
    CHECK(est.estimate == est.d.back());
    CHECK(est.uncertainty == doctest::Approx(std::abs(est.e.back() - est.d.back())));
    // e_N * N * log m1 recovers log g_N
    double log_m1 = std::log(2.0);
    for (int n = 1; n <= 8; ++n) {
        double log_g = hausdorff::nested_sum(load_system("fig2"), n).log_g;
        CHECK(est.e[static_cast<std::size_t>(n - 1)] * n * log_m1 ==
              doctest::Approx(log_g).epsilon(1e-12));
    }
    // point estimate lies within the last three difference quotients
    double lo = est.d[4], hi = est.d[4];
    for (std::size_t i = 4; i < 7; ++i) {
        lo = std::min(lo, est.d[i]);
        hi = std::max(hi, est.d[i]);
    }
    CHECK(est.estimate >= lo - 1e-12);
    CHECK(est.estimate <= hi + 1e-12);
}

TEST_CASE("mode consistency: exact and surrogate sums stay within r log |V|") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        double bound = g.dimension() * std::log(static_cast<double>(g.vertex_count));
        for (int n = 1; n <= 7; ++n) {
            double exact = hausdorff::nested_sum(g, n, exact_mode()).log_g;
            double surr = hausdorff::nested_sum(g, n, surrogate_mode()).log_g;
            CAPTURE(name);
            CAPTURE(n);
            CHECK(std::abs(exact - surr) <= bound + 1e-9);
        }
    }
}

TEST_CASE("Hausdorff estimates stay below Minkowski") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        double mink = spectral::minkowski_dimension(g).value;
        double haus = hausdorff::dimension_estimate(g, 12).estimate;
        CAPTURE(name);
        CHECK(haus <= mink + 0.05);
    }
}

TEST_CASE("nested sums are invariant under vertex permutation") {
    for (const char* name : {"fig2", "ex2_11"}) {
        model::LabeledDigraph g = load_system(name);
        model::LabeledDigraph swapped = testutil::permute_vertices(g, {1, 0});
        for (int n : {4, 8}) {
            double a = hausdorff::nested_sum(g, n).log_g;
            double b = hausdorff::nested_sum(swapped, n).log_g;
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("worker count does not change the result bits") {
    model::LabeledDigraph g = load_system("ex2_11");
    hausdorff::Options one;
    one.workers = 1;
    hausdorff::Options four;
    four.workers = 4;
    CHECK(hausdorff::nested_sum(g, 8, one).log_g == hausdorff::nested_sum(g, 8, four).log_g);
}

TEST_CASE("budget violations are reported, not truncated") {
    hausdorff::Options opt;
    opt.node_budget = 10;
    CHECK_THROWS_AS(hausdorff::nested_sum(load_system("fig2"), 10, opt),
                    hausdorff::BudgetError);
}

TEST_CASE("degenerate r = 1 reduces to entropy over log m1") {
    model::LabeledDigraph g = model::parse_spec(
        R"({"bases":[2],"vertices":1,"edges":[
            {"from":0,"to":0,"label":[0]},{"from":0,"to":0,"label":[1]}]})");
    hausdorff::DimensionEstimate est = hausdorff::dimension_estimate(g, 8);
    CHECK(est.estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("accelerated evaluation agrees with plain enumeration") {
    SUBCASE("two-base system, lengths up to 16") {
        model::LabeledDigraph g = load_system("fig2");
        for (int n : {4, 8, 12, 16}) {
            double plain = hausdorff::nested_sum(g, n, surrogate_mode()).log_g;
            hausdorff::AcceleratedResult acc = hausdorff::accelerated_nested_sum(g, n);
            CHECK_FALSE(acc.fell_back);
            CHECK(std::abs(acc.sum.log_g - plain) <= 1e-10 * std::max(1.0, std::abs(plain)));
        }
    }
    SUBCASE("three-base system, lengths up to 12") {
        model::LabeledDigraph g = load_system("ex2_11");
        for (int n : {4, 8, 12}) {
            double plain = hausdorff::nested_sum(g, n, surrogate_mode()).log_g;
            hausdorff::AcceleratedResult acc = hausdorff::accelerated_nested_sum(g, n);
            CHECK_FALSE(acc.fell_back);
            CHECK(std::abs(acc.sum.log_g - plain) <= 1e-10 * std::max(1.0, std::abs(plain)));
        }
    }
    SUBCASE("class keys are rays through (q, 1)") {
        hausdorff::AcceleratedResult acc =
            hausdorff::accelerated_nested_sum(load_system("ex2_11"), 10);
        REQUIRE(!acc.class_keys.empty());
        for (const auto& key : acc.class_keys) {
            REQUIRE(key.size() == 2);
            CHECK(key[1] == 1);
        }
    }
    SUBCASE("one-vertex system collapses to a single class") {
        model::LabeledDigraph mm = testutil::mcmullen_pattern();
        hausdorff::AcceleratedResult acc = hausdorff::accelerated_nested_sum(mm, 10);
        CHECK(acc.class_keys.size() == 1);
        double a1 = std::log(2.0) / std::log(3.0);
        double target = 10.0 * std::log(1.0 + std::pow(2.0, a1));
        CHECK(acc.sum.log_g == doctest::Approx(target).epsilon(1e-10));
    }
    SUBCASE("unsupported dimensions are rejected") {
        CHECK_THROWS_AS(hausdorff::accelerated_nested_sum(testutil::full_shift({2, 3, 4, 5}), 3),
                        model::SpecError);
    }
}
