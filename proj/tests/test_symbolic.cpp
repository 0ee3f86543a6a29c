#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sofic/symbolic.hpp"

using namespace sofic;
using testutil::load_system;

namespace {

symbolic::Word word_from(int level, std::vector<std::vector<int>> syms) {
    return {level, std::move(syms)};
}

double norm_of_power(const Matrix& a, int k) {
    Matrix p = Matrix::identity(a.rows());
    for (int i = 0; i < k; ++i) p = p * a;
    return p.entry_sum();
}

}  // namespace

TEST_CASE("project_word truncates coordinatewise") {
    symbolic::Word w = word_from(2, {{0, 1}, {1, 0}});
    symbolic::Word p = symbolic::project_word(w, 1);
    CHECK(p.level == 1);
    CHECK(p.symbols == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(symbolic::project_word(w, 2).symbols == w.symbols);
    symbolic::Word v = word_from(2, {{1, 1}, {1, 0}});
    CHECK(symbolic::project_word(v, 1).symbols == std::vector<std::vector<int>>{{1}, {1}});
}

TEST_CASE("full shift determinizes to a single state") {
    model::LabeledDigraph g = testutil::full_shift({2, 2});
    symbolic::SubsetAutomaton aut = symbolic::determinize(g, 1);
    CHECK(aut.states.size() == 1);
    CHECK(symbolic::count_words(aut, 5).to_u64() == 32);
}

TEST_CASE("word counts match brute-force path enumeration") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        for (int level = 1; level <= g.dimension(); ++level) {
            for (int k = 0; k <= 6; ++k) {
                CAPTURE(name);
                CAPTURE(level);
                CAPTURE(k);
                CHECK(symbolic::count_words(g, level, k).to_u64() ==
                      static_cast<std::uint64_t>(testutil::brute_word_count(g, level, k)));
            }
        }
    }
    model::LabeledDigraph mm = testutil::mcmullen_pattern();
    for (int k = 0; k <= 8; ++k)
        CHECK(symbolic::count_words(mm, 1, k).to_u64() ==
              static_cast<std::uint64_t>(testutil::brute_word_count(mm, 1, k)));
}

TEST_CASE("level-2 word count at length 1 counts distinct labels") {
    model::LabeledDigraph g = load_system("fig2");
    CHECK(symbolic::count_words(g, 2, 1).to_u64() == 7);
}

TEST_CASE("word counts promote past 64 bits") {
    model::LabeledDigraph g = testutil::full_shift({2});
    CHECK(symbolic::count_words(g, 1, 128).to_string() ==
          "340282366920938463463374607431768211456");  // 2^128
}

TEST_CASE("count_words on an empty (pruned-away) graph") {
    model::LabeledDigraph g = model::forward_prune(model::parse_spec(
        R"({"bases":[2],"vertices":2,"edges":[{"from":0,"to":1,"label":[0]}]})"));
    CHECK(symbolic::count_words(g, 1, 3).is_zero());
    CHECK(symbolic::count_words(g, 1, 0).to_u64() == 1);
}

TEST_CASE("determinize refuses oversized vertex sets") {
    model::LabeledDigraph g;
    g.bases = model::Bases({2});
    g.vertex_count = 65;
    for (int v = 0; v < 65; ++v) g.edges.push_back({v, (v + 1) % 65, {{0}}});
    CHECK_THROWS_AS(symbolic::determinize(g, 1), model::SpecError);
}

TEST_CASE("exact fiber counts") {
    SUBCASE("free second digit on the full shift") {
        model::LabeledDigraph g = testutil::full_shift({2, 3});
        for (int n = 1; n <= 5; ++n) {
            symbolic::Word s{1, std::vector<std::vector<int>>(static_cast<std::size_t>(n), {0})};
            std::uint64_t expect = 1;
            for (int i = 0; i < n; ++i) expect *= 3;
            CHECK(symbolic::fiber_count_exact(g, s).to_u64() == expect);
        }
    }
    SUBCASE("depth-one fiber of the two-base system") {
        model::LabeledDigraph g = load_system("fig2");
        CHECK(symbolic::fiber_count_exact(g, word_from(1, {{0}})).to_u64() == 3);
    }
    SUBCASE("illegal words have empty fibers") {
        model::LabeledDigraph g = load_system("ex2_11");
        // (0,0) never occurs as a two-digit prefix
        CHECK(symbolic::fiber_count_exact(g, word_from(2, {{0, 0}})).is_zero());
    }
    SUBCASE("agrees with brute force") {
        for (const char* name : {"fig2", "fig4", "ex2_11"}) {
            model::LabeledDigraph g = load_system(name);
            int level = g.dimension() - 1;
            for (const auto& s : testutil::brute_word_set(g, level, 3)) {
                CHECK(symbolic::fiber_count_exact(g, {level, s}).to_u64() ==
                      static_cast<std::uint64_t>(testutil::brute_fiber_count(g, s, level)));
            }
        }
    }
}

TEST_CASE("fiber partition: fibers over legal words sum to the next level count") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        for (int level = 1; level < g.dimension(); ++level) {
            for (int n = 1; n <= 5; ++n) {
                BigUint sum;
                for (const auto& s : testutil::brute_word_set(g, level, n))
                    sum += symbolic::fiber_count_exact(g, {level, s});
                CAPTURE(name);
                CAPTURE(level);
                CAPTURE(n);
                CHECK(sum == symbolic::count_words(g, level + 1, n));
            }
        }
    }
}

TEST_CASE("surrogate norms") {
    model::LabeledDigraph g = load_system("fig2");
    CHECK(symbolic::fiber_surrogate_norm(g, word_from(1, {{0}})) == doctest::Approx(3.0));
    CHECK(symbolic::fiber_surrogate_norm(g, word_from(1, {{0}, {0}})) == doctest::Approx(6.0));
    model::LabeledDigraph single = model::parse_spec(
        R"({"bases":[2,2],"vertices":1,"edges":[{"from":0,"to":0,"label":[0,0]}]})");
    CHECK(symbolic::fiber_surrogate_norm(single, word_from(1, {{0}, {1}})) == 0.0);
    CHECK(std::isinf(symbolic::fiber_surrogate_norm(single, word_from(1, {{1}}), true)));
}

TEST_CASE("surrogate sandwich: fiber <= norm <= |V| * fiber") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        int level = g.dimension() - 1;
        for (int n = 1; n <= 6; ++n) {
            for (const auto& s : testutil::brute_word_set(g, level, n)) {
                double fiber = symbolic::fiber_count_exact(g, {level, s}).to_double();
                double norm = symbolic::fiber_surrogate_norm(g, {level, s});
                CAPTURE(name);
                CAPTURE(n);
                CHECK(fiber <= norm + 1e-9);
                CHECK(norm <= g.vertex_count * fiber + 1e-9);
            }
        }
    }
}

TEST_CASE("projection monotonicity of word counts") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        for (int level = 1; level < g.dimension(); ++level)
            for (int k = 1; k <= 8; ++k)
                CHECK(symbolic::count_words(g, level, k) <=
                      symbolic::count_words(g, level + 1, k));
    }
}

TEST_CASE("right-resolving sandwich against matrix-power norms") {
    for (const char* name : {"fig2", "fig4", "ex2_11", "ex2_12"}) {
        model::LabeledDigraph g = load_system(name);
        Matrix a = model::total_adjacency(g);
        for (int k = 1; k <= 12; ++k) {
            double norm = norm_of_power(a, k);
            double words = symbolic::count_words(g, g.dimension(), k).to_double();
            CAPTURE(name);
            CAPTURE(k);
            CHECK(norm / g.vertex_count <= words + 1e-6);
            CHECK(words <= norm + 1e-6);
        }
    }
}

TEST_CASE("automaton dump lists transitions") {
    symbolic::SubsetAutomaton aut = symbolic::determinize(load_system("fig2"), 1);
    std::string dump = aut.dump_edges();
    CHECK(dump.find("level 1 automaton") != std::string::npos);
    CHECK(dump.find("->") != std::string::npos);
}
