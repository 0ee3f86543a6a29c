#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "sofic/beta.hpp"
#include "sofic/perron.hpp"

using namespace sofic;
using testutil::load_system;

TEST_CASE("type-A solve with a single constant coefficient") {
    beta::BetaProblem p;
    p.type = beta::EquationType::A;
    p.coefficient = [](int q) { return q == 0 ? 2.0 : 0.0; };
    beta::BetaSolveResult r = beta::solve_beta(p);
    CHECK(r.beta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.residual <= 1e-10 * r.beta);
}

TEST_CASE("b_q oracles for the three-base case study") {
    CHECK(beta::bq_case_2_11(0) == doctest::Approx(1.0));
    CHECK(beta::bq_case_2_11(1) == doctest::Approx(1.0));
    double a1 = std::log(2.0) / std::log(3.0);
    CHECK(beta::bq_case_2_11(2) == doctest::Approx(std::pow(2.0, a1)).epsilon(1e-12));
    for (int q = 0; q <= 12; ++q) {
        double mv = beta::bq_case_2_11_matrix(q);
        double ev = beta::bq_case_2_11_enumeration(q);
        CAPTURE(q);
        CHECK(std::abs(mv - ev) <= 1e-9 * std::max(1.0, mv));
    }
}

TEST_CASE("first case study solves to its published band and matches the nested sums") {
    model::LabeledDigraph g = load_system("ex2_11");
    beta::CaseStudyResult res = beta::case_study_2_11(g, 12);
    CHECK(res.beta >= 2.25);
    CHECK(res.beta <= 2.35);
    CHECK(res.dimension >= 1.195);
    CHECK(res.dimension <= 1.205);
    CHECK(res.cross_check_gap <= 0.05);
    CHECK(res.solve.residual <= 1e-10 * res.beta);
}

TEST_CASE("truncation roots are nondecreasing up to order 60") {
    beta::BetaProblem p;
    p.type = beta::EquationType::A;
    p.coefficient = [](int q) { return beta::bq_case_2_11(q); };
    double prev = 0.0;
    for (int m = 10; m <= 60; m += 5) {
        double bm = beta::solve_truncated(p, m);
        CHECK(bm >= prev - 1e-13);
        prev = bm;
    }
}

TEST_CASE("type-A root matches the companion-matrix spectral radius") {
    beta::BetaProblem p;
    p.type = beta::EquationType::A;
    p.coefficient = [](int q) { return beta::bq_case_2_11(q); };
    const int m = 30;
    double root = beta::solve_truncated(p, m);
    Matrix companion(m, m);
    for (int q = 0; q < m; ++q) companion(0, static_cast<std::size_t>(q)) = p.coefficient(q);
    for (int i = 1; i < m; ++i)
        companion(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1.0;
    double rho = spectral::spectral_radius(companion).rho;
    CHECK(std::abs(rho - root) <= 1e-8 * std::max(1.0, root));
}

TEST_CASE("structural guards reject perturbed systems") {
    model::LabeledDigraph g = load_system("ex2_11");
    g.edges.push_back({0, 1, {{0, 2, 3}}});
    CHECK_THROWS_AS(beta::case_study_2_11(g, 8), model::SpecError);
    CHECK(beta::identify_case_study(g) == beta::CaseStudy::None);
    CHECK(beta::identify_case_study(load_system("fig2")) == beta::CaseStudy::None);
}

TEST_CASE("second case study is internally consistent") {
    model::LabeledDigraph g = load_system("ex2_12");
    beta::CaseStudyResult res = beta::case_study_2_12(g, 10);
    CHECK(res.solve.residual <= 1e-10 * res.beta);
    // dim = log_3(beta + 1) must match the independent nested-sum estimate
    CHECK(res.cross_check_gap <= 0.05);

    // Eigen-consistency: beta + 1 equals the spectral radius of the truncated
    // class-transition matrix (first row b_n, identity diagonal from the
    // letter fixing every ray, shifted identity below).
    const int m = 60;
    double alpha = std::log(3.0) / std::log(5.0);
    Matrix trans(m, m);
    for (int n = 1; n <= m; ++n) {
        double c = std::pow((std::pow(3.0, n) + 1.0) / 2.0, alpha);
        trans(0, static_cast<std::size_t>(n - 1)) = n == 1 ? 1.0 + c : c;
    }
    for (int i = 1; i < m; ++i) {
        trans(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1.0;
        trans(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0;
    }
    double rho = spectral::spectral_radius(trans).rho;
    CHECK(std::abs(rho - (res.beta + 1.0)) <= 1e-8 * rho);
}

TEST_CASE("second case study rejects structural mismatches") {
    CHECK_THROWS_AS(beta::case_study_2_12(load_system("ex2_11"), 8), model::SpecError);
}

TEST_CASE("type-B validation") {
    beta::BetaProblem p;
    p.type = beta::EquationType::B;
    p.coefficient = [](int n) { return n == 1 ? 5.0 : 1.0; };  // decreasing
    CHECK_THROWS_AS(beta::solve_beta(p), beta::SolveError);

    beta::BetaProblem neg;
    neg.type = beta::EquationType::A;
    neg.coefficient = [](int q) { return q == 3 ? -1.0 : 1.0; };
    CHECK_THROWS_AS(beta::solve_beta(neg), beta::SolveError);

    beta::BetaProblem zero;
    zero.type = beta::EquationType::A;
    zero.coefficient = [](int) { return 0.0; };
    CHECK_THROWS_AS(beta::solve_beta(zero), beta::SolveError);
}
