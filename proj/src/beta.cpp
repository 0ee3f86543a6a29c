#include "sofic/beta.hpp"

#include <cmath>
#include <cstdio>

#include "sofic/matrix.hpp"

namespace sofic::beta {

namespace {

double truncated_rhs(const BetaProblem& p, const std::vector<double>& c, double b) {
    if (p.type == EquationType::A) {
        // sum_{q < m} c_q b^{-q}, coefficients indexed from 0
        double s = 0.0, pw = 1.0;
        for (double cq : c) {
            s += cq * pw;
            pw /= b;
        }
        return s;
    }
    // c_1 + sum_{k=1}^{m-1} (c_{k+1} - c_k) b^{-k}, coefficients from index 1
    double s = c[0], pw = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        pw /= b;
        s += (c[k] - c[k - 1]) * pw;
    }
    return s;
}

double lhs(const BetaProblem& p, double b) {
    return p.type == EquationType::A ? b : b - 1.0 / b;
}

}  // namespace

double solve_truncated(const BetaProblem& p, int m) {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(m));
    int first = p.type == EquationType::A ? 0 : 1;
    for (int q = first; q < first + m; ++q) {
        double cq = p.coefficient(q);
        if (cq < 0.0) throw SolveError("solve_beta: negative coefficient at q=" + std::to_string(q));
        if (p.type == EquationType::B && !c.empty() && cq < c.back() - 1e-12)
            throw SolveError("solve_beta: non-monotone type-B coefficients at q=" +
                             std::to_string(q));
        c.push_back(cq);
    }
    bool any = false;
    for (double cq : c) any = any || cq > 0.0;
    if (!any) throw SolveError("solve_beta: all coefficients vanish");

    // RHS is strictly decreasing and LHS strictly increasing on beta > 0, so
    // the root is unique; find an upper bracket by doubling.
    double lo = p.type == EquationType::A ? 1e-9 : 1.0 + 1e-12;
    double hi = 2.0;
    auto f = [&](double b) { return truncated_rhs(p, c, b) - lhs(p, b); };
    int guard = 0;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 800) throw SolveError("solve_beta: no bracket found (series too heavy)");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

BetaSolveResult solve_beta(const BetaProblem& p) {
    if (!p.coefficient) throw SolveError("solve_beta: missing coefficient generator");
    BetaSolveResult out;
    double prev = -1.0;
    for (int m = 10; m <= p.max_truncation; m += 5) {
        double bm = solve_truncated(p, m);
        out.trace.push_back({m, bm});
        if (prev >= 0.0 && bm - prev < p.tolerance) {
            out.beta = bm;
            out.final_truncation = m;
            std::vector<double> c;
            int first = p.type == EquationType::A ? 0 : 1;
            for (int q = first; q < first + m; ++q) c.push_back(p.coefficient(q));
            out.residual = std::abs(truncated_rhs(p, c, bm) - lhs(p, bm));
            return out;
        }
        prev = bm;
    }
    throw SolveError("solve_beta: truncations did not settle below tolerance by m=" +
                     std::to_string(p.max_truncation));
}

// ---------------------------------------------------------------------------
// Case study: bases [2,3,4]
// ---------------------------------------------------------------------------

namespace {

const double kA1_211 = std::log(2.0) / std::log(3.0);  // log_3 2
const double kA2_211 = std::log(3.0) / std::log(4.0);  // log_4 3

}  // namespace

double bq_case_2_11_matrix(int q) {
    if (q < 0) throw SolveError("bq: negative index");
    // M1 first row q^{a2} at column q, shifted identity below; Phi0 = e_0.
    std::size_t n = static_cast<std::size_t>(q) + 2;
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    for (int step = 0; step < q; ++step) {
        std::vector<double> nx(n, 0.0);
        for (std::size_t j = 1; j < n; ++j)
            if (x[j] != 0.0) nx[0] += std::pow(static_cast<double>(j), kA2_211) * x[j];
        for (std::size_t k = 0; k + 1 < n; ++k) nx[k + 1] += x[k];
        x.swap(nx);
    }
    double norm = 0.0;
    for (double v : x) norm += v;
    return std::pow(norm, kA1_211);
}

double bq_case_2_11_enumeration(int q) {
    if (q < 0) throw SolveError("bq: negative index");
    if (q == 0) return 1.0;
    // Words of length q-1 over the two prefixes with leading digit 1.
    const double m10[2][2] = {{0.0, 1.0}, {0.0, 0.0}};
    const double m11[2][2] = {{1.0, 0.0}, {1.0, 1.0}};
    double total = 0.0;
    std::function<void(int, double, double)> rec = [&](int pos, double r0, double r1) {
        if (pos == q - 1) {
            if (r1 > 0.0) total += std::pow(r1, kA2_211);  // row . (0,1)^T
            return;
        }
        for (const auto& m : {m10, m11}) {
            double n0 = r0 * m[0][0] + r1 * m[1][0];
            double n1 = r0 * m[0][1] + r1 * m[1][1];
            if (n0 != 0.0 || n1 != 0.0) rec(pos + 1, n0, n1);
        }
    };
    rec(0, 1.0, 1.0);
    return std::pow(total, kA1_211);
}

double bq_case_2_11(int q) {
    double mv = bq_case_2_11_matrix(q);
    if (q <= 14) {
        double ev = bq_case_2_11_enumeration(q);
        if (std::abs(mv - ev) > 1e-9 * std::max(1.0, std::abs(mv)))
            throw SolveError("bq oracles disagree at q=" + std::to_string(q) + ": " +
                             std::to_string(mv) + " vs " + std::to_string(ev));
    }
    return mv;
}

// ---------------------------------------------------------------------------
// Structural identification
// ---------------------------------------------------------------------------

namespace {

Matrix mat2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

bool matches_matrices(const model::LabeledDigraph& g,
                      const std::vector<std::pair<std::vector<int>, Matrix>>& expected) {
    if (g.vertex_count != 2) return false;
    long long prefixes = g.bases.prefix_count(g.dimension() - 1);
    for (long long id = 0; id < prefixes; ++id) {
        std::vector<int> digits =
            model::decode_prefix(g.bases, static_cast<int>(id), g.dimension() - 1);
        Matrix a = model::restricted_adjacency(g, digits);
        bool found = false;
        for (const auto& [p, m] : expected) {
            if (p == digits) {
                if (!(a == m)) return false;
                found = true;
                break;
            }
        }
        if (!found && !a.is_zero()) return false;
    }
    return true;
}

}  // namespace

CaseStudy identify_case_study(const model::LabeledDigraph& g) {
    if (g.bases.values() == std::vector<int>{2, 3, 4} &&
        matches_matrices(g, {{{0, 1}, mat2(0, 0, 0, 1)},
                             {{1, 0}, mat2(0, 1, 0, 0)},
                             {{1, 1}, mat2(1, 0, 1, 1)}}))
        return CaseStudy::Case2_11;
    if (g.bases.values() == std::vector<int>{3, 4, 5} &&
        matches_matrices(g, {{{0, 1}, mat2(1, 1, 1, 1)},
                             {{1, 0}, mat2(1, 0, 0, 1)},
                             {{2, 3}, mat2(1, 1, 0, 3)}}))
        return CaseStudy::Case2_12;
    return CaseStudy::None;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    return buf;
}

}  // namespace

CaseStudyResult case_study_2_11(const model::LabeledDigraph& g, int hausdorff_n_max,
                                const hausdorff::Options& opt) {
    if (identify_case_study(g) != CaseStudy::Case2_11)
        throw model::SpecError(
            "case_study_2_11: structural mismatch with the defining matrices");
    CaseStudyResult out;
    out.name = "case-2.11";

    std::vector<double> cache;
    BetaProblem problem;
    problem.type = EquationType::A;
    problem.coefficient = [&cache](int q) {
        while (static_cast<int>(cache.size()) <= q)
            cache.push_back(bq_case_2_11(static_cast<int>(cache.size())));
        return cache[static_cast<std::size_t>(q)];
    };
    out.solve = solve_beta(problem);
    out.beta = out.solve.beta;
    out.dimension = std::log2(out.beta);

    hausdorff::DimensionEstimate est = hausdorff::dimension_estimate(g, hausdorff_n_max, opt);
    out.hausdorff_estimate = est.estimate;
    out.cross_check_gap = std::abs(out.dimension - est.estimate);

    out.notes.push_back("b_2 from both oracles = " + fmt(problem.coefficient(2)) +
                        " (exponent log_3 2 applied to the l1 norm); applying exponent log_4 3 "
                        "instead would give " +
                        fmt(std::pow(2.0, kA2_211)));
    out.notes.push_back("nested-sum cross-check gap = " + fmt(out.cross_check_gap));
    return out;
}

CaseStudyResult case_study_2_12(const model::LabeledDigraph& g, int hausdorff_n_max,
                                const hausdorff::Options& opt) {
    if (identify_case_study(g) != CaseStudy::Case2_12)
        throw model::SpecError(
            "case_study_2_12: structural mismatch with the defining matrices");
    CaseStudyResult out;
    out.name = "case-2.12";
    const double alpha = std::log(3.0) / std::log(5.0);  // a_1 a_2 = log_5 3

    // Ray identities, exact in integer arithmetic: with h_q = (3^q - 1)/2,
    //   (1, h_q) A0 = ((3^q + 1)/2) (1, 1),  (1, h_q) A1 = (1, h_q),
    //   (1, h_q) A2 = (1, h_{q+1}).
    long long p3 = 1;
    for (int q = 0; q <= 10; ++q) {
        long long h = (p3 - 1) / 2;
        long long a0_row[2] = {1 + h, 1 + h};       // (1,h) [[1,1],[1,1]]
        long long a1_row[2] = {1, h};               // (1,h) I
        long long a2_row[2] = {1, 1 + 3 * h};       // (1,h) [[1,1],[0,3]]
        long long scale = (p3 + 1) / 2;
        if (a0_row[0] != scale || a0_row[1] != scale || a1_row[0] != 1 || a1_row[1] != h ||
            a2_row[0] != 1 || a2_row[1] != (3 * p3 - 1) / 2)
            throw model::SpecError("case_study_2_12: ray identity failed at q=" +
                                   std::to_string(q));
        p3 *= 3;
    }

    // Class-transition matrix first row: the identity letter fixes every ray,
    // so the (1,1) entry is 1 + 2^alpha; columns n >= 2 are ((3^n + 1)/2)^alpha.
    auto coeff = [alpha](int n) {
        double base = (std::pow(3.0, static_cast<double>(n)) + 1.0) / 2.0;
        double c = std::pow(base, alpha);
        return n == 1 ? 1.0 + c : c;
    };
    BetaProblem problem;
    problem.type = EquationType::B;
    problem.coefficient = coeff;
    out.solve = solve_beta(problem);
    out.beta = out.solve.beta;
    out.dimension = std::log(out.beta + 1.0) / std::log(3.0);

    hausdorff::DimensionEstimate est = hausdorff::dimension_estimate(g, hausdorff_n_max, opt);
    out.hausdorff_estimate = est.estimate;
    out.cross_check_gap = std::abs(out.dimension - est.estimate);

    // Variant solves kept for comparison; neither matches the independent
    // nested-sum estimate, the primary solve does.
    BetaProblem no_diag = problem;
    no_diag.coefficient = [alpha](int n) {
        return std::pow((std::pow(3.0, static_cast<double>(n)) + 1.0) / 2.0, alpha);
    };
    double dim_no_diag = std::log(solve_beta(no_diag).beta + 1.0) / std::log(3.0);
    BetaProblem companion;
    companion.type = EquationType::A;
    companion.coefficient = [alpha](int q) {
        return std::pow((std::pow(3.0, static_cast<double>(q)) + 1.0) / 2.0, alpha);
    };
    double dim_companion = std::log(solve_beta(companion).beta + 1.0) / std::log(3.0);

    out.notes.push_back("log base m_1 = 3 used throughout; log_2(beta+1) = " +
                        fmt(std::log2(out.beta + 1.0)) + " for comparison");
    out.notes.push_back("b_1 = 1 + 2^alpha carries the identity-letter diagonal; dropping the "
                        "diagonal gives dim " +
                        fmt(dim_no_diag) + ", the companion form from q = 0 gives dim " +
                        fmt(dim_companion) + "; only the primary solve matches the nested-sum "
                        "estimate " +
                        fmt(est.estimate));
    out.notes.push_back("nested-sum cross-check gap = " + fmt(out.cross_check_gap));
    return out;
}

}  // namespace sofic::beta
