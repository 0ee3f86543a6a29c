#include "sofic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sofic/symbolic.hpp"

namespace sofic::spectral {

EntropyResult entropy_level(const model::LabeledDigraph& g, int level) {
    if (g.vertex_count == 0) throw model::SpecError("entropy_level: empty graph");
    symbolic::SubsetAutomaton aut = symbolic::determinize(g, level);
    EntropyResult out;
    out.level = level;
    out.automaton_states = static_cast<int>(aut.states.size());
    out.essential_states = static_cast<int>(aut.essential_states.size());
    if (aut.essential_states.empty())
        throw model::SpecError("entropy_level: automaton has no essential part");
    PerronData pd = spectral_radius(aut.essential_adjacency);
    out.value = std::log(pd.rho);

    const int k = 12;
    BigUint nk = symbolic::count_words(aut, k);
    BigUint nk1 = symbolic::count_words(aut, k + 1);
    if (!nk.is_zero() && !nk1.is_zero()) {
        out.growth_delta = std::abs((nk1.log() - nk.log()) - out.value);
        out.growth_warning = out.growth_delta > 0.02;
    }
    return out;
}

MinkowskiResult minkowski_dimension(const model::LabeledDigraph& g) {
    NonnegMatrix a = model::total_adjacency(g);
    if (!model::is_primitive(a))
        throw model::SpecError(
            "minkowski_dimension: total adjacency matrix is not primitive");
    MinkowskiResult out;
    PerronData pd = spectral_radius(a);
    out.rho = pd.rho;
    out.h_top = std::log(pd.rho);
    int r = g.dimension();
    double dim = out.h_top / std::log(static_cast<double>(g.bases.base(r)));
    for (int i = 1; i < r; ++i) {
        EntropyResult e = entropy_level(g, i);
        dim += (1.0 / std::log(static_cast<double>(g.bases.base(i))) -
                1.0 / std::log(static_cast<double>(g.bases.base(i + 1)))) *
               e.value;
        out.level_entropies.push_back(std::move(e));
    }
    out.value = dim;
    return out;
}

namespace {

struct SideCheck {
    bool candidate_positive = false;
    double max_residual = 0.0;
    double lambda = 0.0;
    std::vector<double> vec;
    std::vector<UniformComplexityCertificate::PerMatrix> residuals;
};

SideCheck check_side(const std::vector<std::pair<std::vector<int>, Matrix>>& mats,
                     const Matrix& total, bool left) {
    SideCheck out;
    PerronData pd = spectral_radius(total);
    const std::vector<double>& v = left ? pd.left : pd.right;
    out.vec = v;
    double minv = 1.0;
    for (double x : v) minv = std::min(minv, x);
    out.candidate_positive = minv > 1e-12;
    out.lambda = pd.rho / static_cast<double>(mats.size());
    for (const auto& [prefix, a] : mats) {
        std::vector<double> image = left ? row_times_matrix(v, a) : matrix_times_col(a, v);
        double fit_num = 0.0, fit_den = 0.0, res = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            fit_num += image[i];
            fit_den += v[i];
        }
        double lambda_fit = fit_den > 0.0 ? fit_num / fit_den : 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) res += std::abs(image[i] - out.lambda * v[i]);
        out.residuals.push_back({prefix, lambda_fit, res});
        out.max_residual = std::max(out.max_residual, res);
    }
    return out;
}

}  // namespace

UniformComplexityCertificate uniform_complexity_check(const model::LabeledDigraph& g) {
    if (g.dimension() != 2)
        throw model::SpecError("uniform_complexity_check: defined for r = 2 presentations");
    if (g.vertex_count == 0) throw model::SpecError("uniform_complexity_check: empty graph");

    std::vector<std::pair<std::vector<int>, Matrix>> mats;
    for (int d = 0; d < g.bases.base(1); ++d) {
        Matrix a = model::restricted_adjacency(g, {d});
        if (!a.is_zero()) mats.push_back({{d}, std::move(a)});
    }
    Matrix total = model::total_adjacency(g);

    UniformComplexityCertificate cert;
    SideCheck leftc = check_side(mats, total, true);
    SideCheck rightc = check_side(mats, total, false);

    // Certified residual threshold; small-integer inputs make genuine
    // certificates near-exact, so anything past 1e-6 is a clear failure and
    // the zone in between stays inconclusive.
    auto classify = [](const SideCheck& s) {
        if (!s.candidate_positive) return UniformComplexityCertificate::Verdict::Inconclusive;
        if (s.max_residual <= 1e-9 * std::max(s.lambda, 1e-100))
            return UniformComplexityCertificate::Verdict::Holds;
        if (s.max_residual > 1e-6 * std::max(s.lambda, 1e-100))
            return UniformComplexityCertificate::Verdict::Fails;
        return UniformComplexityCertificate::Verdict::Inconclusive;
    };

    auto lv = classify(leftc);
    auto rv = classify(rightc);
    const SideCheck* reported = &leftc;
    if (lv == UniformComplexityCertificate::Verdict::Holds) {
        cert.verdict = lv;
        cert.side = 'L';
    } else if (rv == UniformComplexityCertificate::Verdict::Holds) {
        cert.verdict = rv;
        cert.side = 'R';
        reported = &rightc;
    } else if (lv == UniformComplexityCertificate::Verdict::Fails &&
               rv == UniformComplexityCertificate::Verdict::Fails) {
        cert.verdict = UniformComplexityCertificate::Verdict::Fails;
        if (rightc.max_residual < leftc.max_residual) reported = &rightc;
    } else {
        cert.verdict = UniformComplexityCertificate::Verdict::Inconclusive;
        if (!leftc.candidate_positive && rightc.candidate_positive) reported = &rightc;
    }
    cert.lambda = reported->lambda;
    cert.vec = reported->vec;
    cert.residuals = reported->residuals;
    return cert;
}

SharedEigenvectorResult shared_eigenvector_dimension(const model::LabeledDigraph& g) {
    int r = g.dimension();
    if (r < 2) throw model::SpecError("shared_eigenvector_dimension: requires r >= 2");
    if (g.vertex_count == 0) throw model::SpecError("shared_eigenvector_dimension: empty graph");

    Matrix total = model::total_adjacency(g);
    PerronData pd = spectral_radius(total);
    const std::vector<double>& v = pd.right;
    double minv = 1.0, norm = 0.0;
    for (double x : v) {
        minv = std::min(minv, x);
        norm += std::abs(x);
    }
    if (minv <= 1e-12)
        throw model::SpecError(
            "shared_eigenvector_dimension: no positive candidate vector (sum not primitive?)");

    SharedEigenvectorResult out;
    out.vec = v;
    long long prefixes = g.bases.prefix_count(r - 1);
    std::vector<double> lambda_by_id(static_cast<std::size_t>(prefixes), 0.0);
    for (long long id = 0; id < prefixes; ++id) {
        std::vector<int> digits = model::decode_prefix(g.bases, static_cast<int>(id), r - 1);
        Matrix a = model::restricted_adjacency(g, digits);
        double lambda = 0.0;
        if (!a.is_zero()) {
            std::vector<double> image = matrix_times_col(a, v);
            double num = 0.0;
            for (double x : image) num += x;
            lambda = num / norm;
            double res = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                res += std::abs(image[i] - lambda * v[i]);
            if (res > 1e-9 * std::max(lambda, 1.0) * norm)
                throw model::SpecError(
                    "shared_eigenvector_dimension: no shared positive eigenvector (residual " +
                    std::to_string(res) + " at a restricted matrix)");
        }
        lambda_by_id[static_cast<std::size_t>(id)] = lambda;
        out.lambdas.push_back({digits, lambda});
    }

    // Finite single-letter nested sum over the digit-prefix tree. Absent
    // branches carry lambda = 0 and vanish under the positive exponents.
    std::function<double(int, long long, long long)> tree =
        [&](int level, long long id, long long stride) -> double {
        if (level == r - 1) {
            double lam = lambda_by_id[static_cast<std::size_t>(id)];
            return lam == 0.0 ? 0.0 : std::pow(lam, g.bases.exponent(r - 1));
        }
        double acc = 0.0;
        for (int d = 0; d < g.bases.base(level + 1); ++d)
            acc += tree(level + 1, id + d * stride, stride * g.bases.base(level + 1));
        return acc == 0.0 ? 0.0 : std::pow(acc, g.bases.exponent(level));
    };
    double top = 0.0;
    for (int d = 0; d < g.bases.base(1); ++d) {
        if (r == 2) {
            double lam = lambda_by_id[static_cast<std::size_t>(d)];
            top += lam == 0.0 ? 0.0 : std::pow(lam, g.bases.exponent(1));
        } else {
            top += tree(1, d, static_cast<long long>(g.bases.base(1)));
        }
    }
    if (top <= 0.0)
        throw model::SpecError("shared_eigenvector_dimension: all restricted matrices vanish");
    out.dimension = std::log(top) / std::log(static_cast<double>(g.bases.base(1)));
    return out;
}

ConjectureProbe conjecture_probe(const model::LabeledDigraph& g, int n_max,
                                 const hausdorff::Options& opt) {
    if (g.dimension() != 2)
        throw model::SpecError("conjecture_probe: defined for r = 2 presentations");
    ConjectureProbe probe;
    probe.certificate = uniform_complexity_check(g);
    probe.minkowski = minkowski_dimension(g).value;
    probe.hausdorff_estimate = hausdorff::dimension_estimate(g, n_max, opt).estimate;
    probe.gap = std::abs(probe.minkowski - probe.hausdorff_estimate);
    return probe;
}

}  // namespace sofic::spectral
