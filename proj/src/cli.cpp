#include "sofic/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "sofic/beta.hpp"
#include "sofic/hausdorff.hpp"
#include "sofic/model.hpp"
#include "sofic/render.hpp"
#include "sofic/report.hpp"
#include "sofic/spectral.hpp"
#include "sofic/symbolic.hpp"

namespace sofic::cli {

namespace {

struct RunOptions {
    std::string input;
    std::string out;
    int nmax = 16;
    std::string mode = "exact";
    int depth = 0;
    int workers = 0;
    double tolerance = 1e-10;
    bool timings = false;
    int width = 0;
    int height = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw model::SpecError("cannot read input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const RunOptions& opt, const std::string& bytes) {
    if (opt.out.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw model::SpecError("cannot write output file: " + opt.out);
    out << bytes;
}

hausdorff::Options hausdorff_options(const RunOptions& opt) {
    hausdorff::Options h;
    h.mode = opt.mode == "surrogate" ? hausdorff::FiberMode::NormSurrogate
                                     : hausdorff::FiberMode::ExactFibers;
    h.workers = opt.workers;
    return h;
}

struct Session {
    RunOptions opt;
    std::string raw;
    model::LabeledDigraph parsed;
    model::LabeledDigraph pruned;
    report::Writer w;
    std::vector<std::pair<std::string, double>> timings;

    explicit Session(const RunOptions& options) : opt(options) {
        raw = read_file(opt.input);
        parsed = model::parse_spec(raw);
        pruned = model::forward_prune(parsed);
    }

    template <typename F>
    void timed(const std::string& name, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        std::forward<F>(f)();
        auto t1 = std::chrono::steady_clock::now();
        timings.push_back({name, std::chrono::duration<double>(t1 - t0).count()});
    }

    void header(const std::string& command) {
        w.line(0, "sofic-dimension-report");
        w.kv(0, "schema", static_cast<long long>(kReportSchema));
        w.kv(0, "tool", std::string(kToolVersion));
        w.kv(0, "command", command);
        w.kv(0, "input", opt.input);
        w.kv(0, "input_hash", "fnv1a64:" + report::hex64(report::fnv1a64(raw)));
        w.kv_list(0, "bases", parsed.bases.values());
        w.kv(0, "vertices", static_cast<long long>(parsed.vertex_count));
        w.kv(0, "edges", static_cast<long long>(parsed.edges.size()));
        w.kv(0, "pruned_vertices", static_cast<long long>(pruned.vertex_count));
        w.kv(0, "pruned_edges", static_cast<long long>(pruned.edges.size()));
        w.blank();
    }

    void require_nonempty() {
        if (pruned.vertex_count == 0)
            throw model::SpecError("system prunes to the empty graph; nothing to analyze");
    }

    void block_validate() {
        w.line(0, "validate:");
        w.kv(1, "status", std::string("ok"));
        w.kv(1, "right_resolving", std::string("true"));
        w.kv(1, "empty_after_pruning", std::string(pruned.vertex_count == 0 ? "true" : "false"));
        w.blank();
    }

    void block_hausdorff() {
        require_nonempty();
        std::cerr << "[soficdim] hausdorff: n_max=" << opt.nmax << " mode=" << opt.mode << "\n";
        hausdorff::DimensionEstimate est;
        timed("hausdorff", [&] {
            est = hausdorff::dimension_estimate(pruned, opt.nmax, hausdorff_options(opt));
        });
        w.line(0, "hausdorff:");
        w.kv(1, "mode", std::string(hausdorff::to_string(est.mode)));
        w.kv(1, "n_max", static_cast<long long>(est.n_max));
        w.kv(1, "estimate", est.estimate);
        w.kv(1, "uncertainty", est.uncertainty);
        w.kv_list(1, "e", est.e);
        w.kv_list(1, "d", est.d);
        w.blank();
    }

    void block_minkowski(bool tolerate_failure = false) {
        require_nonempty();
        std::cerr << "[soficdim] minkowski\n";
        spectral::MinkowskiResult mk;
        if (tolerate_failure) {
            try {
                timed("minkowski", [&] { mk = spectral::minkowski_dimension(pruned); });
            } catch (const model::SpecError& e) {
                w.line(0, "minkowski:");
                w.kv(1, "value", "null (" + std::string(e.what()) + ")");
                w.blank();
                return;
            }
        } else {
            timed("minkowski", [&] { mk = spectral::minkowski_dimension(pruned); });
        }
        w.line(0, "minkowski:");
        w.kv(1, "value", mk.value);
        w.kv(1, "spectral_radius", mk.rho);
        w.kv(1, "h_top", mk.h_top);
        for (const auto& e : mk.level_entropies) {
            w.kv(1, "entropy_level_" + std::to_string(e.level), e.value);
            if (e.growth_warning)
                w.kv(1, "entropy_level_" + std::to_string(e.level) + "_warning",
                     "finite-k growth delta " + report::format_double(e.growth_delta));
        }
        w.blank();
    }

    void block_entropy() {
        require_nonempty();
        std::cerr << "[soficdim] entropy\n";
        w.line(0, "entropy:");
        timed("entropy", [&] {
            for (int i = 1; i <= pruned.dimension(); ++i) {
                spectral::EntropyResult e = spectral::entropy_level(pruned, i);
                w.kv(1, "level_" + std::to_string(i), e.value);
                w.kv(1, "level_" + std::to_string(i) + "_automaton_states",
                     static_cast<long long>(e.automaton_states));
                if (e.growth_warning)
                    w.kv(1, "level_" + std::to_string(i) + "_warning",
                         "finite-k growth delta " + report::format_double(e.growth_delta));
            }
            spectral::PerronData pd = spectral::spectral_radius(model::total_adjacency(pruned));
            w.kv(1, "adjacency_spectral_radius", pd.rho);
            w.kv(1, "h_top", std::log(pd.rho));
        });
        w.blank();
    }

    void block_uniform_complexity() {
        require_nonempty();
        std::cerr << "[soficdim] uc-check\n";
        spectral::UniformComplexityCertificate cert;
        timed("uc-check", [&] { cert = spectral::uniform_complexity_check(pruned); });
        w.line(0, "uniform_complexity:");
        w.kv(1, "verdict", std::string(spectral::to_string(cert.verdict)));
        if (cert.verdict == spectral::UniformComplexityCertificate::Verdict::Holds)
            w.kv(1, "side", std::string(cert.side == 'L' ? "left" : "right"));
        w.kv(1, "lambda", cert.lambda);
        w.kv_list(1, "vector", cert.vec);
        for (const auto& pm : cert.residuals) {
            std::string key = "residual_s";
            for (int d : pm.prefix) key += "_" + std::to_string(d);
            w.kv(1, key, pm.residual);
        }
        w.blank();
    }

    void block_probe(bool tolerate_failure = false) {
        require_nonempty();
        std::cerr << "[soficdim] conjecture probe\n";
        spectral::ConjectureProbe probe;
        if (tolerate_failure) {
            try {
                timed("probe", [&] {
                    probe = spectral::conjecture_probe(pruned, opt.nmax, hausdorff_options(opt));
                });
            } catch (const model::SpecError& e) {
                w.line(0, "conjecture_probe:");
                w.kv(1, "gap", "null (" + std::string(e.what()) + ")");
                w.blank();
                return;
            }
        } else {
            timed("probe", [&] {
                probe = spectral::conjecture_probe(pruned, opt.nmax, hausdorff_options(opt));
            });
        }
        w.line(0, "conjecture_probe:");
        w.kv(1, "uniform_complexity", std::string(spectral::to_string(probe.certificate.verdict)));
        w.kv(1, "minkowski", probe.minkowski);
        w.kv(1, "hausdorff_estimate", probe.hausdorff_estimate);
        w.kv(1, "gap", probe.gap);
        w.blank();
    }

    void block_shared_eigenvector() {
        require_nonempty();
        w.line(0, "shared_eigenvector:");
        try {
            spectral::SharedEigenvectorResult res =
                spectral::shared_eigenvector_dimension(pruned);
            w.kv(1, "dimension", res.dimension);
            w.kv_list(1, "vector", res.vec);
        } catch (const model::SpecError& e) {
            w.kv(1, "status", "not available (" + std::string(e.what()) + ")");
        }
        w.blank();
    }

    void block_beta(bool required) {
        require_nonempty();
        beta::CaseStudy which = beta::identify_case_study(pruned);
        if (which == beta::CaseStudy::None) {
            if (required)
                throw model::SpecError(
                    "beta: input does not match either checked-in case-study system");
            w.line(0, "beta:");
            w.kv(1, "case", std::string("none"));
            w.blank();
            return;
        }
        std::cerr << "[soficdim] beta case study\n";
        beta::CaseStudyResult res;
        timed("beta", [&] {
            int n_max = std::min(opt.nmax, 12);
            res = which == beta::CaseStudy::Case2_11
                      ? beta::case_study_2_11(pruned, n_max, hausdorff_options(opt))
                      : beta::case_study_2_12(pruned, n_max, hausdorff_options(opt));
        });
        w.line(0, "beta:");
        w.kv(1, "case", res.name);
        w.kv(1, "beta", res.beta);
        w.kv(1, "dimension", res.dimension);
        w.kv(1, "final_truncation", static_cast<long long>(res.solve.final_truncation));
        w.kv(1, "residual", res.solve.residual);
        std::vector<double> betas;
        std::vector<long long> orders;
        for (const auto& [m, b] : res.solve.trace) {
            orders.push_back(m);
            betas.push_back(b);
        }
        w.kv_list(1, "truncation_orders", orders);
        w.kv_list(1, "truncation_betas", betas);
        w.kv(1, "hausdorff_estimate", res.hausdorff_estimate);
        w.kv(1, "cross_check_gap", res.cross_check_gap);
        for (std::size_t i = 0; i < res.notes.size(); ++i)
            w.kv(1, "note_" + std::to_string(i + 1), res.notes[i]);
        w.blank();
    }

    void block_boxcount() {
        require_nonempty();
        int depth = opt.depth > 0 ? opt.depth : 12;
        std::cerr << "[soficdim] boxcount: depth=" << depth << "\n";
        w.line(0, "boxcount:");
        std::vector<long long> ks;
        std::vector<double> normalized;
        std::vector<std::string> counts;
        timed("boxcount", [&] {
            double log_m1 = std::log(static_cast<double>(pruned.bases.base(1)));
            for (int k = 1; k <= depth; ++k) {
                BigUint m = render::approximate_square_count(pruned, k);
                ks.push_back(k);
                counts.push_back(m.to_string());
                normalized.push_back(m.log() / (static_cast<double>(k) * log_m1));
            }
        });
        w.kv_list(1, "k", ks);
        std::string joined = "[";
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i) joined += ", ";
            joined += counts[i];
        }
        joined += "]";
        w.kv(1, "m", joined);
        w.kv_list(1, "normalized", normalized);
        if (model::is_primitive(model::total_adjacency(pruned))) {
            double mink = spectral::minkowski_dimension(pruned).value;
            w.kv(1, "minkowski", mink);
            w.kv(1, "gap_at_max_depth", std::abs(normalized.back() - mink));
        }
        w.blank();
    }

    void block_timings() {
        if (!opt.timings) return;
        w.line(0, "timings:");
        for (const auto& [name, seconds] : timings) w.kv(1, name + "_seconds", seconds);
        w.blank();
    }
};

int dispatch(const std::string& command, const RunOptions& opt) {
    Session s(opt);
    if (command == "render") {
        s.require_nonempty();
        int depth = opt.depth > 0 ? opt.depth : 4;
        if (s.pruned.dimension() == 2) {
            long long side = 1;
            for (int i = 0; i < depth; ++i) side *= s.pruned.bases.base(2);
            int width = opt.width > 0 ? opt.width : static_cast<int>(std::min<long long>(side, 1024));
            int height = opt.height > 0 ? opt.height : width;
            render::Image img = render::raster_2d(s.pruned, depth, width, height);
            write_output(opt, render::encode_pgm(img));
            std::cerr << "[soficdim] wrote " << img.width << "x" << img.height
                      << " raster at depth " << depth << "\n";
        } else if (s.pruned.dimension() == 3) {
            write_output(opt, render::voxel_export(s.pruned, depth));
            std::cerr << "[soficdim] wrote voxel list at depth " << depth << "\n";
        } else {
            throw model::SpecError("render: requires r = 2 (raster) or r = 3 (voxels)");
        }
        return 0;
    }

    s.header(command);
    if (command == "validate") {
        s.block_validate();
    } else if (command == "hausdorff") {
        s.block_hausdorff();
    } else if (command == "minkowski") {
        s.block_minkowski();
    } else if (command == "entropy") {
        s.block_entropy();
    } else if (command == "uc-check") {
        s.block_uniform_complexity();
    } else if (command == "beta") {
        s.block_beta(true);
    } else if (command == "boxcount") {
        s.block_boxcount();
    } else if (command == "all") {
        s.block_validate();
        if (s.pruned.vertex_count == 0) {
            s.w.line(0, "analysis: skipped (system prunes to the empty graph)");
        } else {
            s.block_hausdorff();
            s.block_minkowski(true);
            s.block_entropy();
            if (s.pruned.dimension() == 2) {
                s.block_uniform_complexity();
                s.block_probe(true);
            }
            s.block_shared_eigenvector();
            s.block_beta(false);
            s.block_boxcount();
        }
    } else {
        throw model::SpecError("unknown subcommand: " + command);
    }
    s.block_timings();
    write_output(opt, s.w.str());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"sofic set dimension engine"};
    app.require_subcommand(1);

    RunOptions opt;
    opt.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::vector<CLI::App*> subs;
    const std::pair<const char*, const char*> commands[] = {
        {"validate", "parse and validate a presentation document"},
        {"hausdorff", "nested-sum dimension estimate with both diagnostic sequences"},
        {"minkowski", "box dimension from factor entropies (primitive systems)"},
        {"entropy", "per-level factor entropies"},
        {"uc-check", "uniform-complexity certificate (r = 2)"},
        {"beta", "truncated spectral-radius solve for the bundled case studies"},
        {"render", "raster (r = 2) or voxel list (r = 3) of the depth-k approximation"},
        {"boxcount", "approximate-square counts and their growth exponents"},
        {"all", "every applicable analysis in one report"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--input", opt.input, "presentation document")->required();
        sub->add_option("--out", opt.out, "output path (default: stdout)");
        sub->add_option("--nmax", opt.nmax, "maximum word length for estimates");
        sub->add_option("--mode", opt.mode, "exact | surrogate")
            ->check(CLI::IsMember({"exact", "surrogate"}));
        sub->add_option("--depth", opt.depth, "render/boxcount depth");
        sub->add_option("--workers", opt.workers, "worker threads");
        sub->add_option("--tolerance", opt.tolerance, "solver tolerance");
        sub->add_option("--width", opt.width, "raster width");
        sub->add_option("--height", opt.height, "raster height");
        sub->add_flag("--timings", opt.timings, "append wall-clock timings to the report");
        subs.push_back(sub);
    }

    std::vector<const char*> argv;
    argv.push_back("soficdim");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        for (CLI::App* sub : subs) {
            if (sub->parsed()) return dispatch(sub->get_name(), opt);
        }
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const hausdorff::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace sofic::cli
