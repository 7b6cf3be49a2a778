#include "cubeavg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cubeavg/oracles.hpp"
#include "cubeavg/parallel.hpp"

namespace cubeavg {

namespace {

std::ofstream open_out(const std::string& path) {
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot open output file '" + path + "'");
    return out;
}

// Doubling runs give every point its own bit stream; other systems share
// the descriptor.
SystemDescriptor system_for_point(const RunConfig& cfg, std::size_t point_id) {
    if (cfg.system.kind == SystemKind::Doubling && cfg.points.size() > 1) {
        SystemDescriptor s = cfg.system;
        s.seed += point_id;
        return s;
    }
    return cfg.system;
}

void write_series_csv(std::ostream& out, const RunConfig& cfg,
                      const std::vector<SampleSeries>& series) {
    const int dim = cfg.system.phase_dim();
    out << "point_id";
    for (int i = 1; i <= dim; ++i) out << ",coord_" << i;
    out << ",N,re,im,delta\n";
    for (std::size_t p = 0; p < series.size(); ++p) {
        auto coords = point_coords(cfg.points[p]);
        for (std::size_t k = 0; k < series[p].entries.size(); ++k) {
            const auto& e = series[p].entries[k];
            out << p;
            for (double c : coords) out << ',' << format_double(c);
            out << ',' << e.n << ',' << format_double(e.value.real()) << ','
                << format_double(e.value.imag()) << ',';
            if (k > 0)
                out << format_double(std::abs(e.value - series[p].entries[k - 1].value));
            out << '\n';
        }
    }
}

void add_meta(RunReport& report, const RunConfig& cfg) {
    auto meta = [&](const std::string& name, const std::string& value) {
        report.rows.push_back({"meta", name, value, "", ""});
    };
    meta("version", kToolVersion);
    meta("command", command_name(cfg.command));
    meta("points", std::to_string(cfg.points.size()));
    if (cfg.system.kind == SystemKind::Doubling)
        meta("system_seed", std::to_string(cfg.system.seed));
    if (cfg.grid && cfg.grid->jitter_seed)
        meta("jitter_seed", std::to_string(*cfg.grid->jitter_seed));
}

void add_check(RunReport& report, const std::string& name, double value, double threshold,
               bool pass) {
    report.rows.push_back({"check", name, format_double(value), format_double(threshold),
                           pass ? "pass" : "fail"});
    if (!pass) report.exit_code = 1;
}

void write_summary(RunReport& report, const RunConfig& cfg) {
    const std::string path = cfg.output_prefix + "_summary.csv";
    auto out = open_out(path);
    out << "type,name,value,threshold,status\n";
    for (const auto& row : report.rows)
        out << row.type << ',' << row.name << ',' << row.value << ',' << row.threshold << ','
            << row.status << '\n';
    report.files.push_back(path);

    const std::string cfg_path = cfg.output_prefix + "_config.json";
    auto cfg_out = open_out(cfg_path);
    cfg_out << cfg.echo.dump(2) << '\n';
    report.files.push_back(cfg_path);
}

std::vector<SampleSeries> compute_series(const RunConfig& cfg) {
    std::vector<SampleSeries> series(cfg.points.size());
    parallel_for_index(cfg.points.size(), cfg.threads, [&](std::size_t i) {
        series[i] = dual_series(system_for_point(cfg, i), *cfg.cube, cfg.points[i], cfg.schedule);
    });
    return series;
}

RunReport run_cubic(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);
    auto series = compute_series(cfg);
    const std::string path = cfg.output_prefix + "_series.csv";
    auto out = open_out(path);
    write_series_csv(out, cfg, series);
    report.files.push_back(path);
    return report;
}

RunReport run_dual(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);
    auto series = compute_series(cfg);
    const std::string path = cfg.output_prefix + "_series.csv";
    auto out = open_out(path);
    write_series_csv(out, cfg, series);
    report.files.push_back(path);

    const double tol = cfg.tolerances.at("convergence");
    for (std::size_t p = 0; p < series.size(); ++p) {
        auto rep = convergence_report(series[p], tol);
        add_check(report, "converged_point_" + std::to_string(p), rep.deltas.back(), tol,
                  rep.converged);
    }
    return report;
}

void write_modulus_csv(const std::string& path, const std::vector<ModulusPoint>& modulus,
                       RunReport& report) {
    auto out = open_out(path);
    out << "delta,omega\n";
    for (const auto& m : modulus)
        out << format_double(m.delta) << ',' << format_double(m.omega) << '\n';
    report.files.push_back(path);
}

RunReport run_ww(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);
    auto field = ww_limit_field(cfg.system, *cfg.f0, *cfg.weight, cfg.points, cfg.schedule,
                                cfg.threads);
    const std::string path = cfg.output_prefix + "_series.csv";
    auto out = open_out(path);
    write_series_csv(out, cfg, field.series);
    report.files.push_back(path);
    write_modulus_csv(cfg.output_prefix + "_modulus.csv", field.modulus, report);
    return report;
}

RunReport run_verify(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);
    const std::string path = cfg.output_prefix + "_verify.csv";
    auto out = open_out(path);
    out << "case,point_id,N,re,im,max_abs_diff\n";

    if (cfg.cube) {
        const bool has_exact = cfg.system.kind == SystemKind::Rotation;
        const bool has_fast = cfg.cube->ell == 2 || cfg.cube->ell == 3;

        struct Row {
            std::size_t N;
            cplx value;
            double kernel_diff;
            double oracle_diff;
        };
        std::vector<std::vector<Row>> rows(cfg.points.size());
        parallel_for_index(cfg.points.size(), cfg.threads, [&](std::size_t p) {
            auto system = system_for_point(cfg, p);
            const std::size_t L = required_length(cfg.cube->ell, cfg.schedule.back());
            VertexSequences seqs;
            for (const auto& obs : cfg.cube->vertices)
                seqs.push_back(sample_sequence(system, obs, cfg.points[p], L));
            for (std::size_t N : cfg.schedule) {
                cplx naive = cubic_average_naive(seqs, cfg.cube->ell, N);
                cplx value = naive;
                double kernel_diff = 0.0, oracle_diff = 0.0;
                if (has_fast) {
                    value = cubic_average_fast(seqs, cfg.cube->ell, N);
                    kernel_diff = std::abs(value - naive);
                }
                if (has_exact) {
                    cplx exact = rotation_cubic_exact(
                        *cfg.cube, system.params, std::get<TorusPoint>(cfg.points[p]), N);
                    oracle_diff = std::abs(value - exact);
                }
                rows[p].push_back({N, value, kernel_diff, oracle_diff});
            }
        });
        double max_kernel_diff = 0.0, max_oracle_diff = 0.0;
        for (std::size_t p = 0; p < rows.size(); ++p) {
            for (const auto& r : rows[p]) {
                out << "cubic," << p << ',' << r.N << ',' << format_double(r.value.real()) << ','
                    << format_double(r.value.imag()) << ','
                    << format_double(std::max(r.kernel_diff, r.oracle_diff)) << '\n';
                max_kernel_diff = std::max(max_kernel_diff, r.kernel_diff);
                max_oracle_diff = std::max(max_oracle_diff, r.oracle_diff);
            }
        }
        if (has_fast) {
            const double tol = cfg.tolerances.at("kernel") * cfg.cube->sup_bound_product();
            add_check(report, "cubic_fast_vs_naive", max_kernel_diff, tol,
                      max_kernel_diff < tol);
        }
        if (has_exact) {
            const double tol = cfg.tolerances.at("oracle");
            add_check(report, "cubic_vs_exact", max_oracle_diff, tol, max_oracle_diff < tol);
        }
    }

    if (cfg.f0) {
        const auto* phase = std::get_if<PolynomialPhase>(&*cfg.weight);
        if (cfg.system.kind != SystemKind::Rotation || cfg.system.phase_dim() != 1)
            throw ConfigError(
                "verify: the ww oracle requires a 1-dimensional rotation system");
        if (phase == nullptr || phase->c0 != 0.0 || phase->c2 != 0.0)
            throw ConfigError(
                "verify: the ww oracle requires weight polynomial_phase with coeffs [0, beta, 0]");
        const TrigPolynomial* f = cfg.f0->as_trig();
        if (f == nullptr)
            throw ConfigError("verify: the ww oracle requires a trig-polynomial f0");

        auto wseq = weight_sequence(*cfg.weight, cfg.schedule.back());
        double max_diff = 0.0;
        for (std::size_t p = 0; p < cfg.points.size(); ++p) {
            auto fseq = sample_sequence(cfg.system, *cfg.f0, cfg.points[p], cfg.schedule.back());
            const double x = std::get<TorusPoint>(cfg.points[p]).coords[0];
            for (std::size_t N : cfg.schedule) {
                cplx value = ww_average(fseq, wseq, N);
                cplx exact = ww_rotation_exact(*f, cfg.system.params[0], phase->c1, x, N);
                double diff = std::abs(value - exact);
                max_diff = std::max(max_diff, diff);
                out << "ww," << p << ',' << N << ',' << format_double(value.real()) << ','
                    << format_double(value.imag()) << ',' << format_double(diff) << '\n';
            }
        }
        const double tol = cfg.tolerances.at("ww");
        add_check(report, "ww_max_abs_diff", max_diff, tol, max_diff < tol);
    }

    report.files.push_back(path);
    return report;
}

RunReport run_uniform(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);
    auto deviations =
        uniform_deviation(cfg.system, *cfg.cube, cfg.points, cfg.pairs, cfg.threads);
    const std::string path = cfg.output_prefix + "_uniform.csv";
    auto out = open_out(path);
    out << "N,N2,deviation\n";
    for (std::size_t k = 0; k < cfg.pairs.size(); ++k)
        out << cfg.pairs[k] << ',' << 2 * cfg.pairs[k] << ','
            << format_double(deviations[k]) << '\n';
    report.files.push_back(path);

    const double slack = cfg.tolerances.at("uniform_slack");
    for (std::size_t k = 0; k + 1 < deviations.size(); ++k) {
        bool pass = deviations[k + 1] <= deviations[k] + slack;
        add_check(report, "nonincreasing_" + std::to_string(cfg.pairs[k]) + "_to_" +
                              std::to_string(cfg.pairs[k + 1]),
                  deviations[k + 1], deviations[k] + slack, pass);
    }
    return report;
}

RunReport run_continuity(const RunConfig& cfg) {
    RunReport report;
    add_meta(report, cfg);

    std::vector<ModulusPoint> modulus;
    if (cfg.cube) {
        auto series = compute_series(cfg);
        std::vector<cplx> finals(series.size());
        for (std::size_t p = 0; p < series.size(); ++p) finals[p] = series[p].entries.back().value;
        std::vector<std::vector<double>> coords(cfg.points.size());
        for (std::size_t p = 0; p < cfg.points.size(); ++p)
            coords[p] = point_coords(cfg.points[p]);
        modulus = continuity_modulus(coords, finals, cfg.threads);
    } else {
        auto field = ww_limit_field(cfg.system, *cfg.f0, *cfg.weight, cfg.points, cfg.schedule,
                                    cfg.threads);
        modulus = field.modulus;
    }
    write_modulus_csv(cfg.output_prefix + "_modulus.csv", modulus, report);

    // optional Lipschitz gate: omega(delta) <= lipschitz * delta + 2 * estimate
    auto lip = cfg.tolerances.find("lipschitz");
    if (lip != cfg.tolerances.end()) {
        auto est = cfg.tolerances.find("estimate");
        const double est_tol = est == cfg.tolerances.end() ? 0.0 : est->second;
        for (const auto& m : modulus) {
            double bound = lip->second * m.delta + 2.0 * est_tol;
            add_check(report, "lipschitz_delta_" + format_double(m.delta), m.omega, bound,
                      m.omega <= bound);
        }
    }
    return report;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RunReport run(const RunConfig& cfg) {
    RunReport report;
    switch (cfg.command) {
        case Command::Cubic: report = run_cubic(cfg); break;
        case Command::Dual: report = run_dual(cfg); break;
        case Command::Ww: report = run_ww(cfg); break;
        case Command::Verify: report = run_verify(cfg); break;
        case Command::Uniform: report = run_uniform(cfg); break;
        case Command::Continuity: report = run_continuity(cfg); break;
    }
    write_summary(report, cfg);
    return report;
}

}  // namespace cubeavg
