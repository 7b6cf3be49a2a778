#include "cubeavg/averaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cubeavg/fft.hpp"
#include "cubeavg/parallel.hpp"

namespace cubeavg {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_kernel_inputs(const VertexSequences& seqs, int ell, std::size_t N, int max_ell,
                         const char* ctx) {
    require(ell >= 2 && ell <= max_ell,
            std::string(ctx) + ": order ell=" + std::to_string(ell) + " outside [2, " +
                std::to_string(max_ell) + "]");
    require(N >= 1, std::string(ctx) + ": N must be >= 1");
    const std::size_t vertex_count = (std::size_t{1} << ell) - 1;
    require(seqs.size() == vertex_count,
            std::string(ctx) + ": expected " + std::to_string(vertex_count) +
                " vertex sequences, got " + std::to_string(seqs.size()));
    const std::size_t need = required_length(ell, N);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        require(seqs[v].size() >= need,
                std::string(ctx) + ": sequence for vertex " + std::to_string(v + 1) +
                    " has length " + std::to_string(seqs[v].size()) + ", requires at least " +
                    std::to_string(need));
    }
}

// One level of the direct enumeration: loop n_j, accumulate pairwise.
cplx naive_level(const VertexSequences& seqs, int ell, std::size_t N, int j,
                 std::array<std::size_t, 16>& idx, std::vector<std::vector<cplx>>& bufs) {
    const unsigned vertex_count = (1u << ell) - 1;
    std::vector<cplx>& buf = bufs[static_cast<std::size_t>(j - 1)];
    buf.resize(N);
    const unsigned bit = 1u << (j - 1);
    for (std::size_t n = 0; n < N; ++n) {
        std::array<std::size_t, 16> next = idx;
        for (unsigned v = 1; v <= vertex_count; ++v)
            if (v & bit) next[v] += n;
        if (j == ell) {
            cplx prod{1.0, 0.0};
            for (unsigned v = 1; v <= vertex_count; ++v) prod *= seqs[v - 1][next[v]];
            buf[n] = prod;
        } else {
            buf[n] = naive_level(seqs, ell, N, j + 1, next, bufs);
        }
    }
    return pairwise_sum(buf);
}

cplx fast_order2(const VertexSequences& seqs, std::size_t N) {
    std::span<const cplx> s10(seqs[0].data(), N);
    std::span<const cplx> s01(seqs[1].data(), N);
    const std::vector<cplx>& s11 = seqs[2];
    auto conv = linear_convolution(s10, s01);
    std::vector<cplx> prods(conv.size());
    for (std::size_t m = 0; m < conv.size(); ++m) prods[m] = s11[m] * conv[m];
    double n = static_cast<double>(N);
    return pairwise_sum(prods) / (n * n);
}

cplx fast_order3(const VertexSequences& seqs, std::size_t N) {
    const std::vector<cplx>& s100 = seqs[0];
    const std::vector<cplx>& s010 = seqs[1];
    const std::vector<cplx>& s110 = seqs[2];
    const std::vector<cplx>& s001 = seqs[3];
    const std::vector<cplx>& s101 = seqs[4];
    const std::vector<cplx>& s011 = seqs[5];
    const std::vector<cplx>& s111 = seqs[6];

    std::vector<cplx> u(N), v(N), w(2 * N - 1), row(N);
    for (std::size_t n1 = 0; n1 < N; ++n1) {
        for (std::size_t n2 = 0; n2 < N; ++n2) u[n2] = s010[n2] * s110[n1 + n2];
        for (std::size_t n3 = 0; n3 < N; ++n3) v[n3] = s001[n3] * s101[n1 + n3];
        auto conv = linear_convolution(u, v);
        for (std::size_t m = 0; m < 2 * N - 1; ++m) w[m] = s011[m] * s111[n1 + m] * conv[m];
        row[n1] = s100[n1] * pairwise_sum(w);
    }
    double n = static_cast<double>(N);
    return pairwise_sum(row) / (n * n * n);
}

}  // namespace

VertexIndex VertexIndex::make(int ell, unsigned bits) {
    if (ell < 1 || ell > 16) throw std::invalid_argument("VertexIndex: order out of range");
    if (bits == 0 || bits >= (1u << ell))
        throw std::invalid_argument("VertexIndex: bits must lie in [1, 2^ell - 1]");
    return {ell, bits};
}

std::string vertex_label(VertexIndex v) {
    std::string key(static_cast<std::size_t>(v.ell), '0');
    for (int j = 1; j <= v.ell; ++j)
        if (v.contains(j)) key[static_cast<std::size_t>(j - 1)] = '1';
    return key;
}

CubeSpec::CubeSpec(int ell_, std::vector<Observable> vertices_)
    : ell(ell_), vertices(std::move(vertices_)) {
    require(ell >= 2 && ell <= 4, "CubeSpec: order must lie in [2, 4]");
    const std::size_t expected = (std::size_t{1} << ell) - 1;
    require(vertices.size() == expected,
            "CubeSpec: order " + std::to_string(ell) + " needs " + std::to_string(expected) +
                " vertex observables, got " + std::to_string(vertices.size()));
}

double CubeSpec::sup_bound_product() const {
    double prod = 1.0;
    for (const auto& obs : vertices) prod *= obs.sup_bound();
    return prod;
}

std::size_t required_length(int ell, std::size_t N) {
    return static_cast<std::size_t>(ell) * (N - 1) + 1;
}

cplx cubic_average_naive(const VertexSequences& seqs, int ell, std::size_t N) {
    check_kernel_inputs(seqs, ell, N, 4, "cubic_average_naive");
    std::array<std::size_t, 16> idx{};
    std::vector<std::vector<cplx>> bufs(static_cast<std::size_t>(ell));
    cplx total = naive_level(seqs, ell, N, 1, idx, bufs);
    return total / std::pow(static_cast<double>(N), ell);
}

cplx cubic_average_fast(const VertexSequences& seqs, int ell, std::size_t N) {
    if (ell != 2 && ell != 3)
        throw std::domain_error("cubic_average_fast: order " + std::to_string(ell) +
                                " has no fast kernel, fallback to naive required");
    check_kernel_inputs(seqs, ell, N, 3, "cubic_average_fast");
    return (ell == 2) ? fast_order2(seqs, N) : fast_order3(seqs, N);
}

SampleSeries dual_series(const SystemDescriptor& system, const CubeSpec& cube,
                         const PhasePoint& start, const std::vector<std::size_t>& schedule) {
    require(!schedule.empty(), "dual_series: empty schedule");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        require(schedule[k] > schedule[k - 1], "dual_series: schedule must be strictly increasing");
    for (const auto& obs : cube.vertices) require_valid_for(obs, system, "dual_series");

    const std::size_t L = required_length(cube.ell, schedule.back());
    VertexSequences seqs;
    seqs.reserve(cube.vertices.size());
    for (const auto& obs : cube.vertices) seqs.push_back(sample_sequence(system, obs, start, L));

    SampleSeries series;
    series.entries.reserve(schedule.size());
    const bool fast = (cube.ell == 2 || cube.ell == 3);
    for (std::size_t N : schedule) {
        cplx value = fast ? cubic_average_fast(seqs, cube.ell, N)
                          : cubic_average_naive(seqs, cube.ell, N);
        series.entries.push_back({N, value});
    }
    return series;
}

ConvergenceReport convergence_report(const SampleSeries& series, double tol) {
    require(series.entries.size() >= 3, "convergence_report: need at least 3 entries");
    require(tol > 0.0, "convergence_report: tolerance must be positive");
    ConvergenceReport report;
    report.deltas.reserve(series.entries.size() - 1);
    for (std::size_t k = 0; k + 1 < series.entries.size(); ++k)
        report.deltas.push_back(
            std::abs(series.entries[k + 1].value - series.entries[k].value));
    report.limit_estimate = series.entries.back().value;
    report.converged = report.deltas.back() < tol;
    return report;
}

std::vector<double> uniform_deviation(const SystemDescriptor& system, const CubeSpec& cube,
                                      const std::vector<PhasePoint>& grid,
                                      const std::vector<std::size_t>& doubling_pairs,
                                      int threads) {
    require(!grid.empty(), "uniform_deviation: empty grid");
    require(system.kind == SystemKind::Rotation || system.kind == SystemKind::Heisenberg,
            "uniform_deviation: only rotation and Heisenberg systems satisfy the uniform "
            "convergence hypotheses");
    require(!doubling_pairs.empty(), "uniform_deviation: no (N, 2N) pairs given");

    // schedule holding every N and 2N we need, in increasing order
    std::vector<std::size_t> ns;
    for (std::size_t N : doubling_pairs) {
        ns.push_back(N);
        ns.push_back(2 * N);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::vector<std::vector<cplx>> per_point(grid.size());
    parallel_for_index(grid.size(), threads, [&](std::size_t i) {
        SampleSeries s = dual_series(system, cube, grid[i], ns);
        std::vector<cplx> vals(s.entries.size());
        for (std::size_t k = 0; k < s.entries.size(); ++k) vals[k] = s.entries[k].value;
        per_point[i] = std::move(vals);
    });

    auto index_of = [&](std::size_t N) {
        return static_cast<std::size_t>(std::lower_bound(ns.begin(), ns.end(), N) - ns.begin());
    };
    std::vector<double> deviations;
    deviations.reserve(doubling_pairs.size());
    for (std::size_t N : doubling_pairs) {
        std::size_t iN = index_of(N), i2N = index_of(2 * N);
        double sup = 0.0;
        for (const auto& vals : per_point)
            sup = std::max(sup, std::abs(vals[i2N] - vals[iN]));
        deviations.push_back(sup);
    }
    return deviations;
}

std::vector<double> point_coords(const PhasePoint& p) {
    if (const auto* t = std::get_if<TorusPoint>(&p)) return t->coords;
    const auto& n = std::get<NilPoint>(p);
    return {n.x, n.y, n.z};
}

double circle_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = std::abs(a[i] - b[i]);
        d = std::max(d, std::min(diff, 1.0 - diff));
    }
    return d;
}

std::vector<ModulusPoint> continuity_modulus(const std::vector<std::vector<double>>& points,
                                             const std::vector<cplx>& values, int threads) {
    require(points.size() == values.size(),
            "continuity_modulus: points and values length mismatch");
    require(points.size() >= 2, "continuity_modulus: need at least 2 points");
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        require(p.size() == dim, "continuity_modulus: inconsistent point dimensions");

    constexpr int kLadder = 6;  // delta = 2^-2 .. 2^-7
    std::array<double, kLadder> deltas{};
    for (int k = 0; k < kLadder; ++k) deltas[static_cast<std::size_t>(k)] = std::ldexp(1.0, -(k + 2));

    const std::size_t P = points.size();
    int workers = std::max(1, threads);
    std::vector<std::array<double, kLadder>> sq_max(
        static_cast<std::size_t>(workers), std::array<double, kLadder>{});

    parallel_for_index(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
        auto& local = sq_max[w];
        for (std::size_t i = w; i < P; i += static_cast<std::size_t>(workers)) {
            for (std::size_t j = i + 1; j < P; ++j) {
                double d = circle_distance(points[i], points[j]);
                if (d > deltas[0]) continue;
                // smallest ladder delta that still contains this pair
                int bucket = 0;
                while (bucket + 1 < kLadder && d <= deltas[static_cast<std::size_t>(bucket + 1)])
                    ++bucket;
                double sq = std::norm(values[i] - values[j]);
                auto& slot = local[static_cast<std::size_t>(bucket)];
                slot = std::max(slot, sq);
            }
        }
    });

    std::array<double, kLadder> merged{};
    for (const auto& local : sq_max)
        for (int k = 0; k < kLadder; ++k)
            merged[static_cast<std::size_t>(k)] =
                std::max(merged[static_cast<std::size_t>(k)], local[static_cast<std::size_t>(k)]);

    // omega(delta_k) = max over all buckets with delta <= delta_k
    std::vector<ModulusPoint> out(kLadder);
    double running = 0.0;
    for (int k = kLadder - 1; k >= 0; --k) {
        running = std::max(running, merged[static_cast<std::size_t>(k)]);
        out[static_cast<std::size_t>(k)] = {deltas[static_cast<std::size_t>(k)],
                                            std::sqrt(running)};
    }
    return out;
}

}  // namespace cubeavg
