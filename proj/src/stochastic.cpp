#include "zonolab/stochastic.hpp"

#include "zonolab/functionals.hpp"
#include "zonolab/io.hpp"
#include "zonolab/parallel.hpp"
#include "zonolab/radii.hpp"
#include "zonolab/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace zonolab {

namespace {

constexpr long kBatch = 1024;

struct BatchMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
    long count = 0;
};

// f(rng) -> one sample; batches are assigned to substreams by index and the
// moments are combined in batch order, so the estimate is invariant to the
// worker count.
template <typename F>
MCEstimate run_mc(long samples, std::uint64_t seed, int workers, F&& sample_fn) {
    if (samples < 1) throw ConfigError("monte carlo: samples must be >= 1");
    const long batches = (samples + kBatch - 1) / kBatch;
    std::vector<BatchMoments> parts(batches);
    parallel_for_indexed(static_cast<std::size_t>(batches), workers, [&](std::size_t b) {
        CounterRng rng(seed, b);
        long count = std::min(kBatch, samples - static_cast<long>(b) * kBatch);
        BatchMoments m;
        for (long i = 0; i < count; ++i) {
            double x = sample_fn(rng);
            m.sum += x;
            m.sum_sq += x * x;
            ++m.count;
        }
        parts[b] = m;
    });

    double sum = 0.0, sum_sq = 0.0;
    for (const BatchMoments& m : parts) {
        sum += m.sum;
        sum_sq += m.sum_sq;
    }
    MCEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.rng_version = kRngVersion;
    est.mean = sum / static_cast<double>(samples);
    double var = (samples > 1)
                     ? std::max(0.0, (sum_sq - samples * est.mean * est.mean) /
                                         static_cast<double>(samples - 1))
                     : 0.0;
    est.std_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

}  // namespace

double expected_random_wedge_closed_form(int d) {
    double od = sphere_surface_area(d);
    double od1 = sphere_surface_area(d + 1);
    return 2.0 * std::pow(od1, d - 1) / std::pow(od, d);
}

MCEstimate expected_random_wedge(int d, long samples, std::uint64_t seed, int workers) {
    if (d < 2) throw DimensionError("expected_random_wedge: d must be >= 2");
    if (samples < 1000) throw ConfigError("expected_random_wedge: samples must be >= 1000");
    MCEstimate est = run_mc(samples, seed, workers, [d](CounterRng& rng) {
        Mat m(d, d);
        for (int j = 0; j < d; ++j) m.col(j) = rng.unit_vec(d);
        return std::abs(m.determinant());
    });
    est.reference = expected_random_wedge_closed_form(d);
    est.reference_label = "2*omega_{d+1}^{d-1}/omega_d^d";
    return est;
}

MCEstimate expected_volume_random_zonotope(int n, int d, long samples, std::uint64_t seed,
                                           int workers) {
    if (d < 2 || n < d) throw DimensionError("expected_volume_random_zonotope: need n >= d >= 2");
    MCEstimate est = run_mc(samples, seed, workers, [n, d](CounterRng& rng) {
        GeneratorSet gs;
        gs.dim = d;
        for (int i = 0; i < n; ++i) gs.generators.push_back(rng.unit_vec(d));
        return intrinsic_volume(gs, d);
    });
    est.reference = binomial(n, d) * expected_random_wedge_closed_form(d);
    est.reference_label = "binom(n,d)*wedge-expectation";
    return est;
}

MCEstimate cauchy_surface_integral(const GeneratorSet& gs, long samples, std::uint64_t seed,
                                   int workers) {
    check_valid(gs);
    if (gs.dim < 2) throw DimensionError("cauchy_surface_integral: need d >= 2");
    if (!full_dimensional(gs)) throw DegenerateInput("cauchy_surface_integral: degenerate zonotope");
    const int d = gs.dim;
    const double scale = sphere_surface_area(d) / unit_ball_volume(d - 1);
    MCEstimate est = run_mc(samples, seed, workers, [&gs, d, scale](CounterRng& rng) {
        Vec u = rng.unit_vec(d);
        return scale * intrinsic_volume(project(gs, u), d - 1);
    });
    est.reference = surface_area(gs);
    est.reference_label = "surf=2*V_{d-1}";
    return est;
}

MCEstimate kubota_intrinsic_integral(const GeneratorSet& gs, int i, int k, long samples,
                                     std::uint64_t seed, int workers) {
    check_valid(gs);
    const int d = gs.dim;
    if (i < 1 || i > k || k > d - 1)
        throw DimensionError("kubota_intrinsic_integral: need 1 <= i <= k <= d-1");
    const double scale = binomial(d, i) * unit_ball_volume(k - i) * unit_ball_volume(d) /
                         (binomial(k, i) * unit_ball_volume(d - i) * unit_ball_volume(k));
    MCEstimate est = run_mc(samples, seed, workers, [&gs, d, i, k, scale](CounterRng& rng) {
        Mat frame(d, k);
        for (int j = 0; j < k; ++j) frame.col(j) = rng.gaussian_vec(d);
        Eigen::HouseholderQR<Mat> qr(frame);
        Mat q = qr.householderQ() * Mat::Identity(d, k);
        GeneratorSet proj;
        proj.dim = k;
        for (const Vec& p : gs.generators) proj.generators.push_back(q.transpose() * p);
        return scale * intrinsic_volume(proj, i);
    });
    est.reference = intrinsic_volume(gs, i);
    est.reference_label = "V_i";
    return est;
}

double distance_to_centered_zonotope(const GeneratorSet& gs, const Vec& x) {
    check_valid(gs);
    const int n = gs.size();
    const int d = gs.dim;
    if (static_cast<int>(x.size()) != d)
        throw DimensionError("distance_to_centered_zonotope: point dimension mismatch");

    // minimize |x - sum c_i p_i| over c in [-1/2, 1/2]^n, cyclic coordinate
    // descent; each 1-d step has the closed-form clamped solution.
    std::vector<double> norm2(n);
    Vec r = x;
    std::vector<double> c(n, 0.0);
    for (int i = 0; i < n; ++i) norm2[i] = gs.generators[i].squaredNorm();

    const int max_sweeps = 10 * n * d;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double update_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            if (norm2[i] <= 0.0) continue;
            double ci = c[i] + gs.generators[i].dot(r) / norm2[i];
            ci = std::clamp(ci, -0.5, 0.5);
            double delta = ci - c[i];
            if (delta != 0.0) {
                r -= delta * gs.generators[i];
                c[i] = ci;
            }
            update_sq += delta * delta;
        }
        if (std::sqrt(update_sq) < 1e-10) return r.norm();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SteinerMCResult steiner_mc_volume(const GeneratorSet& gs, double t, long samples,
                                  std::uint64_t seed, int workers) {
    check_valid(gs);
    if (t < 0.0) throw ConfigError("steiner_mc_volume: t must be >= 0");
    if (!full_dimensional(gs)) throw DegenerateInput("steiner_mc_volume: degenerate zonotope");
    const int d = gs.dim;
    if (d > 4) throw ConfigError("steiner_mc_volume: hit-or-miss limited to d <= 4");

    // bounding box of the centered body, per axis: (1/2) sum |p_i(j)| + t
    Vec half(d);
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (const Vec& p : gs.generators) s += std::abs(p(j));
        half(j) = 0.5 * s + t;
    }
    double box_vol = 1.0;
    for (int j = 0; j < d; ++j) box_vol *= 2.0 * half(j);

    std::atomic<long> failures{0};
    MCEstimate est = run_mc(samples, seed, workers, [&](CounterRng& rng) {
        for (;;) {
            Vec x(d);
            for (int j = 0; j < d; ++j) x(j) = (2.0 * rng.next_unit() - 1.0) * half(j);
            double dist = distance_to_centered_zonotope(gs, x);
            if (std::isnan(dist)) {  // non-convergent solve: log and resample
                failures.fetch_add(1);
                continue;
            }
            return dist <= t ? box_vol : 0.0;
        }
    });

    SteinerMCResult res;
    res.estimate = est;
    res.resampled_points = failures.load();
    try {
        res.estimate.reference = steiner_polynomial(gs).evaluate(t);
        res.estimate.reference_label = "steiner-polynomial";
    } catch (const BoundExceeded&) {
        // no exact target at this n; the estimate stands alone
    }
    return res;
}

GeneratorSet fibonacci_sphere_generators(int n) {
    if (n < 1) throw DimensionError("fibonacci_sphere_generators: n must be >= 1");
    GeneratorSet gs;
    gs.dim = 3;
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < n; ++k) {
        double z = 1.0 - (2.0 * k + 1.0) / static_cast<double>(n);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = 2.0 * M_PI * static_cast<double>(k) / golden;
        Vec p(3);
        p << r * std::cos(phi), r * std::sin(phi), z;
        gs.generators.push_back(p);
    }
    gs.label = "fibonacci_sphere(n=" + std::to_string(n) + ")";
    return gs;
}

ProbeFamily probe_family_from_name(const std::string& name) {
    if (name == "random-uniform") return ProbeFamily::random_uniform;
    if (name == "planar-regular") return ProbeFamily::planar_regular;
    if (name == "fibonacci-sphere") return ProbeFamily::fibonacci_sphere;
    throw ConfigError("unknown probe family: " + name +
                      " (expected random-uniform | planar-regular | fibonacci-sphere)");
}

namespace {

constexpr int kProbeExactCirr = 22;  // full sign enumeration up to here

struct CirrValue {
    double value;
    std::string method;
};

CirrValue probe_cirr(const GeneratorSet& gs) {
    if (gs.dim == 2) return {circumradius_planar(gs).value, "planar-sweep"};
    if (gs.size() <= kProbeExactCirr) return {circumradius(gs).value, "enumeration"};
    return {circumradius_numeric(gs), "numerical"};
}

}  // namespace

std::vector<ProbeRow> asymptotic_probe(ProbeFamily family, int d,
                                       const std::vector<int>& n_list, std::uint64_t seed) {
    if (family == ProbeFamily::planar_regular && d != 2)
        throw ConfigError("asymptotic_probe: planar-regular requires d = 2");
    if (family == ProbeFamily::fibonacci_sphere && d != 3)
        throw ConfigError("asymptotic_probe: fibonacci-sphere requires d = 3");
    if (d < 2) throw ConfigError("asymptotic_probe: d must be >= 2");

    std::vector<ProbeRow> rows;
    std::string fam_name = family == ProbeFamily::random_uniform  ? "random-uniform"
                           : family == ProbeFamily::planar_regular ? "planar-regular"
                                                                   : "fibonacci-sphere";
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const int n = n_list[ni];
        GeneratorSet gs;
        switch (family) {
            case ProbeFamily::random_uniform:
                gs = random_unit_generators(n, d, seed + ni);
                break;
            case ProbeFamily::planar_regular:
                gs = make_regular_zonogon(n, 1.0);
                break;
            case ProbeFamily::fibonacci_sphere:
                gs = fibonacci_sphere_generators(n);
                break;
        }
        if (!full_dimensional(gs)) continue;

        double ir = inradius(gs).value;
        CirrValue cr = probe_cirr(gs);

        auto push = [&](const std::string& quantity, double value, const std::string& method,
                        int i) {
            ProbeRow r;
            r.family = fam_name;
            r.n = n;
            r.quantity = quantity;
            r.value = value;
            r.method = method;
            double nn = static_cast<double>(n) * n;
            r.bound_ir = 4.0 * i / (5.0 * d * nn);
            r.bound_cirr = 2.0 * i / (5.0 * nn);
            r.bound_vol = M_PI * M_PI / (12.0 * nn);
            rows.push_back(r);
        };

        push("cirr/ir-1", cr.value / ir - 1.0, cr.method, 0);

        std::vector<int> ks = {1, 2};
        if (d - 1 > 2) ks.push_back(d - 1);
        if (d > 2) ks.push_back(d);
        for (int i : ks) {
            // V_i of the ir-normalized body vs the ball (gap >= 0)
            double vi = intrinsic_volume(gs, i, true) / std::pow(ir, i);
            push("V_" + std::to_string(i) + "/V_i(B)-1@ir=1",
                 vi / ball_intrinsic_volume(d, i) - 1.0, "enumeration", i);
            // cirr-normalized deficit (1 - ratio >= 0)
            double vi_c = intrinsic_volume(gs, i, true) / std::pow(cr.value, i);
            push("1-V_" + std::to_string(i) + "/V_i(B)@cirr=1",
                 1.0 - vi_c / ball_intrinsic_volume(d, i), cr.method, i);
        }
    }
    return rows;
}

std::string probe_csv_header() {
    return "family,n,quantity,value,method,bound_4i_5dn2,bound_2i_5n2,bound_pi2_12n2";
}

std::string probe_csv_row(const ProbeRow& r) {
    std::ostringstream ss;
    ss << r.family << ',' << r.n << ',' << r.quantity << ',' << format_double(r.value) << ','
       << r.method << ',' << format_double(r.bound_ir) << ',' << format_double(r.bound_cirr)
       << ',' << format_double(r.bound_vol);
    return ss.str();
}

}  // namespace zonolab
