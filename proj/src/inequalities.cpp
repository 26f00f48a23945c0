#include "zonolab/inequalities.hpp"

#include "zonolab/functionals.hpp"
#include "zonolab/io.hpp"
#include "zonolab/parallel.hpp"
#include "zonolab/radii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zonolab {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAbsFloor = 1e-12;

double verdict_tol(double lhs, double rhs) {
    return std::max(kRelTol * std::max(std::abs(lhs), std::abs(rhs)), kAbsFloor);
}

// slack oriented: claim satisfied iff slack >= -tol
InequalityVerdict make_verdict(double lhs, double rhs, double oriented_slack,
                               const std::string& digest) {
    InequalityVerdict v;
    v.lhs = lhs;
    v.rhs = rhs;
    v.slack = oriented_slack;
    v.tol = verdict_tol(lhs, rhs);
    v.holds = oriented_slack >= -v.tol;
    v.equality_within_tol = std::abs(lhs - rhs) <= v.tol;
    v.input_digest = digest;
    return v;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<double> maclaurin_chain(const std::vector<double>& values) {
    const int m = static_cast<int>(values.size());
    if (m < 1) throw DimensionError("maclaurin_chain: need at least one value");
    for (double x : values)
        if (!(x > 0.0)) throw DimensionError("maclaurin_chain: values must be positive");
    std::vector<double> e = elementary_symmetric_all(values);
    std::vector<double> chain;
    for (int k = 1; k <= m; ++k)
        chain.push_back(std::pow(e[k] / binomial(m, k), 1.0 / k));
    return chain;
}

NonnegMaclaurinChain maclaurin_chain_nonneg(const std::vector<double>& values) {
    const int m = static_cast<int>(values.size());
    if (m < 1) throw DimensionError("maclaurin_chain_nonneg: need at least one value");
    double vmax = 0.0;
    for (double x : values) {
        if (x < 0.0) throw DimensionError("maclaurin_chain_nonneg: values must be nonnegative");
        vmax = std::max(vmax, x);
    }
    std::vector<double> e = elementary_symmetric_all(values);
    NonnegMaclaurinChain out;
    for (int k = 1; k <= m; ++k) {
        double sk = e[k] / binomial(m, k);
        out.chain.push_back(sk > 0.0 ? std::pow(sk, 1.0 / k) : 0.0);
    }

    const double zero_tol = 1e-12 * std::max(vmax, 1.0);
    int zeros = 0;
    bool all_equal = true;
    for (double x : values) {
        if (x <= zero_tol) ++zeros;
        if (std::abs(x - values[0]) > kRelTol * std::max(vmax, kAbsFloor)) all_equal = false;
    }
    for (int k = 1; k < m; ++k) {
        double a = out.chain[k - 1], b = out.chain[k];
        bool equal = std::abs(a - b) <= verdict_tol(a, b);
        if (!equal)
            out.steps.push_back(EqualityBranch::strict);
        else if (all_equal)
            out.steps.push_back(EqualityBranch::all_equal);
        else if (zeros >= m - k + 1)
            out.steps.push_back(EqualityBranch::zeros);
        else
            out.steps.push_back(EqualityBranch::strict);  // numerically close, no certified branch
    }
    return out;
}

InequalityVerdict vector_maclaurin(const GeneratorSet& gs, int k, double p) {
    check_valid(gs);
    const int n = gs.size();
    const int d = gs.dim;
    if (k < 2 || k > d || d > n)
        throw DimensionError("vector_maclaurin: need 2 <= k <= d <= n");
    if (!(p > 0.0)) throw DimensionError("vector_maclaurin: p must be positive (or infinity)");

    double lhs, rhs;
    if (std::isinf(p)) {
        lhs = std::pow(max_wedge(gs, k), 1.0 / k);
        rhs = std::pow(max_wedge(gs, k - 1), 1.0 / (k - 1));
    } else {
        double vk = power_k_volume(gs, k, p).value;
        double vk1 = power_k_volume(gs, k - 1, p).value;
        lhs = vk > 0.0 ? std::pow(vk / binomial(n, k), 1.0 / (p * k)) : 0.0;
        rhs = vk1 > 0.0 ? std::pow(vk1 / binomial(n, k - 1), 1.0 / (p * (k - 1))) : 0.0;
    }
    return make_verdict(lhs, rhs, rhs - lhs, generator_set_digest(gs));
}

InequalityVerdict power2_maclaurin(const GeneratorSet& gs, int k) {
    check_valid(gs);
    const int n = gs.size();
    const int d = gs.dim;
    if (k < 1 || k >= d) throw DimensionError("power2_maclaurin: need 1 <= k < d");

    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) g(i, j) = g(j, i) = gs.generators[i].dot(gs.generators[j]);
    std::vector<double> e = char_poly_symmetric_sums(g);
    auto coeff = [&](int kk) {
        if (kk > n) return 0.0;
        return std::max(e[kk - 1], 0.0);
    };
    double vk = coeff(k);
    double vk1 = coeff(k + 1);
    double hi = vk > 0.0 ? std::pow(vk / binomial(n, k), 1.0 / k) : 0.0;
    double lo = vk1 > 0.0 ? std::pow(vk1 / binomial(n, k + 1), 1.0 / (k + 1)) : 0.0;
    // lhs >= rhs claimed: lhs is the k-th normalized mean
    return make_verdict(hi, lo, hi - lo, generator_set_digest(gs));
}

double simplex_face_power_sum(const Simplex& s, int k, double m) {
    const int d = s.dim();
    if (static_cast<int>(s.vertices.size()) != d + 1)
        throw DimensionError("simplex: expected d+1 vertices in R^d");
    if (k < 1 || k > d - 1) throw DimensionError("simplex_face_power_sum: need 1 <= k <= d-1");
    KahanSum total;
    RevolvingDoor it(d + 1, k + 1);
    do {
        const std::vector<int>& f = it.current();
        std::vector<Vec> edges;
        for (int j = 1; j <= k; ++j) edges.push_back(s.vertices[f[j]] - s.vertices[f[0]]);
        double vol = wedge_norm(edges) / factorial(k);
        total.add(std::pow(vol, m));
    } while (it.next());
    return total.value();
}

double simplex_cone_sum(const Simplex& s, int k) {
    const int d = s.dim();
    if (static_cast<int>(s.vertices.size()) != d + 1)
        throw DimensionError("simplex: expected d+1 vertices in R^d");
    if (k < 1 || k > d - 1) throw DimensionError("simplex_cone_sum: need 1 <= k <= d-1");
    KahanSum total;
    RevolvingDoor it(d + 1, k);
    do {
        std::vector<Vec> rays;
        double scale = 1.0;
        for (int i : it.current()) {
            rays.push_back(s.vertices[i]);
            scale *= s.vertices[i].norm();
        }
        double w = (scale == 0.0) ? 0.0 : wedge_norm(rays);
        total.add(w / factorial(k));
    } while (it.next());
    return total.value();
}

double simplex_sign_span(const Simplex& s) {
    const int d = s.dim();
    if (static_cast<int>(s.vertices.size()) != d + 1)
        throw DimensionError("simplex: expected d+1 vertices in R^d");
    // direct binary enumeration, re-summed per candidate (kept independent of
    // the Gray-code circumradius kernel on purpose)
    const int m = d + 1;
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << (m - 1)); ++mask) {
        Vec v = s.vertices[0];
        for (int i = 1; i < m; ++i) {
            double eps = (mask >> (i - 1)) & 1 ? -1.0 : 1.0;
            v += eps * s.vertices[i];
        }
        best = std::max(best, v.norm());
    }
    return best;
}

GeneratorSet sample_rhombic_dodecahedron(int d, CounterRng& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Vec> pts;
        for (int i = 0; i <= d; ++i) pts.push_back(rng.gaussian_vec(d));
        // o in conv{p_i} iff the barycentric system has a nonnegative solution
        Mat a(d + 1, d + 1);
        Vec b = Vec::Zero(d + 1);
        for (int j = 0; j <= d; ++j) {
            for (int i = 0; i < d; ++i) a(i, j) = pts[j](i);
            a(d, j) = 1.0;
        }
        b(d) = 1.0;
        Eigen::FullPivLU<Mat> lu(a);
        if (!lu.isInvertible()) continue;
        Vec lambda = lu.solve(b);
        if ((lambda.array() >= 1e-9).all()) {
            GeneratorSet gs;
            gs.dim = d;
            gs.generators = pts;
            return gs;
        }
    }
    throw NumericError("sample_rhombic_dodecahedron: rejection sampling did not terminate");
}

namespace {

GeneratorSet sample_parallelotope(int d, CounterRng& rng) {
    GeneratorSet gs;
    gs.dim = d;
    for (int i = 0; i < d; ++i) gs.generators.push_back(rng.gaussian_vec(d));
    return gs;
}

void scale_generators(GeneratorSet& gs, double factor) {
    for (Vec& p : gs.generators) p *= factor;
}

double total_length(const GeneratorSet& gs) {
    double s = 0.0;
    for (const Vec& p : gs.generators) s += p.norm();
    return s;
}

struct SuiteContext {
    TheoremSuite suite;
    int d;
    GeneratorSet ref_cube, ref_rd;
    double rd_volume, rd_total_length, rd_ir, rd_cirr, cube_ir, cube_cirr;
    std::vector<double> rd_intrinsic, cube_intrinsic;
};

SuiteContext make_context(TheoremSuite suite, int d) {
    SuiteContext ctx;
    ctx.suite = suite;
    ctx.d = d;
    ctx.ref_cube = make_cube(d, 1.0);
    ctx.ref_rd = make_regular_rhombic_dodecahedron(d, 1.0);
    ctx.rd_volume = intrinsic_volume(ctx.ref_rd, d);
    ctx.rd_total_length = total_length(ctx.ref_rd);
    ctx.rd_ir = inradius(ctx.ref_rd).value;
    ctx.rd_cirr = circumradius(ctx.ref_rd).value;
    ctx.cube_ir = 0.5;
    ctx.cube_cirr = 0.5 * std::sqrt(static_cast<double>(d));
    for (int k = 0; k <= d; ++k) {
        ctx.rd_intrinsic.push_back(intrinsic_volume(ctx.ref_rd, k));
        ctx.cube_intrinsic.push_back(intrinsic_volume(ctx.ref_cube, k));
    }
    return ctx;
}

// Per-trial verdicts for one suite. Verdict order within a trial is fixed.
std::vector<InequalityVerdict> run_trial(const SuiteContext& ctx, std::uint64_t seed,
                                         int trial) {
    CounterRng rng(seed, static_cast<std::uint64_t>(trial) + 1);
    const int d = ctx.d;
    std::vector<InequalityVerdict> out;

    auto volume_normalized = [&](GeneratorSet gs, double target_vol) {
        for (int attempt = 0;; ++attempt) {
            double vol = intrinsic_volume(gs, d);
            if (vol > 1e-12) {
                scale_generators(gs, std::pow(target_vol / vol, 1.0 / d));
                return gs;
            }
            if (attempt > 1000) throw NumericError("suite: degenerate volume normalization");
            gs = (gs.size() == d) ? sample_parallelotope(d, rng)
                                  : sample_rhombic_dodecahedron(d, rng);
        }
    };

    switch (ctx.suite) {
        case TheoremSuite::thm3: {
            // fixed volume: V_k and cirr are at least the regular body's
            GeneratorSet zp = volume_normalized(sample_parallelotope(d, rng), 1.0);
            for (int k = 1; k < d; ++k)
                out.push_back(make_verdict(intrinsic_volume(zp, k), ctx.cube_intrinsic[k],
                                           intrinsic_volume(zp, k) - ctx.cube_intrinsic[k],
                                           generator_set_digest(zp)));
            out.push_back(make_verdict(circumradius(zp).value, ctx.cube_cirr,
                                       circumradius(zp).value - ctx.cube_cirr,
                                       generator_set_digest(zp)));
            GeneratorSet zr = volume_normalized(sample_rhombic_dodecahedron(d, rng), ctx.rd_volume);
            for (int k = 1; k < d; ++k)
                out.push_back(make_verdict(intrinsic_volume(zr, k), ctx.rd_intrinsic[k],
                                           intrinsic_volume(zr, k) - ctx.rd_intrinsic[k],
                                           generator_set_digest(zr)));
            out.push_back(make_verdict(circumradius(zr).value, ctx.rd_cirr,
                                       circumradius(zr).value - ctx.rd_cirr,
                                       generator_set_digest(zr)));
            break;
        }
        case TheoremSuite::thm4: {
            GeneratorSet z = sample_parallelotope(d, rng);
            scale_generators(z, static_cast<double>(d) / total_length(z));
            double c = circumradius(z).value;
            out.push_back(make_verdict(c, ctx.cube_cirr, c - ctx.cube_cirr,
                                       generator_set_digest(z)));
            break;
        }
        case TheoremSuite::thm5_centered: {
            GeneratorSet z = sample_rhombic_dodecahedron(d, rng);
            Vec mean = Vec::Zero(d);
            for (const Vec& p : z.generators) mean += p;
            mean /= static_cast<double>(z.size());
            for (Vec& p : z.generators) p -= mean;
            scale_generators(z, ctx.rd_total_length / total_length(z));
            double c = circumradius(z).value;
            out.push_back(make_verdict(c, ctx.rd_cirr, c - ctx.rd_cirr,
                                       generator_set_digest(z)));
            break;
        }
        case TheoremSuite::prop2: {
            GeneratorSet z = sample_parallelotope(d, rng);
            scale_generators(z, static_cast<double>(d) / total_length(z));
            double v2 = intrinsic_volume(z, 2);
            out.push_back(make_verdict(v2, ctx.cube_intrinsic[2], ctx.cube_intrinsic[2] - v2,
                                       generator_set_digest(z)));
            break;
        }
        case TheoremSuite::cor2: {
            GeneratorSet zp = sample_parallelotope(d, rng);
            while (!full_dimensional(zp)) zp = sample_parallelotope(d, rng);
            scale_generators(zp, ctx.cube_ir / inradius(zp).value);
            double cp = circumradius(zp).value;
            out.push_back(make_verdict(cp, ctx.cube_cirr, cp - ctx.cube_cirr,
                                       generator_set_digest(zp)));
            GeneratorSet zr = sample_rhombic_dodecahedron(d, rng);
            scale_generators(zr, ctx.rd_ir / inradius(zr).value);
            double cr = circumradius(zr).value;
            out.push_back(make_verdict(cr, ctx.rd_cirr, cr - ctx.rd_cirr,
                                       generator_set_digest(zr)));
            break;
        }
        case TheoremSuite::thm6: {
            GeneratorSet z = sample_rhombic_dodecahedron(d, rng);
            for (Vec& p : z.generators) p /= p.norm();
            double v2 = intrinsic_volume(z, 2);
            double reg = 0.5 * (d + 1) * std::sqrt(static_cast<double>(d) * d - 1.0);
            out.push_back(make_verdict(v2, reg, reg - v2, generator_set_digest(z)));
            break;
        }
    }
    return out;
}

}  // namespace

TheoremSuite suite_from_name(const std::string& name) {
    if (name == "thm3") return TheoremSuite::thm3;
    if (name == "thm4") return TheoremSuite::thm4;
    if (name == "thm5-centered") return TheoremSuite::thm5_centered;
    if (name == "prop2") return TheoremSuite::prop2;
    if (name == "cor2") return TheoremSuite::cor2;
    if (name == "thm6") return TheoremSuite::thm6;
    throw ConfigError("unknown theorem suite: " + name);
}

std::vector<std::string> suite_names() {
    return {"thm3", "thm4", "thm5-centered", "prop2", "cor2", "thm6"};
}

SuiteResult verify_theorem_suite(TheoremSuite suite, int trials, std::uint64_t seed, int d,
                                 int workers) {
    if (trials < 1) throw ConfigError("verify_theorem_suite: trials must be >= 1");
    if (d < 2) throw ConfigError("verify_theorem_suite: d must be >= 2");
    SuiteContext ctx = make_context(suite, d);

    std::vector<std::vector<InequalityVerdict>> per_trial(trials);
    parallel_for_indexed(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        per_trial[t] = run_trial(ctx, seed, static_cast<int>(t));
    });

    SuiteResult res;
    res.suite = suite_names()[static_cast<int>(suite)];
    res.seed = seed;
    res.min_slack = std::numeric_limits<double>::infinity();
    for (auto& trial : per_trial) {
        for (auto& v : trial) {
            if (!v.holds) ++res.violations;
            if (v.slack < res.min_slack) {
                res.min_slack = v.slack;
                res.argmin_digest = v.input_digest;
            }
            res.verdicts.push_back(std::move(v));
        }
    }
    if (suite == TheoremSuite::thm6)
        res.note =
            "direction asserted: V_2(unit-edge rhombic dodecahedron) <= regular value "
            "(the extremal body is the maximizer in this class)";
    return res;
}

}  // namespace zonolab
