#include "zonolab/functionals.hpp"

#include "zonolab/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zonolab {

double SteinerPolynomial::evaluate(double t) const {
    double v = 0.0, tp = 1.0;
    for (int j = 0; j <= d; ++j) {
        v += coeffs[j] * tp;
        tp *= t;
    }
    return v;
}

namespace {

constexpr int kSubsetN = 30;  // refusal threshold for k outside {1, 2, d}

void check_subset_budget(int n, int k, int d, bool allow_large) {
    if (allow_large || k == 1 || k == 2 || k == d) return;
    if (n > kSubsetN)
        throw BoundExceeded("subset enumeration refused: n = " + std::to_string(n) +
                                " > " + std::to_string(kSubsetN) + " would require C(n,k) = " +
                                format_double(binomial(n, k)) + " subsets (pass the override to force)",
                            binomial(n, k));
}

std::vector<Vec> nonzero_generators(const GeneratorSet& gs) {
    std::vector<Vec> v;
    for (int i : nonzero_indices(gs)) v.push_back(gs.generators[i]);
    return v;
}

// Sum of f(subset wedge) over k-subsets of the given generators, partitioned
// by leading index so the reduction tree is fixed.
template <typename F>
double subset_sum(const std::vector<Vec>& gens, int k, F&& term_of_wedge) {
    const int n = static_cast<int>(gens.size());
    if (k > n) return 0.0;
    if (k == 1) {
        KahanSum s;
        for (const Vec& p : gens) s.add(term_of_wedge(p.norm()));
        return s.value();
    }

    Mat gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) gram(i, j) = gram(j, i) = gens[i].dot(gens[j]);

    if (k == 2) {
        KahanSum total;
        for (int i = 0; i + 1 < n; ++i) {
            KahanSum part;
            for (int j = i + 1; j < n; ++j) {
                double w2 = gram(i, i) * gram(j, j) - gram(i, j) * gram(i, j);
                if (w2 < 0.0) w2 = 0.0;
                part.add(term_of_wedge(std::sqrt(w2)));
            }
            total.add(part.value());
        }
        return total.value();
    }

    KahanSum total;
    std::vector<int> idx(k);
    for (int lead = 0; lead + k <= n; ++lead) {
        KahanSum part;
        idx[0] = lead;
        RevolvingDoor it(n - lead - 1, k - 1);
        do {
            const std::vector<int>& rest = it.current();
            for (int j = 0; j < k - 1; ++j) idx[j + 1] = lead + 1 + rest[j];
            part.add(term_of_wedge(wedge_norm_from_gram(gram, idx)));
        } while (it.next());
        total.add(part.value());
    }
    return total.value();
}

}  // namespace

double intrinsic_volume(const GeneratorSet& gs, int k, bool allow_large) {
    check_valid(gs);
    if (k < 0 || k > gs.dim)
        throw DimensionError("intrinsic_volume: k out of range (0 <= k <= d)");
    if (k == 0) return 1.0;
    std::vector<Vec> gens = nonzero_generators(gs);
    check_subset_budget(static_cast<int>(gens.size()), k, gs.dim, allow_large);
    return subset_sum(gens, k, [](double w) { return w; });
}

SteinerPolynomial steiner_polynomial(const GeneratorSet& gs, bool allow_large) {
    check_valid(gs);
    SteinerPolynomial p;
    p.d = gs.dim;
    p.coeffs.assign(gs.dim + 1, 0.0);
    for (int i = 0; i <= gs.dim; ++i)
        p.coeffs[gs.dim - i] = unit_ball_volume(gs.dim - i) * intrinsic_volume(gs, i, allow_large);
    return p;
}

double mean_width(const GeneratorSet& gs) {
    check_valid(gs);
    const int d = gs.dim;
    KahanSum total;
    for (const Vec& p : gs.generators) total.add(p.norm());
    return 2.0 * unit_ball_volume(d - 1) / (d * unit_ball_volume(d)) * total.value();
}

PowerKVolume power_k_volume(const GeneratorSet& gs, int k, double alpha, bool allow_large) {
    check_valid(gs);
    if (k < 1 || k > gs.dim)
        throw DimensionError("power_k_volume: k out of range (1 <= k <= d)");
    if (!(alpha > 0.0)) throw DimensionError("power_k_volume: alpha must be positive");

    if (alpha == 2.0) {
        std::vector<Vec> gens = nonzero_generators(gs);
        const int m = static_cast<int>(gens.size());
        if (k > m) return PowerKVolume{k, alpha, 0.0};
        Mat g(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j) g(i, j) = g(j, i) = gens[i].dot(gens[j]);
        std::vector<double> e = char_poly_symmetric_sums(g);
        double v = e[k - 1];
        if (v < 0.0) v = 0.0;  // PSD input, tiny negative = rounding
        return PowerKVolume{k, alpha, v};
    }
    return PowerKVolume{k, alpha, power_k_volume_enumerated(gs, k, alpha, allow_large)};
}

double power_k_volume_enumerated(const GeneratorSet& gs, int k, double alpha, bool allow_large) {
    check_valid(gs);
    if (k < 1 || k > gs.dim)
        throw DimensionError("power_k_volume: k out of range (1 <= k <= d)");
    std::vector<Vec> gens = nonzero_generators(gs);
    check_subset_budget(static_cast<int>(gens.size()), k, gs.dim, allow_large);
    return subset_sum(gens, k, [alpha](double w) { return std::pow(w, alpha); });
}

double max_wedge(const GeneratorSet& gs, int k, bool allow_large) {
    check_valid(gs);
    if (k < 1 || k > gs.dim) throw DimensionError("max_wedge: k out of range");
    std::vector<Vec> gens = nonzero_generators(gs);
    const int n = static_cast<int>(gens.size());
    if (k > n) return 0.0;
    check_subset_budget(n, k, gs.dim, allow_large);

    Mat gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) gram(i, j) = gram(j, i) = gens[i].dot(gens[j]);
    double best = 0.0;
    RevolvingDoor it(n, k);
    do {
        best = std::max(best, wedge_norm_from_gram(gram, it.current()));
    } while (it.next());
    return best;
}

double surface_area(const GeneratorSet& gs, bool allow_large) {
    check_valid(gs);
    if (!full_dimensional(gs))
        throw DegenerateInput("surface_area: zonotope is not full-dimensional");
    return 2.0 * intrinsic_volume(gs, gs.dim - 1, allow_large);
}

FunctionalsReport functionals_report(const GeneratorSet& gs, bool allow_large) {
    check_valid(gs);
    FunctionalsReport r;
    r.label = gs.label.value_or("");
    r.n = gs.size();
    r.dim = gs.dim;
    for (int k = 0; k <= gs.dim; ++k)
        r.intrinsic.push_back(intrinsic_volume(gs, k, allow_large));
    r.mean_width = mean_width(gs);
    bool fd = full_dimensional(gs);
    r.surface_area = fd ? 2.0 * r.intrinsic[gs.dim - 1] : 0.0;
    r.methods["V_k"] = "subset-enumeration(revolving-door,kahan)";
    r.methods["mean_width"] = "generator-length-formula";
    r.methods["surface_area"] = fd ? "2*V_{d-1}" : "degenerate";
    return r;
}

nlohmann::json functionals_report_to_json(const FunctionalsReport& r) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["label"] = r.label;
    j["n"] = r.n;
    j["dim"] = r.dim;
    nlohmann::json vs = nlohmann::json::array();
    for (double v : r.intrinsic) vs.push_back(v);
    j["intrinsic_volumes"] = vs;
    j["mean_width"] = r.mean_width;
    j["surface_area"] = r.surface_area;
    nlohmann::json methods;
    for (const auto& [k, v] : r.methods) methods[k] = v;
    j["methods"] = methods;
    return j;
}

std::string functionals_csv_header(int dim) {
    std::ostringstream ss;
    ss << "label,n,d";
    for (int k = 0; k <= dim; ++k) ss << ",V_" << k;
    ss << ",width,surf,methods";
    return ss.str();
}

std::string functionals_csv_row(const FunctionalsReport& r) {
    std::ostringstream ss;
    ss << '"' << r.label << '"' << ',' << r.n << ',' << r.dim;
    for (double v : r.intrinsic) ss << ',' << format_double(v);
    ss << ',' << format_double(r.mean_width) << ',' << format_double(r.surface_area) << ",\"";
    bool first = true;
    for (const auto& [key, val] : r.methods) {
        if (!first) ss << ';';
        ss << key << '=' << val;
        first = false;
    }
    ss << '"';
    return ss.str();
}

}  // namespace zonolab
