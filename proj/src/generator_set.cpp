#include "zonolab/generator_set.hpp"

#include "zonolab/io.hpp"
#include "zonolab/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace zonolab {

void check_valid(const GeneratorSet& gs) {
    if (gs.dim < 1) throw DimensionError("GeneratorSet: dim must be >= 1");
    if (gs.generators.empty()) throw DimensionError("GeneratorSet: need n >= 1 generators");
    for (const Vec& p : gs.generators) {
        if (static_cast<int>(p.size()) != gs.dim)
            throw DimensionError("GeneratorSet: generator dimension mismatch");
        if (!p.allFinite()) throw DimensionError("GeneratorSet: non-finite coordinate");
    }
}

namespace {

double max_norm(const GeneratorSet& gs) {
    double m = 0.0;
    for (const Vec& p : gs.generators) m = std::max(m, p.norm());
    return m;
}

}  // namespace

std::vector<int> nonzero_indices(const GeneratorSet& gs) {
    const double tol = 1e-12 * max_norm(gs);
    std::vector<int> idx;
    for (int i = 0; i < gs.size(); ++i)
        if (gs.generators[i].norm() > tol) idx.push_back(i);
    return idx;
}

bool has_zero_generators(const GeneratorSet& gs) {
    return static_cast<int>(nonzero_indices(gs).size()) < gs.size();
}

bool full_dimensional(const GeneratorSet& gs) {
    check_valid(gs);
    if (gs.size() < gs.dim) return false;
    Mat m(gs.dim, gs.size());
    for (int i = 0; i < gs.size(); ++i) m.col(i) = gs.generators[i];
    Eigen::ColPivHouseholderQR<Mat> qr(m);
    qr.setThreshold(1e-10);
    return qr.rank() == gs.dim;
}

ZonotopeClassification classify(const GeneratorSet& gs) {
    check_valid(gs);
    ZonotopeClassification c;
    std::vector<int> nz = nonzero_indices(gs);
    c.zero_generators = gs.size() - static_cast<int>(nz.size());
    c.full_dimensional = full_dimensional(gs);

    if (!nz.empty()) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
        for (int i : nz) {
            double l = gs.generators[i].norm();
            lo = std::min(lo, l);
            hi = std::max(hi, l);
            sum += l;
        }
        c.is_equilateral = (hi - lo) <= 1e-9 * hi;
        c.common_length = c.is_equilateral ? sum / static_cast<double>(nz.size()) : 0.0;
        c.is_unit_edge = c.is_equilateral && std::abs(c.common_length - 1.0) <= 1e-9;
    }

    Vec s = Vec::Zero(gs.dim);
    double total = 0.0;
    for (const Vec& p : gs.generators) {
        s += p;
        total += p.norm();
    }
    c.is_centered = s.norm() <= 1e-9 * total + 1e-12;

    // Every subset of size <= d is independent iff every min(d, n)-subset is,
    // and no zero generator is present.
    c.is_cubical_candidate = (c.zero_generators == 0);
    if (c.is_cubical_candidate) {
        const int m = std::min(gs.dim, gs.size());
        RevolvingDoor it(gs.size(), m);
        do {
            std::vector<Vec> sub;
            double scale = 1.0;
            for (int i : it.current()) {
                sub.push_back(gs.generators[i]);
                scale *= gs.generators[i].norm();
            }
            if (wedge_norm(sub) <= 1e-9 * scale) {
                c.is_cubical_candidate = false;
                break;
            }
        } while (it.next());
    }
    return c;
}

GeneratorSet make_cube(int d, double edge) {
    if (d < 1) throw DimensionError("make_cube: d must be >= 1");
    if (edge <= 0.0) throw DimensionError("make_cube: edge must be positive");
    GeneratorSet gs;
    gs.dim = d;
    for (int i = 0; i < d; ++i) {
        Vec e = Vec::Zero(d);
        e(i) = edge;
        gs.generators.push_back(e);
    }
    gs.label = "cube(d=" + std::to_string(d) + ")";
    return gs;
}

GeneratorSet make_regular_rhombic_dodecahedron(int d, double edge) {
    if (d < 2) throw DimensionError("make_regular_rhombic_dodecahedron: d must be >= 2");
    if (edge <= 0.0) throw DimensionError("make_regular_rhombic_dodecahedron: edge must be positive");

    // Vertices of the regular simplex live in the hyperplane <x, 1> = 0 of
    // R^{d+1}; a Householder reflection taking 1/sqrt(d+1) to e_{d+1} drops
    // them into R^d with the last coordinate exactly zero.
    const int m = d + 1;
    Vec u = Vec::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    Vec w = u;
    w(m - 1) -= 1.0;
    w /= w.norm();

    const double scale = edge * std::sqrt(static_cast<double>(m) / static_cast<double>(d));
    GeneratorSet gs;
    gs.dim = d;
    for (int i = 0; i < m; ++i) {
        Vec v = Vec::Zero(m);
        v(i) = 1.0;
        v -= Vec::Constant(m, 1.0 / static_cast<double>(m));
        v *= scale;
        v -= 2.0 * w.dot(v) * w;
        gs.generators.push_back(v.head(d));
    }
    gs.label = "regular_rd(d=" + std::to_string(d) + ")";
    return gs;
}

GeneratorSet make_regular_zonogon(int n, double edge) {
    if (n < 2) throw DimensionError("make_regular_zonogon: n must be >= 2");
    if (edge <= 0.0) throw DimensionError("make_regular_zonogon: edge must be positive");
    GeneratorSet gs;
    gs.dim = 2;
    for (int k = 0; k < n; ++k) {
        double a = static_cast<double>(k) * M_PI / static_cast<double>(n);
        Vec p(2);
        p << edge * std::cos(a), edge * std::sin(a);
        gs.generators.push_back(p);
    }
    gs.label = "regular_zonogon(n=" + std::to_string(n) + ")";
    return gs;
}

CenteredForm center(const GeneratorSet& gs) {
    check_valid(gs);
    Vec t = Vec::Zero(gs.dim);
    for (const Vec& p : gs.generators) t += p;
    return CenteredForm{gs, 0.5 * t};
}

GeneratorSet project(const GeneratorSet& gs, const Vec& u) {
    check_valid(gs);
    if (static_cast<int>(u.size()) != gs.dim)
        throw DimensionError("project: direction dimension mismatch");
    if (std::abs(u.norm() - 1.0) > 1e-9)
        throw DimensionError("project: direction must be a unit vector");
    const int d = gs.dim;
    if (d < 2) throw DimensionError("project: need d >= 2");

    int skip = 0;
    for (int i = 1; i < d; ++i)
        if (std::abs(u(i)) > std::abs(u(skip))) skip = i;

    std::vector<Vec> basis;
    for (int i = 0; i < d; ++i) {
        if (i == skip) continue;
        Vec b = Vec::Zero(d);
        b(i) = 1.0;
        b -= b.dot(u) * u;
        for (const Vec& prev : basis) b -= b.dot(prev) * prev;
        b /= b.norm();
        basis.push_back(b);
    }

    GeneratorSet out;
    out.dim = d - 1;
    out.label = gs.label;
    for (const Vec& p : gs.generators) {
        Vec q(d - 1);
        for (int j = 0; j < d - 1; ++j) q(j) = basis[j].dot(p);
        out.generators.push_back(q);
    }
    return out;
}

GeneratorSet projection_body(const GeneratorSet& gs) {
    check_valid(gs);
    const int d = gs.dim;
    if (d < 2) throw DimensionError("projection_body: need d >= 2");
    if (!full_dimensional(gs)) throw DegenerateInput("projection_body: zonotope is not full-dimensional");

    std::vector<int> nz = nonzero_indices(gs);
    const int m = static_cast<int>(nz.size());
    if (m < d - 1) throw DegenerateInput("projection_body: too few nonzero generators");

    GeneratorSet out;
    out.dim = d;
    if (gs.label) out.label = "projection_body(" + *gs.label + ")";

    RevolvingDoor it(m, d - 1);
    do {
        std::vector<Vec> sub;
        double scale = 1.0;
        for (int i : it.current()) {
            sub.push_back(gs.generators[nz[i]]);
            scale *= gs.generators[nz[i]].norm();
        }
        double area = wedge_norm(sub);
        if (area <= 1e-9 * scale)
            throw DegenerateInput(
                "projection_body: generators not in general position "
                "(a (d-1)-subset is linearly dependent; facet merging is unsupported)");
        std::optional<Vec> normal = orthogonal_complement_normal(sub);
        if (!normal)
            throw DegenerateInput("projection_body: degenerate facet normal");
        out.generators.push_back(2.0 * area * (*normal));
    } while (it.next());
    return out;
}

GeneratorSet random_unit_generators(int n, int d, std::uint64_t seed) {
    if (n < 1) throw DimensionError("random_unit_generators: n must be >= 1");
    if (d < 2) throw DimensionError("random_unit_generators: d must be >= 2");
    CounterRng rng(seed);
    GeneratorSet gs;
    gs.dim = d;
    for (int i = 0; i < n; ++i) gs.generators.push_back(rng.unit_vec(d));
    gs.label = "random_unit(n=" + std::to_string(n) + ",d=" + std::to_string(d) +
               ",seed=" + std::to_string(seed) + ")";
    return gs;
}

nlohmann::json generator_set_to_json(const GeneratorSet& gs) {
    nlohmann::json j;
    j["dim"] = gs.dim;
    j["label"] = gs.label ? nlohmann::json(*gs.label) : nlohmann::json(nullptr);
    nlohmann::json gens = nlohmann::json::array();
    for (const Vec& p : gs.generators) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < p.size(); ++i) row.push_back(p(i));
        gens.push_back(row);
    }
    j["generators"] = gens;
    return j;
}

GeneratorSet generator_set_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("GeneratorSet JSON: expected an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ConfigError("GeneratorSet JSON: missing integer field 'dim'");
    if (!j.contains("generators") || !j["generators"].is_array())
        throw ConfigError("GeneratorSet JSON: missing array field 'generators'");
    GeneratorSet gs;
    gs.dim = j["dim"].get<int>();
    if (j.contains("label") && !j["label"].is_null()) {
        if (!j["label"].is_string()) throw ConfigError("GeneratorSet JSON: 'label' must be string or null");
        gs.label = j["label"].get<std::string>();
    }
    for (const auto& row : j["generators"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != gs.dim)
            throw ConfigError("GeneratorSet JSON: 'generators' rows must be arrays of length dim");
        Vec p(gs.dim);
        for (int i = 0; i < gs.dim; ++i) {
            if (!row[i].is_number()) throw ConfigError("GeneratorSet JSON: non-numeric coordinate");
            p(i) = row[i].get<double>();
        }
        gs.generators.push_back(p);
    }
    check_valid(gs);
    return gs;
}

std::string generator_set_digest(const GeneratorSet& gs) {
    return hex64(fnv1a64(generator_set_to_json(gs).dump()));
}

}  // namespace zonolab
