#include "zonolab/radii.hpp"

#include "zonolab/io.hpp"
#include "zonolab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace zonolab {

double support(const GeneratorSet& gs, const Vec& u) {
    check_valid(gs);
    if (static_cast<int>(u.size()) != gs.dim)
        throw DimensionError("support: direction dimension mismatch");
    if (std::abs(u.norm() - 1.0) > 1e-9)
        throw DimensionError("support: direction must be a unit vector");
    KahanSum s;
    for (const Vec& p : gs.generators) s.add(std::abs(u.dot(p)));
    return 0.5 * s.value();
}

namespace {

constexpr int kCirrEnumBound = 40;   // hard refusal without override
constexpr int kGrayLimit = 25;       // full Gray scan up to here, BnB beyond
constexpr double kIrSubsetBudget = 1e7;

// +1 sorts before -1.
bool lex_less(const std::vector<int8_t>& a, const std::vector<int8_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

struct ActiveSet {
    std::vector<int> idx;       // indices of nonzero generators
    std::vector<Vec> gens;      // their vectors
};

ActiveSet active_generators(const GeneratorSet& gs) {
    ActiveSet a;
    a.idx = nonzero_indices(gs);
    for (int i : a.idx) a.gens.push_back(gs.generators[i]);
    return a;
}

// Expand a witness over the active set back to all n slots (+1 on zeros) and
// canonicalize so the first active sign is +1.
SignVector expand_witness(const GeneratorSet& gs, const ActiveSet& a,
                          const std::vector<int8_t>& eps) {
    SignVector w;
    w.signs.assign(gs.size(), int8_t{1});
    bool flip = !eps.empty() && eps[0] < 0;
    for (std::size_t j = 0; j < a.idx.size(); ++j)
        w.signs[a.idx[j]] = flip ? int8_t(-eps[j]) : eps[j];
    return w;
}

// Full Gray scan over the canonical half of the sign cube (first sign fixed
// +1); exact argmax with lexicographic tie-breaking. The running sum is
// rebuilt from the sign vector every 2^20 flips: the O(d) incremental update
// accumulates rounding across long scans, enough to mis-rank near-ties.
std::vector<int8_t> gray_argmax(const std::vector<Vec>& gens, int d) {
    const int m = static_cast<int>(gens.size());
    std::vector<int8_t> eps(m, 1), best_eps(m, 1);
    Vec v = Vec::Zero(d);
    for (const Vec& p : gens) v += p;
    double best = v.squaredNorm();

    const std::uint64_t steps = (m >= 1) ? (1ULL << (m - 1)) : 1ULL;
    constexpr std::uint64_t kRefresh = 1ULL << 20;
    for (std::uint64_t s = 1; s < steps; ++s) {
        int j = std::countr_zero(s) + 1;
        eps[j] = static_cast<int8_t>(-eps[j]);
        if ((s & (kRefresh - 1)) == 0) {
            v.setZero();
            for (int i = 0; i < m; ++i) v += static_cast<double>(eps[i]) * gens[i];
        } else {
            v += 2.0 * static_cast<double>(eps[j]) * gens[j];
        }
        double val = v.squaredNorm();
        if (val > best || (val == best && lex_less(eps, best_eps))) {
            best = val;
            best_eps = eps;
        }
    }
    return best_eps;
}

struct BnbState {
    const std::vector<Vec>* gens = nullptr;
    std::vector<double> suffix;  // suffix[i] = sum of |p_j|, j >= i
    std::vector<int8_t> eps, best_eps;
    double best = -1.0;  // |sum|, not halved
    int d = 0;
};

void bnb_descend(BnbState& st, int depth, Vec v) {
    const auto& gens = *st.gens;
    const int m = static_cast<int>(gens.size());
    if (depth == m) {
        double val = v.norm();
        if (val > st.best) {
            st.best = val;
            st.best_eps = st.eps;
        }
        return;
    }
    if (v.norm() + st.suffix[depth] <= st.best) return;
    for (int s : {+1, -1}) {
        if (depth == 0 && s < 0) continue;  // canonical half
        st.eps[depth] = static_cast<int8_t>(s);
        bnb_descend(st, depth + 1, v + static_cast<double>(s) * gens[depth]);
    }
}

std::vector<int8_t> bnb_argmax(const std::vector<Vec>& gens, int d) {
    const int m = static_cast<int>(gens.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return gens[a].norm() > gens[b].norm(); });

    BnbState st;
    std::vector<Vec> sorted;
    for (int i : order) sorted.push_back(gens[i]);
    st.gens = &sorted;
    st.d = d;
    st.suffix.assign(m + 1, 0.0);
    for (int i = m - 1; i >= 0; --i) st.suffix[i] = st.suffix[i + 1] + sorted[i].norm();
    st.eps.assign(m, int8_t{1});
    st.best_eps.assign(m, int8_t{1});

    // seed with the all-plus corner so pruning has a bound from the start
    Vec v0 = Vec::Zero(d);
    for (const Vec& p : sorted) v0 += p;
    st.best = v0.norm();

    bnb_descend(st, 0, Vec::Zero(d));

    std::vector<int8_t> eps(m, 1);
    for (int i = 0; i < m; ++i) eps[order[i]] = st.best_eps[i];
    return eps;
}

void check_cirr_budget(int m, bool allow_large) {
    if (m > kCirrEnumBound && !allow_large)
        throw BoundExceeded("circumradius enumeration refused: n = " + std::to_string(m) +
                                " nonzero generators would require 2^" + std::to_string(m - 1) +
                                " sign vectors (pass the override to force)",
                            std::ldexp(1.0, m - 1));
}

}  // namespace

CircumradiusCertificate circumradius(const GeneratorSet& gs, bool allow_large) {
    check_valid(gs);
    ActiveSet a = active_generators(gs);
    const int m = static_cast<int>(a.gens.size());
    CircumradiusCertificate cert;
    if (m == 0) {
        cert.witness.signs.assign(gs.size(), int8_t{1});
        return cert;
    }
    check_cirr_budget(m, allow_large);

    std::vector<int8_t> eps =
        (m <= kGrayLimit) ? gray_argmax(a.gens, gs.dim) : bnb_argmax(a.gens, gs.dim);
    cert.witness = expand_witness(gs, a, eps);

    // re-evaluate from the witness so the certificate reproduces exactly
    Vec v = Vec::Zero(gs.dim);
    for (int i = 0; i < gs.size(); ++i)
        v += static_cast<double>(cert.witness.signs[i]) * gs.generators[i];
    cert.value = 0.5 * v.norm();
    return cert;
}

int circumradius_witness_count(const GeneratorSet& gs, bool allow_large) {
    CircumradiusCertificate best = circumradius(gs, allow_large);
    ActiveSet a = active_generators(gs);
    const int m = static_cast<int>(a.gens.size());
    if (m == 0) return 1;

    const double target = 2.0 * best.value;
    int count = 0;
    std::vector<int8_t> eps(m, 1);
    Vec v = Vec::Zero(gs.dim);
    for (const Vec& p : a.gens) v += p;
    if (std::abs(v.norm() - target) <= 1e-9 * std::max(target, 1e-300)) ++count;
    const std::uint64_t steps = (1ULL << (m - 1));
    constexpr std::uint64_t kRefresh = 1ULL << 20;
    for (std::uint64_t s = 1; s < steps; ++s) {
        int j = std::countr_zero(s) + 1;
        eps[j] = static_cast<int8_t>(-eps[j]);
        if ((s & (kRefresh - 1)) == 0) {
            v.setZero();
            for (int i = 0; i < m; ++i) v += static_cast<double>(eps[i]) * a.gens[i];
        } else {
            v += 2.0 * static_cast<double>(eps[j]) * a.gens[j];
        }
        if (std::abs(v.norm() - target) <= 1e-9 * std::max(target, 1e-300)) ++count;
    }
    return count;
}

InradiusCertificate inradius(const GeneratorSet& gs, bool allow_large) {
    check_valid(gs);
    if (!full_dimensional(gs))
        throw DegenerateInput("inradius: zonotope is not full-dimensional");
    ActiveSet a = active_generators(gs);
    const int m = static_cast<int>(a.gens.size());
    const int d = gs.dim;
    double subsets = binomial(m, d - 1);
    if (subsets > kIrSubsetBudget && !allow_large)
        throw BoundExceeded("inradius enumeration refused: C(" + std::to_string(m) + "," +
                                std::to_string(d - 1) + ") = " + format_double(subsets) +
                                " facet-normal candidates (pass the override to force)",
                            subsets);

    InradiusCertificate cert;
    cert.value = std::numeric_limits<double>::infinity();
    RevolvingDoor it(m, d - 1);
    do {
        std::vector<Vec> sub;
        for (int i : it.current()) sub.push_back(a.gens[i]);
        std::optional<Vec> normal = orthogonal_complement_normal(sub);
        if (!normal) continue;
        double h = support(gs, *normal);
        bool better = h < cert.value;
        if (!better && h == cert.value) {
            for (int i = 0; i < d; ++i) {
                if ((*normal)(i) != cert.normal(i)) {
                    better = (*normal)(i) < cert.normal(i);
                    break;
                }
            }
        }
        if (better) {
            cert.value = h;
            cert.normal = *normal;
        }
    } while (it.next());

    if (!std::isfinite(cert.value))
        throw DegenerateInput("inradius: no independent (d-1)-subset found");
    return cert;
}

RatioReport ratio_report(const GeneratorSet& gs, bool allow_large) {
    RatioReport r;
    r.cirr = circumradius(gs, allow_large);
    r.ir = inradius(gs, allow_large);
    r.ratio_minus_one = r.cirr.value / r.ir.value - 1.0;
    return r;
}

CircumradiusCertificate circumradius_planar(const GeneratorSet& gs) {
    check_valid(gs);
    if (gs.dim != 2) throw DimensionError("circumradius_planar: requires d = 2");
    ActiveSet a = active_generators(gs);
    const int m = static_cast<int>(a.gens.size());
    CircumradiusCertificate cert;
    if (m == 0) {
        cert.witness.signs.assign(gs.size(), int8_t{1});
        return cert;
    }

    // Map generators into the upper half plane, walk boundary vertices of the
    // centered zonogon in angular order: v_t = (1/2)(sum_{i<=t} q_i - sum_{i>t} q_i).
    std::vector<int8_t> flip(m, 1);
    std::vector<Vec> q(a.gens);
    for (int i = 0; i < m; ++i) {
        if (q[i](1) < 0.0 || (q[i](1) == 0.0 && q[i](0) < 0.0)) {
            q[i] = -q[i];
            flip[i] = -1;
        }
    }
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return std::atan2(q[x](1), q[x](0)) < std::atan2(q[y](1), q[y](0));
    });

    Vec v = Vec::Zero(2);
    for (int i = 0; i < m; ++i) v -= q[i];
    std::vector<int8_t> eq(m, -1), best_eq = eq;
    double best = v.squaredNorm();
    for (int t = 0; t < m; ++t) {
        v += 2.0 * q[order[t]];
        eq[order[t]] = 1;
        if (v.squaredNorm() > best) {
            best = v.squaredNorm();
            best_eq = eq;
        }
    }

    std::vector<int8_t> eps(m);
    for (int i = 0; i < m; ++i) eps[i] = static_cast<int8_t>(best_eq[i] * flip[i]);
    cert.witness = expand_witness(gs, a, eps);
    Vec w = Vec::Zero(2);
    for (int i = 0; i < gs.size(); ++i)
        w += static_cast<double>(cert.witness.signs[i]) * gs.generators[i];
    cert.value = 0.5 * w.norm();
    return cert;
}

double circumradius_numeric(const GeneratorSet& gs, int grid_points) {
    check_valid(gs);
    const int d = gs.dim;
    ActiveSet a = active_generators(gs);
    if (a.gens.empty()) return 0.0;

    auto half_sum = [&](const Vec& u) {
        double s = 0.0;
        for (const Vec& p : a.gens) s += std::abs(u.dot(p));
        return 0.5 * s;
    };
    auto ascend = [&](Vec u) {
        double val = half_sum(u);
        for (int it = 0; it < 64; ++it) {
            Vec v = Vec::Zero(d);
            for (const Vec& p : a.gens) v += (u.dot(p) >= 0.0 ? 1.0 : -1.0) * p;
            double n = v.norm();
            if (n <= 1e-14) break;
            Vec nu = v / n;
            double nval = half_sum(nu);
            if (nval <= val + 1e-15) break;
            u = nu;
            val = nval;
        }
        return val;
    };

    double best = 0.0;
    CounterRng grid(0x5EEDBA5EDULL);  // fixed internal constant: the grid is part of the method
    for (int i = 0; i < grid_points; ++i) {
        Vec u;
        if (d == 2) {
            double ang = M_PI * static_cast<double>(i) / static_cast<double>(grid_points);
            u = Vec(2);
            u << std::cos(ang), std::sin(ang);
        } else {
            u = grid.unit_vec(d);
        }
        best = std::max(best, ascend(u));
    }
    for (int i = 0; i < d; ++i) {
        Vec u = Vec::Zero(d);
        u(i) = 1.0;
        best = std::max(best, ascend(u));
    }
    return best;
}

}  // namespace zonolab
