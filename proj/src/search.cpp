#include "zonolab/search.hpp"

#include "zonolab/functionals.hpp"
#include "zonolab/io.hpp"
#include "zonolab/parallel.hpp"
#include "zonolab/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace zonolab {

Objective objective_from_name(const std::string& name) {
    if (name == "polarization") return Objective::polarization;
    if (name == "cirr") return Objective::cirr;
    if (name == "intrinsic_k") return Objective::intrinsic_k;
    if (name == "power2_ratio") return Objective::power2_ratio;
    throw ConfigError("unknown objective: " + name);
}

std::string objective_name(Objective o) {
    switch (o) {
        case Objective::polarization: return "polarization";
        case Objective::cirr: return "cirr";
        case Objective::intrinsic_k: return "intrinsic_k";
        case Objective::power2_ratio: return "power2_ratio";
    }
    return "?";
}

Constraint constraint_from_name(const std::string& name) {
    if (name == "unit-generators") return Constraint::unit_generators;
    if (name == "fixed-mean-width") return Constraint::fixed_mean_width;
    if (name == "fixed-volume") return Constraint::fixed_volume;
    if (name == "centered") return Constraint::centered;
    if (name == "fixed-inradius") return Constraint::fixed_inradius;
    throw ConfigError("unknown constraint: " + name);
}

std::string constraint_name(Constraint c) {
    switch (c) {
        case Constraint::unit_generators: return "unit-generators";
        case Constraint::fixed_mean_width: return "fixed-mean-width";
        case Constraint::fixed_volume: return "fixed-volume";
        case Constraint::centered: return "centered";
        case Constraint::fixed_inradius: return "fixed-inradius";
    }
    return "?";
}

nlohmann::json search_config_to_json(const SearchConfig& c) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["objective"] = objective_name(c.objective);
    nlohmann::json cons = nlohmann::json::array();
    for (Constraint x : c.constraints) cons.push_back(constraint_name(x));
    j["constraints"] = cons;
    j["n"] = c.n;
    j["d"] = c.d;
    j["restarts"] = c.restarts;
    j["max_iters"] = c.max_iters;
    j["step_a"] = c.step_a;
    j["step_b"] = c.step_b;
    j["seed"] = c.seed;
    j["p"] = c.p;
    j["k"] = c.k;
    j["m"] = c.m;
    return j;
}

SearchConfig search_config_from_json(const nlohmann::json& j) {
    SearchConfig c;
    if (!j.is_object()) throw ConfigError("search config: expected a JSON object");
    c.objective = objective_from_name(j.at("objective").get<std::string>());
    if (j.contains("constraints")) {
        if (j["constraints"].is_string()) {
            c.constraints.push_back(constraint_from_name(j["constraints"].get<std::string>()));
        } else if (j["constraints"].is_array()) {
            for (const auto& x : j["constraints"])
                c.constraints.push_back(constraint_from_name(x.get<std::string>()));
        } else {
            throw ConfigError("search config: 'constraints' must be a string or array");
        }
    }
    c.n = j.at("n").get<int>();
    c.d = j.at("d").get<int>();
    if (c.n < 1 || c.d < 1) throw ConfigError("search config: n and d must be positive");
    c.restarts = j.value("restarts", 32);
    c.max_iters = j.value("max_iters", 400);
    if (c.restarts < 1 || c.max_iters < 1)
        throw ConfigError("search config: restarts and max_iters must be positive");
    c.step_a = j.value("step_a", 0.1);
    c.step_b = j.value("step_b", 50.0);
    c.seed = j.value("seed", static_cast<std::uint64_t>(0));
    c.p = j.value("p", 1.0);
    c.k = j.value("k", 2);
    c.m = j.value("m", 0);
    return c;
}

std::string search_config_digest(const SearchConfig& c) {
    return hex64(fnv1a64(search_config_to_json(c).dump()));
}

nlohmann::json search_outcome_to_json(const SearchOutcome& o) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["objective_value"] = o.objective_value;
    j["best"] = generator_set_to_json(o.best);
    if (o.has_certificate) {
        nlohmann::json cert;
        cert["value"] = o.certificate.value;
        nlohmann::json signs = nlohmann::json::array();
        for (int8_t s : o.certificate.witness.signs) signs.push_back(static_cast<int>(s));
        cert["witness_signs"] = signs;
        j["certificate"] = cert;
    }
    nlohmann::json tr = nlohmann::json::array();
    for (const RestartTrace& t : o.trace) {
        tr.push_back({{"restart", t.restart}, {"best_value", t.best_value}, {"best_iter", t.best_iter}});
    }
    j["trace"] = tr;
    j["config"] = search_config_to_json(o.config);
    j["config_digest"] = search_config_digest(o.config);
    return j;
}

PolarizationValue polarization_value(const GeneratorSet& gs, double p) {
    check_valid(gs);
    for (const Vec& x : gs.generators)
        if (std::abs(x.norm() - 1.0) > 1e-9)
            throw DimensionError("polarization_value: generators must be unit vectors");
    if (!(p > 0.0)) throw DimensionError("polarization_value: p must be positive");

    if (p == 1.0) return {2.0 * circumradius(gs).value, "exact(sign-enumeration)"};

    // two-stage numerical scheme: deterministic grid, then projected ascent
    const int d = gs.dim;
    auto f = [&](const Vec& u) {
        double s = 0.0;
        for (const Vec& x : gs.generators) s += std::pow(std::abs(u.dot(x)), p);
        return s;
    };
    auto ascend = [&](Vec u) {
        double val = f(u);
        double step = 0.1;
        for (int it = 0; it < 200; ++it) {
            Vec g = Vec::Zero(d);
            for (const Vec& x : gs.generators) {
                double t = u.dot(x);
                if (t == 0.0) continue;
                g += p * std::pow(std::abs(t), p - 1.0) * (t > 0 ? 1.0 : -1.0) * x;
            }
            g -= g.dot(u) * u;
            if (g.norm() < 1e-14) break;
            Vec nu = (u + step * g).normalized();
            double nval = f(nu);
            if (nval > val) {
                u = nu;
                val = nval;
            } else {
                step *= 0.5;
                if (step < 1e-12) break;
            }
        }
        return val;
    };

    double best = 0.0;
    CounterRng grid(0x5EEDBA5EDULL);
    const int grid_points = 2048;
    for (int i = 0; i < grid_points; ++i) {
        Vec u;
        if (d == 2) {
            double ang = M_PI * static_cast<double>(i) / grid_points;
            u = Vec(2);
            u << std::cos(ang), std::sin(ang);
        } else {
            u = grid.unit_vec(d);
        }
        best = std::max(best, ascend(u));
    }
    return {best, "numerical(two-stage)"};
}

namespace {

struct Targets {
    // normalization targets taken from the unit-edge regular body of the class
    double total_length = 0.0;
    double volume = 0.0;
    double inradius_value = 0.0;
};

Targets targets_for(int n, int d) {
    Targets t;
    GeneratorSet ref = (n == d) ? make_cube(d, 1.0)
                                : (n == d + 1 ? make_regular_rhombic_dodecahedron(d, 1.0)
                                              : GeneratorSet{});
    if (ref.size() == 0) {
        t.total_length = static_cast<double>(n);
        t.volume = 1.0;
        t.inradius_value = 0.5;
        return t;
    }
    t.total_length = 0.0;
    for (const Vec& p : ref.generators) t.total_length += p.norm();
    t.volume = intrinsic_volume(ref, d);
    t.inradius_value = inradius(ref).value;
    return t;
}

// Projects the iterate back onto the constraint set; returns false when the
// normalization is infeasible (degenerate volume/inradius).
bool apply_constraints(GeneratorSet& gs, const std::vector<Constraint>& constraints,
                       const Targets& targets) {
    const int d = gs.dim;
    for (Constraint c : constraints) {
        switch (c) {
            case Constraint::unit_generators:
                for (Vec& p : gs.generators) {
                    double n = p.norm();
                    if (n < 1e-12) return false;
                    p /= n;
                }
                break;
            case Constraint::centered: {
                Vec mean = Vec::Zero(d);
                for (const Vec& p : gs.generators) mean += p;
                mean /= static_cast<double>(gs.size());
                for (Vec& p : gs.generators) p -= mean;
                break;
            }
            case Constraint::fixed_mean_width: {
                double len = 0.0;
                for (const Vec& p : gs.generators) len += p.norm();
                if (len < 1e-12) return false;
                for (Vec& p : gs.generators) p *= targets.total_length / len;
                break;
            }
            case Constraint::fixed_volume: {
                double vol = intrinsic_volume(gs, d);
                if (vol < 1e-12) return false;
                double s = std::pow(targets.volume / vol, 1.0 / d);
                for (Vec& p : gs.generators) p *= s;
                break;
            }
            case Constraint::fixed_inradius: {
                if (!full_dimensional(gs)) return false;
                double ir = inradius(gs).value;
                if (ir < 1e-12) return false;
                for (Vec& p : gs.generators) p *= targets.inradius_value / ir;
                break;
            }
        }
    }
    return true;
}

// All canonical sign vectors within rel_tol of the circumradius, in
// lexicographic order (the Gray scan is index-deterministic).
std::vector<std::vector<int8_t>> maximizing_witnesses(const GeneratorSet& gs,
                                                      double rel_tol = 1e-9) {
    CircumradiusCertificate best = circumradius(gs);
    const double target = 2.0 * best.value;
    const int m = gs.size();
    std::vector<std::vector<int8_t>> out;
    std::vector<int8_t> eps(m, 1);
    Vec v = Vec::Zero(gs.dim);
    for (const Vec& p : gs.generators) v += p;
    if (std::abs(v.norm() - target) <= rel_tol * std::max(target, 1e-300)) out.push_back(eps);
    for (std::uint64_t s = 1; s < (1ULL << (m - 1)); ++s) {
        int j = std::countr_zero(s) + 1;
        eps[j] = static_cast<int8_t>(-eps[j]);
        v += 2.0 * static_cast<double>(eps[j]) * gs.generators[j];
        if (std::abs(v.norm() - target) <= rel_tol * std::max(target, 1e-300)) out.push_back(eps);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];  // +1 before -1
        return false;
    });
    return out;
}

// Averaged subgradient of 2*cirr over the active (tied) witnesses, one block
// per generator, tangent-projected for unit-generator iterates.
std::vector<Vec> cirr_subgradient(const GeneratorSet& gs) {
    std::vector<std::vector<int8_t>> ws = maximizing_witnesses(gs);
    const int d = gs.dim;
    std::vector<Vec> g(gs.size(), Vec::Zero(d));
    for (const auto& eps : ws) {
        Vec v = Vec::Zero(d);
        for (int i = 0; i < gs.size(); ++i) v += static_cast<double>(eps[i]) * gs.generators[i];
        double n = v.norm();
        if (n < 1e-14) continue;
        Vec u = v / n;
        for (int i = 0; i < gs.size(); ++i) g[i] += static_cast<double>(eps[i]) * u;
    }
    for (Vec& gi : g) gi /= static_cast<double>(ws.size());
    return g;
}

// Softmax-weighted subgradient over every canonical sign vector: the gradient
// of the temperature-tau smoothing of max |sum eps p|. Annealing tau funnels
// iterates through the kinks that stop coordinate and single-witness steps.
std::vector<Vec> cirr_soft_subgradient(const GeneratorSet& gs, double tau) {
    const int m = gs.size();
    const int d = gs.dim;
    std::vector<double> norms;
    std::vector<std::vector<int8_t>> epss;
    std::vector<int8_t> eps(m, 1);
    Vec v = Vec::Zero(d);
    for (const Vec& p : gs.generators) v += p;
    norms.push_back(v.norm());
    epss.push_back(eps);
    for (std::uint64_t s = 1; s < (1ULL << (m - 1)); ++s) {
        int j = std::countr_zero(s) + 1;
        eps[j] = static_cast<int8_t>(-eps[j]);
        v += 2.0 * static_cast<double>(eps[j]) * gs.generators[j];
        norms.push_back(v.norm());
        epss.push_back(eps);
    }
    double mx = *std::max_element(norms.begin(), norms.end());
    std::vector<Vec> g(m, Vec::Zero(d));
    double wsum = 0.0;
    for (std::size_t a = 0; a < norms.size(); ++a) {
        double w = std::exp((norms[a] - mx) / (tau * std::max(mx, 1e-300)));
        wsum += w;
        Vec u = Vec::Zero(d);
        for (int i = 0; i < m; ++i) u += static_cast<double>(epss[a][i]) * gs.generators[i];
        double n = u.norm();
        if (n < 1e-14) continue;
        u /= n;
        for (int i = 0; i < m; ++i) g[i] += w * static_cast<double>(epss[a][i]) * u;
    }
    for (Vec& gi : g) gi /= wsum;
    return g;
}

struct ObjectiveEval {
    double value;
    CircumradiusCertificate cert;
    bool has_cert;
};

ObjectiveEval evaluate_objective(const SearchConfig& cfg, const GeneratorSet& gs) {
    switch (cfg.objective) {
        case Objective::polarization: {
            CircumradiusCertificate c = circumradius(gs);
            return {2.0 * c.value, c, true};
        }
        case Objective::cirr: {
            CircumradiusCertificate c = circumradius(gs);
            return {c.value, c, true};
        }
        case Objective::intrinsic_k:
            return {intrinsic_volume(gs, cfg.k), {}, false};
        case Objective::power2_ratio: {
            int m = cfg.m > 0 ? cfg.m : cfg.d;
            double vk = power_k_volume(gs, cfg.k, 2.0).value;
            double vm = power_k_volume(gs, m, 2.0).value;
            if (vm <= 0.0) return {std::numeric_limits<double>::infinity(), {}, false};
            return {std::pow(vk, m) / std::pow(vm, cfg.k), {}, false};
        }
    }
    return {0.0, {}, false};
}

bool is_cirr_like(Objective o) {
    return o == Objective::polarization || o == Objective::cirr;
}

// One restart of projected descent. Subgradient steps a/(1+t/b) for
// cirr-like objectives (finite differences otherwise), then a shrinking-step
// polish around the best iterate.
struct RestartResult {
    GeneratorSet best;
    double value = std::numeric_limits<double>::infinity();
    int best_iter = 0;
};

RestartResult run_restart(const SearchConfig& cfg, const Targets& targets, int restart) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(restart) + 1);
    const int d = cfg.d;

    GeneratorSet gs;
    for (int attempt = 0;; ++attempt) {
        gs.dim = d;
        gs.generators.clear();
        for (int i = 0; i < cfg.n; ++i) gs.generators.push_back(rng.unit_vec(d));
        if (apply_constraints(gs, cfg.constraints, targets)) break;
        if (attempt > 1000) throw NumericError("search: cannot find a feasible start");
    }

    RestartResult out;
    auto consider = [&](const GeneratorSet& cand, int iter) {
        ObjectiveEval e = evaluate_objective(cfg, cand);
        if (is_cirr_like(cfg.objective)) {
            // internal floors: the exact evaluators must dominate the width
            // bound and the inradius on every iterate
            double w = mean_width(cand);
            if (e.cert.value < 0.5 * w - 1e-9 * std::max(1.0, w))
                throw NumericError("search: circumradius fell below half the mean width");
            if (full_dimensional(cand)) {
                double ir = inradius(cand).value;
                if (e.cert.value < ir - 1e-9 * std::max(1.0, ir))
                    throw NumericError("search: circumradius fell below the inradius");
            }
        }
        if (e.value < out.value) {
            out.value = e.value;
            out.best = cand;
            out.best_iter = iter;
        }
        return e;
    };

    auto descend_direction = [&](const GeneratorSet& at) {
        std::vector<Vec> g;
        if (is_cirr_like(cfg.objective)) {
            g = cirr_subgradient(at);
        } else {
            // central finite differences of the exact functional
            g.assign(at.size(), Vec::Zero(d));
            GeneratorSet probe = at;
            for (int i = 0; i < at.size(); ++i) {
                for (int c = 0; c < d; ++c) {
                    double h = 1e-6 * std::max(1.0, std::abs(at.generators[i](c)));
                    probe.generators[i](c) = at.generators[i](c) + h;
                    double fp = evaluate_objective(cfg, probe).value;
                    probe.generators[i](c) = at.generators[i](c) - h;
                    double fm = evaluate_objective(cfg, probe).value;
                    probe.generators[i](c) = at.generators[i](c);
                    g[i](c) = (fp - fm) / (2.0 * h);
                }
            }
        }
        return g;
    };

    consider(gs, 0);
    for (int t = 0; t < cfg.max_iters; ++t) {
        std::vector<Vec> g = descend_direction(gs);
        double eta = cfg.step_a / (1.0 + static_cast<double>(t) / cfg.step_b);
        GeneratorSet next = gs;
        for (int i = 0; i < gs.size(); ++i) {
            Vec gi = g[i];
            gi -= gi.dot(gs.generators[i]) * gs.generators[i] /
                  std::max(gs.generators[i].squaredNorm(), 1e-30);
            next.generators[i] -= eta * gi;
        }
        if (!apply_constraints(next, cfg.constraints, targets)) continue;
        gs = next;
        consider(gs, t + 1);
    }

    int polish_iter = cfg.max_iters;
    auto constrained_value = [&](GeneratorSet& cand) -> double {
        if (!apply_constraints(cand, cfg.constraints, targets))
            return std::numeric_limits<double>::infinity();
        return evaluate_objective(cfg, cand).value;
    };

    // refinement A (cirr-like, small n): annealed softmax descent; the
    // smoothed subgradient walks through the minimax kinks
    if (is_cirr_like(cfg.objective) && cfg.n <= 12) {
        GeneratorSet cur = out.best;
        double cur_value = out.value;
        for (double tau = 0.2; tau > 1e-8; tau *= 0.6) {
            for (int it = 0; it < 60; ++it) {
                std::vector<Vec> g = cirr_soft_subgradient(cur, tau);
                bool accepted = false;
                double e = tau;
                for (int half = 0; half < 8 && !accepted; ++half) {
                    GeneratorSet cand = cur;
                    for (int i = 0; i < cur.size(); ++i) cand.generators[i] -= e * g[i];
                    double v = constrained_value(cand);
                    if (v < cur_value - 1e-16) {
                        cur = cand;
                        cur_value = v;
                        consider(cur, ++polish_iter);
                        accepted = true;
                    }
                    e *= 0.5;
                }
                if (!accepted) break;
            }
        }
    }

    // refinement A2 (V_k at fixed inradius, small n): anneal the softmin of
    // the facet-normal supports inside the scale-invariant ratio V_k / ir^k;
    // the exact inradius is a min, so plain pattern steps stall on its kinks
    if (cfg.objective == Objective::intrinsic_k &&
        cfg.constraints == std::vector<Constraint>{Constraint::fixed_inradius} &&
        cfg.n <= 12) {
        auto ir_soft = [&](const GeneratorSet& z, double tau) {
            std::vector<double> hs;
            RevolvingDoor it(z.size(), z.dim - 1);
            do {
                std::vector<Vec> sub;
                for (int i : it.current()) sub.push_back(z.generators[i]);
                auto nrm = orthogonal_complement_normal(sub);
                if (!nrm) continue;
                hs.push_back(support(z, *nrm));
            } while (it.next());
            if (hs.empty()) return 0.0;
            double mn = *std::min_element(hs.begin(), hs.end());
            double wsum = 0.0, acc = 0.0;
            for (double h : hs) {
                double w = std::exp(-(h - mn) / (tau * std::max(mn, 1e-300)));
                wsum += w;
                acc += w * h;
            }
            return acc / wsum;
        };
        auto ratio_soft = [&](const GeneratorSet& z, double tau) {
            double ir = ir_soft(z, tau);
            if (ir <= 0.0) return std::numeric_limits<double>::infinity();
            return intrinsic_volume(z, cfg.k) / std::pow(ir, cfg.k);
        };
        GeneratorSet cur = out.best;
        for (double tau = 0.3; tau > 1e-7; tau *= 0.6) {
            for (int it2 = 0; it2 < 50; ++it2) {
                std::vector<Vec> g(cur.size(), Vec::Zero(d));
                for (int i = 0; i < cur.size(); ++i) {
                    for (int c = 0; c < d; ++c) {
                        GeneratorSet p1 = cur, p2 = cur;
                        p1.generators[i](c) += 1e-6;
                        p2.generators[i](c) -= 1e-6;
                        g[i](c) = (ratio_soft(p1, tau) - ratio_soft(p2, tau)) / 2e-6;
                    }
                }
                double base = ratio_soft(cur, tau);
                double e = 0.05 * tau;
                bool accepted = false;
                for (int half = 0; half < 10 && !accepted; ++half) {
                    GeneratorSet cand = cur;
                    for (int i = 0; i < cur.size(); ++i) cand.generators[i] -= e * g[i];
                    if (ratio_soft(cand, tau) < base - 1e-16) {
                        cur = cand;
                        accepted = true;
                    }
                    e *= 0.5;
                }
                if (!accepted) break;
            }
        }
        if (apply_constraints(cur, cfg.constraints, targets)) consider(cur, ++polish_iter);
    }

    // refinement B: budgeted compass search at shrinking scales around the
    // best iterate (covers the smooth objectives)
    GeneratorSet cur = out.best;
    double cur_value = out.value;
    double eta = 1e-2;
    for (int budget = 400; budget > 0 && eta > 1e-10; --budget) {
        GeneratorSet best_probe = cur;
        double best_value = cur_value;
        for (int i = 0; i < cur.size(); ++i) {
            for (int c = 0; c < d; ++c) {
                for (double sgn : {+1.0, -1.0}) {
                    GeneratorSet cand = cur;
                    cand.generators[i](c) += sgn * eta;
                    double v = constrained_value(cand);
                    if (v < best_value - 1e-15 * std::max(1.0, std::abs(best_value))) {
                        best_value = v;
                        best_probe = cand;
                    }
                }
            }
        }
        if (best_value < cur_value) {
            cur = best_probe;
            cur_value = best_value;
            consider(cur, ++polish_iter);
        } else {
            eta *= 0.5;
        }
    }
    return out;
}

SearchOutcome run_search(const SearchConfig& cfg, int workers) {
    Targets targets = targets_for(cfg.n, cfg.d);
    std::vector<RestartResult> results(cfg.restarts);
    parallel_for_indexed(static_cast<std::size_t>(cfg.restarts), workers,
                         [&](std::size_t r) { results[r] = run_restart(cfg, targets, static_cast<int>(r)); });

    SearchOutcome out;
    out.config = cfg;
    int best_r = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
        out.trace.push_back({r, results[r].value, results[r].best_iter});
        if (results[r].value < results[best_r].value) best_r = r;
    }
    out.best = results[best_r].best;
    ObjectiveEval e = evaluate_objective(cfg, out.best);
    out.objective_value = e.value;
    out.certificate = e.cert;
    out.has_certificate = e.has_cert;
    return out;
}

}  // namespace

SearchOutcome minimize_polarization(const SearchConfig& config, int workers) {
    if (config.objective != Objective::polarization)
        throw ConfigError("minimize_polarization: objective must be 'polarization'");
    if (config.p != 1.0)
        throw ConfigError("minimize_polarization: only p = 1 runs the exact inner evaluation");
    SearchConfig cfg = config;
    if (cfg.constraints.empty()) cfg.constraints = {Constraint::unit_generators};
    if (cfg.constraints != std::vector<Constraint>{Constraint::unit_generators})
        throw ConfigError("minimize_polarization: constraint must be unit-generators");
    if (cfg.n > 20)
        throw BoundExceeded("minimize_polarization: exact inner enumeration capped at n = 20",
                            std::ldexp(1.0, cfg.n - 1));
    return run_search(cfg, workers);
}

SearchOutcome constrained_minimize(const SearchConfig& config, int workers) {
    if (config.objective == Objective::polarization)
        return minimize_polarization(config, workers);
    if (config.constraints.empty())
        throw ConfigError("constrained_minimize: at least one constraint is required");
    return run_search(config, workers);
}

Thm5Counterexample thm5_counterexample(int d, double v_scale) {
    if (d < 3 || d % 2 == 0)
        throw DimensionError("thm5_counterexample: d must be odd and >= 3");
    if (!(v_scale > 0.0)) throw DimensionError("thm5_counterexample: v_scale must be positive");

    GeneratorSet reg = make_regular_rhombic_dodecahedron(d, 1.0);
    Vec v = v_scale * reg.generators[0];

    GeneratorSet bar = reg;
    for (Vec& q : bar.generators) q += v;
    double w_reg = mean_width(reg);
    double w_bar = mean_width(bar);
    double t = w_reg / w_bar;

    Thm5Counterexample out;
    out.z_prime = bar;
    for (Vec& q : out.z_prime.generators) q *= t;
    out.z_prime.label = "thm5_counterexample(d=" + std::to_string(d) + ")";
    out.cirr_reg = circumradius(reg).value;
    out.cirr_prime = circumradius(out.z_prime).value;
    out.width_reg = w_reg;
    out.width_prime = mean_width(out.z_prime);
    return out;
}

ProbeBody probe_body_from_name(const std::string& name) {
    if (name == "cube") return ProbeBody::cube;
    if (name == "regular_rd") return ProbeBody::regular_rd;
    throw ConfigError("unknown probe body: " + name + " (expected cube | regular_rd)");
}

LocalProbeReport local_optimality_probe(ProbeBody body, Constraint constraint, int k, int trials,
                                        double perturbation, std::uint64_t seed, int workers) {
    if (trials < 1) throw ConfigError("local_optimality_probe: trials must be >= 1");

    // claimed role of the regular body per (body, constraint): "min" when no
    // constrained perturbation may go below it, "max" when none may exceed it
    std::string sense;
    bool asserted = true;
    if (body == ProbeBody::cube && constraint == Constraint::fixed_volume) {
        sense = "min";
    } else if (body == ProbeBody::cube && constraint == Constraint::fixed_mean_width) {
        sense = "max";
        asserted = (k == 2);
    } else if (body == ProbeBody::regular_rd && constraint == Constraint::fixed_volume) {
        sense = "min";
    } else if (body == ProbeBody::regular_rd && constraint == Constraint::fixed_inradius) {
        sense = "min";
    } else if (body == ProbeBody::regular_rd && constraint == Constraint::unit_generators) {
        sense = "max";
        asserted = (k == 2);
    } else if (body == ProbeBody::regular_rd && constraint == Constraint::fixed_mean_width) {
        sense = "max";
        asserted = false;  // open-problem probe: data only
    } else {
        throw ConfigError("local_optimality_probe: unrecognized body/constraint combination");
    }

    GeneratorSet ref;
    int d;
    if (body == ProbeBody::cube) {
        ref = make_cube(3, 1.0);
        d = 3;
    } else {
        ref = make_regular_rhombic_dodecahedron(3, 1.0);
        d = 3;
    }
    if (k < 1 || k > d) throw ConfigError("local_optimality_probe: k out of range");

    Targets targets = targets_for(ref.size(), d);
    double reference = intrinsic_volume(ref, k);

    std::vector<double> values(trials);
    parallel_for_indexed(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        CounterRng rng(seed, t + 1);
        for (;;) {
            GeneratorSet z = ref;
            for (Vec& p : z.generators) p += perturbation * rng.gaussian_vec(d);
            if (!apply_constraints(z, {constraint}, targets)) continue;
            values[t] = intrinsic_volume(z, k);
            return;
        }
    });

    LocalProbeReport rep;
    rep.trials = trials;
    rep.reference = reference;
    rep.sense = sense;
    rep.asserted = asserted;
    double tol = 1e-9 * std::max(1.0, reference);
    for (double v : values) {
        double improvement = (sense == "min") ? reference - v : v - reference;
        if (improvement > tol) ++rep.improving;
        rep.best_improvement = std::max(rep.best_improvement, improvement);
    }
    return rep;
}

}  // namespace zonolab
