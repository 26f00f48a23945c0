#pragma once

#include "zonolab/generator_set.hpp"
#include "zonolab/radii.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace zonolab {

enum class Objective { polarization, cirr, intrinsic_k, power2_ratio };
enum class Constraint { unit_generators, fixed_mean_width, fixed_volume, centered, fixed_inradius };

Objective objective_from_name(const std::string& name);
std::string objective_name(Objective o);
Constraint constraint_from_name(const std::string& name);
std::string constraint_name(Constraint c);

struct SearchConfig {
    Objective objective = Objective::polarization;
    std::vector<Constraint> constraints;  // applied in the listed order
    int n = 0;
    int d = 0;
    int restarts = 32;
    int max_iters = 400;
    double step_a = 0.1;  // step schedule a / (1 + iter / b)
    double step_b = 50.0;
    std::uint64_t seed = 0;
    double p = 1.0;  // polarization exponent
    int k = 2;       // objective index for intrinsic_k / power2_ratio
    int m = 0;       // second index for power2_ratio (defaults to d)
};

nlohmann::json search_config_to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const nlohmann::json& j);
std::string search_config_digest(const SearchConfig& c);

struct RestartTrace {
    int restart = 0;
    double best_value = 0.0;
    int best_iter = 0;
};

struct SearchOutcome {
    GeneratorSet best;
    double objective_value = 0.0;
    CircumradiusCertificate certificate;  // meaningful for cirr-type objectives
    bool has_certificate = false;
    std::vector<RestartTrace> trace;
    SearchConfig config;
};

nlohmann::json search_outcome_to_json(const SearchOutcome& o);

struct PolarizationValue {
    double value = 0.0;
    std::string method;  // "exact(sign-enumeration)" for p = 1, else "numerical"
};

/// l_p polarization of a unit-vector configuration: max over directions of
/// sum |<x_i, u>|^p. p = 1 is exact (twice the circumradius); other p use the
/// two-stage grid + projected-ascent scheme and are flagged numerical.
PolarizationValue polarization_value(const GeneratorSet& gs, double p);

/// Multi-restart subgradient minimization of 2*cirr over n-point unit-vector
/// configurations; the inner maximum is evaluated exactly at every iterate.
SearchOutcome minimize_polarization(const SearchConfig& config, int workers = 1);

struct Thm5Counterexample {
    GeneratorSet z_prime;
    double cirr_reg = 0.0;
    double cirr_prime = 0.0;
    double width_reg = 0.0;
    double width_prime = 0.0;
};

/// Odd-dimension construction: translate the regular simplex generators by a
/// small deterministic v, rescale to the regular mean width. Exhibits equal
/// widths and strictly smaller circumradius.
Thm5Counterexample thm5_counterexample(int d, double v_scale = 1e-2);

enum class ProbeBody { cube, regular_rd };
ProbeBody probe_body_from_name(const std::string& name);

struct LocalProbeReport {
    int trials = 0;
    int improving = 0;
    double best_improvement = 0.0;  // positive = some perturbation beat the regular body
    double reference = 0.0;
    std::string sense;  // "min" or "max" for the regular body's claimed role
    bool asserted = false;  // exploratory combinations report data only
};

/// Gaussian perturbations of the regular body, re-normalized to the
/// constraint, scored by V_k against the regular value.
LocalProbeReport local_optimality_probe(ProbeBody body, Constraint constraint, int k,
                                        int trials, double perturbation, std::uint64_t seed,
                                        int workers = 1);

/// Multi-restart projected search for the configured objective; subgradient
/// steps for cirr-type objectives, central finite differences for smooth ones.
SearchOutcome constrained_minimize(const SearchConfig& config, int workers = 1);

}  // namespace zonolab
