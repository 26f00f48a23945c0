#pragma once

#include "zonolab/generator_set.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

namespace zonolab {

/// Coefficients of t -> V_d(Z + tB^d): coeffs[j] multiplies t^j, so
/// coeffs[d-i] = kappa_{d-i} * V_i(Z). coeffs[0] is the volume,
/// coeffs[d] = kappa_d.
struct SteinerPolynomial {
    int d = 0;
    std::vector<double> coeffs;
    double evaluate(double t) const;
};

struct PowerKVolume {
    int k = 0;
    double alpha = 0.0;
    double value = 0.0;
};

struct FunctionalsReport {
    std::string label;
    int n = 0;
    int dim = 0;
    std::vector<double> intrinsic;  // V_0..V_d
    double mean_width = 0.0;
    double surface_area = 0.0;  // 0 when not full-dimensional
    std::map<std::string, std::string> methods;
};

/// V_k(Z): sum of wedge norms over k-subsets (revolving-door order,
/// compensated accumulation). V_0 = 1. Subset sums refuse n > 30 for
/// k outside {1, 2, d} unless `allow_large` is set.
double intrinsic_volume(const GeneratorSet& gs, int k, bool allow_large = false);

SteinerPolynomial steiner_polynomial(const GeneratorSet& gs, bool allow_large = false);

/// w(Z) = (2 kappa_{d-1} / (d kappa_d)) * sum |p_i|.
double mean_width(const GeneratorSet& gs);

/// V_{k,alpha}(Z) = sum over k-subsets of wedge^alpha. alpha = 2 is computed
/// through the Gram characteristic-polynomial sums and is allowed at any n.
PowerKVolume power_k_volume(const GeneratorSet& gs, int k, double alpha,
                            bool allow_large = false);

/// Subset-enumeration route for any alpha; the oracle side of the alpha = 2
/// dual-path check.
double power_k_volume_enumerated(const GeneratorSet& gs, int k, double alpha,
                                 bool allow_large = false);

/// Largest k-wedge over all k-subsets (the p -> infinity limit of the
/// normalized power sums).
double max_wedge(const GeneratorSet& gs, int k, bool allow_large = false);

/// surf(Z) = 2 V_{d-1}(Z); requires a full-dimensional zonotope.
double surface_area(const GeneratorSet& gs, bool allow_large = false);

FunctionalsReport functionals_report(const GeneratorSet& gs, bool allow_large = false);

nlohmann::json functionals_report_to_json(const FunctionalsReport& r);
std::string functionals_csv_header(int dim);
std::string functionals_csv_row(const FunctionalsReport& r);

}  // namespace zonolab
