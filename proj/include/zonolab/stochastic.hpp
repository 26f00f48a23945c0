#pragma once

#include "zonolab/generator_set.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zonolab {

/// Monte Carlo estimate with its reproducibility coordinates. Bit-identical
/// given (seed, samples, rng_version): samples are drawn in fixed batches,
/// batch b from substream b, and combined in batch order.
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    std::string rng_version;
    double reference = 0.0;  // closed form / exact target when one exists
    std::string reference_label;
};

/// E |p_1 ^ ... ^ p_d| for i.i.d. uniform unit vectors; closed form
/// 2 omega_{d+1}^{d-1} / omega_d^d.
MCEstimate expected_random_wedge(int d, long samples, std::uint64_t seed, int workers = 1);
double expected_random_wedge_closed_form(int d);

/// E V_d of a zonotope with n i.i.d. uniform unit generators; closed form
/// binom(n,d) times the wedge expectation.
MCEstimate expected_volume_random_zonotope(int n, int d, long samples, std::uint64_t seed,
                                           int workers = 1);

/// Surface area via the projection-average identity:
/// surf(Z) = (omega_d / kappa_{d-1}) * E_u V_{d-1}(Z | u^perp).
MCEstimate cauchy_surface_integral(const GeneratorSet& gs, long samples, std::uint64_t seed,
                                   int workers = 1);

/// V_i via averaging V_i of projections onto uniform random k-subspaces
/// (orthonormalized Gaussian frames), scaled by
/// binom(d,i) kappa_{k-i} kappa_d / (binom(k,i) kappa_{d-i} kappa_k).
MCEstimate kubota_intrinsic_integral(const GeneratorSet& gs, int i, int k, long samples,
                                     std::uint64_t seed, int workers = 1);

struct SteinerMCResult {
    MCEstimate estimate;
    long resampled_points = 0;  // projection solves that failed to converge
};

/// Hit-or-miss estimate of V_d(Z + tB^d) in a bounding box. Membership:
/// dist(x, Z) <= t with the distance solved by cyclic coordinate descent over
/// the cube coefficients (update norm < 1e-10, at most 10*n*d sweeps).
SteinerMCResult steiner_mc_volume(const GeneratorSet& gs, double t, long samples,
                                  std::uint64_t seed, int workers = 1);

/// Euclidean distance from x to the centered zonotope (1/2) sum [-p_i, p_i].
/// Returns nan when the solve fails to converge.
double distance_to_centered_zonotope(const GeneratorSet& gs, const Vec& x);

enum class ProbeFamily { random_uniform, planar_regular, fibonacci_sphere };
ProbeFamily probe_family_from_name(const std::string& name);

struct ProbeRow {
    std::string family;
    int n = 0;
    std::string quantity;
    double value = 0.0;
    std::string method;       // enumeration / planar-sweep / numerical
    double bound_ir = 0.0;    // 4i/(5dn^2)
    double bound_cirr = 0.0;  // 2i/(5n^2)
    double bound_vol = 0.0;   // pi^2/(12n^2)
};

/// Tabulates cirr/ir - 1 and the intrinsic-volume gaps against the ball at
/// ir = 1 and cirr = 1, next to the lower-bound expressions. Rows are data;
/// no upper bound is asserted here.
std::vector<ProbeRow> asymptotic_probe(ProbeFamily family, int d,
                                       const std::vector<int>& n_list, std::uint64_t seed);

std::string probe_csv_header();
std::string probe_csv_row(const ProbeRow& r);

/// n spiral points on S^2 (d = 3 lattice family for the probe).
GeneratorSet fibonacci_sphere_generators(int n);

}  // namespace zonolab
