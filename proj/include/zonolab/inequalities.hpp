#pragma once

#include "zonolab/generator_set.hpp"
#include "zonolab/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zonolab {

/// Outcome of one inequality evaluation. `slack` is oriented so that the
/// claim is satisfied iff slack >= -tol.
struct InequalityVerdict {
    bool holds = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool equality_within_tol = false;
    double tol = 0.0;
    std::string input_digest;
    std::string note;
};

/// M_k = (sigma_m^k / binom(m,k))^{1/k}, k = 1..m. Positive inputs only;
/// the sequence is non-increasing.
std::vector<double> maclaurin_chain(const std::vector<double>& values);

enum class EqualityBranch { strict, all_equal, zeros };

struct NonnegMaclaurinChain {
    std::vector<double> chain;            // M_1..M_m, with 0^{1/k} := 0
    std::vector<EqualityBranch> steps;    // diagnosis for M_k vs M_{k+1}
};

/// Nonnegative extension: equality between consecutive terms happens exactly
/// when all values are equal or when at least m-k+1 of them vanish.
NonnegMaclaurinChain maclaurin_chain_nonneg(const std::vector<double>& values);

/// The vector-valued Maclaurin comparison at exponent p (p = infinity
/// compares maximal wedges): holds iff
/// (V_{k,p}/binom(n,k))^{1/(pk)} <= (V_{k-1,p}/binom(n,k-1))^{1/(p(k-1))}.
InequalityVerdict vector_maclaurin(const GeneratorSet& gs, int k, double p);

/// The p = 2 chain step via the Gram eigenvalue route:
/// (V_{k,2}/binom(n,k))^{1/k} >= (V_{k+1,2}/binom(n,k+1))^{1/(k+1)}.
InequalityVerdict power2_maclaurin(const GeneratorSet& gs, int k);

struct Simplex {
    std::vector<Vec> vertices;  // d+1 points in R^d
    int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
};

/// g_k^m(S): sum of m-th powers of the k-volumes of the k-faces.
double simplex_face_power_sum(const Simplex& s, int k, double m);

/// f_k(S): sum over (k-1)-faces F of the k-volume of conv({o} union F).
double simplex_cone_sum(const Simplex& s, int k);

/// g(S) = max over canonical sign vectors of |sum eps_i p_i|; evaluated by
/// direct binary enumeration, independent of the radii module.
double simplex_sign_span(const Simplex& s);

enum class TheoremSuite { thm3, thm4, thm5_centered, prop2, cor2, thm6 };

TheoremSuite suite_from_name(const std::string& name);
std::vector<std::string> suite_names();

struct SuiteResult {
    std::string suite;
    std::vector<InequalityVerdict> verdicts;  // ordered by trial index
    int violations = 0;
    double min_slack = 0.0;
    std::string argmin_digest;
    std::uint64_t seed = 0;
    std::string note;
};

/// Samples random bodies in the theorem's admissible class (constraint
/// normalized per trial), evaluates both sides, and reports verdicts.
/// Violations are findings, not exceptions.
SuiteResult verify_theorem_suite(TheoremSuite suite, int trials, std::uint64_t seed,
                                 int d = 3, int workers = 1);

/// Random rhombic-dodecahedron generators: d+1 Gaussian points conditioned on
/// containing o in their convex hull (rejection).
GeneratorSet sample_rhombic_dodecahedron(int d, CounterRng& rng);

}  // namespace zonolab
