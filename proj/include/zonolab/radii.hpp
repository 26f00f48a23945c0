#pragma once

#include "zonolab/generator_set.hpp"

#include <cstdint>
#include <vector>

namespace zonolab {

/// Vertex selector of the centered form: v = (1/2) sum eps_i p_i.
/// Canonical enumeration fixes the sign of the first nonzero generator to +1.
struct SignVector {
    std::vector<int8_t> signs;  // one per generator, values in {-1, +1}
};

struct CircumradiusCertificate {
    double value = 0.0;
    SignVector witness;
};

struct InradiusCertificate {
    double value = 0.0;
    Vec normal;  // canonicalized facet normal attaining the minimum
};

struct RatioReport {
    CircumradiusCertificate cirr;
    InradiusCertificate ir;
    double ratio_minus_one = 0.0;
};

/// Support function of the centered zonotope: h(u) = (1/2) sum |<u, p_i>|.
double support(const GeneratorSet& gs, const Vec& u);

/// Exact circumradius: max over the 2^{n-1} canonical sign vectors of
/// (1/2)|sum eps_i p_i|. Gray-code traversal with O(d) updates; a
/// branch-and-bound pass (triangle bound |partial| + remaining lengths,
/// generators sorted by decreasing norm) takes over for larger n.
/// Refuses n > 40 without the override. Ties resolve to the
/// lexicographically smallest sign vector (+1 before -1) on the Gray path.
CircumradiusCertificate circumradius(const GeneratorSet& gs, bool allow_large = false);

/// Number of canonical sign vectors within 1e-9 relative of the maximum.
int circumradius_witness_count(const GeneratorSet& gs, bool allow_large = false);

/// Exact inradius: min of the support function over the canonicalized normals
/// of all linearly independent (d-1)-subsets. The minimum of the support
/// function of a full-dimensional o-symmetric polytope over the sphere is
/// attained at an outer facet normal, and every facet normal of a zonotope is
/// orthogonal to d-1 generators, so this finite minimum is exact (checked
/// against a dense sphere-grid oracle in the tests). Refuses
/// C(n, d-1) > 10^7 without the override.
InradiusCertificate inradius(const GeneratorSet& gs, bool allow_large = false);

RatioReport ratio_report(const GeneratorSet& gs, bool allow_large = false);

/// Exact planar circumradius by the angular vertex sweep (d = 2 only);
/// equals the enumerated value, at any n.
CircumradiusCertificate circumradius_planar(const GeneratorSet& gs);

/// Two-stage numerical estimate of the circumradius for n beyond the
/// enumeration budget: deterministic direction grid, then sign-fixpoint
/// ascent. A guaranteed lower bound; not a certificate.
double circumradius_numeric(const GeneratorSet& gs, int grid_points = 4096);

}  // namespace zonolab
