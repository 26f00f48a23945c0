#pragma once

#include "zonolab/geometry.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace zonolab {

/// A zonotope Z = sum of segments [o, p_i], held as its ordered generators.
/// Immutable by convention: operations return fresh sets.
struct GeneratorSet {
    int dim = 0;
    std::vector<Vec> generators;
    std::optional<std::string> label;

    int size() const { return static_cast<int>(generators.size()); }
};

/// Throws DimensionError unless dim >= 1, n >= 1, all generators finite and
/// of matching dimension.
void check_valid(const GeneratorSet& gs);

/// Generators with |p_i| <= 1e-12 * max_j |p_j| are "zero": kept in the set
/// but skipped by every functional.
std::vector<int> nonzero_indices(const GeneratorSet& gs);
bool has_zero_generators(const GeneratorSet& gs);

bool full_dimensional(const GeneratorSet& gs);

struct ZonotopeClassification {
    bool is_equilateral = false;
    double common_length = 0.0;  // meaningful when is_equilateral
    bool is_unit_edge = false;
    bool is_centered = false;
    bool is_cubical_candidate = false;  // every <= d generators independent
    bool full_dimensional = false;
    int zero_generators = 0;
};

ZonotopeClassification classify(const GeneratorSet& gs);

GeneratorSet make_cube(int d, double edge);

/// d+1 generators of the given length forming the vertex set of a regular
/// simplex centered at o: pairwise inner products -edge^2/d, zero sum.
GeneratorSet make_regular_rhombic_dodecahedron(int d, double edge);

/// n planar generators, the k-th at angle k*pi/n; the zonotope is a regular
/// 2n-gon of the given edge length.
GeneratorSet make_regular_zonogon(int n, double edge);

struct CenteredForm {
    GeneratorSet gs;  // same generators; centering is a translation of the body
    Vec translate;    // (1/2) sum p_i
};
CenteredForm center(const GeneratorSet& gs);

/// Orthogonal projection onto u^perp, coordinates in a deterministic
/// orthonormal basis (Gram-Schmidt over the standard basis, skipping the
/// coordinate where |u| is largest). Keeps n; projected zeros stay zero.
GeneratorSet project(const GeneratorSet& gs, const Vec& u);

/// Projection body: one generator 2*|p_I| * u_I per (d-1)-subset I, u_I the
/// canonicalized unit normal. Requires full dimension and general position
/// (every (d-1)-subset independent); coplanar facets are refused, not merged.
GeneratorSet projection_body(const GeneratorSet& gs);

/// n i.i.d. uniform points on S^{d-1}; bit-identical for identical
/// (seed, n, d) under kRngVersion.
GeneratorSet random_unit_generators(int n, int d, std::uint64_t seed);

// JSON schema (bit-exact round trip):
//   { "dim": int, "label": string|null, "generators": [[float x d], ...] }
nlohmann::json generator_set_to_json(const GeneratorSet& gs);
GeneratorSet generator_set_from_json(const nlohmann::json& j);
std::string generator_set_digest(const GeneratorSet& gs);

}  // namespace zonolab
