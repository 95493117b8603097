#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgfrob/grading.hpp"
#include "lgfrob/matrix.hpp"
#include "lgfrob/polynomial.hpp"

namespace lgfrob {

using IntVector = std::vector<std::int64_t>;

// Simplicial fan: r primitive rays in Z^m and the maximal cones as sets of m
// ray indices.
struct FanData {
  std::size_t dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<std::size_t>> max_cones;

  std::size_t ray_count() const noexcept { return rays.size(); }
  IntMatrix ray_matrix() const;  // r x m, one ray per row

  // Throws InvalidInput on malformed shapes or out-of-range indices. Cone
  // index lists are sorted in place.
  void normalize();
};

// pass == false always comes with a witness naming the offending cone, ray
// or pairing value.
struct Check {
  bool pass = true;
  std::string witness;

  void fail(std::string w) {
    if (pass) witness = std::move(w);
    pass = false;
  }
};

struct ValidationReport {
  Check primitive;
  Check simplicial;
  Check complete;
  Check gorenstein;
  Check ample;
  Check torsion_free;
  // m_sigma per maximal cone (empty when the cone is not simplicial).
  std::vector<std::vector<Rational>> cone_vertices;

  bool all_pass() const {
    return primitive.pass && simplicial.pass && complete.pass && gorenstein.pass && ample.pass &&
           torsion_free.pass;
  }
};

ValidationReport validate_fan(const FanData& fan);

// Smith form of the ray matrix; the degree matrix is put in Hermite normal
// form. Throws TorsionClassGroup, or InvalidInput when the rays do not span.
GradingMap class_group(const FanData& fan);

// The polytope {m : <m, rho_i> >= -1} with one vertex m_sigma per maximal
// cone (cones sharing a vertex are merged).
struct AnticanPolytope {
  std::size_t dim = 0;
  std::vector<IntVector> normals;                 // the rays rho_i
  std::vector<IntVector> vertices;                // sorted lexicographically
  std::vector<std::size_t> vertex_of_cone;        // index into vertices
  std::vector<std::vector<std::size_t>> cones;    // maximal cones of the normal fan
};

// Throws NotReflexivePipeline when some m_sigma is fractional or violates an
// inequality.
AnticanPolytope anticanonical_polytope(const FanData& fan);

// m! Vol(Delta), summed over the pulling triangulation of the boundary coned
// from the origin. Throws DegeneratePolytope on zero volume.
Integer normalized_volume(const AnticanPolytope& polytope);

// b_0 ... b_{2m}; odd entries are zero.
std::vector<Integer> betti_numbers(const FanData& fan);

enum class ExtraIsomStatus { TriviallyHolds, NecessaryConditionOK, NecessaryConditionFails };

struct ExtraIsomResult {
  ExtraIsomStatus status = ExtraIsomStatus::TriviallyHolds;
  Integer b_below;  // b_{m-2}
  Integer b_middle; // b_m
};

// H^{m-2}(P) -> H^m(P) can only be an isomorphism if the Betti numbers agree;
// for odd m both groups vanish.
ExtraIsomResult extraisom_necessary_check(const FanData& fan);
std::string to_string(ExtraIsomStatus s);

// All monomials of class alpha, in MonomialOrder. Enumerates the fiber
// u0 + P m' over the polytope {m' : u0 + P m' >= 0} for one integer solution
// u0 of deg(u0) = alpha.
std::vector<Monomial> monomial_basis(const GradingMap& g, const FanData& fan, const ClassElement& alpha);

// Unimodular G with G * from[i] == to[i] for every i, if one exists.
std::optional<IntMatrix> unimodular_transform(const std::vector<ClassElement>& from,
                                              const std::vector<ClassElement>& to);

// Standard projective space fan: rays e_1..e_{r-1}, -(e_1+...+e_{r-1}) in
// some order, every (r-1)-subset a cone. Used to admit the Hessian trace.
bool is_standard_projective_fan(const FanData& fan, const GradingMap& g);

}  // namespace lgfrob
