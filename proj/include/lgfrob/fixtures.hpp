#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lgfrob/polynomial.hpp"
#include "lgfrob/toric.hpp"

namespace lgfrob {

struct Fixture {
  std::string name;
  std::string description;
  FanData fan;
  std::vector<std::string> variables;
  std::string polynomial;
  // Declared degrees of the variables; class_group() must agree up to a
  // unimodular change of basis of Cl.
  std::vector<ClassElement> expected_degrees;
  ClassElement expected_beta;
  std::vector<std::vector<std::size_t>> zero_sets;  // subspaces V with Crit(f) in V
  std::optional<std::vector<std::size_t>> expected_dims;
  // Negative controls name the check they are meant to fail ("ample", "socle").
  std::optional<std::string> expected_failure;
  std::optional<std::int64_t> max_degree_a;
  std::vector<std::string> asserted_hypotheses;
};

// P^{r-1} with the Fermat polynomial; r >= 3. Named "projective-<r>".
Fixture fixture_projective(int r);
Fixture fixture_product_p1p1();
Fixture fixture_bundle_p2();
Fixture fixture_bundle_p6();
Fixture fixture_weighted_p112();
Fixture fixture_hirzebruch3();
Fixture fixture_degenerate_cubic();

std::vector<std::string> fixture_names();
// Throws InvalidInput for an unknown name.
Fixture make_fixture(const std::string& name);

}  // namespace lgfrob
