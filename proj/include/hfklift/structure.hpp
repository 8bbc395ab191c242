#pragma once

// Conformance of computed modules H_*(C_{i<0, j>=k}) with the shapes allowed
// for thickness one and thickness two knots.
//
// Both shapes are a low tower ending at -2, a tower starting at 2k, and a few
// short summands pinned to gradings k+rho-1, k+rho-2 (and k+rho-3 plus
// F[U]/U^2 summands at thickness two). The checker tries every admissible
// choice of the tower endpoints and accepts if the remaining summands all sit
// at allowed positions.

#include <optional>
#include <string>

#include "hfklift/homology.hpp"

namespace hfklift {

struct StructureFit {
  int thickness = 1;
  std::optional<int> low_tower_bottom;  // T_b|<=-2, absent when empty
  std::optional<int> high_tower_top;    // T_{2k}|<=t, absent when empty
  int r = 0;  // copies of F_{k+rho-1}[U]/U^2
  int a = 0;  // F_{k+rho-1}
  int b = 0;  // F_{k+rho-2}
  int c = 0;  // F_{k+rho-3}

  std::string to_string() const;
};

/// A parameter assignment matching `s`, or nullopt. Thickness must be 0, 1 or
/// 2; thickness zero uses the thickness-one shape.
std::optional<StructureFit> fit_structure(const SummandMultiset& s, int thickness, int k, int rho);

}  // namespace hfklift
