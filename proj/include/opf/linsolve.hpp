#pragma once

#include <optional>
#include <vector>

#include "opf/rat.hpp"

namespace opf {

using RatMatrix = std::vector<std::vector<Rat>>;

struct LinearSolution {
  std::vector<Rat> particular;             // free variables set to zero
  std::vector<std::vector<Rat>> nullspace;  // first nonzero entry of each vector is 1
};

/// Solves A y = b exactly by Gauss-Jordan elimination; nullopt if inconsistent.
std::optional<LinearSolution> solveLinear(RatMatrix A, std::vector<Rat> b);

}  // namespace opf
