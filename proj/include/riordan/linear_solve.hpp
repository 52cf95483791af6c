#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riordan/fps.hpp"

namespace riordan {

// One affine functional equation L(x) = 0 in an unknown series x, imposed on
// coefficients 0..max_degree of L(x).
struct LinearEquation {
  std::function<Fps(const Fps&)> apply;
  std::size_t max_degree = 0;
};

struct LinearSolveOutcome {
  std::optional<Fps> solution;
  // Smallest degree at which the equations up to that degree are inconsistent.
  std::optional<std::size_t> inconsistent_degree;
  std::vector<std::string> log;
};

// Solves the equations degree by degree with exact Gauss-Jordan elimination.
// `seeds` pin individual coefficients (degree, value). Coefficients left free
// by all equations are set to zero.
LinearSolveOutcome solve_linear_series(std::size_t order, std::span<const LinearEquation> equations,
                                       std::span<const std::pair<std::size_t, Rational>> seeds);

}  // namespace riordan
