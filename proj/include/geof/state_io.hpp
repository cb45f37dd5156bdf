// JSON input for two-mode Gaussian states. Exactly one of the keys
// "matrix" (4x4 row-major), "standard_form" {a,b,c1,c2} or
// "purity_params" {mu_a,mu_b,mu,beta} must be present.
#pragma once

#include <optional>
#include <string>

#include "geof/state.hpp"

namespace geof {

struct LoadedState {
  CovarianceMatrix cov = expand(StandardForm{});
  StandardForm sf;
  std::optional<PurityParams> params;
};

LoadedState parse_state_json(const std::string& text);
LoadedState load_state_json(const std::string& path);

}  // namespace geof
