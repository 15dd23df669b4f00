#pragma once

#include "ipad/types.hpp"

#include <optional>

namespace ipad {

// Elementwise prox of lambda*||.||_0 + indicator of the box [-box, box] with
// weight tau: the kept candidate is clamp(v) and it wins only when
// lambda + (tau/2)(clamp(v) - v)^2 < (tau/2) v^2. Ties resolve to 0.
double prox_hard_threshold(double v, double tau, double lambda,
                           std::optional<double> box);
Matrix prox_hard_threshold(const Matrix& v, double tau, double lambda,
                           std::optional<double> box);

// Nearest matrix with unit-norm columns; zero columns map to e_1.
Matrix project_unit_columns(const Matrix& d);

}  // namespace ipad
