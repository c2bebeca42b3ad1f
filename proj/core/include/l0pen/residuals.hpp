#pragma once

#include "l0pen/types.hpp"

namespace l0pen {

/// max_i |x_i| y_i (0 for empty input).
double complementarity(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y);

/// sum_i |x_i| y_i; equals <|C|, Y>_F when x, y are vectorized matrices.
double complementarity_sum(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& y);

}  // namespace l0pen
