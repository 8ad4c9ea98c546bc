#pragma once

#include <functional>
#include <string>
#include <vector>

#include "avsum/common.hpp"

namespace avsum::nn {

// One differentiable quantity to verify: the matrix that will be perturbed
// and the analytic gradient the backward pass produced for it. Works for
// parameters and for inputs alike.
struct CheckTarget {
  std::string name;
  Mat* value;
  const Mat* analytic;
};

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_target;
  Eigen::Index worst_row = 0;
  Eigen::Index worst_col = 0;
  bool pass = false;
};

// Central finite differences against the recorded analytic gradients.
// `eval` must recompute the scalar objective from the current contents of
// every target. Relative error uses max(|analytic|, |numeric|, 1e-6) as the
// denominator. Throws ValidationError on non-finite analytic gradients.
GradCheckReport gradcheck(const std::function<double()>& eval,
                          const std::vector<CheckTarget>& targets, double tolerance,
                          double step = 1e-5);

}  // namespace avsum::nn
