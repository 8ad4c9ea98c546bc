#include "avsum/nn/gradcheck.hpp"

#include <cmath>

namespace avsum::nn {

GradCheckReport gradcheck(const std::function<double()>& eval,
                          const std::vector<CheckTarget>& targets, double tolerance,
                          double step) {
  GradCheckReport report;
  for (const auto& target : targets) {
    if (!target.analytic->allFinite())
      throw ValidationError("gradcheck: non-finite analytic gradient in " + target.name);

    Mat& value = *target.value;
    for (Eigen::Index j = 0; j < value.cols(); ++j) {
      for (Eigen::Index i = 0; i < value.rows(); ++i) {
        const double saved = value(i, j);
        value(i, j) = saved + step;
        const double up = eval();
        value(i, j) = saved - step;
        const double down = eval();
        value(i, j) = saved;

        const double numeric = (up - down) / (2.0 * step);
        const double analytic = (*target.analytic)(i, j);
        const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
        const double rel = std::abs(numeric - analytic) / denom;
        if (rel > report.max_rel_err) {
          report.max_rel_err = rel;
          report.worst_target = target.name;
          report.worst_row = i;
          report.worst_col = j;
        }
      }
    }
  }
  report.pass = report.max_rel_err <= tolerance;
  return report;
}

}  // namespace avsum::nn
