#pragma once

#include <vector>

namespace sagsim {

double mean(const std::vector<double>& xs);

/// Standard error of the mean (sample std / sqrt(n)); 0 for n < 2.
double stderr_of_mean(const std::vector<double>& xs);

/// Spearman rank correlation with average ranks on ties. Returns 0 when
/// either side is constant.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// One-sided paired t statistic for mean(a - b) > 0. Returns 0 when the
/// differences are all identical and zero, +inf when they are constant > 0.
double paired_t_statistic(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace sagsim
