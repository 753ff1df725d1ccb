#pragma once

#include <map>
#include <string>

#include "zevrpp/fit/softmax_affine.hpp"

namespace zevrpp::fit {

struct FitRecord {
  SoftmaxAffineFit fit;
  double lo = 0.0;  // 1-D fit range, informational
  double hi = 0.0;
};

using FitTable = std::map<std::string, FitRecord>;

// INI file, one section per fit: K, n, alpha, a (row-major), b, rmse_log, lo, hi.
void save_fits(const std::string& path, const FitTable& fits);
FitTable load_fits(const std::string& path);

}  // namespace zevrpp::fit
