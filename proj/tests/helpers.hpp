#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oxcal/errors.hpp"

namespace oxtest {

// Two-sample Kolmogorov-Smirnov statistic (sup |F1 - F2|).
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// Critical value of the two-sample KS test at level alpha.
inline double ks_critical(double alpha, std::size_t n1, std::size_t n2) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt((static_cast<double>(n1) + static_cast<double>(n2)) /
                       (static_cast<double>(n1) * static_cast<double>(n2)));
}

// RAII hook collecting oxcal warnings for assertions.
class WarningCapture {
 public:
  WarningCapture() {
    messages().clear();
    oxcal::set_warning_handler(&WarningCapture::collect);
  }
  ~WarningCapture() { oxcal::set_warning_handler(nullptr); }

  static std::vector<std::string>& messages() {
    static std::vector<std::string> msgs;
    return msgs;
  }

 private:
  static void collect(const std::string& m) { messages().push_back(m); }
};

}  // namespace oxtest
