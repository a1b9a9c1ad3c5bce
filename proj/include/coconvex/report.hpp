#ifndef COCONVEX_REPORT_HPP
#define COCONVEX_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace coconvex {

// Outcome of one inequality or audit check. Orientation is normalized so
// that slack = right - left >= 0 means the relation holds.
struct CheckReport {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  double slack = 0.0;
  // slack >= -1e-8 * max(1, |right|).
  bool pass = false;
  // |slack| <= 1e-6 * max(1, |right|).
  bool equality = false;
  // The operands were detected to be dilates of each other (support
  // vectors proportional within 1e-8 relative).
  bool dilation_detected = false;
  // Compact JSON describing the instance, reproducible from the seed.
  std::string fingerprint;
  std::string notes;
  // Named auxiliary values (probe supports, residuals, witnesses).
  std::vector<std::pair<std::string, double>> extras;

  double extra(const std::string& key) const;
  bool has_extra(const std::string& key) const;
};

CheckReport make_report(std::string name, double left, double right,
                        std::string fingerprint = "");

}  // namespace coconvex

#endif
