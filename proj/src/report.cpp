#include "coconvex/report.hpp"

#include <cmath>

#include "coconvex/geometry.hpp"

namespace coconvex {

double CheckReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "no extra named " + key);
}

bool CheckReport::has_extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return true;
  }
  return false;
}

CheckReport make_report(std::string name, double left, double right, std::string fingerprint) {
  CheckReport r;
  r.name = std::move(name);
  r.left = left;
  r.right = right;
  r.slack = right - left;
  const double scale = std::max(1.0, std::abs(right));
  r.pass = r.slack >= -kViolationTol * scale;
  r.equality = std::abs(r.slack) <= kEqualityTol * scale;
  r.fingerprint = std::move(fingerprint);
  return r;
}

}  // namespace coconvex
