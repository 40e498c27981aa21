#pragma once

#include <string>

#include "toda/rationalfn.hpp"

namespace toda {

/// Outcome of one identity verification; both sides are retained for
/// failure diagnosis.
struct Report {
  std::string identity;
  std::string params;
  bool holds = false;
  RationalFn lhs, rhs;
  double runtime_ms = 0.0;
  bool asserted = true;  // false for conjectural instances that are only recorded
};

}  // namespace toda
