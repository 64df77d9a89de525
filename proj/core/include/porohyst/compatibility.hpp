#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "porohyst/scenario.hpp"

namespace porohyst {

enum class CheckStatus { pass, warn, fail };
const char* status_name(CheckStatus status);

struct CompatibilityItem {
  std::string name;
  CheckStatus status;
  double measure;  // largest violation found (0 when none)
  std::string detail;
};

/// Initial-data compatibility:
///   (i)   lambda(x, 0) = u0 (play input units), 1-Lipschitz memory vanishing at Lambda; fail when violated
///   (ii)  theta0 from the threshold quadrature agrees with a refined quadrature of the same memory; warn
///   (iii) -kappa (grad u0 + nu) . n = b* (u0 - u*(0)) at boundary facets; warn
///   (iv)  -d lambda / dr near r = 0 lies in sign(div(kappa (grad u0 + nu)) + v0 - u0); warn
struct CompatibilityReport {
  std::vector<CompatibilityItem> items;
  bool ok() const noexcept;     // no failures
  bool clean() const noexcept;  // everything passes
  const CompatibilityItem& item(const std::string& name) const;
};

CompatibilityReport validate_compatibility(const Problem& problem);

void print_report(std::ostream& out, const CompatibilityReport& report);

}  // namespace porohyst
