#pragma once

#include <string>
#include <vector>

#include "nodim/certificate.hpp"

namespace nodim {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool ok() const;
  /// One line per check: PASS/FAIL, name, measured vs bound, detail.
  std::string format() const;
};

struct VerifyOptions {
  /// Hull-distance checks run only up to this many points.
  std::size_t hull_limit = 5000;
  /// Exact depth checks (planar or via a <= 2 dimensional W) up to this size.
  std::size_t depth_limit = 1000;
};

/// `inputs` holds one point set for tverberg, k sets for hamsandwich.
VerifyReport verify_certificate(const CertificateDocument& doc, const std::vector<PointSet>& inputs,
                                const VerifyOptions& options = {});
VerifyReport verify_certificate(const CertificateDocument& doc, const ColorInstance& instance,
                                const VerifyOptions& options = {});

}  // namespace nodim
