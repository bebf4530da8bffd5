#pragma once
// Uniform result record for counting / summatory sweeps, with deterministic
// JSON and CSV serialization and a commutative merge for parallel partials.

#include <complex>
#include <map>
#include <string>

#include "hyperlab/arith.hpp"

namespace hyperlab::analytics {

struct StatReport {
  std::string mode;
  i64 x_lo = 0, x_hi = 0;
  i64 count = 0;                      // exact integer tally
  double weighted_sum = 0.0;
  std::complex<double> complex_sum{0.0, 0.0};
  double reference = 0.0;             // denominator for the headline ratio
  double ratio = 0.0;
  // metadata["ratio_basis"] selects the numerator: "count", "weighted_sum",
  // or "complex_norm_over_count".
  std::map<std::string, std::string> metadata;
};

// Field-wise combination: counts and sums add, ranges take the hull,
// metadata is united (conflicting values raise invariant_error, so the
// operation stays commutative). Modes must agree.
StatReport merge(const StatReport& a, const StatReport& b);

// Recompute ratio from reference and the configured basis.
void finalize_ratio(StatReport& r);

std::string to_json(const StatReport& r);
StatReport from_json(const std::string& text);
std::string to_csv(const StatReport& r);
StatReport from_csv(const std::string& text);
std::string to_table(const StatReport& r);

}  // namespace hyperlab::analytics
