#ifndef GALCOUNT_VERIFY_HPP
#define GALCOUNT_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace galcount {

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full acceptance suite, printing one pass/fail line per criterion.
/// Returns the results; all-passed iff every entry has passed == true.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

/// Locates a bundled data file: $GALCOUNT_DATA/<name>, else data/<name>,
/// else ../data/<name>. Throws input_error if none exists.
std::string locate_data_file(const std::string& name);

} // namespace galcount

#endif
