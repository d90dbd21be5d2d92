#pragma once

// Rendering of check items as JSON, CSV or an aligned text table.  Output
// depends only on the items and the configuration, never on timing or the
// number of workers.

#include <string>
#include <vector>

#include "zw/conjecture.hpp"

namespace zw {

struct ReportSummary {
  long passed = 0;
  long failed = 0;
  long skipped = 0;
  long informational = 0;
  bool ok() const { return failed == 0; }
};

ReportSummary summarize(const std::vector<CheckItem>& items);

std::string render_json(const std::vector<CheckItem>& items, const CheckConfig& config);
std::string render_csv(const std::vector<CheckItem>& items);
std::string render_text(const std::vector<CheckItem>& items);

}  // namespace zw
