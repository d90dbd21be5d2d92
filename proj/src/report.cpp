#include "zw/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace zw {

namespace {

using nlohmann::ordered_json;

std::string r_string(const CheckItem& it) { return it.r ? std::to_string(*it.r) : "-"; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

}  // namespace

ReportSummary summarize(const std::vector<CheckItem>& items) {
  ReportSummary s;
  for (const auto& it : items) {
    switch (it.status) {
      case CheckStatus::passed: ++s.passed; break;
      case CheckStatus::failed: ++s.failed; break;
      case CheckStatus::skipped: ++s.skipped; break;
      case CheckStatus::informational: ++s.informational; break;
    }
  }
  return s;
}

std::string render_json(const std::vector<CheckItem>& items, const CheckConfig& config) {
  ordered_json doc;
  doc["config"] = {{"precision_bits", config.bits},
                   {"tolerance", config.tol},
                   {"seed", config.seed},
                   {"field", config.field ? ordered_json(*config.field) : ordered_json(nullptr)},
                   {"r", config.r ? ordered_json(*config.r) : ordered_json(nullptr)}};
  const ReportSummary s = summarize(items);
  doc["summary"] = {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}, {"informational", s.informational}};
  ordered_json arr = ordered_json::array();
  for (const auto& it : items) {
    ordered_json j;
    j["check"] = it.check;
    j["field"] = it.field.empty() ? ordered_json(nullptr) : ordered_json(it.field);
    j["r"] = it.r ? ordered_json(*it.r) : ordered_json(nullptr);
    j["lhs"] = it.lhs;
    j["rhs"] = it.rhs;
    j["log2_ratio"] = it.log2_ratio ? ordered_json(*it.log2_ratio) : ordered_json(nullptr);
    j["k"] = it.k ? ordered_json(*it.k) : ordered_json(nullptr);
    j["passed"] = it.status == CheckStatus::passed;
    j["status"] = to_string(it.status);
    j["sources"] = it.sources;
    j["notes"] = it.notes;
    arr.push_back(std::move(j));
  }
  doc["items"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<CheckItem>& items) {
  std::ostringstream os;
  os << "check,field,r,lhs,rhs,log2_ratio,k,status,sources,notes\n";
  for (const auto& it : items) {
    os << csv_escape(it.check) << ',' << csv_escape(it.field) << ',' << (it.r ? std::to_string(*it.r) : "") << ','
       << csv_escape(it.lhs) << ',' << csv_escape(it.rhs) << ','
       << (it.log2_ratio ? fixed(*it.log2_ratio, 17) : "") << ',' << (it.k ? std::to_string(*it.k) : "") << ','
       << to_string(it.status) << ',' << csv_escape(join(it.sources, "; ")) << ',' << csv_escape(it.notes) << '\n';
  }
  return os.str();
}

std::string render_text(const std::vector<CheckItem>& items) {
  const std::vector<std::string> header{"check", "field", "r", "status", "k", "log2 ratio", "lhs", "rhs"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& it : items) {
    rows.push_back({it.check, it.field.empty() ? "-" : it.field, r_string(it), to_string(it.status),
                    it.k ? std::to_string(*it.k) : "-", it.log2_ratio ? fixed(*it.log2_ratio, 12) : "-", it.lhs,
                    it.rhs});
  }
  std::vector<size_t> width(header.size());
  for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  // lhs and rhs stay unpadded; they can be long.
  for (const auto& row : rows)
    for (size_t c = 0; c + 2 < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& row) {
    for (size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(c + 2 < row.size() ? width[c] - row[c].size() + 2 : 2, ' ');
    }
    os << '\n';
  };
  emit(header);
  for (size_t i = 0; i < rows.size(); ++i) {
    emit(rows[i]);
    if (!items[i].notes.empty() && items[i].status != CheckStatus::passed) os << "    " << items[i].notes << '\n';
  }
  const ReportSummary s = summarize(items);
  os << '\n'
     << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped, " << s.informational
     << " informational\n";
  return os.str();
}

}  // namespace zw
