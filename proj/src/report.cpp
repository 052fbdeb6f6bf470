#include "toricq/report.hpp"

#include <sstream>

namespace toricq {

using nlohmann::json;

Report::Report(std::string command, unsigned long long seed) : command_(std::move(command)), seed_(seed) {}

Report::Section& Report::current() {
  if (sections_.empty()) sections_.push_back(Section{"general"});
  return sections_.back();
}

void Report::section(const std::string& title) { sections_.push_back(Section{title}); }

void Report::verdict(const std::string& key, bool ok, const std::string& notion, const std::string& detail) {
  json e = {{"kind", "verdict"}, {"key", key}, {"ok", ok}, {"notion", notion}};
  if (!detail.empty()) e["detail"] = detail;
  current().entries.push_back(std::move(e));
  if (!ok) ++failures_;
}

void Report::value(const std::string& key, const json& v) {
  current().entries.push_back({{"kind", "value"}, {"key", key}, {"value", v}});
}

void Report::note(const std::string& text) { current().entries.push_back({{"kind", "note"}, {"text", text}}); }

std::string Report::text() const {
  std::ostringstream os;
  os << "toricq report v" << kReportFormatVersion << "\n";
  os << "command: " << command_ << "\n";
  os << "seed: " << seed_ << "\n";
  for (const auto& s : sections_) {
    os << "\n== " << s.title << " ==\n";
    for (const auto& e : s.entries) {
      const std::string kind = e.at("kind");
      if (kind == "verdict") {
        os << (e.at("ok").get<bool>() ? "[PASS] " : "[FAIL] ") << e.at("key").get<std::string>() << "  ("
           << e.at("notion").get<std::string>() << ")\n";
        if (e.contains("detail")) os << "       " << e.at("detail").get<std::string>() << "\n";
      } else if (kind == "value") {
        const json& v = e.at("value");
        os << "  " << e.at("key").get<std::string>() << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
           << "\n";
      } else {
        os << "  note: " << e.at("text").get<std::string>() << "\n";
      }
    }
  }
  os << "\noutcome: " << (passed() ? "pass" : "fail") << " (" << failures_ << " failed verdicts)\n";
  return os.str();
}

nlohmann::json Report::document() const {
  nlohmann::json doc;
  doc["format"] = "toricq-report";
  doc["version"] = kReportFormatVersion;
  doc["command"] = command_;
  doc["seed"] = seed_;
  doc["sections"] = nlohmann::json::array();
  for (const auto& s : sections_) doc["sections"].push_back({{"title", s.title}, {"entries", s.entries}});
  doc["outcome"] = passed() ? "pass" : "fail";
  doc["failed_verdicts"] = failures_;
  return doc;
}

}  // namespace toricq
