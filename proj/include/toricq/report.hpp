#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace toricq {

inline constexpr int kReportFormatVersion = 1;

/**
 * Report of one command run, rendered both as plain text and as JSON.
 *
 * Entries are kept in insertion order and both renderings depend only on the
 * recorded content, so identical runs give byte-identical output. Each
 * verdict names the notion it checks.
 */
class Report {
 public:
  Report(std::string command, unsigned long long seed);

  void section(const std::string& title);
  /// A checked statement; any failed verdict makes the run negative.
  void verdict(const std::string& key, bool ok, const std::string& notion, const std::string& detail = "");
  /// Recorded fact, not a pass/fail statement.
  void value(const std::string& key, const nlohmann::json& v);
  void note(const std::string& text);

  bool passed() const { return failures_ == 0; }
  std::size_t failures() const { return failures_; }

  std::string text() const;
  nlohmann::json document() const;

 private:
  struct Section {
    std::string title;
    nlohmann::json entries = nlohmann::json::array();
  };
  std::string command_;
  unsigned long long seed_;
  std::vector<Section> sections_;
  std::size_t failures_ = 0;

  Section& current();
};

}  // namespace toricq
