#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fhp/common.hpp"

namespace fhp {

/**
 * Structured-text run report: `key: value` lines in a fixed emission order,
 * floats at 17 significant digits, so regenerating a report from its own
 * embedded configuration reproduces it byte for byte. Timing lives after the
 * `# volatile` marker and is excluded from reproducibility comparisons.
 */
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, fmt17(value)); }
  void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }

  void add_vector(const std::string& key, std::span<const double> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += fmt17(v[i]);
    }
    add(key, s);
  }

  void add_volatile(const std::string& key, const std::string& value) {
    volatile_entries_.emplace_back(key, value);
  }
  void add_volatile(const std::string& key, double value) { add_volatile(key, fmt17(value)); }

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return &v;
    return nullptr;
  }

  const std::string& require(const std::string& key) const {
    if (const std::string* v = find(key)) return *v;
    throw input_error("report: missing key '" + key + "'");
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void render(std::ostream& os) const {
    os << "fhp report v1\n";
    for (const auto& [k, v] : entries_) os << k << ": " << v << "\n";
    if (!volatile_entries_.empty()) {
      os << "# volatile\n";
      for (const auto& [k, v] : volatile_entries_) os << k << ": " << v << "\n";
    }
  }

  std::string canonical_text() const {
    std::ostringstream os;
    os << "fhp report v1\n";
    for (const auto& [k, v] : entries_) os << k << ": " << v << "\n";
    return os.str();
  }

  static Report parse(std::istream& is) {
    Report r;
    std::string line;
    if (!std::getline(is, line) || line != "fhp report v1")
      throw input_error("report: bad or missing header line");
    bool in_volatile = false;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line == "# volatile") {
        in_volatile = true;
        continue;
      }
      const auto sep = line.find(": ");
      if (sep == std::string::npos) throw input_error("report: bad line: " + line);
      if (in_volatile)
        r.volatile_entries_.emplace_back(line.substr(0, sep), line.substr(sep + 2));
      else
        r.entries_.emplace_back(line.substr(0, sep), line.substr(sep + 2));
    }
    return r;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::pair<std::string, std::string>> volatile_entries_;
};

inline void save_report(const std::string& path, const Report& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open for writing: " + path);
  r.render(out);
}

inline Report load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open: " + path);
  return Report::parse(in);
}

inline std::vector<double> parse_vector(const std::string& text) {
  std::istringstream ss(text);
  std::vector<double> v;
  double x;
  while (ss >> x) v.push_back(x);
  return v;
}

}  // namespace fhp
