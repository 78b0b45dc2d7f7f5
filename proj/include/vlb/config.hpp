#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vlb {

/// Flat `key = value` configuration text: one pair per line, `#` comments,
/// blank lines ignored. Every key must be consumed by a typed getter;
/// finish() rejects unknown keys.
class KeyValueConfig {
 public:
  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  long get_long(const std::string& key, long fallback);
  int get_int(const std::string& key, int fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback);

  /// Throws if any key was never consumed (unknown keys are errors).
  void finish() const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  const std::string* find(const std::string& key);
  std::vector<std::pair<std::string, std::string>> entries_;
  std::set<std::string> consumed_;
};

}  // namespace vlb
