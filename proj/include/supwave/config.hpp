#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace supwave {

// Flat key = value configuration (a TOML-compatible subset): numbers,
// booleans, quoted or bare strings, arrays of numbers, # comments.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::uint64_t u64(const std::string& key, std::uint64_t fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  std::vector<double> list(const std::string& key, std::vector<double> fallback) const;

  void override_value(const std::string& key, const std::string& literal);

  // typo guard: every present key must have been read by one of the getters
  void ensure_all_consumed() const;

 private:
  struct Value {
    enum class Kind { number, boolean, string, list } kind = Kind::number;
    double number = 0;
    bool flag = false;
    std::string text;
    std::vector<double> items;
  };
  std::map<std::string, Value> values_;
  mutable std::set<std::string> consumed_;

  const Value* find(const std::string& key) const;
};

}  // namespace supwave
