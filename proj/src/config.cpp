#include "supwave/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace supwave {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    // strip comments outside quotes
    std::string stripped;
    bool in_quote = false;
    for (char ch : line) {
      if (ch == '"') in_quote = !in_quote;
      if (ch == '#' && !in_quote) break;
      stripped.push_back(ch);
    }
    stripped = trim(stripped);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string raw = trim(stripped.substr(eq + 1));
    if (key.empty() || raw.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key or value");
    cfg.override_value(key, raw);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_string(ss.str());
}

void Config::override_value(const std::string& key, const std::string& literal) {
  Value v;
  const std::string raw = trim(literal);
  double num;
  if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::boolean;
    v.flag = raw == "true";
  } else if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') throw std::invalid_argument("config value for '" + key + "': unterminated array");
    v.kind = Value::Kind::list;
    std::string body = raw.substr(1, raw.size() - 2);
    std::istringstream bs(body);
    std::string item;
    while (std::getline(bs, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      double x;
      if (!parse_number(item, x))
        throw std::invalid_argument("config value for '" + key + "': non-numeric array item '" + item + "'");
      v.items.push_back(x);
    }
  } else if (!raw.empty() && raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"')
      throw std::invalid_argument("config value for '" + key + "': unterminated string");
    v.kind = Value::Kind::string;
    v.text = raw.substr(1, raw.size() - 2);
  } else if (parse_number(raw, num)) {
    v.kind = Value::Kind::number;
    v.number = num;
  } else {
    v.kind = Value::Kind::string;  // bare word
    v.text = raw;
  }
  values_[key] = std::move(v);
}

const Config::Value* Config::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

double Config::num(const std::string& key, double fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::number)
    throw std::invalid_argument("config key '" + key + "' must be a number");
  return v->number;
}

int Config::integer(const std::string& key, int fallback) const {
  const double v = num(key, fallback);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 1e-9) throw std::invalid_argument("config key '" + key + "' must be an integer");
  return i;
}

std::uint64_t Config::u64(const std::string& key, std::uint64_t fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::number)
    throw std::invalid_argument("config key '" + key + "' must be a number");
  if (v->number < 0) throw std::invalid_argument("config key '" + key + "' must be nonnegative");
  return static_cast<std::uint64_t>(v->number);
}

bool Config::boolean(const std::string& key, bool fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::boolean)
    throw std::invalid_argument("config key '" + key + "' must be true or false");
  return v->flag;
}

std::string Config::str(const std::string& key, const std::string& fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->kind != Value::Kind::string)
    throw std::invalid_argument("config key '" + key + "' must be a string");
  return v->text;
}

std::vector<double> Config::list(const std::string& key, std::vector<double> fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (v->kind == Value::Kind::number) return {v->number};
  if (v->kind != Value::Kind::list)
    throw std::invalid_argument("config key '" + key + "' must be an array of numbers");
  return v->items;
}

void Config::ensure_all_consumed() const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    if (!consumed_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty())
    throw std::invalid_argument("unknown config key(s): " + unknown);
}

}  // namespace supwave
