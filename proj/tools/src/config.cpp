#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ddsense/errors.hpp"

namespace ddsense::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_comment(const std::string& s) {
  std::size_t pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

double parse_double(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw ConfigError("config key '" + key + "': cannot parse '" + text +
                      "' as a number");
  return value;
}

long long parse_int(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  long long value = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw ConfigError("config key '" + key + "': cannot parse '" + text +
                      "' as an integer");
  return value;
}

std::vector<std::string> split_list(std::string text) {
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream in(text);
  std::vector<std::string> items;
  std::string item;
  while (in >> item) items.push_back(item);
  return items;
}

}  // namespace

bool ConfigMap::has(const std::string& key) const {
  return values_.count(key) != 0;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

std::string ConfigMap::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(key, it->second);
}

long long ConfigMap::get_int(const std::string& key, long long fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_int(key, it->second);
}

std::uint64_t ConfigMap::get_uint64(const std::string& key,
                                    std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long value = parse_int(key, it->second);
  if (value < 0)
    throw ConfigError("config key '" + key + "': must be non-negative");
  return static_cast<std::uint64_t>(value);
}

std::vector<double> ConfigMap::get_doubles(
    const std::string& key, const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const std::string& item : split_list(it->second))
    out.push_back(parse_double(key, item));
  if (out.empty())
    throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::vector<long long> ConfigMap::get_ints(
    const std::string& key, const std::vector<long long>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<long long> out;
  for (const std::string& item : split_list(it->second))
    out.push_back(parse_int(key, item));
  if (out.empty())
    throw ConfigError("config key '" + key + "': empty list");
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  ConfigMap config;
  std::string line, section;
  int line_no = 0;
  auto fail = [&](const std::string& message) {
    throw ConfigError(path + ":" + std::to_string(line_no) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(strip_comment(line));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') fail("unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      if (section.empty()) fail("empty section name");
      continue;
    }
    std::size_t eq = text.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (section.empty()) fail("key outside of any [section]");
    config.set(section + "." + key, value);
  }
  return config;
}

void apply_override(ConfigMap& config, const std::string& assignment) {
  std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment +
                      "' is not of the form section.key=value");
  std::string key = trim(assignment.substr(0, eq));
  std::string value = trim(assignment.substr(eq + 1));
  if (key.find('.') == std::string::npos)
    throw ConfigError("override key '" + key + "' must be section.key");
  config.set(key, value);
}

std::uint64_t config_hash(const ConfigMap& config) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](const std::string& text) {
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 0x100000001b3ull;
    }
  };
  for (const auto& [key, value] : config.values()) {
    if (key == "run.threads" || key.ends_with("output")) continue;
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return hash;
}

std::string to_hex(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace ddsense::cli
