#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ddsense::cli {

// Flat "section.key" -> value map built from an INI-style file plus
// command-line overrides. Lookups parse on demand and report the offending
// key and text on failure.
class ConfigMap {
 public:
  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_uint64(const std::string& key,
                           std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<long long> get_ints(
      const std::string& key, const std::vector<long long>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Parses `[section]` / `key = value` lines; `#` and `;` start comments.
// Throws ConfigError with "path:line:" prefixes.
ConfigMap load_config_file(const std::string& path);

// Applies one "section.key=value" assignment.
void apply_override(ConfigMap& config, const std::string& assignment);

// FNV-1a over the sorted effective entries. run.threads and output-path
// keys are excluded so the same logical run hashes identically however it
// is laid out on disk or parallelized.
std::uint64_t config_hash(const ConfigMap& config);

std::string to_hex(std::uint64_t value);

}  // namespace ddsense::cli
