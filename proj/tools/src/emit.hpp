#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ddsense/sweep.hpp"

namespace ddsense::cli {

struct Meta {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

// "%.9g" with '.' decimal regardless of locale; nan prints as "nan".
std::string format_double(double value);

// The '#' metadata header every output file starts with.
void write_meta(std::ostream& out, const Meta& meta);

void write_table_csv(std::ostream& out, const SweepResult& table);
void write_table_json(std::ostream& out, const SweepResult& table);

// Dispatches on format ("csv" or "json"), meta header first.
void write_table(std::ostream& out, const Meta& meta, const SweepResult& table,
                 const std::string& format);

}  // namespace ddsense::cli
