#include "emit.hpp"

#include <cmath>
#include <cstdio>

#include "ddsense/errors.hpp"
#include "ddsense/version.hpp"
#include "config.hpp"

namespace ddsense::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  for (char& c : buf)
    if (c == ',') c = '.';
  return buf;
}

void write_meta(std::ostream& out, const Meta& meta) {
  out << "# ddsense " << version_string << "\n";
  out << "# config " << to_hex(meta.config_hash) << "\n";
  out << "# seed " << meta.seed << "\n";
}

void write_table_csv(std::ostream& out, const SweepResult& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

void write_table_json(std::ostream& out, const SweepResult& table) {
  out << "{\"columns\":[";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << '"' << table.columns[i] << '"';
  out << "],\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      out << (i ? "," : "");
      double v = table.rows[r][i];
      out << (std::isnan(v) ? "null" : format_double(v));
    }
    out << "]";
  }
  out << "]}\n";
}

void write_table(std::ostream& out, const Meta& meta, const SweepResult& table,
                 const std::string& format) {
  write_meta(out, meta);
  if (format == "csv")
    write_table_csv(out, table);
  else if (format == "json")
    write_table_json(out, table);
  else
    throw ConfigError("unknown output format '" + format +
                      "' (expected csv or json)");
}

}  // namespace ddsense::cli
