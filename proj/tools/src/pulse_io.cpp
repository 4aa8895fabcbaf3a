#include "pulse_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ddsense/errors.hpp"
#include "config.hpp"

namespace ddsense::cli {

PulseSequence load_pulse(const std::string& name_or_path) {
  if (name_or_path == "rect") return rect_pi();
  if (name_or_path == "composite") return composite_pi();

  std::ifstream in(name_or_path);
  if (!in)
    throw ConfigError("pulse file '" + name_or_path + "' does not exist");
  std::ostringstream body;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    body << line << "\n";
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("pulse file '" + name_or_path + "': " + e.what());
  }
  if (!doc.contains("segments") || !doc["segments"].is_array())
    throw ConfigError("pulse file '" + name_or_path +
                      "': missing \"segments\" array");

  PulseSequence seq;
  for (const auto& item : doc["segments"]) {
    if (!item.contains("angle_rad") || !item.contains("phase_rad"))
      throw ConfigError("pulse file '" + name_or_path +
                        "': segment needs angle_rad and phase_rad");
    PulseSegment seg{item["angle_rad"].get<double>(),
                     item["phase_rad"].get<double>()};
    validate(seg);
    seq.push_back(seg);
  }
  if (seq.empty())
    throw ConfigError("pulse file '" + name_or_path + "': no segments");
  return seq;
}

void write_pulse_json(std::ostream& out, const Meta& meta,
                      const PulseSequence& seq, double final_objective) {
  write_meta(out, meta);
  nlohmann::json doc;
  doc["provenance"] = {{"config_hash", to_hex(meta.config_hash)},
                       {"seed", meta.seed},
                       {"final_objective", final_objective}};
  nlohmann::json segments = nlohmann::json::array();
  for (const auto& seg : seq)
    segments.push_back(
        {{"angle_rad", seg.angle}, {"phase_rad", seg.phase}});
  doc["segments"] = segments;
  out << doc.dump(2) << "\n";
}

}  // namespace ddsense::cli
