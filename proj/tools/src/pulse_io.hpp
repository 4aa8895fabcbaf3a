#pragma once

#include <ostream>
#include <string>

#include "ddsense/control.hpp"
#include "emit.hpp"

namespace ddsense::cli {

// Builtins "rect" and "composite", anything else is a JSON file path with
// schema {"segments":[{"angle_rad":..., "phase_rad":...}]}. Leading '#'
// comment lines in the file are skipped.
PulseSequence load_pulse(const std::string& name_or_path);

// '#' metadata header followed by the pulse JSON with provenance fields.
void write_pulse_json(std::ostream& out, const Meta& meta,
                      const PulseSequence& seq, double final_objective);

}  // namespace ddsense::cli
