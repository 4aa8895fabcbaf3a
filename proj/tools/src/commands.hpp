#pragma once

#include "config.hpp"

namespace ddsense::cli {

int cmd_fidelity_map(const ConfigMap& config);
int cmd_optimize(const ConfigMap& config);
int cmd_echo_sense(const ConfigMap& config);
int cmd_nmr(const ConfigMap& config);
int cmd_qpt(const ConfigMap& config);

}  // namespace ddsense::cli
