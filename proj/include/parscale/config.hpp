#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parscale/comm.hpp"
#include "parscale/ledger.hpp"
#include "parscale/modifiers.hpp"
#include "parscale/timeline.hpp"

namespace parscale {

// Flat key-value run configuration with [section] headers.  Values are
// scalars or whitespace/comma separated lists (needed for the per-worker
// timeline arrays).  '#' starts a comment.  Section order is preserved, so
// modifier stanzas apply in the order they are written.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  static ConfigFile parse(std::istream& in);
  static ConfigFile parse_string(const std::string& text);
  static ConfigFile parse_file(const std::string& path);

  const ConfigSection* find(const std::string& name) const;
};

double get_double(const ConfigSection& s, const std::string& key, double fallback);
std::string get_string(const ConfigSection& s, const std::string& key,
                       const std::string& fallback);
std::vector<double> get_double_list(const ConfigSection& s, const std::string& key);

/// Raises ConfigError when the section holds a key outside `known`.
void check_known_keys(const ConfigSection& s, const std::vector<std::string>& known);

// Builders.  Absent sections and keys fall back to the documented defaults;
// malformed or unknown keys raise ConfigError naming section and key.

MachineSpec machine_from_config(const ConfigFile& cfg);
WorkloadSpec workload_from_config(const ConfigFile& cfg);
SweepOptions sweep_options_from_config(const ConfigFile& cfg);
std::vector<double> sweep_grid_from_config(const ConfigFile& cfg);
TimelineConfig timeline_from_config(const ConfigFile& cfg);
AnnTopology ann_from_config(const ConfigFile& cfg);
BusModel bus_from_config(const ConfigFile& cfg);
BrainParams brain_from_config(const ConfigFile& cfg);

struct ModifierStep {
  enum class Kind { accelerator, precision, cooperative };
  Kind kind = Kind::accelerator;
  Accelerator accelerator;
  PrecisionMode precision;
  CooperativeTransfer cooperative;
};

/// All modifier.* sections, in declaration order.
std::vector<ModifierStep> modifiers_from_config(const ConfigFile& cfg);

/// Applies the steps in order to the (machine, workload) pair.
std::pair<MachineSpec, WorkloadSpec> apply_modifiers(const MachineSpec& m,
                                                     const WorkloadSpec& w,
                                                     const std::vector<ModifierStep>& steps);

}  // namespace parscale
