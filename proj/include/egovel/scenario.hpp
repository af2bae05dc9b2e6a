#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "egovel/radar_config.hpp"
#include "egovel/scene.hpp"

namespace egovel {

// Raised by parsers/validators; the message lists the offending fields.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal INI-style key-value file: [section] headers, key = value lines,
// '#'/';' comments. Sections repeat ([reflector] appears once per
// reflector); keys before any header land in the "" section.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(const std::string& key) const;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  const ConfigSection* first(const std::string& name) const;
  std::vector<const ConfigSection*> all(const std::string& name) const;
};

ConfigFile parse_config(std::istream& in);
ConfigFile parse_config_file(const std::string& path);

// One reproducible experiment: radar setup, scene, ego motion script, and
// degradation knobs.
struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::uint32_t frames = 1;
  RadarConfig radar;
  std::vector<Reflector> reflectors;
  EgoTrajectory trajectory;
  NoiseSpec noise;
  QuantSpec quantization;
};

Scenario parse_scenario(const ConfigFile& file);
Scenario load_scenario(const std::string& path);

// Radar section alone, for consumers that only need the device parameters.
RadarConfig load_radar_config(const std::string& path);

// Noise preset used by every comparative experiment; tuned once against the
// three-static-reflector run and then frozen so relative orderings between
// methods stay meaningful.
NoiseSpec calibrated_noise();

}  // namespace egovel
