#pragma once

// Flat "key = value" run configuration with command-line overrides.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastic/driver.hpp"

namespace elastic {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

using KeyValues = std::map<std::string, std::string>;

/// Lines of "key = value"; '#' starts a comment; blank lines ignored.
KeyValues parse_key_values(std::istream& in, const std::string& source_name = "config");
KeyValues read_config_file(const std::string& path);

struct RunConfig {
  std::string command;
  ProblemConfig problem;  ///< first entries of the lists below
  std::vector<std::string> formulations;
  std::vector<int> panel_list;
  std::vector<double> omega_list;
  std::vector<int> nsub_list;
  std::string incident = "point_source";
  double incident_angle = 0.0;
  int fit_first_level = 10;
  int fit_skip_inner = 5;
  bool timing = false;
  std::string out;

  /// Every setting with its resolved value, sorted by key.
  KeyValues resolved() const;
};

/// Later maps override earlier ones. Throws ConfigError on unknown keys or
/// malformed / out-of-range values.
RunConfig resolve_config(const std::string& command, const std::vector<KeyValues>& layers);

/// "0:80:4" (inclusive range) or comma-separated list.
std::vector<int> parse_int_list(const std::string& key, const std::string& text);
std::vector<double> parse_double_list(const std::string& key, const std::string& text);

}  // namespace elastic
