#ifndef ESDG_CONFIG_HPP
#define ESDG_CONFIG_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "esdg/solver.hpp"

namespace esdg {

/// Malformed configuration text; `what()` carries "source:line: message".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Sets one key of the run configuration from its text form. Keys may carry
/// a section prefix ("mesh.nx"). Throws std::invalid_argument on an unknown
/// key or a bad value.
void apply_config_key(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` lines; '#' starts a comment, "[section]" lines set a
/// prefix that is accepted and ignored. Starts from `base`.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>", RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Text form readable by parse_config.
std::string format_config(const RunConfig& cfg);

}  // namespace esdg

#endif  // ESDG_CONFIG_HPP
