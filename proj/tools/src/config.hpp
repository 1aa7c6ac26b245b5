#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "rtmix/params.hpp"

namespace rtmix::cli {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flat key=value text. `[section]` headers prefix later keys with
/// "section."; '#' and ';' start comments.
std::map<std::string, std::string> parse_key_values(const std::string& text);
std::map<std::string, std::string> load_key_values(const std::string& path);

struct RunConfig {
  PhysicalParams params;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  /// Remaining keys, section-qualified.
  std::map<std::string, std::string> options;
};

/// Recognizes params.{g,A,L,n} and run.{seed,out}; unqualified g, A, L, n,
/// seed and out are accepted as well.
RunConfig config_from_map(const std::map<std::string, std::string>& kv);

double to_double(const std::string& key, const std::string& value);
long to_long(const std::string& key, const std::string& value);

/// Canonical text used for hashing: sorted keys, 17 significant digits.
std::string canonical(const RunConfig& cfg);
/// 64-bit FNV-1a of canonical(cfg), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace rtmix::cli
