#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rtmix::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": not a number: '" + value + "'");
  return x;
}

long to_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": not an integer: '" + value + "'");
  return x;
}

RunConfig config_from_map(const std::map<std::string, std::string>& kv) {
  RunConfig cfg;
  for (const auto& [key, value] : kv) {
    const std::string bare = key.rfind("params.", 0) == 0 ? key.substr(7) : key.rfind("run.", 0) == 0 ? key.substr(4) : key;
    const bool top = bare != key || key.find('.') == std::string::npos;
    if (top && bare == "g") {
      cfg.params.g = to_double(key, value);
    } else if (top && bare == "A") {
      cfg.params.A = to_double(key, value);
    } else if (top && bare == "L") {
      cfg.params.L = to_double(key, value);
    } else if (top && bare == "n") {
      cfg.params.n = static_cast<int>(to_long(key, value));
    } else if (top && bare == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_long(key, value));
    } else if (top && bare == "out") {
      cfg.out_dir = value;
    } else {
      cfg.options[key] = value;
    }
  }
  cfg.params.validate();
  return cfg;
}

std::string canonical(const RunConfig& cfg) {
  std::map<std::string, std::string> all = cfg.options;
  all["params.g"] = num(cfg.params.g);
  all["params.A"] = num(cfg.params.A);
  all["params.L"] = num(cfg.params.L);
  all["params.n"] = std::to_string(cfg.params.n);
  all["run.seed"] = std::to_string(cfg.seed);
  std::string s;
  for (const auto& [k, v] : all) s += k + "=" + v + "\n";
  return s;
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rtmix::cli
