#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "qreflect/suite.hpp"

namespace qreflect {
namespace {

const std::vector<std::string> kKeys = {
    "suite", "N",    "m", "a",    "gradation", "q",      "q_root", "x",      "y",     "u",
    "v",     "ep",   "em", "p",   "mode",      "seed",   "reps",   "format", "output",
    "config", "negative_control"};

bool known_key(const std::string& k) {
  return std::find(kKeys.begin(), kKeys.end(), k) != kKeys.end();
}

std::string flag_to_key(const std::string& flag) {
  std::string k = flag.substr(2);
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long to_long(const std::string& key, const std::string& s) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw config_error("value for '" + key + "' is not an integer: '" + s + "'");
  }
}

/// Accepts the value for a scalar parameter. In exact mode only rational
/// text is legal; in float mode rational text is promoted and plain decimals
/// pass through.
std::string scalar_value(const std::string& key, const std::string& s, Mode mode) {
  try {
    parse_rational(s);
    return s;
  } catch (const std::exception&) {
  }
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  const bool decimal = end != nullptr && *end == '\0' && end != s.c_str();
  if (!decimal) throw config_error("malformed value for '" + key + "': '" + s + "'");
  if (mode == Mode::exact)
    throw config_error("decimal value for '" + key + "' ('" + s +
                       "') is not allowed in exact mode; give a rational like 3/2");
  return s;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      const auto e = t.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error(path + ":" + std::to_string(lineno) + ": malformed section header");
      continue;  // sections only group keys; the key namespace is flat
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (!known_key(key))
      throw config_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (key == "config")
      throw config_error(path + ":" + std::to_string(lineno) + ": config files cannot nest");
    kv[key] = value;
  }
  return kv;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw config_error("value for '" + key + "' is not a boolean: '" + s + "'");
}

}  // namespace

RunConfig parse_verify_args(const std::vector<std::string>& args) {
  std::map<std::string, std::string> flags;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (arg.rfind("--", 0) != 0) throw config_error("unexpected argument '" + arg + "'");
    const std::string key = flag_to_key(arg);
    if (!known_key(key)) throw config_error("unknown flag '" + arg + "'");
    if (key == "negative_control") {
      flags[key] = "true";
      continue;
    }
    if (i + 1 >= args.size()) throw config_error("flag '" + arg + "' needs a value");
    flags[key] = args[++i];
  }

  std::map<std::string, std::string> merged;
  if (auto it = flags.find("config"); it != flags.end()) merged = read_config_file(it->second);
  for (const auto& [k, v] : flags) merged[k] = v;  // explicit flags win

  RunConfig cfg;
  if (auto it = merged.find("config"); it != merged.end()) cfg.config_file = it->second;
  if (auto it = merged.find("mode"); it != merged.end()) {
    if (it->second == "exact")
      cfg.mode = Mode::exact;
    else if (it->second == "float")
      cfg.mode = Mode::floating;
    else
      throw config_error("mode must be 'exact' or 'float', got '" + it->second + "'");
  }
  if (auto it = merged.find("suite"); it != merged.end()) cfg.suite = it->second;
  {
    const auto& names = suite_names();
    const bool named_check = cfg.suite.find('.') != std::string::npos;
    if (!named_check && std::find(names.begin(), names.end(), cfg.suite) == names.end())
      throw config_error("unknown suite '" + cfg.suite + "'");
  }
  if (auto it = merged.find("N"); it != merged.end()) {
    cfg.Ns.clear();
    for (const auto& s : split_list(it->second)) {
      const long n = to_long("N", s);
      if (n < 2) throw config_error("N must be at least 2, got " + s);
      cfg.Ns.push_back(static_cast<int>(n));
    }
    if (cfg.Ns.empty()) throw config_error("empty N list");
  }
  if (auto it = merged.find("m"); it != merged.end()) {
    cfg.ms.clear();
    for (const auto& s : split_list(it->second)) {
      const long m = to_long("m", s);
      if (m < 0) throw config_error("m must be nonnegative, got " + s);
      cfg.ms.push_back(m);
    }
    if (cfg.ms.empty()) throw config_error("empty m list");
  }
  if (auto it = merged.find("a"); it != merged.end()) {
    if (it->second == "all") {
      cfg.a_all = true;
      cfg.as.clear();
    } else {
      cfg.a_all = false;
      cfg.as.clear();
      for (const auto& s : split_list(it->second)) {
        const long a = to_long("a", s);
        if (a < 0) throw config_error("a must be nonnegative, got " + s);
        cfg.as.push_back(static_cast<int>(a));
      }
      if (cfg.as.empty()) throw config_error("empty a list");
    }
  }
  if (auto it = merged.find("gradation"); it != merged.end()) {
    cfg.gradation.clear();
    for (const auto& s : split_list(it->second)) {
      const long part = to_long("gradation", s);
      if (part < 0) throw config_error("gradation parts must be nonnegative, got " + s);
      cfg.gradation.push_back(part);
    }
    for (int N : cfg.Ns)
      if (static_cast<size_t>(N) != cfg.gradation.size())
        throw config_error("gradation has " + std::to_string(cfg.gradation.size()) +
                           " parts but N includes " + std::to_string(N));
    long total = 0;
    for (long part : cfg.gradation) total += part;
    if (total == 0) throw config_error("gradation must have a positive total");
  }
  const std::pair<const char*, std::string*> scalars[] = {
      {"q", &cfg.q}, {"q_root", &cfg.q_root}, {"x", &cfg.x},
      {"y", &cfg.y}, {"u", &cfg.u},           {"v", &cfg.v},
      {"ep", &cfg.eps_plus}, {"em", &cfg.eps_minus}, {"p", &cfg.p}};
  for (const auto& [key, slot] : scalars)
    if (auto it = merged.find(key); it != merged.end())
      *slot = scalar_value(key, it->second, cfg.mode);
  if (auto it = merged.find("seed"); it != merged.end())
    cfg.seed = static_cast<uint64_t>(to_long("seed", it->second));
  if (auto it = merged.find("reps"); it != merged.end()) {
    const long r = to_long("reps", it->second);
    if (r < 1) throw config_error("reps must be positive");
    cfg.repetitions = static_cast<int>(r);
  }
  if (auto it = merged.find("format"); it != merged.end()) {
    if (it->second != "json" && it->second != "text")
      throw config_error("format must be 'json' or 'text', got '" + it->second + "'");
    cfg.format = it->second;
  }
  if (auto it = merged.find("output"); it != merged.end()) cfg.output = it->second;
  if (auto it = merged.find("negative_control"); it != merged.end())
    cfg.negative_control = to_bool("negative_control", it->second);
  return cfg;
}

}  // namespace qreflect
