#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "soco/error.hpp"

namespace soco::cli {

namespace {

std::string flag_name(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

bool on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  throw ConfigError("config key '" + key + "' must hold a string, a number or an array of them");
}

}  // namespace

std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");

  std::vector<std::string> extra;
  for (const auto& [key, value] : doc.items()) {
    const std::string flag = flag_name(key);
    if (on_command_line(args, flag) || value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    if (value.is_array()) {
      if (value.empty()) throw ConfigError("config key '" + key + "' is an empty array");
      for (const auto& v : value) extra.push_back(scalar(v, key));
    } else {
      extra.push_back(scalar(value, key));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

unsigned default_jobs() {
  const char* env = std::getenv("ADVICE_SOCO_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  unsigned n = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, n);
  if (ec != std::errc{} || ptr != end || n == 0) {
    throw ConfigError(std::string("ADVICE_SOCO_JOBS must be a positive integer (got '") + env + "')");
  }
  return n;
}

}  // namespace soco::cli
