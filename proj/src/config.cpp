#include "fracspec/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace {

std::string trim(const std::string& s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto begin = std::find_if_not(s.begin(), s.end(), is_space);
  auto end = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
  return begin < end ? std::string(begin, end) : std::string();
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (const auto slash = t.find('/'); slash != std::string::npos) {
    return parse_number(t.substr(0, slash)) / parse_number(t.substr(slash + 1));
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(t, &used);
    if (used != t.size()) throw ConfigError("trailing characters in number: " + t);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number: '" + text + "'");
  }
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(trim(text));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (const auto colon = item.find(':'); colon != std::string::npos) {
      const int lo = static_cast<int>(parse_number(item.substr(0, colon)));
      const int hi = static_cast<int>(parse_number(item.substr(colon + 1)));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(static_cast<int>(parse_number(item)));
    }
  }
  if (out.empty()) throw ConfigError("empty integer range: '" + text + "'");
  return out;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile cfg;
  std::string section;
  std::stringstream stream(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_number) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_number) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_number) + ": empty key");
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool ConfigFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool ConfigFile::has_key(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) throw ConfigError("missing config section [" + section + "]");
  const auto kv = it->second.find(key);
  if (kv == it->second.end()) {
    throw ConfigError("missing config key '" + key + "' in [" + section + "]");
  }
  return kv->second;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
  return has_key(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key) const {
  return parse_number(get_string(section, key));
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  return has_key(section, key) ? get_double(section, key) : fallback;
}

long ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const double value = get_double(section, key);
  const long rounded = static_cast<long>(value);
  if (static_cast<double>(rounded) != value) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return rounded;
}

long ConfigFile::get_int(const std::string& section, const std::string& key,
                         long fallback) const {
  return has_key(section, key) ? get_int(section, key) : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has_key(section, key)) return fallback;
  std::string v = get_string(section, key);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "' must be a boolean");
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
  const std::string text = get_string(section, key);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number(item));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "' has no values");
  return out;
}

std::vector<int> ConfigFile::get_int_range(const std::string& section,
                                           const std::string& key,
                                           const std::vector<int>& fallback) const {
  if (!has_key(section, key)) return fallback;
  return parse_int_range(get_string(section, key));
}

}  // namespace fracspec
