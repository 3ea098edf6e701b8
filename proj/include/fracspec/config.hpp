#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fracspec {

// Flat key = value text grouped in [section] blocks; '#' starts a comment.
// Numeric values accept plain decimals and a/b fractions (so alpha = 1/3
// stays exact to the last bit of the division).
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_string(const std::string& text);

  bool has_section(const std::string& section) const;
  bool has_key(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key,
               long fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;

  // Comma list of numbers ("0,0.25,1/3"); also m-set ranges ("1:6").
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;
  std::vector<int> get_int_range(const std::string& section,
                                 const std::string& key,
                                 const std::vector<int>& fallback) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

double parse_number(const std::string& text);
std::vector<int> parse_int_range(const std::string& text);

}  // namespace fracspec
