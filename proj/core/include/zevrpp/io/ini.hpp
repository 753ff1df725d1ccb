#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace zevrpp::io {

// Whitespace or comma separated numbers; errors name `where` and the token.
std::vector<double> parse_numbers(const std::string& s, const std::string& where);

// INI document (values may carry a trailing "; comment") whose accessors report "path [section] key: problem".
class Ini {
 public:
  static Ini load(const std::string& path);
  static Ini parse(const std::string& text, const std::string& name);

  const std::string& path() const { return path_; }
  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections() const;
  std::vector<std::string> keys(const std::string& section) const;

  std::string where(const std::string& section, const std::string& key) const;

  std::string text(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  // number() that must also lie in [lo, hi]
  double number_in(const std::string& section, const std::string& key, double fallback, double lo, double hi) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  long integer(const std::string& section, const std::string& key, long fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;

  // Keys present in the section but not in `known`.
  std::vector<std::string> unknown_keys(const std::string& section, const std::vector<std::string>& known) const;

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key) const;

  std::string path_;
  boost::property_tree::ptree tree_;
};

}  // namespace zevrpp::io
