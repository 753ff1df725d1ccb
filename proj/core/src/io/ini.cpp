#include "zevrpp/io/ini.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>

namespace zevrpp::io {

namespace pt = boost::property_tree;

std::vector<double> parse_numbers(const std::string& s, const std::string& where) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<double> v;
  std::string tok;
  while (in >> tok) {
    try {
      size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::runtime_error(fmt::format("{}: bad number '{}'", where, tok));
    }
  }
  return v;
}

Ini Ini::load(const std::string& path) {
  Ini ini;
  ini.path_ = path;
  try {
    pt::read_ini(path, ini.tree_);
  } catch (const pt::ini_parser_error& e) {
    if (e.line() == 0) throw std::runtime_error(fmt::format("{}: {}", path, e.message()));
    throw std::runtime_error(fmt::format("{}:{}: {}", path, e.line(), e.message()));
  }
  return ini;
}

Ini Ini::parse(const std::string& text, const std::string& name) {
  Ini ini;
  ini.path_ = name;
  std::istringstream in(text);
  try {
    pt::read_ini(in, ini.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error(fmt::format("{}:{}: {}", name, e.line(), e.message()));
  }
  return ini;
}

bool Ini::has_section(const std::string& section) const { return tree_.find(section) != tree_.not_found(); }

bool Ini::has(const std::string& section, const std::string& key) const { return raw(section, key).has_value(); }

std::vector<std::string> Ini::sections() const {
  std::vector<std::string> out;
  for (auto& [name, sub] : tree_) out.push_back(name);
  return out;
}

std::vector<std::string> Ini::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto it = tree_.find(section);
  if (it == tree_.not_found()) return out;
  for (auto& [k, v] : it->second) out.push_back(k);
  return out;
}

std::string Ini::where(const std::string& section, const std::string& key) const {
  return fmt::format("{} [{}] {}", path_, section, key);
}

std::optional<std::string> Ini::raw(const std::string& section, const std::string& key) const {
  auto it = tree_.find(section);
  if (it == tree_.not_found()) return std::nullopt;
  auto v = it->second.get_optional<std::string>(pt::ptree::path_type(key, '\0'));
  if (!v) return std::nullopt;
  // trailing "; comment" after whitespace
  std::string s = *v;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == ';' && std::isspace(static_cast<unsigned char>(s[i - 1]))) {
      s.erase(i);
      break;
    }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

std::string Ini::text(const std::string& section, const std::string& key) const {
  auto v = raw(section, key);
  if (!v) throw std::runtime_error(where(section, key) + ": missing");
  return *v;
}

std::string Ini::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  return raw(section, key).value_or(fallback);
}

double Ini::number(const std::string& section, const std::string& key) const {
  auto v = parse_numbers(text(section, key), where(section, key));
  if (v.size() != 1) throw std::runtime_error(where(section, key) + ": expected one number");
  return v[0];
}

double Ini::number(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

double Ini::number_in(const std::string& section, const std::string& key, double fallback, double lo,
                      double hi) const {
  double v = number(section, key, fallback);
  if (!(v >= lo && v <= hi))
    throw std::runtime_error(fmt::format("{}: {} outside [{}, {}]", where(section, key), v, lo, hi));
  return v;
}

std::vector<double> Ini::numbers(const std::string& section, const std::string& key) const {
  return parse_numbers(text(section, key), where(section, key));
}

long Ini::integer(const std::string& section, const std::string& key, long fallback) const {
  if (!has(section, key)) return fallback;
  double v = number(section, key);
  if (v != static_cast<double>(static_cast<long>(v)))
    throw std::runtime_error(fmt::format("{}: expected an integer, got {}", where(section, key), v));
  return static_cast<long>(v);
}

bool Ini::flag(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  auto s = text(section, key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::runtime_error(fmt::format("{}: expected true/false, got '{}'", where(section, key), s));
}

std::vector<std::string> Ini::unknown_keys(const std::string& section, const std::vector<std::string>& known) const {
  std::vector<std::string> out;
  for (auto& k : keys(section))
    if (std::find(known.begin(), known.end(), k) == known.end()) out.push_back(k);
  return out;
}

}  // namespace zevrpp::io
