#include "zevrpp/fit/fit_io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "zevrpp/io/ini.hpp"

namespace zevrpp::fit {

namespace pt = boost::property_tree;

using io::parse_numbers;

void save_fits(const std::string& path, const FitTable& fits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (auto& [name, rec] : fits) {
    const auto& f = rec.fit;
    out << "[" << name << "]\n";
    out << fmt::format("K = {}\nn = {}\nalpha = {:.17g}\n", f.K, f.a.cols(), f.alpha);
    out << "a =";
    for (int k = 0; k < f.K; ++k)
      for (Eigen::Index j = 0; j < f.a.cols(); ++j) out << fmt::format(" {:.17g}", f.a(k, j));
    out << "\nb =";
    for (int k = 0; k < f.K; ++k) out << fmt::format(" {:.17g}", f.b[k]);
    out << fmt::format("\nrmse_log = {:.6e}\nlo = {:.17g}\nhi = {:.17g}\n\n", f.rmse_log, rec.lo, rec.hi);
  }
}

FitTable load_fits(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error(fmt::format("{}:{}: {}", path, e.line(), e.message()));
  }
  FitTable out;
  for (auto& [name, sec] : tree) {
    auto where = [&](const char* key) { return fmt::format("{} [{}] {}", path, name, key); };
    auto get = [&](const char* key) {
      auto v = sec.get_optional<std::string>(key);
      if (!v) throw std::runtime_error(where(key) + ": missing");
      return *v;
    };
    FitRecord rec;
    auto& f = rec.fit;
    auto one = [&](const char* key) {
      auto v = parse_numbers(get(key), where(key));
      if (v.size() != 1) throw std::runtime_error(where(key) + ": expected one value");
      return v[0];
    };
    f.K = static_cast<int>(one("K"));
    int n = static_cast<int>(one("n"));
    f.alpha = one("alpha");
    if (f.K < 1 || n < 1 || !(f.alpha > 0)) throw std::runtime_error(where("K") + ": invalid sizes");
    auto a = parse_numbers(get("a"), where("a"));
    auto b = parse_numbers(get("b"), where("b"));
    if (a.size() != static_cast<size_t>(f.K * n)) throw std::runtime_error(where("a") + ": wrong length");
    if (b.size() != static_cast<size_t>(f.K)) throw std::runtime_error(where("b") + ": wrong length");
    f.a.resize(f.K, n);
    f.b.resize(f.K);
    for (int k = 0; k < f.K; ++k) {
      for (int j = 0; j < n; ++j) f.a(k, j) = a[static_cast<size_t>(k * n + j)];
      f.b[k] = b[static_cast<size_t>(k)];
    }
    f.rmse_log = sec.get<double>("rmse_log", 0.0);
    rec.lo = sec.get<double>("lo", 0.0);
    rec.hi = sec.get<double>("hi", 0.0);
    out[name] = rec;
  }
  return out;
}

}  // namespace zevrpp::fit
