#include <exception>
#include <map>
#include <string>

#include "varbound/errors.hpp"
#include "varbound/pearson.hpp"

namespace varbound {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text) {
  text = trim(text);
  const std::string owned(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw Error("malformed number '" + owned + "'");
  }
  if (used != owned.size()) throw Error("malformed number '" + owned + "'");
  return v;
}

// Decimal or p/q.
double parse_real(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_number(text);
  const double num = parse_number(text.substr(0, slash));
  const double den = parse_number(text.substr(slash + 1));
  if (den == 0.0) throw Error("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

}  // namespace

PearsonDistribution parse_distribution(std::string_view literal) {
  const auto colon = literal.find(':');
  if (colon == std::string_view::npos)
    throw Error("distribution literal needs the form <family>:<key>=<value>,...");
  const std::string family(trim(literal.substr(0, colon)));

  std::map<std::string, double> fields;
  std::string_view rest = literal.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error("expected key=value in '" + std::string(item) + "'");
    const std::string key(trim(item.substr(0, eq)));
    if (!fields.emplace(key, parse_real(item.substr(eq + 1))).second)
      throw Error("duplicate key '" + key + "'");
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }

  auto take = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw Error(family + " literal is missing '" + key + "'");
    const double v = it->second;
    fields.erase(it);
    return v;
  };
  auto finish = [&](PearsonDistribution d) {
    if (!fields.empty()) throw Error("unknown key '" + fields.begin()->first + "' for " + family);
    return d;
  };

  if (family == "normal") {
    const double mu = take("mu");
    const double s2 = take("sigma2");
    return finish(make_normal(mu, s2));
  }
  if (family == "gamma") {
    const double a = take("alpha");
    const double t = take("theta");
    return finish(make_gamma(a, t));
  }
  if (family == "beta") {
    const double a = take("alpha");
    const double b = take("beta");
    return finish(make_beta(a, b));
  }
  if (family == "pearson") {
    const double mu = take("mu");
    const double d = take("delta");
    const double b = take("beta");
    const double g = take("gamma");
    return finish(canonicalize(mu, d, b, g));
  }
  throw Error("unknown distribution family '" + family + "'");
}

}  // namespace varbound
