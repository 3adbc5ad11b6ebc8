#include "varbound/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>
#include <vector>

#include "varbound/bounds.hpp"
#include "varbound/errors.hpp"
#include "varbound/exactcheck.hpp"
#include "varbound/expr.hpp"
#include "varbound/pearson.hpp"

namespace varbound::cli {
namespace {

std::vector<Rational> parse_deltas(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw std::invalid_argument("--delta needs at least one value");
  return out;
}

EvalOptions options_for(const RunConfig& c) {
  EvalOptions o;
  o.accumulation = accumulation_from_env();
  if (c.quad_size) o.quad_size = *c.quad_size;
  if (c.tol) o.tol = *c.tol;
  return o;
}

void warn_unknown(const BoundReport& r, std::ostream& err) {
  if (r.verdict == Verdict::Unknown)
    err << "warning: membership of g at (m, n) = (" << r.m << ", " << r.n
        << ") could not be settled numerically: " << r.diagnostic << '\n';
}

void warn_endpoint(const PearsonDistribution& dist, std::ostream& err) {
  if (unbounded_at_endpoint(dist))
    err << "warning: density of " << dist.describe()
        << " is unbounded at a support endpoint; quadrature accuracy depends on g there\n";
}

int run_bound(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto dist = parse_distribution(c.dist);
  warn_endpoint(dist, err);
  const auto g = parse(c.g);
  const auto options = options_for(c);
  BoundReport report = bound_smn(dist, g, c.m, c.n, options);
  if (report.verdict == Verdict::TrivialBound) {
    err << "warning: bound is trivial (" << (report.value > 0 ? "+inf" : "-inf") << "): " << report.diagnostic
        << '\n';
    write_bound(out, report, c.format);
    return kExitTrivial;
  }
  warn_unknown(report, err);
  if (c.tau) {
    report.tau = *c.tau;
    report.cap = residual_cap(dist, g, c.m, c.n, *c.tau, options);
  }
  write_bound(out, report, c.format);
  return kExitOk;
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto dist = parse_distribution(c.dist);
  warn_endpoint(dist, err);
  const auto rows = sweep(dist, parse(c.g), c.n, c.m_max, options_for(c));
  bool trivial = false;
  for (const auto& r : rows) {
    trivial = trivial || r.verdict == Verdict::TrivialBound;
    warn_unknown(r, err);
  }
  if (trivial) err << "warning: bound is trivial: " << rows.front().diagnostic << '\n';
  write_sweep(out, rows, c.format);
  return trivial ? kExitTrivial : kExitOk;
}

int run_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto dist = parse_distribution(c.dist);
  warn_endpoint(dist, err);
  const auto table = compare_suite(dist, parse(c.g), c.n, c.m_max, options_for(c));
  write_comparison(out, table, c.format);
  return kExitOk;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rows = verify_suite(c.max_order, parse_deltas(c.deltas), c.k_max);
  write_verify(out, rows, c.format);
  for (const auto& r : rows) {
    if (!r.pass) {
      err << "error: identity check failed: " << r.identity << " at m = " << r.m << ", n = " << r.n
          << ", delta = " << to_string(r.delta) << '\n';
      return kExitVerifyFailed;
    }
  }
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.command == Command::Verify) {
    if (c.max_order < 1 || c.max_order > kMaxOrderSum) throw std::invalid_argument("--max-order must be in [1, 24]");
    if (c.k_max < 0) throw std::invalid_argument("--k-max must be >= 0");
    return;
  }
  if (c.dist.empty()) throw std::invalid_argument("--dist is required");
  if (c.g.empty()) throw std::invalid_argument("--g is required");
  if (c.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (c.quad_size && (*c.quad_size < 8 || *c.quad_size > 4096))
    throw std::invalid_argument("--quad-size must be in [8, 4096]");
  if (c.tol && !(*c.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  const int m = c.command == Command::Bound ? c.m : c.m_max;
  if (m < 0) throw std::invalid_argument("--m / --m-max must be >= 0");
  if (m + c.n > kMaxOrderSum) throw std::invalid_argument("m + n must not exceed 24");
  if (c.tau) {
    if (c.command != Command::Bound) throw std::invalid_argument("--tau applies to `bound` only");
    if (*c.tau < c.n || *c.tau > c.m + c.n + 1) throw std::invalid_argument("--tau must lie in [n, m+n+1]");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    switch (config.command) {
      case Command::Bound: return run_bound(config, out, err);
      case Command::Sweep: return run_sweep(config, out, err);
      case Command::Compare: return run_compare(config, out, err);
      case Command::Verify: return run_verify(config, out, err);
    }
  } catch (const TrivialBound& e) {
    err << "warning: bound is trivial (" << (e.sign() > 0 ? "+inf" : "-inf") << "): " << e.what() << '\n';
    return kExitTrivial;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal variance bounds for integrated Pearson distributions", "varbound"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";
  std::optional<int> quad_size;
  std::optional<double> tol;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dist", config.dist, "distribution literal, e.g. normal:mu=0,sigma2=1")->required();
    sub->add_option("--g", config.g, "function g(x) in the expression language")->required();
    sub->add_option("--n", config.n, "order n >= 1");
    sub->add_option("--format", format, "json | csv | table");
    sub->add_option("--quad-size", quad_size, "Gauss rule size for expectations");
    sub->add_option("--tol", tol, "tolerance relative to max(1, Var g(X))");
  };

  auto* bound = app.add_subcommand("bound", "compute S_{m,n}(g)");
  add_common(bound);
  bound->add_option("--m", config.m, "point balance m >= 0");
  std::optional<int> tau;
  bound->add_option("--tau", tau, "also report the residual cap of order tau");

  auto* sweep_cmd = app.add_subcommand("sweep", "S_{m,n}(g) for m = 0..m-max");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--m-max", config.m_max, "largest m");

  auto* compare = app.add_subcommand("compare", "gap comparisons against earlier bounds");
  add_common(compare);
  compare->add_option("--m-max", config.m_max, "largest m");

  auto* verify = app.add_subcommand("verify", "exact rational identity checks");
  verify->add_option("--max-order", config.max_order, "largest m and n");
  verify->add_option("--delta", config.deltas, "comma-separated rational deltas <= 0");
  verify->add_option("--k-max", config.k_max, "largest k in the hypergeometric and rho checks");
  verify->add_option("--format", format, "json | csv | table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (bound->parsed()) config.command = Command::Bound;
  if (sweep_cmd->parsed()) config.command = Command::Sweep;
  if (compare->parsed()) config.command = Command::Compare;
  if (verify->parsed()) config.command = Command::Verify;
  if (verify->parsed() && format == "json" && verify->count("--format") == 0) format = "table";
  try {
    config.format = parse_format(format);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  config.quad_size = quad_size;
  config.tol = tol;
  config.tau = tau;
  return run(config, out, err);
}

}  // namespace varbound::cli
