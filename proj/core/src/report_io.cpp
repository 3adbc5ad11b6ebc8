#include "varbound/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace varbound {
namespace {

using nlohmann::ordered_json;

ordered_json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v == 0.0 ? 0.0 : v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string short_number(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double gap(const BoundReport& r) { return std::abs(r.variance - r.value); }

ordered_json to_json(const BoundReport& r) {
  ordered_json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["verdict"] = std::string(to_string(r.verdict));
  j["bound"] = number(r.value);
  j["variance"] = number(r.variance);
  j["gap"] = number(r.verdict == Verdict::TrivialBound ? std::nan("") : gap(r));
  j["residual"] = number(r.residual);
  j["sign_ok"] = r.sign_ok;
  j["equality"] = r.equality;
  j["a"] = r.a;
  j["b"] = r.b;
  j["lambda"] = r.lambda;
  if (r.tau >= 0) {
    j["tau"] = r.tau;
    j["cap"] = number(r.cap);
  }
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

void sweep_csv_row(std::ostream& os, const BoundReport& r) {
  os << r.m << ',' << r.n << ',' << csv_number(r.value) << ',' << csv_number(r.variance) << ','
     << csv_number(r.verdict == Verdict::TrivialBound ? std::nan("") : gap(r)) << ',' << csv_number(r.residual)
     << ',' << (r.sign_ok ? "true" : "false") << ',' << (r.equality ? "true" : "false") << ','
     << to_string(r.verdict) << '\n';
}

void sweep_table(std::ostream& os, const std::vector<BoundReport>& rows) {
  os << std::left << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(20) << "bound" << std::setw(20)
     << "variance" << std::setw(20) << "gap" << std::setw(9) << "sign_ok" << std::setw(9) << "equality"
     << "verdict\n";
  for (const auto& r : rows)
    os << std::setw(4) << r.m << std::setw(4) << r.n << std::setw(20) << short_number(r.value) << std::setw(20)
       << short_number(r.variance) << std::setw(20)
       << short_number(r.verdict == Verdict::TrivialBound ? std::nan("") : gap(r)) << std::setw(9)
       << (r.sign_ok ? "yes" : "no") << std::setw(9) << (r.equality ? "yes" : "no") << to_string(r.verdict)
       << '\n';
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "table") return Format::Table;
  throw std::invalid_argument("unknown format: " + std::string(text));
}

void write_bound(std::ostream& os, const BoundReport& report, Format format) {
  switch (format) {
    case Format::Json: os << to_json(report).dump(2) << '\n'; return;
    case Format::Csv:
      os << kSweepCsvHeader << '\n';
      sweep_csv_row(os, report);
      return;
    case Format::Table: sweep_table(os, {report}); return;
  }
}

void write_sweep(std::ostream& os, const std::vector<BoundReport>& rows, Format format) {
  switch (format) {
    case Format::Json: {
      ordered_json j = ordered_json::array();
      for (const auto& r : rows) j.push_back(to_json(r));
      os << j.dump(2) << '\n';
      return;
    }
    case Format::Csv:
      os << kSweepCsvHeader << '\n';
      for (const auto& r : rows) sweep_csv_row(os, r);
      return;
    case Format::Table: sweep_table(os, rows); return;
  }
}

void write_comparison(std::ostream& os, const ComparisonTable& t, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["n"] = t.n;
    j["m_max"] = t.m_max;
    j["variance"] = number(t.variance);
    ordered_json sweep = ordered_json::array();
    for (const auto& r : t.sweep) sweep.push_back(to_json(r));
    j["sweep"] = sweep;
    ordered_json gaps = ordered_json::array();
    for (const auto& g : t.gaps)
      gaps.push_back({{"m1", g.m1}, {"m2", g.m2}, {"gap1", number(g.gap1)}, {"gap2", number(g.gap2)},
                      {"zeta", number(g.zeta)}, {"slack", number(g.slack)}, {"ok", g.ok}});
    j["gaps"] = gaps;
    j["corollary"] = {{"n", t.corollary.n},
                      {"gap_legacy", number(t.corollary.gap_legacy)},
                      {"gap_new", number(t.corollary.gap_new)},
                      {"factor", number(t.corollary.factor)},
                      {"slack", number(t.corollary.slack)},
                      {"ok", t.corollary.ok}};
    j["chernoff"] = {{"n", t.chernoff.n},
                     {"s_n1", number(t.chernoff.s_n1)},
                     {"s_str", number(t.chernoff.s_str)},
                     {"s_nm1_1", number(t.chernoff.s_nm1_1)},
                     {"s_weak", number(t.chernoff.s_weak)},
                     {"ok_str", t.chernoff.ok_str},
                     {"ok_weak", t.chernoff.ok_weak}};
    j["all_ok"] = t.all_ok;
    os << j.dump(2) << '\n';
    return;
  }
  if (format == Format::Csv) {
    os << "check,m1,m2,lhs,rhs,factor,slack,ok\n";
    for (const auto& g : t.gaps)
      os << "gap," << g.m1 << ',' << g.m2 << ',' << csv_number(g.gap1) << ',' << csv_number(g.gap2) << ','
         << csv_number(g.zeta) << ',' << csv_number(g.slack) << ',' << (g.ok ? "true" : "false") << '\n';
    const auto& c = t.corollary;
    os << "corollary,0," << c.n << ',' << csv_number(c.gap_legacy) << ',' << csv_number(c.gap_new) << ','
       << csv_number(c.factor) << ',' << csv_number(c.slack) << ',' << (c.ok ? "true" : "false") << '\n';
    const auto& h = t.chernoff;
    os << "strong," << h.n << ",1," << csv_number(h.s_n1) << ',' << csv_number(h.s_str) << ",,"
       << csv_number(h.s_str - h.s_n1) << ',' << (h.ok_str ? "true" : "false") << '\n';
    os << "weak," << h.n - 1 << ",1," << csv_number(h.s_nm1_1) << ',' << csv_number(h.s_weak) << ",,"
       << csv_number(h.s_weak - h.s_nm1_1) << ',' << (h.ok_weak ? "true" : "false") << '\n';
    return;
  }
  os << "Var g(X) = " << short_number(t.variance) << "\n\n";
  sweep_table(os, t.sweep);
  os << "\n" << std::left << std::setw(5) << "m1" << std::setw(5) << "m2" << std::setw(18) << "gap1"
     << std::setw(18) << "zeta*gap2" << "ok\n";
  for (const auto& g : t.gaps)
    os << std::setw(5) << g.m1 << std::setw(5) << g.m2 << std::setw(18) << short_number(g.gap1) << std::setw(18)
       << short_number(g.zeta * g.gap2) << (g.ok ? "yes" : "no") << '\n';
  os << "\ncorollary: |Var - S_n| = " << short_number(t.corollary.gap_legacy) << " >= "
     << short_number(t.corollary.factor) << " * " << short_number(t.corollary.gap_new) << "  "
     << (t.corollary.ok ? "ok" : "FAIL") << '\n';
  os << "strong:    S_{n,1} = " << short_number(t.chernoff.s_n1) << " <= " << short_number(t.chernoff.s_str) << "  "
     << (t.chernoff.ok_str ? "ok" : "FAIL") << '\n';
  os << "weak:      S_{n-1,1} = " << short_number(t.chernoff.s_nm1_1) << " <= " << short_number(t.chernoff.s_weak)
     << "  " << (t.chernoff.ok_weak ? "ok" : "FAIL") << '\n';
}

void write_verify(std::ostream& os, const std::vector<VerifyRow>& rows, Format format) {
  if (format == Format::Json) {
    ordered_json j = ordered_json::array();
    bool all = true;
    for (const auto& r : rows) {
      all = all && r.pass;
      ordered_json row{{"identity", r.identity}, {"m", r.m}, {"n", r.n}, {"delta", to_string(r.delta)},
                       {"pass", r.pass}};
      if (!r.detail.empty()) row["detail"] = r.detail;
      j.push_back(row);
    }
    os << ordered_json{{"all_pass", all}, {"rows", j}}.dump(2) << '\n';
    return;
  }
  if (format == Format::Csv) {
    os << "identity,m,n,delta,pass,detail\n";
    for (const auto& r : rows)
      os << r.identity << ',' << r.m << ',' << r.n << ',' << to_string(r.delta) << ','
         << (r.pass ? "true" : "false") << ',' << r.detail << '\n';
    return;
  }
  std::size_t passed = 0;
  os << std::left << std::setw(18) << "identity" << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(8)
     << "delta" << "result\n";
  for (const auto& r : rows) {
    passed += r.pass ? 1 : 0;
    os << std::setw(18) << r.identity << std::setw(4) << r.m << std::setw(4) << r.n << std::setw(8)
       << to_string(r.delta) << (r.pass ? "pass" : "FAIL");
    if (!r.detail.empty() && !r.pass) os << "  " << r.detail;
    os << '\n';
  }
  os << passed << '/' << rows.size() << " passed\n";
}

}  // namespace varbound
