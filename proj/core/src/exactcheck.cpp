#include "varbound/exactcheck.hpp"

#include <cctype>
#include <stdexcept>

#include "varbound/coefficients.hpp"
#include "varbound/combinatorics.hpp"
#include "varbound/errors.hpp"

namespace varbound {
namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("not a rational: " + std::string(text));
    const mpz_class d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    out = Rational(mpz_class{std::string(num), 10}, d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("not a rational: " + std::string(text));
    mpz_class scale = 1;
    for (std::size_t j = 0; j < frac.size(); ++j) scale *= 10;
    const mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac), 10};
    out = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("not a rational: " + std::string(text));
    out = Rational(mpz_class{std::string(body), 10});
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) { return r.get_str(); }

ExactMatrix::ExactMatrix(int n) : dim(n), entries(at(n * n)) {
  if (n < 1) throw std::invalid_argument("ExactMatrix: dimension must be >= 1");
}

ExactMatrix build_A(int m, int n, const Rational& delta) {
  if (n < 1 || m < 0) throw std::invalid_argument("build_A: need m >= 0, n >= 1");
  ExactMatrix a(n);
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c)
      a(r - 1, c - 1) = falling(Rational(m + r), c) * one_minus_jdelta(m + r - 1, m + r + c - 2, delta);
  return a;
}

ExactMatrix replace_column_with_ones(const ExactMatrix& a, int col) {
  if (col < 1 || col > a.dim) throw std::invalid_argument("replace_column_with_ones: column out of range");
  ExactMatrix out = a;
  for (int r = 0; r < a.dim; ++r) out(r, col - 1) = 1;
  return out;
}

Rational bareiss_determinant(const ExactMatrix& a) {
  const int n = a.dim;
  std::vector<mpz_class> m(at(n * n));
  auto cell = [&](int r, int c) -> mpz_class& { return m[at(r * n + c)]; };
  Rational scale = 1;
  for (int r = 0; r < n; ++r) {
    mpz_class l = 1;
    for (int c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
    scale *= Rational(l);
    for (int c = 0; c < n; ++c) {
      const Rational v = a(r, c) * Rational(l);
      cell(r, c) = v.get_num();
    }
  }
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (cell(k, k) == 0) {
      int p = k + 1;
      while (p < n && cell(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(cell(k, c), cell(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        cell(i, j) = (cell(i, j) * cell(k, k) - cell(i, k) * cell(k, j));
        mpz_divexact(cell(i, j).get_mpz_t(), cell(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      cell(i, k) = 0;
    }
    prev = cell(k, k);
  }
  Rational det(cell(n - 1, n - 1) * sign);
  det /= scale;
  return det;
}

std::vector<Rational> cramer_solve(const ExactMatrix& a) {
  const Rational d = bareiss_determinant(a);
  if (d == 0) throw SingularMatrix("matrix is singular");
  std::vector<Rational> x;
  for (int i = 1; i <= a.dim; ++i) x.push_back(bareiss_determinant(replace_column_with_ones(a, i)) / d);
  return x;
}

DeterminantForms det_closed_forms(int m, int n, const Rational& delta) {
  if (n < 1 || m < 0) throw std::invalid_argument("det_closed_forms: need m >= 0, n >= 1");
  Rational shared = 1;
  for (int t = 1; t <= n - 1; ++t)
    for (int j = m + 1; j <= m + n - t; ++j) shared *= Rational(1) - Rational(2 * j + t - 1) * delta;

  Rational superfactorial = 1;
  for (int j = 0; j <= n - 1; ++j) superfactorial *= factorial<Rational>(j);

  DeterminantForms out;
  out.d = falling(Rational(m + n), n) * superfactorial * one_minus_jdelta(m, m + n - 1, delta) * shared;
  const Rational superfactorial_n = superfactorial * factorial<Rational>(n);
  for (int i = 1; i <= n; ++i) {
    Rational v = falling(Rational(m + n - i), n - i) / (factorial<Rational>(i) * factorial<Rational>(n - i)) *
                 superfactorial_n * one_minus_jdelta(m + i, m + n - 1, delta) * shared;
    if ((i - 1) % 2 == 1) v = -v;
    out.di.push_back(v);
  }
  return out;
}

HypergeometricCheck hypergeometric_terms(int m, int n, int k, const Rational& delta) {
  if (m < 0 || n < 0 || k < 0) throw std::invalid_argument("hypergeometric: need m, n, k >= 0");
  if (delta > 0) throw RejectPositiveDelta("hypergeometric identity needs delta <= 0");
  HypergeometricCheck out;
  for (int i = 0; i <= n; ++i) {
    Rational term = binomial<Rational>(n, i) * falling(Rational(k), i) / falling(Rational(m + n), i) *
                    one_minus_jdelta(k - 1, k + i - 2, delta) / one_minus_jdelta(m, m + i - 1, delta);
    out.lhs += i % 2 == 0 ? term : Rational(-term);
  }
  out.rhs = falling(Rational(m + n - k), n) * one_minus_jdelta(m + k, m + n + k - 1, delta) /
            order_normalizer(m, n, delta);

  if (delta == 0) {
    // sum (-1)^i C(n,i) (x)_i/(x+y)_i = (y)_n/(x+y)_n with x = k, y = m+n-k
    out.classical = falling(Rational(m + n - k), n) / falling(Rational(m + n), n);
  } else {
    const Rational alpha = k;
    const Rational beta = Rational(1) / delta + 1 - k;
    const Rational gamma = -m - n - 1;
    const int s = n;
    out.classical = rising<Rational>(alpha + gamma + 1, s) * rising<Rational>(beta + gamma + 1, s) /
                    (rising<Rational>(gamma + 1, s) * rising<Rational>(alpha + beta + gamma + 1, s));
  }
  out.holds = out.lhs == out.rhs && out.lhs == out.classical;
  return out;
}

bool hypergeometric_identity(int m, int n, int k, const Rational& delta) {
  return hypergeometric_terms(m, n, k, delta).holds;
}

std::vector<VerifyRow> verify_suite(int max_order, const std::vector<Rational>& deltas, int k_max) {
  if (max_order < 1) throw std::invalid_argument("verify: max order must be >= 1");
  std::vector<VerifyRow> rows;
  for (const auto& delta : deltas) {
    if (delta > 0) throw RejectPositiveDelta("verify: delta must be <= 0, got " + to_string(delta));
    for (int m = 0; m <= max_order; ++m) {
      for (int n = 1; n <= max_order; ++n) {
        const ExactMatrix a = build_A(m, n, delta);
        const Rational det = bareiss_determinant(a);
        const DeterminantForms forms = det_closed_forms(m, n, delta);
        const auto lambda = lambda_solution(m, n, delta);

        VerifyRow nonzero{"det_nonzero", m, n, delta, det != 0, "d = " + to_string(det)};
        rows.push_back(nonzero);

        VerifyRow det_row{"det_closed_form", m, n, delta, det == forms.d, ""};
        int bad_minor = 0;
        for (int i = 1; i <= n; ++i)
          if (bareiss_determinant(replace_column_with_ones(a, i)) != forms.di[at(i - 1)]) bad_minor = i;
        det_row.pass = det_row.pass && bad_minor == 0;
        if (!det_row.pass)
          det_row.detail = bad_minor ? "d_{i;m,n} mismatch at i = " + std::to_string(bad_minor) : "d_{m,n} mismatch";
        rows.push_back(det_row);

        VerifyRow cramer{"cramer_lambda", m, n, delta, false, ""};
        if (det != 0) {
          const auto x = cramer_solve(a);
          cramer.pass = x == lambda;
          if (!cramer.pass) cramer.detail = "Cramer solution differs from closed form";
        } else {
          cramer.detail = "singular";
        }
        rows.push_back(cramer);

        VerifyRow hyper{"hypergeometric", m, n, delta, true, ""};
        for (int k = 0; k <= k_max && hyper.pass; ++k) {
          if (!hypergeometric_identity(m, n, k, delta)) {
            hyper.pass = false;
            hyper.detail = "fails at k = " + std::to_string(k);
          }
        }
        rows.push_back(hyper);

        VerifyRow rho{"rho_piecewise", m, n, delta, true, ""};
        for (int k = 1; k <= k_max && rho.pass; ++k) {
          if (rho_from_lambda(k, m, n, delta) != rho_piecewise(k, m, n, delta)) {
            rho.pass = false;
            rho.detail = "fails at k = " + std::to_string(k);
          }
        }
        rows.push_back(rho);
      }
    }
  }
  return rows;
}

}  // namespace varbound
