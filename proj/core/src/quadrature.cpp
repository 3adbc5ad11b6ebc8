#include "varbound/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "varbound/errors.hpp"

namespace varbound {

Accumulation accumulation_from_env() {
  const char* v = std::getenv("VARBOUND_PRECISION");
  if (v == nullptr) return Accumulation::Extended;
  const std::string s(v);
  if (s == "off" || s == "0" || s == "plain" || s == "double") return Accumulation::Plain;
  return Accumulation::Extended;
}

std::vector<long double> tridiagonal_eigenvalues(std::vector<long double> d, std::vector<long double> e) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return d;
  e.resize(static_cast<std::size_t>(n), 0.0L);
  e[static_cast<std::size_t>(n - 1)] = 0.0L;
  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  constexpr int kMaxIter = 100;

  auto D = [&](int i) -> long double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> long double& { return e[static_cast<std::size_t>(i)]; };

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const long double dd = std::fabs(D(m)) + std::fabs(D(m + 1));
        if (std::fabs(E(m)) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxIter) throw EigenFailure("implicit QL did not converge");
        long double g = (D(l + 1) - D(l)) / (2.0L * E(l));
        long double r = std::hypot(g, 1.0L);
        g = D(m) - D(l) + E(l) / (g + std::copysign(r, g));
        long double s = 1.0L;
        long double c = 1.0L;
        long double p = 0.0L;
        int i;
        for (i = m - 1; i >= l; --i) {
          long double f = s * E(i);
          const long double b = c * E(i);
          r = std::hypot(f, g);
          E(i + 1) = r;
          if (r == 0.0L) {
            D(i + 1) -= p;
            E(m) = 0.0L;
            break;
          }
          s = f / r;
          c = g / r;
          g = D(i + 1) - p;
          r = (D(i) - g) * s + 2.0L * c * b;
          p = s * r;
          D(i + 1) = g + p;
          g = c * r - b;
        }
        if (r == 0.0L && i >= l) continue;
        D(l) -= p;
        E(l) = g;
        E(m) = 0.0L;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace varbound
