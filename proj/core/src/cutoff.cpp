#include "rtmix/cutoff.hpp"

#include <cmath>
#include <stdexcept>

namespace rtmix {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PlateauCutoff::PlateauCutoff(double eps) : eps_(eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cutoff eps must lie in (0,1)");
  r0sq_ = (1.0 - eps) * (1.0 - eps);
  constexpr int N = kSmoothness;
  poly_.assign(2 * N + 2, 0.0);
  for (int k = 0; k <= N; ++k) {
    poly_[N + 1 + k] = binom(N + k, k) * binom(2 * N + 1, N - k) * (k % 2 ? -1.0 : 1.0);
  }
}

double PlateauCutoff::operator()(double u) const { return taylor(u, 0)[0]; }

std::vector<double> PlateauCutoff::taylor(double u, int order) const {
  std::vector<double> out(order + 1, 0.0);
  if (u <= r0sq_) {
    out[0] = 1.0;
    return out;
  }
  if (u >= 1.0) return out;
  const double width = 1.0 - r0sq_;
  const double q = (u - r0sq_) / width;
  // Taylor coefficients of S at q by synthetic division (repeated Horner).
  std::vector<double> c = poly_;
  const int deg = static_cast<int>(c.size()) - 1;
  for (int k = 0; k <= order && k <= deg; ++k) {
    for (int j = deg - 1; j >= k; --j) c[j] += q * c[j + 1];
    out[k] = -c[k] * std::pow(width, -k);
  }
  out[0] += 1.0;
  return out;
}

}  // namespace rtmix
