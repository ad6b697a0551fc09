#include "mhdlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mhdlab/errors.hpp"

namespace mhdlab {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), Complex{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Polynomial poly_scale(const Polynomial& a, Complex k) {
  Polynomial out(a);
  for (auto& c : out) c *= k;
  return out;
}

void poly_trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0.0) p.pop_back();
}

int poly_deflate_zero_roots(Polynomial& p) {
  poly_trim(p);
  int k = 0;
  while (k + 1 < static_cast<int>(p.size()) && p[k] == 0.0) ++k;
  p.erase(p.begin(), p.begin() + k);
  return k;
}

PolyValue poly_eval(const Polynomial& p, Complex z) {
  PolyValue out;
  const double az = std::abs(z);
  for (std::size_t k = p.size(); k-- > 0;) {
    out.derivative = out.derivative * z + out.value;
    out.value = out.value * z + p[k];
    out.magnitude = out.magnitude * az + std::abs(p[k]);
  }
  return out;
}

std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  if (a == 0.0) throw DomainError("quadratic_roots: leading coefficient is zero");
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation in -b -/+ disc.
  const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                             : -0.5 * (b - disc);
  if (q == 0.0) return {Complex{}, Complex{}};  // b = c = 0
  return {q / a, c / q};
}

namespace {

// Initial radii from the upper convex hull of (k, log|c_k|).
std::vector<Complex> newton_polygon_guesses(const Polynomial& p) {
  const int d = static_cast<int>(p.size()) - 1;
  std::vector<int> hull;
  std::vector<double> lg(p.size());
  for (int k = 0; k <= d; ++k) {
    lg[k] = p[k] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(p[k]));
  }
  for (int k = 0; k <= d; ++k) {
    if (!std::isfinite(lg[k])) continue;
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      // Pop j when it lies on or below the chord i -> k.
      if ((lg[j] - lg[i]) * (k - i) <= (lg[k] - lg[i]) * (j - i)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<Complex> z;
  z.reserve(d);
  constexpr double kOffset = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int i = hull[h];
    const int j = hull[h + 1];
    const int m = j - i;
    const double radius = std::exp((lg[i] - lg[j]) / m);
    for (int t = 0; t < m; ++t) {
      const double angle = 2.0 * std::numbers::pi * (static_cast<double>(t) / m +
                                                      static_cast<double>(i) / d) +
                           kOffset;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

}  // namespace

std::vector<Complex> aberth_roots(const Polynomial& input, int max_iterations) {
  Polynomial p(input);
  const int zeros = poly_deflate_zero_roots(p);
  std::vector<Complex> roots(zeros, Complex{});
  const int d = static_cast<int>(p.size()) - 1;
  if (d <= 0) return roots;
  if (d == 1) {
    roots.push_back(-p[0] / p[1]);
    return roots;
  }

  std::vector<Complex> z = newton_polygon_guesses(p);
  std::vector<bool> done(d, false);
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (int k = 0; k < d; ++k) {
      if (done[k]) continue;
      const PolyValue pv = poly_eval(p, z[k]);
      if (std::abs(pv.value) <= 4.0 * kEps * pv.magnitude) {
        done[k] = true;
        continue;
      }
      all_done = false;
      const Complex ratio = pv.value / pv.derivative;
      Complex repulsion{};
      for (int j = 0; j < d; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }
  if (iter == max_iterations && !std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
    Complex worst{};
    double worst_err = -1.0;
    for (int k = 0; k < d; ++k) {
      const PolyValue pv = poly_eval(p, z[k]);
      const double err = std::abs(pv.value) / std::max(pv.magnitude, 1e-300);
      if (!done[k] && err > worst_err) {
        worst_err = err;
        worst = z[k];
      }
    }
    throw ConvergenceError("Aberth iteration did not converge", worst, iter);
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace mhdlab
