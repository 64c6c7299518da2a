#include "tripack/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tripack/numerics.hpp"

namespace tripack {

std::string_view to_string(Curve c) {
  switch (c) {
    case Curve::Z:
      return "z";
    case Curve::Y:
      return "y";
    case Curve::That:
      return "that";
  }
  return "?";
}

double curve_rhs(Curve curve, double x) {
  switch (curve) {
    case Curve::Z:
      return 2.0 * std::exp(-x * x) - 4.0 * x * x;
    case Curve::Y:
      return 6.0 * std::exp(-x * x) - 4.0;
    case Curve::That:
      return std::exp(-4.0 * x * x);
  }
  return 0.0;
}

double waste_integrand(double z) {
  const double z2 = z * z;
  // expm1 keeps the small-z cancellation of z^2 - (1 - e^{-z^2}) accurate.
  return z2 + std::expm1(-z2);
}

CurveTable CurveTable::tabulate(Curve which, double t_max, double step) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
  const double ratio = t_max / step;
  const auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));

  CurveTable table(which, t_max, step);
  table.values_.resize(steps + 1);
  if (which == Curve::Z) table.aux_.resize(steps + 1);

  // State (x, a) with a' = waste_integrand(x); `a` is only kept for Z.
  auto deriv = [which](double x) {
    return std::array<double, 2>{curve_rhs(which, x), waste_integrand(x)};
  };
  double x = 0.0;
  double a = 0.0;
  table.values_[0] = 0.0;
  if (which == Curve::Z) table.aux_[0] = 0.0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto k1 = deriv(x);
    const auto k2 = deriv(x + 0.5 * step * k1[0]);
    const auto k3 = deriv(x + 0.5 * step * k2[0]);
    const auto k4 = deriv(x + step * k3[0]);
    x += step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    a += step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    table.values_[k] = x;
    if (which == Curve::Z) table.aux_[k] = a;
  }
  return table;
}

double CurveTable::hermite(std::span<const double> ys, double t, bool aux) const {
  if (!(t >= 0.0) || t > t_max_ * (1.0 + 1e-12)) {
    throw std::out_of_range("t=" + std::to_string(t) + " outside tabulated range [0, " +
                            std::to_string(t_max_) + "]");
  }
  const double pos = t / step_;
  auto k = static_cast<std::size_t>(pos);
  if (k >= ys.size() - 1) k = ys.size() - 2;
  const double s = pos - static_cast<double>(k);
  if (s == 0.0) return ys[k];

  auto slope_at = [&](std::size_t i) {
    return aux ? waste_integrand(values_[i]) : curve_rhs(which_, values_[i]);
  };
  const double y0 = ys[k];
  const double y1 = ys[k + 1];
  const double m0 = slope_at(k) * step_;
  const double m1 = slope_at(k + 1) * step_;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * m1;
}

double CurveTable::eval(double t) const { return hermite(values_, t, false); }

double CurveTable::slope(double t) const { return curve_rhs(which_, eval(t)); }

double CurveTable::eval_aux(double t) const {
  if (which_ != Curve::Z) throw std::logic_error("waste integral is only tabulated for z");
  return hermite(aux_, t, true);
}

TheoryCurves::TheoryCurves(double t_max, double step)
    : z_(CurveTable::tabulate(Curve::Z, t_max, step)),
      y_(CurveTable::tabulate(Curve::Y, t_max, step)),
      that_(CurveTable::tabulate(Curve::That, t_max, step)) {}

double TheoryCurves::l_nu(double c) const {
  return (c - z_.eval(c) / 2.0 - 2.0 * z_.eval_aux(c)) / 3.0;
}

double TheoryCurves::l_nu_star(double c) const { return c / 3.0 - y_.eval(c) / 6.0; }

double TheoryCurves::u_tau(double c) const { return std::min(c / 2.0, c - that_.eval(c)); }

// ---------------------------------------------------------------------------
// Constants

double zeta() {
  return numerics::bisect([](double x) { return std::exp(-x * x) - 2.0 * x * x; }, 0.5, 0.7);
}

double upsilon() {
  return numerics::bisect([](double y) { return 6.0 * std::exp(-y * y) - 4.0; }, 0.6, 0.7);
}

double threshold_c1() { return std::sqrt(std::log(2.0) / 12.0); }

double threshold_c1_bisection() {
  return numerics::bisect([](double c) { return 2.0 * std::exp(-12.0 * c * c) - 1.0; }, 0.0, 1.0);
}

double threshold_c2() {
  const double z = zeta();
  return (z / 3.0) / (2.0 * (1.0 - 2.0 * z * z) - 0.5);
}

double threshold_c2_bisection() {
  const double z = zeta();
  return numerics::bisect(
      [z](double c) { return 2.0 * (c * (1.0 - 2.0 * z * z) - z / 6.0) - c / 2.0; }, 0.5, 10.0);
}

std::vector<double> tuza_crossings(const TheoryCurves& curves, double lo, double hi,
                                   std::size_t grid) {
  if (grid < 2 || !(hi > lo)) throw std::invalid_argument("bad crossing grid");
  auto gap = [&](double c) { return curves.u_tau(c) - 2.0 * curves.l_nu(c); };
  std::vector<double> roots;
  double prev_c = lo;
  double prev = gap(lo);
  for (std::size_t i = 1; i < grid; ++i) {
    const double c = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double cur = gap(c);
    if (prev == 0.0) {
      roots.push_back(prev_c);
    } else if (std::signbit(prev) != std::signbit(cur) && cur != 0.0) {
      roots.push_back(numerics::bisect(gap, prev_c, c));
    }
    prev_c = c;
    prev = cur;
  }
  return roots;
}

double threshold_tf(const TheoryCurves& curves) {
  const auto roots = tuza_crossings(curves);
  if (roots.empty()) throw std::runtime_error("no crossing of U_tau = 2 L_nu bracketed on [1e-3, 10]");
  return roots.front();
}

std::vector<RatioPeak> ratio_local_maxima(const TheoryCurves& curves, double lo, double hi,
                                          std::size_t grid) {
  if (grid < 3 || !(hi > lo)) throw std::invalid_argument("bad ratio grid");
  auto ratio = [&](double c) { return curves.u_tau(c) / curves.l_nu_star(c); };
  const double h = (hi - lo) / static_cast<double>(grid - 1);
  std::vector<double> cs(grid);
  std::vector<double> rs(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    cs[i] = lo + h * static_cast<double>(i);
    rs[i] = ratio(cs[i]);
  }
  std::vector<RatioPeak> peaks;
  for (std::size_t i = 0; i < grid; ++i) {
    const bool left_ok = i == 0 || rs[i] > rs[i - 1];
    const bool right_ok = i + 1 == grid || rs[i] >= rs[i + 1];
    if (!left_ok || !right_ok) continue;
    if (i == 0 || i + 1 == grid) {
      peaks.push_back({cs[i], rs[i]});
      continue;
    }
    const double a = std::max(lo, cs[i] - 2 * h);
    const double b = std::min(hi, cs[i] + 2 * h);
    const auto best = numerics::golden_section_max(ratio, a, b, 1e-13);
    peaks.push_back(best.value >= rs[i] ? RatioPeak{best.x, best.value} : RatioPeak{cs[i], rs[i]});
  }
  return peaks;
}

RatioPeak ratio_sup(const TheoryCurves& curves) {
  const auto peaks = ratio_local_maxima(curves);
  return *std::max_element(peaks.begin(), peaks.end(),
                           [](const RatioPeak& a, const RatioPeak& b) { return a.ratio < b.ratio; });
}

// ---------------------------------------------------------------------------
// Tracked-variable families and their drift equations

namespace {

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

// z^k with the convention z^k = 0 for k < 0 (only reached with a zero coefficient).
double zpow(double z, int k) { return k < 0 ? 0.0 : std::pow(z, k); }

double fam_c(double z, int r) {
  if (r < 0) return 0.0;
  return std::exp(-z * z) * zpow(z, 2 * r) / factorial(r);
}

double fam_p(double z, int r) {
  if (r < 0) return 0.0;
  return 2.0 * std::exp(-z * z) * zpow(z, 2 * r + 1) / factorial(r);
}

double fam_q(double z, int r, int s) {
  if (r < 0 || s < 0) return 0.0;
  return std::exp(-2.0 * z * z) * zpow(z, 2 * (r + s)) / (factorial(r) * factorial(s));
}

}  // namespace

Families families_at(double z, int r, int s) { return {fam_c(z, r), fam_p(z, r), fam_q(z, r, s)}; }

Families deterministic_families(const CurveTable& z_table, double t, int r, int s) {
  return families_at(z_table.eval(t), r, s);
}

Residuals ode_residual_at(double z, int r, int s) {
  if (r < 0 || s < 0) throw std::invalid_argument("family indices must be nonnegative");
  const double dz = curve_rhs(Curve::Z, z);
  const double e1 = std::exp(-z * z);
  const double e2 = std::exp(-2.0 * z * z);

  // Chain rule on the closed forms.
  const double dc = e1 * (2.0 * r * zpow(z, 2 * r - 1) - 2.0 * zpow(z, 2 * r + 1)) / factorial(r) * dz;
  const double dp =
      2.0 * e1 * ((2.0 * r + 1.0) * zpow(z, 2 * r) - 2.0 * zpow(z, 2 * r + 2)) / factorial(r) * dz;
  const int k = r + s;
  const double dq = e2 * (2.0 * k * zpow(z, 2 * k - 1) - 4.0 * zpow(z, 2 * k + 1)) /
                    (factorial(r) * factorial(s)) * dz;

  const double p0 = fam_p(z, 0);
  const double rhs_c = 2.0 * fam_c(z, r - 1) * p0 + 8.0 * (r + 1) * fam_c(z, r + 1) * z -
                       2.0 * fam_c(z, r) * (p0 + 4.0 * r * z);
  const double rhs_p = 4.0 * fam_q(z, r, 0) + 2.0 * fam_p(z, r - 1) * p0 +
                       8.0 * (r + 1) * fam_p(z, r + 1) * z -
                       2.0 * fam_p(z, r) * (p0 + (4.0 * r + 2.0) * z);
  const double rhs_q = 2.0 * (fam_q(z, r - 1, s) + fam_q(z, r, s - 1)) * p0 +
                       8.0 * ((r + 1) * fam_q(z, r + 1, s) + (s + 1) * fam_q(z, r, s + 1)) * z -
                       4.0 * fam_q(z, r, s) * (p0 + 2.0 * k * z);
  return {dc - rhs_c, dp - rhs_p, dq - rhs_q};
}

Residuals ode_residual(const CurveTable& z_table, double t, int r, int s) {
  return ode_residual_at(z_table.eval(t), r, s);
}

double error_envelope(double t, double n) {
  if (!(n >= 16.0)) throw std::invalid_argument("error envelope needs n >= 16");
  if (!(t >= 0.0)) throw std::invalid_argument("error envelope needs t >= 0");
  const double ln = std::log(n);
  return std::exp(100.0 * ln / std::log(ln) * t) * std::pow(n, -0.2);
}

}  // namespace tripack
