#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tripack {

/// Deterministic trajectories, all started from 0:
///   Z:    z' = 2 exp(-z^2) - 4 z^2        (K_{1,1,s} packing, unmatched degree)
///   Y:    y' = 6 exp(-y^2) - 4            (triangle-only packing)
///   That: t̂' = exp(-4 t̂^2)               (triangle-free process, accepted edges)
enum class Curve { Z, Y, That };

std::string_view to_string(Curve c);

/// Right-hand side of the autonomous ODE for `curve`.
double curve_rhs(Curve curve, double x);

/// Integrand z^2 - 1 + exp(-z^2) of the wasted-edge integral.
double waste_integrand(double z);

inline constexpr double kDefaultStep = 1e-4;
inline constexpr double kDefaultTMax = 10.0;

/// Fixed-step RK4 tabulation of one trajectory on a uniform grid. For Z the
/// waste integral ∫_0^t [z^2 - 1 + exp(-z^2)] ds is carried as a second state
/// component. Between grid points values are interpolated by cubic Hermite
/// using the ODE right-hand side as the slope, so grid values are exact.
class CurveTable {
 public:
  /// Throws std::invalid_argument unless t_max > 0 and step > 0.
  static CurveTable tabulate(Curve which, double t_max = kDefaultTMax, double step = kDefaultStep);

  Curve which() const { return which_; }
  double t_max() const { return t_max_; }
  double step() const { return step_; }
  std::span<const double> values() const { return values_; }
  /// Empty unless which() == Curve::Z.
  std::span<const double> aux_integral() const { return aux_; }

  /// Trajectory value at t. Throws std::out_of_range outside [0, t_max].
  double eval(double t) const;
  /// Time derivative at t (right-hand side at the interpolated value).
  double slope(double t) const;
  /// Waste integral at t; Z tables only.
  double eval_aux(double t) const;

 private:
  CurveTable(Curve which, double t_max, double step) : which_(which), t_max_(t_max), step_(step) {}
  double hermite(std::span<const double> ys, double t, bool aux) const;

  Curve which_;
  double t_max_;
  double step_;
  std::vector<double> values_;
  std::vector<double> aux_;
};

/// The three trajectories on a shared grid, plus the bound curves built on them.
class TheoryCurves {
 public:
  explicit TheoryCurves(double t_max = kDefaultTMax, double step = kDefaultStep);

  const CurveTable& z() const { return z_; }
  const CurveTable& y() const { return y_; }
  const CurveTable& that() const { return that_; }
  double t_max() const { return z_.t_max(); }

  /// L_ν(c) = (1/3)[c - z(c)/2 - 2 ∫_0^c (z^2 - 1 + e^{-z^2}) dt].
  double l_nu(double c) const;
  /// L*_ν(c) = c/3 - y(c)/6.
  double l_nu_star(double c) const;
  /// U_τ(c) = min{c/2, c - t̂(c)}.
  double u_tau(double c) const;

 private:
  CurveTable z_;
  CurveTable y_;
  CurveTable that_;
};

/// Positive root of exp(-x^2) - 2x^2 = 0 (limit of z).
double zeta();
/// Positive root of 6 exp(-y^2) - 4 = 0 (limit of y), equal to sqrt(ln 1.5).
double upsilon();

/// sqrt(ln 2 / 12): the largest c with 2 exp(-12 c^2) >= 1.
double threshold_c1();
/// Same constant located by bisection on 2 exp(-12 c^2) - 1.
double threshold_c1_bisection();
/// Solution of c/2 = 2[c(1 - 2ζ^2) - ζ/6] in closed form.
double threshold_c2();
/// Same constant located by bisection on the defining linear equation.
double threshold_c2_bisection();

/// Every sign change of U_τ(c) - 2 L_ν(c) on [lo, hi], refined by bisection.
std::vector<double> tuza_crossings(const TheoryCurves& curves, double lo = 1e-3, double hi = 10.0,
                                   std::size_t grid = 10000);
/// Smallest c > 0 where U_τ(c) = 2 L_ν(c): below it the heuristic cover bound
/// is within a factor 2 of the packing bound. Throws std::runtime_error when
/// no crossing is bracketed on [1e-3, 10].
double threshold_tf(const TheoryCurves& curves);

struct RatioPeak {
  double c;
  double ratio;
};

/// Local maxima of U_τ(c) / L*_ν(c) on a grid of `grid` points over [lo, hi],
/// each refined by golden-section search within ±2 grid steps.
std::vector<RatioPeak> ratio_local_maxima(const TheoryCurves& curves, double lo = 0.01,
                                          double hi = 10.0, std::size_t grid = 2000);
/// Largest of ratio_local_maxima.
RatioPeak ratio_sup(const TheoryCurves& curves);

/// Closed-form c_r, p_r, q_{r,s} at a given z; negative indices give 0.
struct Families {
  double c = 0.0;
  double p = 0.0;
  double q = 0.0;
};
Families families_at(double z, int r, int s);
/// Families at z = z(t).
Families deterministic_families(const CurveTable& z_table, double t, int r, int s);

/// Left minus right side of the three drift equations for c_r, p_r and q_{r,s}
/// at time t. Left sides use the chain rule on the closed forms with
/// z' = 2e^{-z^2} - 4z^2.
struct Residuals {
  double c = 0.0;
  double p = 0.0;
  double q = 0.0;
};
Residuals ode_residual(const CurveTable& z_table, double t, int r, int s);
Residuals ode_residual_at(double z, int r, int s);

/// f(t) = exp((100 ln n / ln ln n) t) n^{-1/5}. Throws std::invalid_argument for n < 16.
double error_envelope(double t, double n);

}  // namespace tripack
