#pragma once

namespace hetcache {

/// Gauss hypergeometric 2F1(1, b; c; z) for c > b > 0 and z <= 0.
///
/// |z| <= 0.5 uses the power series directly. On (-2, -0.5) the Pfaff
/// transformation maps the argument to z/(z-1) in (1/3, 2/3). Below -2 the
/// connection formula around z = infinity is used; it needs b in (0, 1), which
/// covers every argument the interference functionals produce. Series stop
/// once |term| < 1e-16 |sum| and throw NumericalError past 10,000 terms.
double hyp2f1_1b(double b, double c, double z);

/// Laplace-exponent factor for interferers that lie beyond the serving
/// distance (they cannot be stronger than the serving BS):
///   G(x, a) = 2x/(a-2) 2F1(1, 1-2/a; 2-2/a; -x) = 2 int_1^inf x t^-a/(1+x t^-a) t dt.
/// x is the equivalent SINR threshold, a the path-loss exponent in (2, 4].
/// Returns +inf for x = +inf.
double interference_g(double x, double alpha);

/// Same factor for interferers spread over the whole plane (no exclusion):
///   H(x, a) = (2/a) x^(2/a) B(2/a, 1-2/a) = 2 int_0^inf x t^-a/(1+x t^-a) t dt.
double interference_h(double x, double alpha);

/// G(x1, a) - G(x2, a); requires x1 >= x2 >= 0.
double interference_g_diff(double x1, double x2, double alpha);

/// H(x1, a) - H(x2, a); requires x1 >= x2 >= 0.
double interference_h_diff(double x1, double x2, double alpha);

}  // namespace hetcache
