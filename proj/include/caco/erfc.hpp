#pragma once

#include <cmath>

namespace caco {

/// Complementary error function.
///
/// Rational Chebyshev approximations of W. J. Cody, "Rational Chebyshev
/// approximations for the error function", Math. Comp. 23 (1969) 631-638,
/// as distributed in the SPECFUN CALERF routine. The approximations are
/// near-minimax to at least 18 significant digits on three intervals:
/// |x| <= 0.46875 (via erf), 0.46875 < |x| <= 4 and |x| > 4. In double
/// precision the absolute error stays below 1e-15 over |x| <= 6.
inline double erfc(double x) {
  static constexpr double a[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                                  3.77485237685302021e02, 3.20937758913846947e03,
                                  1.85777706184603153e-1};
  static constexpr double b[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                                  1.28261652607737228e03, 2.84423683343917062e03};
  static constexpr double c[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                                  6.61191906371416295e01, 2.98635138197400131e02,
                                  8.81952221241769090e02, 1.71204761263407058e03,
                                  2.05107837782607147e03, 1.23033935479799725e03,
                                  2.15311535474403846e-8};
  static constexpr double d[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                                  5.37181101862009858e02, 1.62138957456669019e03,
                                  3.29079923573345963e03, 4.36261909014324716e03,
                                  3.43936767414372164e03, 1.23033935480374942e03};
  static constexpr double p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                  1.25781726111229246e-1, 1.60837851487422766e-2,
                                  6.58749161529837803e-4, 1.63153871373020978e-2};
  static constexpr double q[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                                  5.27905102951428412e-1, 6.05183413124413191e-2,
                                  2.33520497626869185e-3};
  static constexpr double inv_sqrt_pi = 5.6418958354775628695e-1;
  static constexpr double threshold = 0.46875;
  static constexpr double xsmall = 1.11e-16;
  static constexpr double xbig = 26.543;

  if (std::isnan(x)) return x;
  const double y = std::fabs(x);

  // exp(-y*y) split as exp(-ysq*ysq)*exp(-del) with ysq = y truncated to
  // 1/16, which keeps the product accurate for large y.
  auto gaussian_tail = [](double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
  };

  double result;
  if (y <= threshold) {
    const double ysq = y > xsmall ? y * y : 0.0;
    double num = a[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + a[i]) * ysq;
      den = (den + b[i]) * ysq;
    }
    return 1.0 - x * (num + a[3]) / (den + b[3]);
  } else if (y <= 4.0) {
    double num = c[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + c[i]) * y;
      den = (den + d[i]) * y;
    }
    result = (num + c[7]) / (den + d[7]) * gaussian_tail(y);
  } else if (y >= xbig) {
    result = 0.0;
  } else {
    const double ysq = 1.0 / (y * y);
    double num = p[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
      num = (num + p[i]) * ysq;
      den = (den + q[i]) * ysq;
    }
    result = ysq * (num + p[4]) / (den + q[4]);
    result = (inv_sqrt_pi - result) / y * gaussian_tail(y);
  }
  return x < 0.0 ? 2.0 - result : result;
}

}  // namespace caco
