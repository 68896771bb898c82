#include "momentflow/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momentflow {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kTwoPi = 6.2831853071795864769;

// Gauss-Legendre nodes/weights on [-1, 1]. Regenerate with
// scripts/regen_constants.py.
struct NodeWeight {
  double x;
  double w;
};

constexpr NodeWeight kGL10[10] = {
    {-0.9739065285171717201, 0.06667134430868813759},
    {-0.8650633666889845107, 0.1494513491505805931},
    {-0.6794095682990244062, 0.219086362515982044},
    {-0.4333953941292471908, 0.2692667193099963551},
    {-0.1488743389816312109, 0.2955242247147528702},
    {0.1488743389816312109, 0.2955242247147528702},
    {0.4333953941292471908, 0.2692667193099963551},
    {0.6794095682990244062, 0.219086362515982044},
    {0.8650633666889845107, 0.1494513491505805931},
    {0.9739065285171717201, 0.06667134430868813759},
};

constexpr NodeWeight kGL31[31] = {
    {-0.9970874818194770741, 0.007470831579248775859},
    {-0.984685909665152484, 0.01731862079031058246},
    {-0.9625039250929496618, 0.0270090191849794218},
    {-0.930756997896648165, 0.03643227391238546402},
    {-0.8897600299482710434, 0.0454937075272011029},
    {-0.8399203201462673401, 0.05410308242491685371},
    {-0.7817331484166249404, 0.06217478656102842691},
    {-0.7157767845868532839, 0.06962858323541036617},
    {-0.6427067229242603462, 0.07639038659877661643},
    {-0.5632491614071492627, 0.0823929917615892639},
    {-0.4781937820449024804, 0.08757674060847787613},
    {-0.3883859016082329431, 0.09189011389364147822},
    {-0.2947180699817016166, 0.09529024291231951281},
    {-0.1981211993355706288, 0.09774333538632872509},
    {-0.09955531215234152033, 0.09922501122667230787},
    {0.0, 0.09972054479342645143},
    {0.09955531215234152033, 0.09922501122667230787},
    {0.1981211993355706288, 0.09774333538632872509},
    {0.2947180699817016166, 0.09529024291231951281},
    {0.3883859016082329431, 0.09189011389364147822},
    {0.4781937820449024804, 0.08757674060847787613},
    {0.5632491614071492627, 0.0823929917615892639},
    {0.6427067229242603462, 0.07639038659877661643},
    {0.7157767845868532839, 0.06962858323541036617},
    {0.7817331484166249404, 0.06217478656102842691},
    {0.8399203201462673401, 0.05410308242491685371},
    {0.8897600299482710434, 0.0454937075272011029},
    {0.930756997896648165, 0.03643227391238546402},
    {0.9625039250929496618, 0.0270090191849794218},
    {0.984685909665152484, 0.01731862079031058246},
    {0.9970874818194770741, 0.007470831579248775859},
};

constexpr double kRhoClamp = 1.0 - 1e-12;

// Correlation-derivative integrand after the substitution r = sin(t):
// d/dr bvn_cdf * dr/dt = exp(-(h^2 + k^2 - 2 h k sin t) / (2 cos^2 t)) / 2pi.
// The substitution removes the 1/sqrt(1 - r^2) factor, so the integrand is
// bounded up to the clamp boundary.
inline double rho_integrand_theta(double h, double k, double t) {
  const double st = std::sin(t);
  const double ct = std::cos(t);
  return std::exp(-(h * h + k * k - 2.0 * st * h * k) / (2.0 * ct * ct));
}

double gl10_panel(double h, double k, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (const auto& nw : kGL10) {
    acc += nw.w * rho_integrand_theta(h, k, mid + half * nw.x);
  }
  return half * acc;
}

// Base Owen T integral for 0 <= a <= 1, single 31-node panel.
double owens_t_base(double h, double a) {
  const double hh = 0.5 * h * h;
  double acc = 0.0;
  for (const auto& nw : kGL31) {
    const double x = 0.5 * a * (nw.x + 1.0);
    const double q = 1.0 + x * x;
    acc += nw.w * std::exp(-hh * q) / q;
  }
  return 0.5 * a * acc / kTwoPi;
}

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_quantile(double p) {
  // Acklam's rational approximation, then one Newton correction.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;

  if (!(p > 0.0 && p < 1.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double err = norm_cdf(x) - p;
  x -= err / norm_pdf(x);
  return x;
}

double clamp_correlation(double rho) {
  return std::clamp(rho, -kRhoClamp, kRhoClamp);
}

double bvn_pdf(double h, double k, double rho) {
  const double r = clamp_correlation(rho);
  const double omr2 = (1.0 - r) * (1.0 + r);
  return std::exp(-(h * h + k * k - 2.0 * r * h * k) / (2.0 * omr2)) /
         (kTwoPi * std::sqrt(omr2));
}

double bvn_cdf_delta(double h, double k, double rho) {
  const double r = clamp_correlation(rho);
  if (r == 0.0) return 0.0;

  const double theta = std::asin(r);
  const double at = std::abs(theta);
  const double sgn = theta < 0.0 ? -1.0 : 1.0;

  // Uniform panels of <= 0.45 rad carry the integral to |rho| = 0.99; the
  // boundary layer beyond that gets geometrically graded panels.
  constexpr double kThetaSplit = 1.4292568534704693;  // asin(0.99)
  const double base = std::min(at, kThetaSplit);
  const int n = std::max(1, static_cast<int>(std::ceil(base / 0.45)));

  double edges[12];
  int ne = 0;
  for (int i = 0; i <= n; ++i) edges[ne++] = base * i / n;
  if (at > kThetaSplit) {
    const double rem = at - kThetaSplit;
    edges[ne++] = kThetaSplit + 0.5 * rem;
    edges[ne++] = kThetaSplit + 0.75 * rem;
    edges[ne++] = kThetaSplit + 0.875 * rem;
    edges[ne++] = at;
  }

  double acc = 0.0;
  for (int i = 0; i + 1 < ne; ++i) {
    acc += gl10_panel(h, k, sgn * edges[i], sgn * edges[i + 1]);
  }
  return acc / kTwoPi;
}

double bvn_cdf(double h, double k, double rho) {
  const double v = norm_cdf(h) * norm_cdf(k) + bvn_cdf_delta(h, k, rho);
  return std::clamp(v, 0.0, 1.0);
}

double bvn_cdf_dh(double h, double k, double rho) {
  const double r = clamp_correlation(rho);
  const double omr2 = (1.0 - r) * (1.0 + r);
  return norm_pdf(h) * norm_cdf((k - r * h) / std::sqrt(omr2));
}

double owens_t(double h, double a) {
  if (a == 0.0 || std::isnan(h) || std::isnan(a)) {
    return a == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  }
  // T(-h, a) = T(h, a) and T(h, -a) = -T(h, a).
  double sign = 1.0;
  if (a < 0.0) {
    sign = -1.0;
    a = -a;
  }
  h = std::abs(h);

  if (a <= 1.0) return sign * owens_t_base(h, a);

  // Reciprocal reduction for a > 1 (valid for h, a >= 0):
  // T(h, a) = Phi(h)/2 + Phi(ah)/2 - Phi(h) Phi(ah) - T(ah, 1/a).
  const double ph = norm_cdf(h);
  const double pah = norm_cdf(a * h);
  const double v = 0.5 * ph + 0.5 * pah - ph * pah - owens_t_base(a * h, 1.0 / a);
  return sign * v;
}

}  // namespace momentflow
