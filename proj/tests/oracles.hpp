#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;

// Two-level sector {|01g10>, |00e10>} of the swap-wait-swap sequence.
inline M2 sector_unitary(double g, double chi, double t_swap, double t_wait, double phi) {
  const C i{0.0, 1.0};
  const C e = std::exp(i * phi);
  M2 h1, h2, h3;
  h1 << 0.0, g / 2, g / 2, chi;
  h2 << 0.0, 0.0, 0.0, chi;
  h3 << 0.0, g / 2 * e, g / 2 * std::conj(e), chi;
  const M2 u1 = (-i * h1 * t_swap).exp();
  const M2 u2 = (-i * h2 * t_wait).exp();
  const M2 u3 = (-i * h3 * t_swap).exp();
  return u3 * u2 * u1;
}

inline double return_population(double g, double chi, double t_swap, double t_wait, double phi) {
  return std::norm(sector_unitary(g, chi, t_swap, t_wait, phi)(0, 0));
}

// Grid scan followed by Brent refinement of the minimum of f on [a, b].
inline double argmin(const std::function<double(double)>& f, double a, double b, int grid = 721) {
  double best = a, fb = f(a);
  const double h = (b - a) / (grid - 1);
  for (int k = 1; k < grid; ++k) {
    const double x = a + k * h;
    const double v = f(x);
    if (v < fb) fb = v, best = x;
  }
  auto r = boost::math::tools::brent_find_minima(f, best - h, best + h, 52);
  return r.first;
}

inline double wrap(double x) {
  const double pi = 3.14159265358979323846;
  x = std::fmod(x + pi, 2 * pi);
  if (x <= 0) x += 2 * pi;
  return x - pi;
}

}  // namespace oracle
