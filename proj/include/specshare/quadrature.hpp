#pragma once

#include <functional>
#include <span>
#include <string>

namespace specshare::quadrature {

struct Rule {
  std::span<const double> nodes;    // on [-1, 1]
  std::span<const double> weights;
};

// Gauss-Legendre rule with n nodes (computed once per n and cached). n in [1, 256].
Rule gauss_legendre(int n);

struct Options {
  double abs_tolerance = 1e-10;
  int nodes_per_panel = 16;
  int max_depth = 16;
  // Prefixed to the NumericalError message on failure.
  std::string label = "integral";
};

/// Globally adaptive Gauss-Legendre integration of f over [a, b].
///
/// Each panel's error is estimated as the gap between its single-panel rule and
/// the sum over its two halves; the worst panel is bisected until the summed
/// error estimate falls below `abs_tolerance`. Throws NumericalError (with the
/// worst interval) once 2^min(max_depth, 20) panels are in use.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {});

}  // namespace specshare::quadrature
