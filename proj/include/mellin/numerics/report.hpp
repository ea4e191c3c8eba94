#pragma once

#include "mellin/rational.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace mellin::numerics {

struct ResidualPoint {
  std::string label;
  Complex s;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;  // |lhs - rhs|
  double relative = 0.0;  // residual / scale
};

enum class Judge { Relative, Absolute };

/// Outcome of one verification run; pass iff every judged residual
/// (relative by default) is within tolerance.
struct ResidualReport {
  std::string check;
  Judge judged_on = Judge::Relative;
  std::string operator_text;
  std::string function_id;
  double tolerance = 0.0;
  std::vector<ResidualPoint> points;
  double max_relative = 0.0;
  double max_residual = 0.0;
  bool pass = true;

  void add(ResidualPoint p) {
    max_relative = std::max(max_relative, p.relative);
    max_residual = std::max(max_residual, p.residual);
    const double judged = judged_on == Judge::Relative ? p.relative : p.residual;
    if (!(judged <= tolerance)) pass = false;
    points.push_back(std::move(p));
  }
};

/// |a - b| over max(|a|, |b|); falls back to `floor` when both sides are
/// below it (structural zeros), and to 0 when everything vanishes.
inline double relative_difference(Complex a, Complex b, double floor = 0.0) {
  const double diff = std::abs(a - b);
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  if (scale == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return diff / scale;
}

}  // namespace mellin::numerics
