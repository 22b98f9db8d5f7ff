// Closed-form information quantities, all in bits (log base 2).
#pragma once

#include <cmath>
#include <span>

#include "model.hpp"

namespace wompolar {

inline double hb(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

inline double entropy(std::span<const double> dist) {
  double h = 0.0;
  for (double p : dist)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

// I(X;S) = H(X) - H(X|S) = H_b(beta + (1-beta)gamma) - (1-beta) H_b(gamma)
inline double mutual_info_xs(const WomSourceModel& m) {
  return hb(m.px0()) - (1.0 - m.beta) * hb(m.gamma);
}

// I(X;Y) = H(Y) - H(Y|X) over the exact finite joint table
inline double mutual_info_xy(const WomSourceModel& m, const ReadChannel& ch) {
  const double px0 = m.px0();
  double hy = 0.0;
  for (std::size_t y = 0; y < ch.alphabet(); ++y) {
    const double py = px0 * ch.prob(0, y) + (1.0 - px0) * ch.prob(1, y);
    if (py > 0.0) hy -= py * std::log2(py);
  }
  const double hyx = px0 * entropy(ch.row(0)) + (1.0 - px0) * entropy(ch.row(1));
  return hy - hyx;
}

struct LessNoisy {
  bool holds = false;
  double margin = 0.0;  // I(X;Y) - I(X;S), signed, in bits
  double i_xs = 0.0;
  double i_xy = 0.0;
};

inline LessNoisy less_noisy_condition(const WomSourceModel& m, const ReadChannel& ch) {
  LessNoisy out;
  out.i_xs = mutual_info_xs(m);
  out.i_xy = mutual_info_xy(m, ch);
  out.margin = out.i_xy - out.i_xs;
  out.holds = out.margin >= 0.0;
  return out;
}

}  // namespace wompolar
