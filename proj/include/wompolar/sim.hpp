// End-to-end trials: sample state, encode, write, transmit, decode, score.
// A frame is in error when any message bit is wrong or the encoder violated
// the write constraint (a violation is scored even if decoding survives it).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "codec.hpp"
#include "construction.hpp"
#include "info.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace wompolar {

struct TrialResult {
  int wom_violations = 0;
  int bit_errors = 0;
  bool frame_error = false;
  double write_fraction = 0.0;
  int contradictions = 0;
};

inline TrialResult run_trial(const WomSourceModel& model, const ReadChannel& ch,
                             const IndexPartition& part, const FreezeBits& freeze, Rng& rng) {
  const BitBlock s = sample_state_block(model, part.n, rng);
  const auto msg_set = part.message_set();
  BitBlock message(msg_set.size());
  for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_bit(0.5));

  const EncodeResult enc = encode(s, part, message, freeze, model, rng);
  const BitBlock written = apply_write(s, enc.codeword);
  const auto y = transmit(written, ch, rng);
  const BitBlock decoded = decode(y, part, freeze, model, ch);

  TrialResult tr;
  tr.wom_violations = enc.wom_violations;
  tr.contradictions = enc.contradictions;
  for (std::size_t i = 0; i < message.size(); ++i)
    if (decoded[i] != message[i]) ++tr.bit_errors;
  tr.frame_error = tr.bit_errors > 0 || tr.wom_violations > 0;
  tr.write_fraction = write_fraction(s, enc.codeword);
  return tr;
}

struct BinomialCi {
  double lo = 0.0, hi = 0.0;
  bool wilson = false;
};

// 95% interval: normal approximation, switching to Wilson when either count
// is below 5
inline BinomialCi binomial_ci95(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("binomial_ci95: n must be >= 1");
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  BinomialCi ci;
  if (successes < 5 || n - successes < 5) {
    ci.wilson = true;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    ci.lo = center - half;
    ci.hi = center + half;
  } else {
    const double half = z * std::sqrt(p * (1.0 - p) / nn);
    ci.lo = p - half;
    ci.hi = p + half;
  }
  ci.lo = std::max(0.0, ci.lo);
  ci.hi = std::min(1.0, ci.hi);
  return ci;
}

struct ExperimentReport {
  std::uint64_t trials = 0;
  double design_rate = 0.0;
  double frame_error_rate = 0.0;
  double fer_ci_lo = 0.0, fer_ci_hi = 0.0;
  double bit_error_rate = 0.0;
  double mean_write_fraction = 0.0;
  double violation_rate = 0.0;       // fraction of trials with any violation
  double violation_cell_rate = 0.0;  // violating cells per cell
  bool containment_holds = false;
  double less_noisy_margin = 0.0;
  bool small_sample = false;  // fewer than 30 trials
};

// Aggregates independent trials; trial t consumes the derived stream
// rng.derive(t), so results do not depend on how trials are scheduled.
inline ExperimentReport run_experiment(const WomSourceModel& model, const ReadChannel& ch,
                                       const IndexPartition& part, const FreezeBits& freeze,
                                       std::uint64_t trials, const Rng& rng) {
  if (trials < 1) throw std::invalid_argument("run_experiment: need at least one trial");
  const std::size_t n_msg = part.message_set().size();

  std::uint64_t frames = 0, violated = 0, bit_errs = 0, viol_cells = 0;
  double wf_sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rt = rng.derive(t);
    const TrialResult tr = run_trial(model, ch, part, freeze, rt);
    frames += tr.frame_error ? 1 : 0;
    violated += tr.wom_violations > 0 ? 1 : 0;
    viol_cells += static_cast<std::uint64_t>(tr.wom_violations);
    bit_errs += static_cast<std::uint64_t>(tr.bit_errors);
    wf_sum += tr.write_fraction;
  }

  ExperimentReport rep;
  rep.trials = trials;
  rep.design_rate = part.design_rate();
  rep.frame_error_rate = static_cast<double>(frames) / static_cast<double>(trials);
  const BinomialCi ci = binomial_ci95(frames, trials);
  rep.fer_ci_lo = ci.lo;
  rep.fer_ci_hi = ci.hi;
  rep.bit_error_rate =
      n_msg == 0 ? 0.0
                 : static_cast<double>(bit_errs) / (static_cast<double>(trials) * static_cast<double>(n_msg));
  rep.mean_write_fraction = wf_sum / static_cast<double>(trials);
  rep.violation_rate = static_cast<double>(violated) / static_cast<double>(trials);
  rep.violation_cell_rate = static_cast<double>(viol_cells) /
                            (static_cast<double>(trials) * static_cast<double>(part.n));
  rep.containment_holds = containment_report(part).holds;
  rep.less_noisy_margin = less_noisy_condition(model, ch).margin;
  rep.small_sample = trials < 30;
  return rep;
}

}  // namespace wompolar
