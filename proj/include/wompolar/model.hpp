// WOM source pair (S, X) and the discrete memoryless read channel P(Y|X).
// S is the prior cell state: P(S=0) = beta. Given S=1 the encoder is free to
// choose X with P(X=0|S=1) = gamma; given S=0 the cell is stuck and X must be
// 0. Pairs are i.i.d. across positions, so the X marginal is
// P(X=0) = beta + (1-beta)*gamma.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "polar.hpp"
#include "rng.hpp"

namespace wompolar {

struct WomSourceModel {
  double beta;   // P(S = 0)
  double gamma;  // P(X = 0 | S = 1)

  WomSourceModel(double b, double g) : beta(b), gamma(g) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("model: beta must lie in (0,1)");
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("model: gamma must lie in (0,1)");
  }

  double px0() const { return beta + (1.0 - beta) * gamma; }
};

class ReadChannel {
 public:
  explicit ReadChannel(std::array<std::vector<double>, 2> rows) : rows_(std::move(rows)) {
    validate();
  }

  static ReadChannel identity() { return ReadChannel({{{1.0, 0.0}, {0.0, 1.0}}}); }

  static ReadChannel bsc(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bsc: p must lie in [0,1]");
    return ReadChannel({{{1.0 - p, p}, {p, 1.0 - p}}});
  }

  static ReadChannel bac(double p01, double p10) {
    if (!(p01 >= 0.0 && p01 <= 1.0) || !(p10 >= 0.0 && p10 <= 1.0))
      throw std::invalid_argument("bac: crossover probabilities must lie in [0,1]");
    return ReadChannel({{{1.0 - p01, p01}, {p10, 1.0 - p10}}});
  }

  static ReadChannel from_matrix(const std::vector<std::vector<double>>& m) {
    if (m.size() != 2) throw std::invalid_argument("channel matrix: need exactly 2 rows");
    return ReadChannel(std::array<std::vector<double>, 2>{m[0], m[1]});
  }

  std::size_t alphabet() const { return rows_[0].size(); }
  double prob(int x, std::size_t y) const { return rows_[x ? 1 : 0][y]; }
  const std::vector<double>& row(int x) const { return rows_[x ? 1 : 0]; }

 private:
  void validate() const {
    if (rows_[0].size() != rows_[1].size())
      throw std::invalid_argument("channel matrix: rows must have equal length");
    if (rows_[0].size() < 2) throw std::invalid_argument("channel matrix: alphabet must be >= 2");
    for (const auto& row : rows_) {
      double sum = 0.0;
      for (double v : row) {
        if (v < 0.0) throw std::invalid_argument("channel matrix: entries must be >= 0");
        sum += v;
      }
      if (sum < 1.0 - 1e-12 || sum > 1.0 + 1e-12)
        throw std::invalid_argument("channel matrix: each row must sum to 1");
    }
  }

  std::array<std::vector<double>, 2> rows_;
};

inline BitBlock sample_state_block(const WomSourceModel& m, std::size_t n, Rng& rng) {
  BitBlock s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = rng.next_double() < m.beta ? 0 : 1;
  return s;
}

// i.i.d. (s_i, x_i) pairs; x_i = 0 is forced wherever s_i = 0
inline std::pair<BitBlock, BitBlock> sample_source_block(const WomSourceModel& m, std::size_t n,
                                                         Rng& rng) {
  BitBlock s(n), x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = rng.next_double() < m.beta ? 0 : 1;
    if (s[i]) x[i] = rng.next_double() < m.gamma ? 0 : 1;
  }
  return {std::move(s), std::move(x)};
}

inline std::vector<std::uint32_t> transmit(const BitBlock& x, const ReadChannel& ch, Rng& rng) {
  std::vector<std::uint32_t> y(x.size());
  const std::size_t last = ch.alphabet() - 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = rng.next_double();
    double acc = 0.0;
    std::size_t pick = last;
    for (std::size_t sym = 0; sym < last; ++sym) {
      acc += ch.prob(x[i], sym);
      if (u < acc) {
        pick = sym;
        break;
      }
    }
    y[i] = static_cast<std::uint32_t>(pick);
  }
  return y;
}

inline std::vector<ProbPair> leaf_priors_from_state(const WomSourceModel& m, const BitBlock& s) {
  std::vector<ProbPair> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = s[i] ? ProbPair{m.gamma, 1.0 - m.gamma} : ProbPair{1.0, 0.0};
  return out;
}

inline std::vector<ProbPair> leaf_priors_from_observation(const WomSourceModel& m,
                                                          const ReadChannel& ch,
                                                          const std::vector<std::uint32_t>& y) {
  const double px0 = m.px0();
  std::vector<ProbPair> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= ch.alphabet())
      throw std::invalid_argument("observation: symbol outside channel alphabet");
    const double w0 = px0 * ch.prob(0, y[i]);
    const double w1 = (1.0 - px0) * ch.prob(1, y[i]);
    if (!(w0 + w1 > 0.0))
      throw std::invalid_argument("observation: symbol has zero likelihood under both inputs");
    out[i] = {w0 / (w0 + w1), w1 / (w0 + w1)};
  }
  return out;
}

// physical write: a cell already at 0 stays 0, a cell at 1 takes x_i
inline BitBlock apply_write(const BitBlock& s, const BitBlock& x) {
  if (s.size() != x.size()) throw std::invalid_argument("apply_write: length mismatch");
  BitBlock out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = static_cast<std::uint8_t>(s[i] & x[i]);
  return out;
}

// indices where the codeword asks a stuck cell to hold a 1
inline int wom_violations(const BitBlock& s, const BitBlock& x) {
  if (s.size() != x.size()) throw std::invalid_argument("wom_violations: length mismatch");
  int count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == 0 && x[i] == 1) ++count;
  return count;
}

// fraction of cells actually programmed down (s_i = 1, x_i = 0)
inline double write_fraction(const BitBlock& s, const BitBlock& x) {
  if (s.size() != x.size()) throw std::invalid_argument("write_fraction: length mismatch");
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == 1 && x[i] == 0) ++count;
  return static_cast<double>(count) / static_cast<double>(s.size());
}

}  // namespace wompolar
