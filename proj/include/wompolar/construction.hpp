// Entropy-profile estimation and the F/G index partition.
//
// profile_state[i] estimates H(U_i | S_1^N, U_1^{i-1}); profile_obs[i]
// estimates H(U_i | Y_1^N, U_1^{i-1}). Estimation is Monte-Carlo with a genie
// prefix: each sample draws (s, x) from the model, takes u = transform(x) as
// the true path, and averages the binary entropy of the per-index SC
// posterior. Each sample owns a derived RNG stream and accumulation runs in
// sample order, so the profile is independent of any worker partitioning.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "info.hpp"
#include "model.hpp"
#include "polar.hpp"
#include "rng.hpp"

namespace wompolar {

enum class SideInfoKind { State, Observation };

struct EntropyProfile {
  std::size_t n = 0;
  std::uint64_t samples = 0;  // 0 marks an exact (enumerated) profile
  SideInfoKind kind = SideInfoKind::State;
  std::uint64_t seed = 0;
  std::vector<double> values;
  std::vector<double> stderrs;  // per-index MC standard error; empty for exact
};

// ch == nullptr estimates the state-side profile, otherwise the observation
// side through *ch.
inline EntropyProfile estimate_profile(const WomSourceModel& model, const ReadChannel* ch,
                                       std::size_t n, std::uint64_t m, const Rng& rng) {
  (void)log2_exact(n);
  if (m < 1) throw std::invalid_argument("estimate_profile: sample count must be >= 1");

  EntropyProfile prof;
  prof.n = n;
  prof.samples = m;
  prof.kind = ch ? SideInfoKind::Observation : SideInfoKind::State;
  prof.seed = rng.seed();

  std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
  ScSweep sweep(n);
  for (std::uint64_t t = 0; t < m; ++t) {
    Rng rt = rng.derive(t);
    auto [s, x] = sample_source_block(model, n, rt);
    const BitBlock u = polar_transform(x);
    std::vector<ProbPair> leaves;
    if (ch) {
      const auto y = transmit(x, *ch, rt);
      leaves = leaf_priors_from_observation(model, *ch, y);
    } else {
      leaves = leaf_priors_from_state(model, s);
    }
    sweep.run(leaves, [&](std::size_t i, ProbPair post) -> int {
      const double h = hb(post.p1);
      sum[i] += h;
      sumsq[i] += h * h;
      return u[i];
    });
  }

  prof.values.resize(n);
  prof.stderrs.resize(n);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = sum[i] / dm;
    prof.values[i] = mean;
    const double var = sumsq[i] / dm - mean * mean;
    prof.stderrs[i] = var > 0.0 ? std::sqrt(var / dm) : 0.0;
  }
  return prof;
}

namespace detail {

// Exact conditional entropies given one realization v of the side
// information, entered as per-position pmfs over x and the realization's own
// probability pv. Folds the conditional law of u from full length down,
// reading off H(U_L | v, U_1^{L-1}) at each level.
inline void accumulate_exact_side(const std::vector<ProbPair>& x_pmf, double pv,
                                  std::vector<double>& values) {
  const std::size_t n = x_pmf.size();
  std::vector<double> pu(std::size_t{1} << n, 0.0);
  BitBlock bits(n);
  for (std::size_t xm = 0; xm < pu.size(); ++xm) {
    double px = pv;
    for (std::size_t j = 0; j < n; ++j) {
      const int b = static_cast<int>((xm >> (n - 1 - j)) & 1u);
      bits[j] = static_cast<std::uint8_t>(b);
      px *= b ? x_pmf[j].p1 : x_pmf[j].p0;
    }
    if (px == 0.0) continue;
    const BitBlock u = polar_transform(bits);
    std::size_t ui = 0;
    for (std::size_t j = 0; j < n; ++j) ui = (ui << 1) | u[j];
    pu[ui] += px;
  }
  std::vector<double> cur = std::move(pu);
  for (std::size_t len = n; len >= 1; --len) {
    std::vector<double> next(std::size_t{1} << (len - 1));
    for (std::size_t q = 0; q < next.size(); ++q) {
      const double m0 = cur[2 * q], m1 = cur[2 * q + 1];
      const double tot = m0 + m1;
      if (tot > 0.0) values[len - 1] += tot * hb(m1 / tot);
      next[q] = tot;
    }
    cur = std::move(next);
  }
}

}  // namespace detail

// Exact profile by enumerating every side-information realization; N <= 8.
inline EntropyProfile exact_profile(const WomSourceModel& model, const ReadChannel* ch,
                                    std::size_t n) {
  (void)log2_exact(n);
  if (n > 8) throw std::invalid_argument("exact_profile: N must be <= 8");

  EntropyProfile prof;
  prof.n = n;
  prof.samples = 0;
  prof.kind = ch ? SideInfoKind::Observation : SideInfoKind::State;
  prof.values.assign(n, 0.0);

  const std::size_t alpha = ch ? ch->alphabet() : 2;
  const double px0 = model.px0();
  std::vector<std::size_t> v(n, 0);
  std::vector<ProbPair> x_pmf(n);
  while (true) {
    double pv = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (ch) {
        const std::size_t y = v[j];
        const double w0 = px0 * ch->prob(0, y);
        const double w1 = (1.0 - px0) * ch->prob(1, y);
        pv *= w0 + w1;
        const double tot = w0 + w1;
        x_pmf[j] = tot > 0.0 ? ProbPair{w0 / tot, w1 / tot} : ProbPair{0.5, 0.5};
      } else {
        const int s = static_cast<int>(v[j]);
        pv *= s ? 1.0 - model.beta : model.beta;
        x_pmf[j] = s ? ProbPair{model.gamma, 1.0 - model.gamma} : ProbPair{1.0, 0.0};
      }
    }
    if (pv > 0.0) detail::accumulate_exact_side(x_pmf, pv, prof.values);
    // odometer over the side-information alphabet
    std::size_t j = 0;
    while (j < n && ++v[j] == alpha) v[j++] = 0;
    if (j == n) break;
  }
  return prof;
}

struct IndexPartition {
  std::size_t n = 0;
  double threshold_high = 0.0;
  double threshold_low = 0.0;
  std::vector<std::uint32_t> f;  // high state entropy, sorted, 0-based
  std::vector<std::uint32_t> g;  // high observation entropy, sorted, 0-based

  std::vector<std::uint32_t> message_set() const {  // F \ G
    std::vector<std::uint32_t> out;
    std::size_t gi = 0;
    for (std::uint32_t i : f) {
      while (gi < g.size() && g[gi] < i) ++gi;
      if (gi == g.size() || g[gi] != i) out.push_back(i);
    }
    return out;
  }

  const std::vector<std::uint32_t>& frozen_set() const { return g; }

  std::vector<std::uint32_t> sampled_set() const {  // complement of F
    std::vector<std::uint32_t> out;
    std::size_t fi = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (fi < f.size() && f[fi] == i)
        ++fi;
      else
        out.push_back(i);
    }
    return out;
  }

  std::vector<std::uint32_t> containment_violations() const {  // G \ F
    std::vector<std::uint32_t> out;
    std::size_t fi = 0;
    for (std::uint32_t i : g) {
      while (fi < f.size() && f[fi] < i) ++fi;
      if (fi == f.size() || f[fi] != i) out.push_back(i);
    }
    return out;
  }

  double design_rate() const {
    return static_cast<double>(message_set().size()) / static_cast<double>(n);
  }

  enum class Role : std::uint8_t { Frozen, Message, Sampled };

  // per-index role with precedence: G freezes, then F carries message bits,
  // the rest are sampled
  std::vector<Role> roles() const {
    std::vector<Role> out(n, Role::Sampled);
    for (std::uint32_t i : f) out[i] = Role::Message;
    for (std::uint32_t i : g) out[i] = Role::Frozen;
    return out;
  }
};

inline IndexPartition build_partition(const EntropyProfile& state, const EntropyProfile& obs,
                                      double threshold_high, double threshold_low) {
  if (state.n != obs.n) throw std::invalid_argument("build_partition: profile lengths differ");
  if (!(threshold_low >= 0.0 && threshold_low <= threshold_high && threshold_high <= 1.0))
    throw std::invalid_argument("build_partition: need 0 <= low <= high <= 1");
  IndexPartition part;
  part.n = state.n;
  part.threshold_high = threshold_high;
  part.threshold_low = threshold_low;
  for (std::uint32_t i = 0; i < state.n; ++i) {
    if (state.values[i] >= threshold_high) part.f.push_back(i);
    if (obs.values[i] >= threshold_low) part.g.push_back(i);
  }
  return part;
}

struct ContainmentReport {
  bool holds = false;
  std::vector<std::uint32_t> violations;  // G \ F, 0-based
  double design_rate = 0.0;
};

inline ContainmentReport containment_report(const IndexPartition& part) {
  ContainmentReport rep;
  rep.violations = part.containment_violations();
  rep.holds = rep.violations.empty();
  rep.design_rate = part.design_rate();
  return rep;
}

}  // namespace wompolar
