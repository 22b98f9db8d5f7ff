// Successive-cancellation probability recursion over the polar factor graph.
// Probabilities travel as normalized (p0, p1) pairs in the linear domain;
// every combine renormalizes, so blocks up to 2^16 stay well inside double
// range. A contradiction (zero posterior mass) is surfaced to the caller, not
// silently renormalized.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "bits.hpp"

namespace wompolar {

struct ProbPair {
  double p0 = 0.5;
  double p1 = 0.5;
};

inline ProbPair normalized(ProbPair p) {
  const double s = p.p0 + p.p1;
  if (!(s > 0.0)) throw std::invalid_argument("ProbPair: total mass must be positive");
  return {p.p0 / s, p.p1 / s};
}

// check node: distribution of a XOR b
inline ProbPair sc_check_combine(ProbPair a, ProbPair b) {
  return normalized({a.p0 * b.p0 + a.p1 * b.p1, a.p0 * b.p1 + a.p1 * b.p0});
}

// variable node: distribution of w where leg a saw w XOR u_prev and leg b saw
// w. Zero total mass means the conditioning path is impossible given the
// deterministic parts of the evidence.
struct VarCombine {
  ProbPair p;
  bool contradiction = false;
};

inline VarCombine sc_var_combine(ProbPair a, ProbPair b, int u_prev) {
  const double a_at0 = u_prev ? a.p1 : a.p0;
  const double a_at1 = u_prev ? a.p0 : a.p1;
  const double m0 = a_at0 * b.p0;
  const double m1 = a_at1 * b.p1;
  const double s = m0 + m1;
  if (!(s > 0.0)) return {{0.5, 0.5}, true};
  return {{m0 / s, m1 / s}, false};
}

struct SweepResult {
  BitBlock u;  // decided bits, natural order
  BitBlock x;  // realization with x = polar_transform(u)
  int contradictions = 0;
};

// Full-block sweep. leaves[j] = P(X_j = . | evidence_j) for independent
// per-position evidence. decide(i, posterior) commits bit u_i; it is called
// for i = 0..N-1 in order with posterior = P(U_i | evidence, committed
// prefix). After a contradiction the affected subtree continues from a
// uniform pair. Scratch is reused across run() calls; one sweep costs
// O(N log N) combines.
class ScSweep {
 public:
  explicit ScSweep(std::size_t n)
      : n_(n), k_(log2_exact(n)), pm_((k_ + 1) * n), xb_((k_ + 1) * n) {}

  std::size_t block_length() const { return n_; }

  // contradictions seen so far during a running sweep (for decide callbacks)
  int contradictions_so_far() const { return contra_; }

  template <class Decide>
  SweepResult run(std::span<const ProbPair> leaves, Decide&& decide) {
    if (leaves.size() != n_) throw std::invalid_argument("sc sweep: leaf count mismatch");
    for (std::size_t j = 0; j < n_; ++j) pm_[j] = normalized(leaves[j]);
    contra_ = 0;
    SweepResult out;
    out.u.assign(n_, 0);
    node(0, 0, n_, 0, decide, out);
    out.x.assign(xb_.begin(), xb_.begin() + static_cast<std::ptrdiff_t>(n_));
    out.contradictions = contra_;
    return out;
  }

 private:
  template <class Decide>
  void node(unsigned depth, std::size_t off, std::size_t m, std::size_t ubase,
            Decide& decide, SweepResult& out) {
    ProbPair* cur = pm_.data() + depth * n_ + off;
    std::uint8_t* xcur = xb_.data() + depth * n_ + off;
    if (m == 1) {
      const std::uint8_t bit = decide(ubase, *cur) ? 1 : 0;
      out.u[ubase] = bit;
      *xcur = bit;
      return;
    }
    const std::size_t h = m / 2;
    ProbPair* child = pm_.data() + (depth + 1) * n_ + off;
    std::uint8_t* xchild = xb_.data() + (depth + 1) * n_ + off;
    for (std::size_t j = 0; j < h; ++j)
      child[j] = sc_check_combine(cur[j], cur[h + j]);
    node(depth + 1, off, h, ubase, decide, out);
    for (std::size_t j = 0; j < h; ++j) {
      const VarCombine vc = sc_var_combine(cur[j], cur[h + j], xchild[j]);
      if (vc.contradiction) ++contra_;
      child[h + j] = vc.p;
    }
    node(depth + 1, off + h, h, ubase + h, decide, out);
    for (std::size_t j = 0; j < h; ++j) {
      xcur[j] = static_cast<std::uint8_t>(xchild[j] ^ xchild[h + j]);
      xcur[h + j] = xchild[h + j];
    }
  }

  std::size_t n_;
  unsigned k_;
  std::vector<ProbPair> pm_;
  std::vector<std::uint8_t> xb_;
  int contra_ = 0;
};

struct Posterior {
  ProbPair p;
  bool contradiction = false;  // prefix impossible given deterministic evidence
};

// P(U_i | leaves, U_1^{i-1} = prefix) for the single index i = |prefix|
// (0-based). Bits after i do not influence the result and are filled with 0.
inline Posterior sc_posterior(std::span<const ProbPair> leaves,
                              std::span<const std::uint8_t> prefix) {
  if (prefix.size() >= leaves.size())
    throw std::invalid_argument("sc_posterior: prefix must be shorter than the block");
  ScSweep sweep(leaves.size());
  Posterior got;
  sweep.run(leaves, [&](std::size_t i, ProbPair post) -> int {
    if (i < prefix.size()) return prefix[i];
    if (i == prefix.size()) {
      got.p = post;
      got.contradiction = sweep.contradictions_so_far() > 0;
    }
    return 0;
  });
  return got;
}

}  // namespace wompolar
