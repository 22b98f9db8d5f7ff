// Randomized SC encoding against the state block and SC decoding from the
// noisy read, sharing one sweep engine.
//
// Encoding walks u_1..u_N with state-side leaf evidence: frozen positions (G)
// take the next freeze bit, message positions (F\G) take the next message
// bit, everything else is sampled from the SC posterior so the codeword lands
// on a writable sequence with high probability. A contradiction (a forced bit
// with zero posterior mass) is counted, not thrown; the sweep continues from
// a uniform pair and any resulting unwritable indices show up as
// wom_violations.
//
// Decoding walks the same order with observation-side evidence: frozen
// positions replay the freeze bits, every other position takes the posterior
// argmax with ties resolved to 1.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "construction.hpp"
#include "model.hpp"
#include "polar.hpp"
#include "rng.hpp"

namespace wompolar {

using FreezeBits = BitBlock;  // one bit per index of G, in index order

struct EncodeResult {
  BitBlock codeword;  // x_1^N = polar_transform(u)
  BitBlock u;
  int wom_violations = 0;
  int contradictions = 0;
};

inline EncodeResult encode(const BitBlock& s, const IndexPartition& part, const BitBlock& message,
                           const FreezeBits& freeze, const WomSourceModel& model, Rng& rng) {
  if (s.size() != part.n) throw std::invalid_argument("encode: state length != partition N");
  const auto roles = part.roles();
  const std::size_t n_msg = part.message_set().size();
  if (message.size() != n_msg) throw std::invalid_argument("encode: message length != |F\\G|");
  if (freeze.size() != part.g.size()) throw std::invalid_argument("encode: freeze length != |G|");

  const auto leaves = leaf_priors_from_state(model, s);
  ScSweep sweep(part.n);
  std::size_t mi = 0, gi = 0;
  SweepResult res = sweep.run(leaves, [&](std::size_t i, ProbPair post) -> int {
    switch (roles[i]) {
      case IndexPartition::Role::Frozen:
        return freeze[gi++];
      case IndexPartition::Role::Message:
        return message[mi++];
      default:
        return rng.next_bit(post.p1);
    }
  });

  EncodeResult out;
  out.wom_violations = wom_violations(s, res.x);
  out.contradictions = res.contradictions;
  out.codeword = std::move(res.x);
  out.u = std::move(res.u);
  return out;
}

inline BitBlock decode(const std::vector<std::uint32_t>& y, const IndexPartition& part,
                       const FreezeBits& freeze, const WomSourceModel& model,
                       const ReadChannel& ch) {
  if (y.size() != part.n) throw std::invalid_argument("decode: observation length != partition N");
  if (freeze.size() != part.g.size()) throw std::invalid_argument("decode: freeze length != |G|");

  const auto roles = part.roles();
  const auto leaves = leaf_priors_from_observation(model, ch, y);
  ScSweep sweep(part.n);
  std::size_t gi = 0;
  SweepResult res = sweep.run(leaves, [&](std::size_t i, ProbPair post) -> int {
    if (roles[i] == IndexPartition::Role::Frozen) return freeze[gi++];
    return post.p0 > post.p1 ? 0 : 1;  // tie decodes to 1
  });

  BitBlock message;
  message.reserve(part.message_set().size());
  for (std::uint32_t i : part.message_set()) message.push_back(res.u[i]);
  return message;
}

}  // namespace wompolar
