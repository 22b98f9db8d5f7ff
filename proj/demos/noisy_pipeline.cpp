// End-to-end walk: construct a code, write one message into a random
// state block through a BSC, read it back, and tally the damage.
#include <cstdio>

#include <wompolar/wompolar.hpp>

using namespace wompolar;

int main() {
  const std::size_t n = 1024;
  const WomSourceModel model{0.5, 0.5};
  const ReadChannel ch = ReadChannel::bsc(0.02);
  const Rng master(50);

  const EntropyProfile ps = estimate_profile(model, nullptr, n, 20000, master.derive(1));
  const EntropyProfile po = estimate_profile(model, &ch, n, 20000, master.derive(2));
  const IndexPartition part = build_partition(ps, po, 0.9, 0.1);
  const auto message_idx = part.message_set();
  std::printf("N=%zu  message bits=%zu  design rate=%.4f\n", n, message_idx.size(),
              part.design_rate());

  const LessNoisy ln = less_noisy_condition(model, ch);
  std::printf("I(X;S)=%.4f  I(X;Y)=%.4f  margin=%+.4f -> %s\n", ln.i_xs, ln.i_xy, ln.margin,
              ln.holds ? "holds" : "fails");

  Rng rng = master.derive(3);
  const BitBlock s = sample_state_block(model, n, rng);
  BitBlock message(message_idx.size());
  for (auto& b : message) b = static_cast<std::uint8_t>(rng.next_bit(0.5));
  const FreezeBits freeze(part.g.size(), 0);

  const EncodeResult enc = encode(s, part, message, freeze, model, rng);
  const BitBlock written = apply_write(s, enc.codeword);
  const auto y = transmit(written, ch, rng);
  const BitBlock decoded = decode(y, part, freeze, model, ch);

  std::size_t bit_errors = 0;
  for (std::size_t i = 0; i < message.size(); ++i) bit_errors += message[i] != decoded[i];
  std::printf("wom violations=%d  write fraction=%.4f  bit errors=%zu/%zu\n", enc.wom_violations,
              write_fraction(s, enc.codeword), bit_errors, message.size());
  return 0;
}
