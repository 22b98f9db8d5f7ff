// Bit blocks and the GF(2) polar butterfly u = x * G_k, natural index order
// (no bit-reversal). The transform is an involution: applying it twice gives
// back the input.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wompolar {

using BitBlock = std::vector<std::uint8_t>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline unsigned log2_exact(std::size_t n) {
  if (!is_pow2(n)) throw std::invalid_argument("block length must be a power of two");
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

inline void polar_transform_inplace(BitBlock& x) {
  const std::size_t n = x.size();
  (void)log2_exact(n);
  for (std::size_t h = n >> 1; h >= 1; h >>= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j)
        x[j] ^= x[j + h];
}

inline BitBlock polar_transform(BitBlock x) {
  polar_transform_inplace(x);
  return x;
}

inline std::string format_bits(const BitBlock& b) {
  std::string out(b.size(), '0');
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) out[i] = '1';
  return out;
}

inline BitBlock parse_bits(std::string_view text) {
  BitBlock out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c == '\n' || c == '\r' || c == ' ' || c == '\t')
      continue;
    else
      throw std::invalid_argument("bit string: unexpected character");
  }
  return out;
}

}  // namespace wompolar
