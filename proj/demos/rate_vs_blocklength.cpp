// Sweep block length and report how the achievable message rate grows
// once the state profile is exactly computable (beta = gamma = 0.5).
#include <cstdio>

#include <wompolar/wompolar.hpp>

using namespace wompolar;

int main() {
  const WomSourceModel model{0.5, 0.5};
  const ReadChannel ch = ReadChannel::bsc(0.05);
  const Rng master(7);

  std::printf("%8s %8s %8s %12s %12s\n", "N", "|F|", "|G|", "design_rate", "violations");
  for (std::size_t n : {256u, 1024u, 4096u, 8192u}) {
    const EntropyProfile ps = estimate_profile(model, nullptr, n, 20000, master.derive(n));
    const EntropyProfile po = estimate_profile(model, &ch, n, 20000, master.derive(n + 1));
    const IndexPartition part = build_partition(ps, po, 0.9, 0.1);
    const ContainmentReport rep = containment_report(part);
    std::printf("%8zu %8zu %8zu %12.4f %12zu\n", n, part.f.size(), part.g.size(),
                rep.design_rate, rep.violations.size());
  }
  return 0;
}
