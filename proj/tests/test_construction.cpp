#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include <wompolar/construction.hpp>
#include <wompolar/io.hpp>
#include <wompolar/rng.hpp>

#include "oracle.hpp"

using namespace wompolar;

namespace {

// per-index erasure profile of BEC(1/2): the state side at beta = gamma = 1/2
// is exactly an erasure observation, so H(U_i | U^{i-1}, S^N) follows the
// closed-form recursion z -> (2z - z^2, z^2) for any N
std::vector<double> bec_half_profile(std::size_t n) {
  std::vector<double> z{0.5};
  while (z.size() < n) {
    std::vector<double> next(z.size() * 2);
    for (std::size_t j = 0; j < z.size(); ++j) {
      next[2 * j] = 2.0 * z[j] - z[j] * z[j];
      next[2 * j + 1] = z[j] * z[j];
    }
    z = std::move(next);
  }
  return z;
}

EntropyProfile mock_profile(std::vector<double> values, SideInfoKind kind) {
  EntropyProfile prof;
  prof.n = values.size();
  prof.samples = 0;
  prof.kind = kind;
  prof.values = std::move(values);
  return prof;
}

}  // namespace

TEST_CASE("exact state profile reproduces the erasure recursion") {
  const WomSourceModel m{0.5, 0.5};
  for (std::size_t n : {2u, 4u, 8u}) {
    const EntropyProfile prof = exact_profile(m, nullptr, n);
    const auto z = bec_half_profile(n);
    REQUIRE(prof.values.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(prof.values[i] == Catch::Approx(z[i]).margin(1e-12));
  }
  // frozen values at N=8
  const EntropyProfile p8 = exact_profile(m, nullptr, 8);
  const double want[8] = {0.99609375, 0.87890625, 0.80859375, 0.31640625,
                          0.68359375, 0.19140625, 0.12109375, 0.00390625};
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(p8.values[i] == Catch::Approx(want[i]).margin(1e-12));
}

TEST_CASE("exact profiles match the chain-rule oracle") {
  const ReadChannel bsc = ReadChannel::bsc(0.1);
  const ReadChannel bac = ReadChannel::bac(0.1, 0.3);
  const std::vector<std::pair<double, double>> models{{0.5, 0.5}, {0.3, 0.7}, {0.8, 0.2}};
  for (auto [beta, gamma] : models) {
    const WomSourceModel m{beta, gamma};
    for (std::size_t n : {2u, 4u, 8u}) {
      const auto ref_state = oracle::chain_rule_profile(m, nullptr, n);
      const EntropyProfile state = exact_profile(m, nullptr, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(state.values[i] == Catch::Approx(ref_state[i]).margin(1e-10));

      for (const ReadChannel* ch : {&bsc, &bac}) {
        const auto ref_obs = oracle::chain_rule_profile(m, ch, n);
        const EntropyProfile obs = exact_profile(m, ch, n);
        for (std::size_t i = 0; i < n; ++i)
          CHECK(obs.values[i] == Catch::Approx(ref_obs[i]).margin(1e-10));
      }
    }
  }
}

TEST_CASE("exact profile rejects large or ragged N") {
  const WomSourceModel m{0.5, 0.5};
  CHECK_THROWS_AS(exact_profile(m, nullptr, 16), std::invalid_argument);
  CHECK_THROWS_AS(exact_profile(m, nullptr, 6), std::invalid_argument);
}

TEST_CASE("monte carlo profile agrees with the exact profile") {
  const WomSourceModel m{0.4, 0.6};
  const ReadChannel ch = ReadChannel::bsc(0.1);
  const Rng rng(31);
  const std::size_t n = 4;
  const std::uint64_t samples = 20000;

  const EntropyProfile exact_state = exact_profile(m, nullptr, n);
  const EntropyProfile mc_state = estimate_profile(m, nullptr, n, samples, rng.derive(1));
  REQUIRE(mc_state.samples == samples);
  for (std::size_t i = 0; i < n; ++i) {
    const double tol = 5.0 * mc_state.stderrs[i] + 1e-9;
    CHECK(mc_state.values[i] == Catch::Approx(exact_state.values[i]).margin(tol));
  }

  const EntropyProfile exact_obs = exact_profile(m, &ch, n);
  const EntropyProfile mc_obs = estimate_profile(m, &ch, n, samples, rng.derive(2));
  for (std::size_t i = 0; i < n; ++i) {
    const double tol = 5.0 * mc_obs.stderrs[i] + 1e-9;
    CHECK(mc_obs.values[i] == Catch::Approx(exact_obs.values[i]).margin(tol));
  }
}

TEST_CASE("monte carlo state profile tracks the erasure recursion at N=1024") {
  const WomSourceModel m{0.5, 0.5};
  const std::uint64_t samples = 3000;
  const EntropyProfile prof = estimate_profile(m, nullptr, 1024, samples, Rng(32));
  const auto z = bec_half_profile(1024);
  for (std::size_t i = 0; i < 1024; ++i) {
    // per-sample entropies here are Bernoulli(z), so the true sigma is known;
    // the 10/M term covers the Poisson tail where z is tiny and a couple of
    // hits already dwarf sigma (Bernstein-style bound, comfortably < 1e-10
    // failure probability per index)
    const double sigma = std::sqrt(z[i] * (1.0 - z[i]) / static_cast<double>(samples));
    const double tol = 6.0 * sigma + 10.0 / static_cast<double>(samples);
    CHECK(prof.values[i] == Catch::Approx(z[i]).margin(tol));
  }
}

TEST_CASE("profile estimation is deterministic in the seed") {
  const WomSourceModel m{0.5, 0.5};
  const ReadChannel ch = ReadChannel::bsc(0.05);
  const EntropyProfile a = estimate_profile(m, &ch, 16, 500, Rng(33));
  const EntropyProfile b = estimate_profile(m, &ch, 16, 500, Rng(33));
  CHECK(a.values == b.values);
  CHECK(a.stderrs == b.stderrs);
  CHECK(a.seed == b.seed);

  const EntropyProfile c = estimate_profile(m, &ch, 16, 500, Rng(34));
  CHECK(a.values != c.values);
}

TEST_CASE("low-noise observation profile dominates the state profile") {
  // the index-set containment F ⊇ G rests on the observation side leaving
  // less per-index uncertainty than the state side; pinned exactly at N=8
  // for these matched low-noise configurations
  const WomSourceModel m{0.5, 0.5};
  for (double p : {0.02, 0.05}) {
    const ReadChannel ch = ReadChannel::bsc(p);
    const EntropyProfile st = exact_profile(m, nullptr, 8);
    const EntropyProfile ob = exact_profile(m, &ch, 8);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(ob.values[i] <= st.values[i] + 1e-12);
  }
}

TEST_CASE("partition membership, precedence, and derived sets") {
  const auto state =
      mock_profile({0.95, 0.99, 0.5, 0.91, 0.05, 0.92, 0.3, 0.97}, SideInfoKind::State);
  const auto obs =
      mock_profile({0.02, 0.15, 0.01, 0.12, 0.2, 0.04, 0.01, 0.03}, SideInfoKind::Observation);
  const IndexPartition part = build_partition(state, obs, 0.9, 0.1);

  CHECK(part.f == std::vector<std::uint32_t>{0, 1, 3, 5, 7});
  CHECK(part.g == std::vector<std::uint32_t>{1, 3, 4});
  CHECK(part.message_set() == std::vector<std::uint32_t>{0, 5, 7});
  CHECK(part.frozen_set() == std::vector<std::uint32_t>{1, 3, 4});
  CHECK(part.sampled_set() == std::vector<std::uint32_t>{2, 4, 6});
  CHECK(part.containment_violations() == std::vector<std::uint32_t>{4});
  CHECK(part.design_rate() == Catch::Approx(3.0 / 8.0).margin(1e-15));

  const auto roles = part.roles();
  using Role = IndexPartition::Role;
  CHECK(roles[0] == Role::Message);
  CHECK(roles[1] == Role::Frozen);   // in both F and G: G wins
  CHECK(roles[2] == Role::Sampled);
  CHECK(roles[4] == Role::Frozen);   // in G only: still frozen
  CHECK(roles[6] == Role::Sampled);

  const ContainmentReport rep = containment_report(part);
  CHECK_FALSE(rep.holds);
  CHECK(rep.violations == std::vector<std::uint32_t>{4});
  CHECK(rep.design_rate == Catch::Approx(3.0 / 8.0).margin(1e-15));
}

TEST_CASE("threshold boundaries are inclusive") {
  const auto state = mock_profile({1.0, 0.9999, 0.0, 1.0}, SideInfoKind::State);
  const auto obs = mock_profile({0.3, 0.0, 0.7, 0.0}, SideInfoKind::Observation);
  const IndexPartition part = build_partition(state, obs, 1.0, 0.0);
  // F keeps only exact ones; G at threshold 0 keeps everything
  CHECK(part.f == std::vector<std::uint32_t>{0, 3});
  CHECK(part.g == std::vector<std::uint32_t>{0, 1, 2, 3});

  CHECK_THROWS_AS(build_partition(state, obs, 0.1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(build_partition(state, obs, 1.2, 0.1), std::invalid_argument);
  const auto shorter = mock_profile({0.5, 0.5}, SideInfoKind::Observation);
  CHECK_THROWS_AS(build_partition(state, shorter, 0.9, 0.1), std::invalid_argument);
}

TEST_CASE("profile json round trip") {
  const WomSourceModel m{0.5, 0.5};
  const EntropyProfile prof = estimate_profile(m, nullptr, 8, 200, Rng(35));
  const Json j = profile_to_json(prof);
  CHECK(j.at("N") == 8);
  CHECK(j.at("M") == 200);
  CHECK(j.at("side_info_kind") == "STATE");

  const EntropyProfile back = profile_from_json(j);
  CHECK(back.n == prof.n);
  CHECK(back.samples == prof.samples);
  CHECK(back.kind == prof.kind);
  CHECK(back.seed == prof.seed);
  CHECK(back.values == prof.values);

  Json bad = j;
  bad["side_info_kind"] = "GUESS";
  CHECK_THROWS(profile_from_json(bad));
  bad = j;
  bad["values"] = {0.5};
  CHECK_THROWS(profile_from_json(bad));
}

TEST_CASE("partition json round trip uses 1-based indices on disk") {
  IndexPartition part;
  part.n = 8;
  part.threshold_high = 0.9;
  part.threshold_low = 0.1;
  part.f = {0, 2, 7};
  part.g = {2};

  const Json j = partition_to_json(part);
  CHECK(j.at("F") == Json::array({1, 3, 8}));
  CHECK(j.at("G") == Json::array({3}));
  CHECK(j.at("thresholds") == Json::array({0.9, 0.1}));

  const IndexPartition back = partition_from_json(j);
  CHECK(back.n == 8);
  CHECK(back.f == part.f);
  CHECK(back.g == part.g);
  CHECK(back.threshold_high == 0.9);
  CHECK(back.threshold_low == 0.1);

  Json bad = j;
  bad["F"] = {0};  // 0 is out of range in the 1-based encoding
  CHECK_THROWS(partition_from_json(bad));
  bad = j;
  bad["G"] = {9};
  CHECK_THROWS(partition_from_json(bad));
}

TEST_CASE("bit and symbol file round trips") {
  const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
  const std::string bits_path = dir + "/wompolar_test_bits.txt";
  const std::string syms_path = dir + "/wompolar_test_syms.txt";

  const BitBlock bits{1, 0, 0, 1, 1, 0};
  write_bits_file(bits_path, bits);
  CHECK(read_text_file(bits_path) == "100110");  // newline-free
  CHECK(read_bits_file(bits_path) == bits);

  const std::vector<std::uint32_t> syms{0, 2, 1, 2};
  write_symbols_file(syms_path, syms);
  CHECK(read_text_file(syms_path) == "0 2 1 2");
  CHECK(read_symbols_file(syms_path) == syms);
}

TEST_CASE("json parse errors carry the line number") {
  try {
    parse_json_text("{\n  \"a\": 1,\n  bad\n}", "cfg.json");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cfg.json:3:") != std::string::npos);
  }
}
