// womcli: drive the WOM + polar pipeline from JSON configs.
//
// Subcommands: construct, check-condition, simulate, encode, decode,
// apply-write, exact-oracle. Global flags: --config, --seed, --out. Exit
// codes: 0 success (and check-condition holds), 1 check-condition fails,
// 2 usage or config error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <wompolar/wompolar.hpp>

namespace fs = std::filesystem;
using namespace wompolar;

namespace {

constexpr std::uint64_t kStateStream = 101;
constexpr std::uint64_t kObsStream = 202;

struct Args {
  std::string config, out, partition, s_file, x_file, message, y_file, freeze;
  std::string side = "both";
  std::optional<std::uint64_t> seed;
};

std::string need(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string("missing required flag ") + flag);
  return value;
}

ExperimentConfig load_config(const Args& a) {
  return ExperimentConfig::parse(load_json_file(need(a.config, "--config")));
}

FreezeBits freeze_for(const Args& a, const ExperimentConfig& cfg, const IndexPartition& part) {
  if (!a.freeze.empty()) {
    FreezeBits bits = read_bits_file(a.freeze);
    if (bits.size() != part.g.size())
      throw ConfigError("freeze file: bit count must equal |G| = " + std::to_string(part.g.size()));
    return bits;
  }
  return cfg.freeze_bits(part.g.size());
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string signed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.4f", v);
  return buf;
}

void print_containment(const IndexPartition& part) {
  const ContainmentReport rep = containment_report(part);
  std::cout << "|F|=" << part.f.size() << " |G|=" << part.g.size()
            << " design_rate=" << number_text(rep.design_rate) << "\n";
  if (rep.holds) {
    std::cout << "containment: holds (G contained in F)\n";
  } else {
    std::cout << "containment: VIOLATED at " << rep.violations.size() << " indices:";
    const std::size_t show = rep.violations.size() < 16 ? rep.violations.size() : 16;
    for (std::size_t i = 0; i < show; ++i) std::cout << ' ' << rep.violations[i] + 1;
    if (show < rep.violations.size()) std::cout << " ...";
    std::cout << "\n";
  }
}

int cmd_construct(const Args& a) {
  ExperimentConfig cfg = load_config(a);
  if (a.seed) cfg.construction_seed = *a.seed;
  const std::string out_dir = need(a.out, "--out");
  const WomSourceModel model = cfg.model();
  const ReadChannel ch = cfg.channel.build();

  const Rng master(cfg.construction_seed);
  const EntropyProfile ps =
      estimate_profile(model, nullptr, cfg.n, cfg.construction_m, master.derive(kStateStream));
  const EntropyProfile po =
      estimate_profile(model, &ch, cfg.n, cfg.construction_m, master.derive(kObsStream));
  const IndexPartition part = build_partition(ps, po, cfg.threshold_high, cfg.threshold_low);

  fs::create_directories(out_dir);
  write_text_file(out_dir + "/profile_state.json", profile_to_json(ps).dump(2) + "\n");
  write_text_file(out_dir + "/profile_obs.json", profile_to_json(po).dump(2) + "\n");
  write_text_file(out_dir + "/partition.json", partition_to_json(part).dump(2) + "\n");

  std::cout << "N=" << cfg.n << " M=" << cfg.construction_m << " thresholds=("
            << number_text(cfg.threshold_high) << "," << number_text(cfg.threshold_low) << ")\n";
  print_containment(part);
  return 0;
}

int cmd_check_condition(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  const LessNoisy ln = less_noisy_condition(cfg.model(), cfg.channel.build());
  std::cout << "I(X;S) = " << fixed4(ln.i_xs) << " bits\n";
  std::cout << "I(X;Y) = " << fixed4(ln.i_xy) << " bits\n";
  std::cout << "margin = " << signed4(ln.margin) << " bits\n";
  std::cout << "verdict: " << (ln.holds ? "holds (Y is less noisy than S)" : "fails") << "\n";
  return ln.holds ? 0 : 1;
}

int cmd_simulate(const Args& a) {
  const Json doc = load_json_file(need(a.config, "--config"));
  const IndexPartition part = partition_from_json(load_json_file(need(a.partition, "--partition")));
  const std::string out_dir = need(a.out, "--out");

  const SweepExpansion sweep = expand_sweeps(doc);
  std::vector<ExperimentReport> reports;
  Json points = Json::array();
  for (std::size_t i = 0; i < sweep.resolved.size(); ++i) {
    ExperimentConfig cfg = ExperimentConfig::parse(sweep.resolved[i]);
    if (a.seed) cfg.harness_seed = *a.seed;
    if (cfg.n != part.n)
      throw ConfigError("field \"N\": config N=" + std::to_string(cfg.n) +
                        " does not match partition N=" + std::to_string(part.n));
    const WomSourceModel model = cfg.model();
    const ReadChannel ch = cfg.channel.build();
    const FreezeBits freeze = cfg.freeze_bits(part.g.size());
    const Rng master(cfg.harness_seed);
    const ExperimentReport rep =
        run_experiment(model, ch, part, freeze, cfg.trials, master.derive(i));
    reports.push_back(rep);

    Json point;
    Json axes = Json::object();
    for (std::size_t ax = 0; ax < sweep.axes.size(); ++ax)
      axes[sweep.axes[ax].path] = sweep.axis_values[i][ax];
    point["axes"] = axes;
    point["report"] = report_to_json(rep);
    points.push_back(point);
  }

  Json out;
  out["config"] = doc;
  out["points"] = points;
  fs::create_directories(out_dir);
  write_text_file(out_dir + "/report.json", out.dump(2) + "\n");
  write_text_file(out_dir + "/report.csv",
                  reports_to_csv(sweep.axes, sweep.axis_values, reports));

  for (std::size_t i = 0; i < reports.size(); ++i)
    std::cout << "point " << i << ": fer=" << number_text(reports[i].frame_error_rate)
              << " ci95=[" << number_text(reports[i].fer_ci_lo) << ","
              << number_text(reports[i].fer_ci_hi) << "]"
              << " ber=" << number_text(reports[i].bit_error_rate)
              << " write_fraction=" << number_text(reports[i].mean_write_fraction) << "\n";
  return 0;
}

int cmd_encode(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  const IndexPartition part = partition_from_json(load_json_file(need(a.partition, "--partition")));
  const BitBlock s = read_bits_file(need(a.s_file, "--s"));
  const BitBlock message = read_bits_file(need(a.message, "--message"));
  const FreezeBits freeze = freeze_for(a, cfg, part);

  Rng rng(a.seed ? *a.seed : cfg.harness_seed);
  const EncodeResult enc = encode(s, part, message, freeze, cfg.model(), rng);
  write_bits_file(need(a.out, "--out"), enc.codeword);
  std::cout << "wom_violations=" << enc.wom_violations
            << " contradictions=" << enc.contradictions << "\n";
  return 0;
}

int cmd_decode(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  const IndexPartition part = partition_from_json(load_json_file(need(a.partition, "--partition")));
  const ReadChannel ch = cfg.channel.build();

  // accept both space-separated symbol indices and a plain 0/1 string
  const std::string text = read_text_file(need(a.y_file, "--y"));
  std::vector<std::uint32_t> y;
  if (text.find(' ') == std::string::npos && text.find_first_not_of("01\n\r\t") == std::string::npos) {
    for (std::uint8_t b : parse_bits(text)) y.push_back(b);
  } else {
    std::istringstream in(text);
    long long v;
    while (in >> v) y.push_back(static_cast<std::uint32_t>(v));
  }

  const FreezeBits freeze = freeze_for(a, cfg, part);
  const BitBlock message = decode(y, part, freeze, cfg.model(), ch);
  write_bits_file(need(a.out, "--out"), message);
  std::cout << "decoded " << message.size() << " message bits\n";
  return 0;
}

int cmd_apply_write(const Args& a) {
  const BitBlock s = read_bits_file(need(a.s_file, "--s"));
  const BitBlock x = read_bits_file(need(a.x_file, "--x"));
  write_bits_file(need(a.out, "--out"), apply_write(s, x));
  std::cout << "wom_violations=" << wom_violations(s, x) << "\n";
  return 0;
}

int cmd_exact_oracle(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  const std::string out_dir = need(a.out, "--out");
  const WomSourceModel model = cfg.model();
  const ReadChannel ch = cfg.channel.build();
  fs::create_directories(out_dir);

  auto emit = [&](const EntropyProfile& prof, const std::string& path) {
    write_text_file(path, profile_to_json(prof).dump(2) + "\n");
    std::cout << side_info_name(prof.kind) << ":";
    for (double v : prof.values) std::cout << ' ' << number_text(v);
    std::cout << "\n";
  };
  if (a.side == "state" || a.side == "both")
    emit(exact_profile(model, nullptr, cfg.n), out_dir + "/exact_state.json");
  if (a.side == "observation" || a.side == "both")
    emit(exact_profile(model, &ch, cfg.n), out_dir + "/exact_obs.json");
  if (a.side != "state" && a.side != "observation" && a.side != "both")
    throw ConfigError("flag --side: expected state|observation|both");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint write-once-memory and error-control coding toolkit"};
  app.require_subcommand(1);

  Args args;
  app.add_option("--config", args.config, "experiment config JSON path");
  app.add_option("--seed", args.seed, "override the seed the subcommand uses");
  app.add_option("--out", args.out, "output directory (construct/simulate/exact-oracle) or file");

  auto* construct = app.add_subcommand("construct", "estimate entropy profiles, build F/G");
  auto* check = app.add_subcommand("check-condition", "evaluate the less-noisy condition");
  auto* simulate = app.add_subcommand("simulate", "run experiment sweeps against a partition");
  auto* enc = app.add_subcommand("encode", "encode a message against a state block");
  auto* dec = app.add_subcommand("decode", "decode a message from observations");
  auto* apw = app.add_subcommand("apply-write", "apply the write constraint to a codeword");
  auto* oracle = app.add_subcommand("exact-oracle", "exact profiles by enumeration (N <= 8)");

  for (auto* sub : {construct, check, simulate, enc, dec, apw, oracle}) sub->fallthrough();

  simulate->add_option("--partition", args.partition, "partition JSON path");
  enc->add_option("--partition", args.partition, "partition JSON path");
  enc->add_option("--s", args.s_file, "state block file (ASCII 0/1)");
  enc->add_option("--message", args.message, "message bits file (ASCII 0/1)");
  enc->add_option("--freeze", args.freeze, "freeze bits file (default: config policy)");
  dec->add_option("--partition", args.partition, "partition JSON path");
  dec->add_option("--y", args.y_file, "observation file (symbols or 0/1 string)");
  dec->add_option("--freeze", args.freeze, "freeze bits file (default: config policy)");
  apw->add_option("--s", args.s_file, "state block file (ASCII 0/1)");
  apw->add_option("--x", args.x_file, "codeword file (ASCII 0/1)");
  oracle->add_option("--side", args.side, "state|observation|both (default both)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(args);
    if (check->parsed()) return cmd_check_condition(args);
    if (simulate->parsed()) return cmd_simulate(args);
    if (enc->parsed()) return cmd_encode(args);
    if (dec->parsed()) return cmd_decode(args);
    if (apw->parsed()) return cmd_apply_write(args);
    if (oracle->parsed()) return cmd_exact_oracle(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
