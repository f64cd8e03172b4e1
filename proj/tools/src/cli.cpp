#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>

#include "chanlearn/config.hpp"
#include "chanlearn/csv.hpp"
#include "chanlearn/error.hpp"
#include "chanlearn/harness.hpp"

namespace chanlearn::cli {

using nlohmann::json;

namespace {

// Option values bound to one subcommand; only flags actually given end up in
// the override document.
struct Flags {
  std::string config, algo, mu_mode, dist, channel, gradient, out;
  std::size_t T = 0, d = 0, M = 0, N = 0, K = 0, jobs = 0;
  double mu = 0, rho = 0, snr_db = 0, gamma_x = 0, D = 0, margin = 0, ridge = 0, eta = 0;
  std::vector<std::uint64_t> seeds;
  bool doubling = false;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON config file; flags override its keys");
  cmd.add_option("--algo", f.algo, "oomd | ogd | ls (decoder), oomd | exp3 | random (codebook)");
  cmd.add_option("--T", f.T, "number of rounds");
  cmd.add_option("--d", f.d, "code length");
  cmd.add_option("--M", f.M, "codewords per codebook");
  cmd.add_option("--N", f.N, "codebooks in the super-codebook");
  cmd.add_option("--mu", f.mu, "innovation mixing weight");
  cmd.add_option("--mu-mode", f.mu_mode, "geometric | constant");
  cmd.add_option("--dist", f.dist, "innovation mixture: gmd | lmd");
  cmd.add_option("--K", f.K, "mixture components");
  cmd.add_option("--rho", f.rho, "upper end of the mixture-mean range");
  cmd.add_option("--snr-db", f.snr_db, "receiver SNR in dB (decoder task)");
  cmd.add_option("--channel", f.channel, "markov | rayleigh | awgn");
  cmd.add_option("--gamma-x", f.gamma_x, "codeword norm bound");
  cmd.add_option("--D", f.D, "decoder ball radius");
  cmd.add_option("--gradient", f.gradient, "hinge | all-active");
  cmd.add_option("--margin", f.margin, "surrogate hinge margin r");
  cmd.add_option("--ridge", f.ridge, "least-squares ridge");
  cmd.add_option("--eta", f.eta, "log-barrier learning rate");
  cmd.add_flag("--doubling", f.doubling, "restart the log-barrier learner with halved eta");
  cmd.add_option("--seeds", f.seeds, "comma-separated seeds")->delimiter(',');
  cmd.add_option("--out", f.out, "CSV output path");
  cmd.add_option("--jobs", f.jobs, "worker threads (0 = all cores)");
}

json overrides_from(const CLI::App& cmd, const Flags& f) {
  json o = json::object();
  const auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--algo")) o["algo"] = f.algo;
  if (given("--T")) o["T"] = f.T;
  if (given("--d")) o["d"] = f.d;
  if (given("--M")) o["M"] = f.M;
  if (given("--N")) o["N"] = f.N;
  if (given("--mu")) o["mu"] = f.mu;
  if (given("--mu-mode")) o["mu_mode"] = f.mu_mode;
  if (given("--dist")) o["dist"] = f.dist;
  if (given("--K")) o["K"] = f.K;
  if (given("--rho")) o["rho"] = f.rho;
  if (given("--snr-db")) o["snr_db"] = f.snr_db;
  if (given("--channel")) o["channel"] = f.channel;
  if (given("--gamma-x")) o["gamma_x"] = f.gamma_x;
  if (given("--D")) o["D"] = f.D;
  if (given("--gradient")) o["gradient"] = f.gradient;
  if (given("--margin")) o["margin"] = f.margin;
  if (given("--ridge")) o["ridge"] = f.ridge;
  if (given("--eta")) o["eta"] = f.eta;
  if (given("--doubling")) o["doubling"] = f.doubling;
  if (given("--seeds")) o["seeds"] = f.seeds;
  if (given("--out")) o["out"] = f.out;
  if (given("--jobs")) o["jobs"] = f.jobs;
  return o;
}

}  // namespace

Invocation parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Online channel-decoder and codebook learning experiments", "chanlearn"};
  app.require_subcommand(1);
  Flags dec_flags, cb_flags;
  auto* dec = app.add_subcommand("decoder", "learn a linear channel decoder over a fading channel");
  auto* cb = app.add_subcommand("codebook", "select codebooks over an additive-noise channel");
  add_flags(*dec, dec_flags);
  add_flags(*cb, cb_flags);

  // CLI11 wants argv order reversed when handed a vector.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  Invocation inv;
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    inv.help = true;
    return inv;
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::kConfig, e.what());
  }

  const bool is_decoder = dec->parsed();
  const CLI::App& cmd = is_decoder ? *dec : *cb;
  const Flags& f = is_decoder ? dec_flags : cb_flags;
  const std::string task = is_decoder ? "decoder" : "codebook";

  json base = json::object();
  if (cmd.count("--config") > 0) base = load_json_file(f.config);
  require(base.is_object(), ErrorKind::kConfig, "config file must hold a JSON object");
  if (base.contains("task") && base["task"] != task)
    fail(ErrorKind::kConfig, "config file task '" + base["task"].dump() +
                                 "' conflicts with subcommand '" + task + "'");
  base["task"] = task;
  inv.config = merge_overrides(std::move(base), overrides_from(cmd, f));
  return inv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    const Invocation inv = parse_args(args, out);
    if (inv.help) return 0;
    cfg = parse_config(inv.config);
  } catch (const Error& e) {
    err << "chanlearn: " << e.what() << '\n';
    return 2;
  }

  try {
    for (const auto seed : cfg.seeds) {
      if (const auto w = separation_warning(cfg, seed)) err << "chanlearn: warning: " << *w << '\n';
    }
    const auto runs = run_experiment(cfg);
    if (!cfg.output.empty()) {
      const auto flat = flatten_runs(runs);
      write_csv(cfg.output, flat);
    }
    const SeedSummary s = summarize_final(runs);
    char line[160];
    std::snprintf(line, sizeof line, "%s %s: T=%zu seeds=%zu final running-avg SER %.6f +- %.6f",
                  to_string(cfg.task).c_str(), to_string(cfg.algorithm).c_str(), cfg.rounds,
                  s.count, s.mean, s.std_error);
    out << line << '\n';
    for (const auto& run : runs) {
      std::snprintf(line, sizeof line, "  seed %llu: %.6f",
                    static_cast<unsigned long long>(run.seed), run.records.back().running_avg);
      out << line << '\n';
    }
    if (!cfg.output.empty()) out << "wrote " << cfg.output.string() << '\n';
  } catch (const Error& e) {
    err << "chanlearn: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace chanlearn::cli
