#include "chanlearn/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "chanlearn/bandit_learning.hpp"
#include "chanlearn/error.hpp"

namespace chanlearn {

using nlohmann::json;

std::string to_string(Task v) { return v == Task::kDecoder ? "decoder" : "codebook"; }

std::string to_string(Algorithm v) {
  switch (v) {
    case Algorithm::kOomd: return "oomd";
    case Algorithm::kOgd: return "ogd";
    case Algorithm::kLs: return "ls";
    case Algorithm::kExp3: return "exp3";
    case Algorithm::kRandom: return "random";
  }
  return "?";
}

std::string to_string(ChannelKind v) {
  switch (v) {
    case ChannelKind::kMarkov: return "markov";
    case ChannelKind::kRayleigh: return "rayleigh";
    case ChannelKind::kAwgn: return "awgn";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  if (s == "decoder") return Task::kDecoder;
  if (s == "codebook") return Task::kCodebook;
  fail(ErrorKind::kConfig, "unknown task '" + s + "'");
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "oomd") return Algorithm::kOomd;
  if (s == "ogd") return Algorithm::kOgd;
  if (s == "ls") return Algorithm::kLs;
  if (s == "exp3") return Algorithm::kExp3;
  if (s == "random") return Algorithm::kRandom;
  fail(ErrorKind::kConfig, "unknown algorithm '" + s + "'");
}

ChannelKind parse_channel(const std::string& s) {
  if (s == "markov") return ChannelKind::kMarkov;
  if (s == "rayleigh") return ChannelKind::kRayleigh;
  if (s == "awgn") return ChannelKind::kAwgn;
  fail(ErrorKind::kConfig, "unknown channel '" + s + "'");
}

void ExperimentConfig::validate() const {
  const auto check = [](bool ok, const std::string& what) {
    require(ok, ErrorKind::kConfig, what);
  };
  if (task == Task::kDecoder) {
    check(algorithm == Algorithm::kOomd || algorithm == Algorithm::kOgd ||
              algorithm == Algorithm::kLs,
          "algorithm '" + to_string(algorithm) + "' is not valid for the decoder task");
    check(channel != ChannelKind::kAwgn, "the decoder task needs a fading channel");
  } else {
    check(algorithm == Algorithm::kOomd || algorithm == Algorithm::kExp3 ||
              algorithm == Algorithm::kRandom,
          "algorithm '" + to_string(algorithm) + "' is not valid for the codebook task");
    check(channel != ChannelKind::kRayleigh, "the codebook task needs an additive-noise channel");
    check(codebooks >= 1, "N must be >= 1");
  }
  check(rounds >= 1, "T must be >= 1");
  check(dim >= 1, "d must be >= 1");
  check(codewords >= 2, "M must be >= 2");
  check(components >= 1, "K must be >= 1");
  check(rho >= 0.0 && std::isfinite(rho), "rho must be finite and >= 0");
  check(std::isfinite(snr_db), "snr_db must be finite");
  check(gamma_x > 0.0 && std::isfinite(gamma_x), "gamma_x must be positive");
  check(radius > 0.0 && std::isfinite(radius), "D must be positive");
  check(margin > 0.0 && std::isfinite(margin), "margin must be positive");
  check(ridge >= 0.0 && std::isfinite(ridge), "ridge must be >= 0");
  check(eta > 0.0 && eta <= kMaxLogBarrierEta, "eta must lie in (0, 1/162]");
  check(!seeds.empty(), "seeds must not be empty");
  try {
    schedule.validate();
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
}

namespace {

const std::set<std::string> kKnownKeys = {
    "task", "algo",  "T",        "d",       "M",      "N",   "mu",     "mu_mode",
    "dist", "K",     "rho",      "snr_db",  "channel", "gamma_x", "D", "gradient",
    "margin", "ridge", "eta",    "doubling", "seeds", "out", "jobs"};

template <typename T>
T get(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("bad value for '") + key + "': " + e.what());
  }
}

std::size_t get_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(ErrorKind::kConfig, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  require(doc.is_object(), ErrorKind::kConfig, "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.count(key)) fail(ErrorKind::kConfig, "unknown config key '" + key + "'");
  }
  for (const char* key : {"task", "algo", "T"}) {
    if (!doc.contains(key)) fail(ErrorKind::kConfig, std::string("missing required key '") + key + "'");
  }

  ExperimentConfig cfg;
  cfg.task = parse_task(get<std::string>(doc, "task"));
  cfg.algorithm = parse_algorithm(get<std::string>(doc, "algo"));
  cfg.rounds = get_count(doc, "T");
  if (cfg.task == Task::kCodebook) {
    // Codebook-task defaults: the smaller codebook and the additive channel.
    cfg.codewords = 16;
    cfg.channel = ChannelKind::kMarkov;
    cfg.rho = 0.01;
  }
  if (doc.contains("d")) cfg.dim = get_count(doc, "d");
  if (doc.contains("M")) cfg.codewords = get_count(doc, "M");
  if (doc.contains("N")) cfg.codebooks = get_count(doc, "N");
  if (doc.contains("mu")) cfg.schedule.mu = get<double>(doc, "mu");
  if (doc.contains("mu_mode")) {
    try {
      cfg.schedule.mode = parse_mixing_mode(get<std::string>(doc, "mu_mode"));
    } catch (const Error& e) {
      fail(ErrorKind::kConfig, e.what());
    }
  }
  if (doc.contains("dist")) {
    try {
      cfg.innovation = parse_innovation_kind(get<std::string>(doc, "dist"));
    } catch (const Error& e) {
      fail(ErrorKind::kConfig, e.what());
    }
  }
  if (doc.contains("K")) cfg.components = get_count(doc, "K");
  if (doc.contains("rho")) cfg.rho = get<double>(doc, "rho");
  if (doc.contains("snr_db")) cfg.snr_db = get<double>(doc, "snr_db");
  if (doc.contains("channel")) cfg.channel = parse_channel(get<std::string>(doc, "channel"));
  if (doc.contains("gamma_x")) cfg.gamma_x = get<double>(doc, "gamma_x");
  if (doc.contains("D")) cfg.radius = get<double>(doc, "D");
  if (doc.contains("gradient")) {
    try {
      cfg.gradient = parse_gradient_mode(get<std::string>(doc, "gradient"));
    } catch (const Error& e) {
      fail(ErrorKind::kConfig, e.what());
    }
  }
  if (doc.contains("margin")) cfg.margin = get<double>(doc, "margin");
  if (doc.contains("ridge")) cfg.ridge = get<double>(doc, "ridge");
  if (doc.contains("eta")) cfg.eta = get<double>(doc, "eta");
  if (doc.contains("doubling")) cfg.doubling = get<bool>(doc, "doubling");
  if (doc.contains("seeds")) cfg.seeds = get<std::vector<std::uint64_t>>(doc, "seeds");
  if (doc.contains("out")) cfg.output = get<std::string>(doc, "out");
  if (doc.contains("jobs")) cfg.jobs = get_count(doc, "jobs");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kConfig, path.string() + ": malformed JSON: " + e.what());
  }
}

json merge_overrides(json base, const json& overrides) {
  if (base.is_null()) base = json::object();
  require(base.is_object() && overrides.is_object(), ErrorKind::kConfig,
          "config documents must be JSON objects");
  for (const auto& [key, value] : overrides.items()) base[key] = value;
  return base;
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["task"] = to_string(cfg.task);
  j["algo"] = to_string(cfg.algorithm);
  j["T"] = cfg.rounds;
  j["d"] = cfg.dim;
  j["M"] = cfg.codewords;
  j["N"] = cfg.codebooks;
  j["mu"] = cfg.schedule.mu;
  j["mu_mode"] = to_string(cfg.schedule.mode);
  j["dist"] = to_string(cfg.innovation);
  j["K"] = cfg.components;
  j["rho"] = cfg.rho;
  j["snr_db"] = cfg.snr_db;
  j["channel"] = to_string(cfg.channel);
  j["gamma_x"] = cfg.gamma_x;
  j["D"] = cfg.radius;
  j["gradient"] = to_string(cfg.gradient);
  j["margin"] = cfg.margin;
  j["ridge"] = cfg.ridge;
  j["eta"] = cfg.eta;
  j["doubling"] = cfg.doubling;
  j["seeds"] = cfg.seeds;
  if (!cfg.output.empty()) j["out"] = cfg.output.string();
  j["jobs"] = cfg.jobs;
  return j;
}

}  // namespace chanlearn
