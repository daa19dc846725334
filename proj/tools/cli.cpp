#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "oracle_validation.hpp"
#include "pufguess/guesswork_analytic.hpp"
#include "pufguess/io.hpp"
#include "pufguess/metrics.hpp"
#include "pufguess/parallel.hpp"
#include "pufguess/puf_model.hpp"
#include "pufguess/strong_puf.hpp"
#include "pufguess/version.hpp"

namespace pufguess::cli {

namespace {

// Problems with the command line itself (exit 1) rather than with the data.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string output;
  std::optional<std::string> format;
  std::optional<unsigned> threads;
};

// Restores the process-wide worker cap when a command finishes.
class ThreadLimitGuard {
 public:
  ThreadLimitGuard() : saved_(thread_limit()) {}
  ~ThreadLimitGuard() { set_thread_limit(saved_); }
  ThreadLimitGuard(const ThreadLimitGuard&) = delete;
  ThreadLimitGuard& operator=(const ThreadLimitGuard&) = delete;

 private:
  unsigned saved_;
};

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

Json metadata(const Globals& g, const Json& config) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"generated_at", timestamp_utc()},
              {"seed", g.seed},
              {"config", config}};
}

// Same metadata as comment lines so plotting tools skip it.
std::string csv_preamble(const Globals& g, const Json& config) {
  std::ostringstream os;
  os << "# tool: " << kToolName << ' ' << kToolVersion << '\n'
     << "# generated_at: " << timestamp_utc() << '\n'
     << "# seed: " << g.seed << '\n'
     << "# config: " << config.dump() << '\n';
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
  if (!file.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
  } else {
    write_file(g.output, text);
  }
}

std::string document(Json meta, const Json& payload) {
  for (const auto& [k, v] : payload.items()) meta[k] = v;
  return meta.dump(2) + "\n";
}

std::string format_or(const Globals& g, const std::string& fallback) { return g.format.value_or(fallback); }

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::string preset;
  std::optional<double> p, D, e;
  std::optional<std::size_t> bits;
  std::size_t devices = 10;
  std::size_t resamples = 10;
};

int cmd_simulate(const Globals& g, const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  if (format_or(g, "json") != "json") throw UsageError("simulate writes JSON population files only");
  PufSpec spec;
  Json preset_name = nullptr;
  if (!o.preset.empty()) {
    const auto preset = find_preset(o.preset);
    if (!preset) {
      std::string names;
      for (const auto& p : presets()) names += (names.empty() ? "" : ", ") + p.name;
      throw UsageError("unknown preset '" + o.preset + "' (known: " + names + ")");
    }
    spec = preset->spec;
    preset_name = preset->name;
  }
  if (o.p) spec.bias = *o.p;
  if (o.D) spec.noise = *o.D;
  if (o.e) spec.cross_flip = *o.e;
  if (o.bits) spec.length = *o.bits;
  try {
    spec.validate();
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  if (o.devices == 0) throw UsageError("--devices must be positive");

  const Json config{{"command", "simulate"},
                    {"preset", preset_name},
                    {"spec", spec_to_json(spec)},
                    {"devices", o.devices},
                    {"resamples", o.resamples}};
  const Population pop = sample_population(spec, o.devices, o.resamples, Seed{g.seed});
  emit(g, out, document(metadata(g, config), population_to_json(pop)));

  const SecurityReport r = security_report(pop, GuessworkParams{});
  const Json summary{{"devices", r.devices},
                     {"bits", r.bits},
                     {"reads_per_device", r.reads_per_device},
                     {"seed", g.seed},
                     {"spec", spec_to_json(spec)},
                     {"bias_ones", r.bias.ones},
                     {"intra_fhd_mean", r.intra ? Json(r.intra->mean) : Json(nullptr)},
                     {"inter_fhd_mean", r.inter ? Json(r.inter->mean) : Json(nullptr)},
                     {"output", g.output.empty() ? Json(nullptr) : Json(g.output)}};
  // With no --output the population itself owns stdout.
  (g.output.empty() ? err : out) << summary.dump(2) << '\n';
  return kOk;
}

// ---- report ---------------------------------------------------------------

struct ReportOptions {
  std::string input;
  double rho = 1.0;
  std::size_t bins = 0;
  std::string intra_histogram;
  std::string inter_histogram;
};

Population load_population(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open population file '" + path + "'");
  Json j;
  try {
    j = Json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
  return population_from_json(j);
}

int cmd_report(const Globals& g, const ReportOptions& o, std::ostream& out) {
  const std::string fmt = format_or(g, "json");
  GuessworkParams params;
  params.rho = o.rho;
  params.validate();
  const Population pop = load_population(o.input);
  // Histogram files need bins even when the report itself asks for none.
  const bool wants_histogram = !o.intra_histogram.empty() || !o.inter_histogram.empty();
  const std::size_t bins = o.bins > 0 ? o.bins : (wants_histogram ? 50 : 0);
  const SecurityReport report = security_report(pop, params, bins);
  const std::string label = std::filesystem::path(o.input).stem().string();
  const Json config{{"command", "report"}, {"input", o.input}, {"rho", o.rho}, {"bins", bins}};

  if (fmt == "json") {
    emit(g, out, document(metadata(g, config), Json{{"label", label}, {"report", report_to_json(report)}}));
  } else {
    emit(g, out, csv_preamble(g, config) + report_csv_header() + "\n" + report_csv_row(label, report) + "\n");
  }

  const auto write_histogram = [&](const std::string& path, const std::optional<DistributionSummary>& s,
                                   const char* what) {
    if (path.empty()) return;
    if (!s || !s->histogram) {
      throw std::runtime_error(std::string(what) + " histogram unavailable for this population");
    }
    Json hconfig = config;
    hconfig["histogram"] = what;
    write_file(path, csv_preamble(g, hconfig) + histogram_csv(*s->histogram));
  };
  write_histogram(o.intra_histogram, report.intra, "intra_fhd");
  write_histogram(o.inter_histogram, report.inter, "inter_fhd");
  return kOk;
}

// ---- analytic -------------------------------------------------------------

struct AnalyticOptions {
  std::string curve;
  std::optional<double> from, to, step;
  double p = 0.5;
  double D = 0.0;
  double rho = 1.0;
  double H = 1.0;
  unsigned N = 2;
  std::string mapping = "uniform";
  bool p_given = false;
};

struct CurveDef {
  const char* x_name;
  double from, to, step;
  std::function<double(double)> value;
  Json params;
};

std::size_t integral(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 || r < 0) throw std::invalid_argument(std::string(what) + " must be a whole number");
  return static_cast<std::size_t>(r);
}

CurveDef make_curve(const AnalyticOptions& o) {
  if (o.curve == "renyi-half") {
    return {"p", 0.0, 0.5, 0.01, [](double p) { return renyi_entropy(p, 0.5); }, Json::object()};
  }
  if (o.curve == "one-minus-hd") {
    return {"D", 0.0, 0.5, 0.01, [o](double d) { return distortion_growth_rate(o.p, d, o.rho); },
            Json{{"p", o.p}, {"rho", o.rho}}};
  }
  if (o.curve == "min-entropy") {
    return {"p", 0.0, 0.5, 0.01, [o](double p) { return min_entropy_distortion_rate(p, o.D); }, Json{{"D", o.D}}};
  }
  if (o.curve == "theorem2-rate") {
    const double p = o.p_given ? o.p : 0.3;
    return {"s", p + 0.01, 1.0, 0.01,
            [o, p](double s) { return failure_constrained_rate(p, o.D, o.rho, s).upper_bound_on_rate; },
            Json{{"p", p}, {"D", o.D}, {"rho", o.rho}}};
  }
  if (o.curve == "auth-cdf") {
    return {"l", 1.0, 64.0, 1.0, [o](double l) { return auth_success_cdf(o.H, integral(l, "l")); },
            Json{{"H", o.H}}};
  }
  // mac-eta: log2 of the expected total guesswork against L-bit tags.
  const MacMapping mapping = o.mapping == "identity" ? MacMapping::Identity : MacMapping::Uniform;
  return {"L", 1.0, 16.0, 1.0,
          [o, mapping](double l) {
            return mac_avg_guesswork(o.N, static_cast<unsigned>(integral(l, "L")), o.p, mapping).log2_value;
          },
          Json{{"N", o.N}, {"p", o.p}, {"mapping", o.mapping}}};
}

int cmd_analytic(const Globals& g, const AnalyticOptions& o, std::ostream& out) {
  CurveDef c = make_curve(o);
  const double from = o.from.value_or(c.from);
  const double to = o.to.value_or(c.to);
  const double step = o.step.value_or(c.step);
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  if (to < from) throw UsageError("--to must not be below --from");

  std::vector<std::pair<double, double>> points;
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    double x = from + static_cast<double>(i) * step;
    if (std::abs(x - to) <= 1e-9 * step) x = to;
    points.emplace_back(x, c.value(x));
  }

  const Json config{{"command", "analytic"}, {"curve", o.curve}, {"from", from},
                    {"to", to},             {"step", step},      {"params", c.params}};
  if (format_or(g, "csv") == "csv") {
    std::ostringstream os;
    os << csv_preamble(g, config) << c.x_name << ",value\n";
    for (const auto& [x, v] : points) os << number(x) << ',' << number(v) << '\n';
    emit(g, out, os.str());
  } else {
    Json rows = Json::array();
    for (const auto& [x, v] : points) rows.push_back(Json{{"x", x}, {"value", v}});
    emit(g, out, document(metadata(g, config), Json{{"curve", o.curve}, {"x", c.x_name}, {"points", rows}}));
  }
  return kOk;
}

// ---- oracle-validate ------------------------------------------------------

int cmd_oracle_validate(const Globals& g, ValidationLimits limits, const std::vector<std::string>& only,
                        std::ostream& out) {
  limits.groups = {only.begin(), only.end()};
  limits.seed = Seed{g.seed};
  if (limits.min_m > limits.max_m) throw UsageError("--min-m must not exceed --max-m");

  const std::vector<CheckResult> results = run_oracle_validation(limits);
  const bool all_passed = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  const Json config{{"command", "oracle-validate"},
                    {"distributions", limits.distributions},
                    {"max_support_bits", limits.max_support_bits},
                    {"min_m", limits.min_m},
                    {"max_m", limits.max_m},
                    {"conditional_m", limits.conditional_m},
                    {"distortion_m", limits.distortion_m},
                    {"tolerance_scale", limits.tolerance_scale},
                    {"only", only}};

  if (format_or(g, "json") == "json") {
    Json checks = Json::array();
    for (const auto& r : results) {
      checks.push_back(Json{{"group", r.group},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"observed", r.observed},
                            {"bound", r.bound},
                            {"detail", r.detail}});
    }
    emit(g, out, document(metadata(g, config), Json{{"passed", all_passed}, {"checks", checks}}));
  } else {
    std::ostringstream os;
    os << csv_preamble(g, config) << "group,name,passed,observed,bound,detail\n";
    for (const auto& r : results) {
      os << r.group << ',' << r.name << ',' << (r.passed ? "true" : "false") << ',' << number(r.observed) << ','
         << number(r.bound) << ",\"" << r.detail << "\"\n";
    }
    emit(g, out, os.str());
  }
  return all_passed ? kOk : kRuntime;
}

// ---- strong-puf -----------------------------------------------------------

constexpr std::uint64_t kCliKeyStream = 21;
constexpr std::uint64_t kCliAvalancheStream = 22;
constexpr std::uint64_t kCliNoiseStream = 23;
constexpr std::uint64_t kCliInterStream = 24;

struct StrongOptions {
  std::string key_hex;
  std::string challenge_hex;
  std::size_t flips_from = 0;
  std::size_t flips_to = 8;
  std::size_t challenges = 1000;
  std::vector<double> noise_levels{0.0, 1e-4, 1e-3, 1e-2, 1e-1};
  std::size_t trials = 1000;
  std::size_t devices = 1000;
  double p = 0.5;
};

std::vector<std::uint8_t> hex_bytes(const std::string& hex) {
  if (hex.empty() || hex.size() % 2 != 0) throw std::invalid_argument("hex payload must have an even, nonzero length");
  return BitVector::from_hex(hex, hex.size() * 4).to_bytes();
}

BitVector device_key(const Globals& g, const StrongOptions& o) {
  if (!o.key_hex.empty()) return BitVector::from_hex(o.key_hex, StrongPufDevice::kKeyBits);
  return sample_response(PufSpec{StrongPufDevice::kKeyBits, 0.5, 0.0, 0.5}, derive_seed(Seed{g.seed}, kCliKeyStream));
}

std::string summary_csv(const Globals& g, const Json& config, const char* x_name,
                        const std::vector<std::pair<double, DistributionSummary>>& rows) {
  std::ostringstream os;
  os << csv_preamble(g, config) << x_name << ",mean_fhd,std\n";
  for (const auto& [x, s] : rows) os << number(x) << ',' << number(s.mean) << ',' << number(s.std_dev) << '\n';
  return os.str();
}

std::string summary_json(const Globals& g, const Json& config, const char* x_name,
                         const std::vector<std::pair<double, DistributionSummary>>& rows) {
  Json arr = Json::array();
  for (const auto& [x, s] : rows) {
    // Counts such as k or devices stay integers in the output.
    const Json xv = x == std::floor(x) && x >= 1 ? Json(static_cast<std::int64_t>(x)) : Json(x);
    arr.push_back(Json{{x_name, xv}, {"mean_fhd", s.mean}, {"std", s.std_dev}});
  }
  return document(metadata(g, config), Json{{"rows", arr}});
}

int emit_rows(const Globals& g, std::ostream& out, const Json& config, const char* x_name,
              const std::vector<std::pair<double, DistributionSummary>>& rows) {
  emit(g, out,
       format_or(g, "csv") == "csv" ? summary_csv(g, config, x_name, rows) : summary_json(g, config, x_name, rows));
  return kOk;
}

int cmd_respond(const Globals& g, const StrongOptions& o, std::ostream& out) {
  if (o.key_hex.empty() || o.challenge_hex.empty()) throw UsageError("respond needs --key-hex and --challenge-hex");
  const StrongPufDevice device(BitVector::from_hex(o.key_hex, StrongPufDevice::kKeyBits));
  const std::string tag = device.respond(Challenge(hex_bytes(o.challenge_hex))).to_hex();
  const Json config{{"command", "strong-puf respond"}, {"key_hex", o.key_hex}, {"challenge_hex", o.challenge_hex}};
  if (!g.format) {
    emit(g, out, tag + "\n");
  } else if (*g.format == "json") {
    emit(g, out, document(metadata(g, config), Json{{"response", tag}}));
  } else {
    emit(g, out, csv_preamble(g, config) + "challenge,response\n" + o.challenge_hex + "," + tag + "\n");
  }
  return kOk;
}

int cmd_avalanche(const Globals& g, const StrongOptions& o, std::ostream& out) {
  if (o.flips_from > o.flips_to) throw UsageError("--from must not exceed --to");
  const StrongPufDevice device(device_key(g, o));
  std::vector<std::pair<double, DistributionSummary>> rows;
  for (std::size_t k = o.flips_from; k <= o.flips_to; ++k) {
    rows.emplace_back(static_cast<double>(k),
                      avalanche_experiment(device, k, o.challenges, derive_seed(Seed{g.seed}, kCliAvalancheStream, k)));
  }
  const Json config{{"command", "strong-puf avalanche"},
                    {"key_hex", o.key_hex.empty() ? Json(nullptr) : Json(o.key_hex)},
                    {"from", o.flips_from},
                    {"to", o.flips_to},
                    {"challenges", o.challenges}};
  return emit_rows(g, out, config, "k", rows);
}

int cmd_noise(const Globals& g, const StrongOptions& o, std::ostream& out) {
  std::vector<std::pair<double, DistributionSummary>> rows;
  for (std::size_t i = 0; i < o.noise_levels.size(); ++i) {
    const double d = o.noise_levels[i];
    rows.emplace_back(d, noise_propagation(d, o.trials, derive_seed(Seed{g.seed}, kCliNoiseStream, i)));
  }
  const Json config{{"command", "strong-puf noise"}, {"d", o.noise_levels}, {"trials", o.trials}};
  return emit_rows(g, out, config, "d", rows);
}

int cmd_inter(const Globals& g, const StrongOptions& o, std::ostream& out) {
  const PufSpec key_spec{StrongPufDevice::kKeyBits, o.p, 0.0, 0.5};
  const DistributionSummary s = strong_inter_fhd(key_spec, o.devices, derive_seed(Seed{g.seed}, kCliInterStream));
  const Json config{{"command", "strong-puf inter"}, {"devices", o.devices}, {"p", o.p}};
  return emit_rows(g, out, config, "devices", {{static_cast<double>(o.devices), s}});
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak and strong PUF simulation, quality metrics and guesswork security analysis", kToolName};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  Globals g;
  app.add_option("--seed", g.seed, "Master seed; every output records it")->capture_default_str();
  app.add_option("--output,-o", g.output, "Write the result here instead of standard output");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "Cap on worker threads (results do not depend on it)")
      ->check(CLI::NonNegativeNumber);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Sample a PUF population and write it as JSON");
  simulate->add_option("--preset", sim.preset, "LEDPUF, SRAM, RO20 or RO60 (case-insensitive)");
  simulate->add_option("--p", sim.p, "Probability of a one");
  simulate->add_option("--D", sim.D, "Intra-distance between two reads");
  simulate->add_option("--e", sim.e, "Cross-device flip probability");
  simulate->add_option("--bits", sim.bits, "Response length m")->check(CLI::PositiveNumber);
  simulate->add_option("--devices", sim.devices, "Number of devices")->capture_default_str();
  simulate->add_option("--resamples", sim.resamples, "Noisy re-reads per device")->capture_default_str();

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Quality metrics and growth rates of a population file");
  report->add_option("file", rep.input, "Population JSON written by simulate")->required();
  report->add_option("--rho", rep.rho, "Guesswork moment order")->capture_default_str();
  report->add_option("--bins", rep.bins, "Histogram bins in the report (0 = none; histogram files default to 50)")->capture_default_str();
  report->add_option("--intra-histogram", rep.intra_histogram, "Write intra-FHD histogram CSV here");
  report->add_option("--inter-histogram", rep.inter_histogram, "Write inter-FHD histogram CSV here");

  AnalyticOptions ana;
  auto* analytic = app.add_subcommand("analytic", "Sweep a closed-form curve");
  analytic->add_option("--curve", ana.curve, "Curve name")
      ->required()
      ->check(CLI::IsMember({"renyi-half", "one-minus-hd", "min-entropy", "theorem2-rate", "auth-cdf", "mac-eta"}));
  analytic->add_option("--from", ana.from, "First x value");
  analytic->add_option("--to", ana.to, "Last x value");
  analytic->add_option("--step", ana.step, "Sweep step");
  auto* p_opt = analytic->add_option("--p", ana.p, "Bias parameter")->capture_default_str();
  analytic->add_option("--D", ana.D, "Distortion")->capture_default_str();
  analytic->add_option("--rho", ana.rho, "Moment order")->capture_default_str();
  analytic->add_option("--H", ana.H, "Per-challenge min-entropy (auth-cdf)")->capture_default_str();
  analytic->add_option("--N", ana.N, "Message bits (mac-eta)")->capture_default_str();
  analytic->add_option("--mapping", ana.mapping, "Key-to-tag mapping (mac-eta)")
      ->check(CLI::IsMember({"uniform", "identity"}))
      ->capture_default_str();

  ValidationLimits limits;
  std::vector<std::string> only;
  auto* validate = app.add_subcommand("oracle-validate", "Cross-check asymptotic formulas against exact oracles");
  validate->add_option("--distributions", limits.distributions, "Random pmfs for sandwich/optimality")
      ->capture_default_str();
  validate->add_option("--max-support-bits", limits.max_support_bits, "Random pmf support <= 2^bits")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  validate->add_option("--min-m", limits.min_m, "Convergence sweep start")->check(CLI::Range(1, 20))->capture_default_str();
  validate->add_option("--max-m", limits.max_m, "Convergence sweep end")->check(CLI::Range(1, 20))->capture_default_str();
  validate->add_option("--conditional-m", limits.conditional_m, "Correlated-pair length")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  validate->add_option("--distortion-m", limits.distortion_m, "Distortion/failure oracle length")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();
  validate->add_option("--only", only, "Run only these groups")->check(CLI::IsMember(validation_groups()));
  validate->add_option("--tolerance-scale", limits.tolerance_scale, "Multiplier on every tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  StrongOptions so;
  auto* strong = app.add_subcommand("strong-puf", "HMAC-SHA-256 strong PUF built on a 512-bit weak response");
  strong->require_subcommand(1);
  auto* respond = strong->add_subcommand("respond", "Print the 256-bit response tag as hex");
  respond->add_option("--key-hex", so.key_hex, "512-bit key, 128 hex digits")->required();
  respond->add_option("--challenge-hex", so.challenge_hex, "Challenge bytes as hex")->required();
  auto* avalanche = strong->add_subcommand("avalanche", "Response FHD after flipping k key bits");
  avalanche->add_option("--key-hex", so.key_hex, "512-bit key (default: random from --seed)");
  avalanche->add_option("--from", so.flips_from, "Smallest k")->capture_default_str();
  avalanche->add_option("--to", so.flips_to, "Largest k")->check(CLI::Range(0, 512))->capture_default_str();
  avalanche->add_option("--challenges", so.challenges, "Challenges per k")->check(CLI::PositiveNumber)->capture_default_str();
  auto* noise = strong->add_subcommand("noise", "Response FHD when the weak key is re-read through noise");
  noise->add_option("--d", so.noise_levels, "Weak-PUF flip probabilities")->check(CLI::Range(0.0, 0.5));
  noise->add_option("--trials", so.trials, "Trials per level")->check(CLI::PositiveNumber)->capture_default_str();
  auto* inter = strong->add_subcommand("inter", "Response FHD between devices on one challenge");
  inter->add_option("--devices", so.devices, "Number of devices")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  inter->add_option("--p", so.p, "Key bias")->check(CLI::Range(0.0, 1.0))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  ThreadLimitGuard guard;
  if (g.threads) set_thread_limit(*g.threads);
  ana.p_given = p_opt->count() > 0;

  try {
    if (simulate->parsed()) return cmd_simulate(g, sim, out, err);
    if (report->parsed()) return cmd_report(g, rep, out);
    if (analytic->parsed()) return cmd_analytic(g, ana, out);
    if (validate->parsed()) return cmd_oracle_validate(g, limits, only, out);
    if (respond->parsed()) return cmd_respond(g, so, out);
    if (avalanche->parsed()) return cmd_avalanche(g, so, out);
    if (noise->parsed()) return cmd_noise(g, so, out);
    if (inter->parsed()) return cmd_inter(g, so, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  err << app.help();
  return kUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace pufguess::cli
