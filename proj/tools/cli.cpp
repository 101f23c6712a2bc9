#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hlab/attractor.hpp"
#include "hlab/coding.hpp"
#include "hlab/counterexamples.hpp"
#include "hlab/error.hpp"
#include "hlab/ifs.hpp"
#include "hlab/lattice.hpp"
#include "hlab/point_cloud_io.hpp"
#include "hlab/raster.hpp"
#include "hlab/verify.hpp"

namespace hlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string spec_path;
  std::string property;
  std::string word;
  std::string input;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> depth;
  std::optional<double> target_error;
  std::optional<std::string> epsilon;
  bool exact = false;
  std::optional<std::size_t> truncate;
  std::optional<std::string> out;
  std::optional<std::size_t> png_width;
  std::size_t cap = 1'000'000;
  std::vector<std::string> demo;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

IifsSpec load_spec(const RunConfig& cfg) {
  IifsSpec spec = IifsSpec::load(cfg.spec_path);
  if (cfg.truncate) {
    if (!spec.family()) throw UsageError("--truncate applies to parametric families only");
    spec = spec.with_truncation(*cfg.truncate);
  }
  return spec;
}

double epsilon_value(const RunConfig& cfg, double fallback) {
  if (!cfg.epsilon) return fallback;
  Rational q = parse_rational(*cfg.epsilon);
  if (q < 0) throw UsageError("--epsilon must be >= 0");
  return to_double(q);
}

// Largest n <= 12 whose unpruned iterate fits a tenth of the cap.
std::size_t default_steps(const IifsSpec& spec, std::size_t cap) {
  std::size_t n = 1;
  while (n < 12 && word_count(spec.size(), n + 1) <= std::max<std::size_t>(1, cap / 10)) ++n;
  return n;
}

std::size_t default_word_depth(const IifsSpec& spec, std::size_t limit, std::size_t words) {
  std::size_t d = 1;
  while (d < limit && word_count(spec.size(), d + 1) <= words) ++d;
  return d;
}

AttractorApprox approximate(const IifsSpec& spec, const RunConfig& cfg) {
  IterationOptions options;
  options.steps = cfg.steps ? *cfg.steps : default_steps(spec, cfg.cap);
  options.target_error = cfg.target_error;
  options.epsilon = epsilon_value(cfg, 0.0);
  options.max_points = cfg.cap;
  return iterate_attractor(spec, options);
}

int run_render(const RunConfig& cfg, std::ostream& out) {
  IifsSpec spec = load_spec(cfg);
  fs::path csv = cfg.out ? fs::path(*cfg.out) : fs::path("attractor.csv");
  PointCloud cloud({Point{0.0}});
  json sidecar;
  if (cfg.exact) {
    if (!spec.is_exact()) throw UsageError("--exact needs a 1-D system with exact coefficients");
    if (cfg.epsilon) throw UsageError("--exact iterates without pruning; drop --epsilon");
    const ExactInterval& box = *spec.exact_box();
    RationalCloud a0({(box.lo + box.hi) / 2});
    std::size_t steps = cfg.steps ? *cfg.steps : default_steps(spec, cfg.cap);
    if (cfg.target_error) {
      ExactIteration probe = iterate_attractor_exact(spec, a0, 0, cfg.cap);
      Rational bound = probe.error_bounds[0];
      Rational c = *spec.contraction_c_exact();
      Rational target = exact_from_double(*cfg.target_error);
      if (!(target > 0)) throw UsageError("--target-error must be > 0");
      steps = 0;
      while (bound > target) {
        if (c == 0 || steps > 10'000) throw UsageError("target error unreachable");
        bound *= c;
        ++steps;
      }
    }
    ExactIteration it = iterate_attractor_exact(spec, a0, steps, cfg.cap);
    cloud = it.iterates.back().to_cloud();
    sidecar["n"] = steps;
    sidecar["c"] = to_double(*spec.contraction_c_exact());
    sidecar["h01"] = to_double(it.h01);
    sidecar["error_bound"] = to_double(it.error_bounds.back());
    sidecar["pruning_slack"] = 0.0;
    sidecar["truncation"] = spec.truncation() ? json(*spec.truncation()) : json(nullptr);
    sidecar["h01_exact"] = to_string(it.h01);
    sidecar["error_bound_exact"] = to_string(it.error_bounds.back());
  } else {
    AttractorApprox a = approximate(spec, cfg);
    cloud = a.cloud;
    sidecar = a.sidecar();
  }
  sidecar["points"] = cloud.size();
  sidecar["fingerprint"] = spec.fingerprint();
  write_csv(csv, cloud);
  fs::path side = fs::path(csv).replace_extension(".json");
  {
    std::ofstream f(side);
    if (!f) throw Error("cannot write " + side.string());
    emit(f, sidecar);
  }
  if (cfg.png_width) {
    if (spec.dim() != 2) throw UsageError("--png needs a 2-D system");
    write_png(fs::path(csv).replace_extension(".png"), rasterize(cloud, spec.box(), *cfg.png_width));
  }
  emit(out, sidecar);
  return 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  IifsSpec spec = load_spec(cfg);
  std::optional<PropertyReport> report;
  if (cfg.property == "non-overlapping") {
    report = check_non_overlapping(spec);
  } else if (cfg.property == "locally-finite") {
    report = check_locally_finite(spec, epsilon_value(cfg, 1e-3), cfg.cap);
  } else if (cfg.property == "strongly-non-overlapping") {
    report = check_strongly_non_overlapping(spec, cfg.depth ? *cfg.depth : 3, cfg.cap);
  } else {
    report = check_ssc(spec, approximate(spec, cfg));
  }
  json j = report->to_json();
  if (spec.truncation()) j["truncation"] = *spec.truncation();
  emit(out, j);
  return exit_code(report->verdict());
}

int run_code(const RunConfig& cfg, std::ostream& out) {
  IifsSpec spec = load_spec(cfg);
  Word literal = Word::parse(cfg.word);
  std::size_t depth = cfg.depth ? *cfg.depth : literal.size();
  std::vector<std::string> letters = literal.letters();
  if (depth > letters.size()) {
    if (letters.empty()) throw UsageError("an empty word cannot be extended to depth " + std::to_string(depth));
    letters.resize(depth, letters.back());
  } else {
    letters.resize(depth);
  }
  for (const std::string& l : letters) spec.index_of(l);
  CodingMap pi(spec, approximate(spec, cfg));
  json j = pi.code(WordPrefix(Word(letters))).to_json();
  j["delta_upper"] = pi.delta_upper();
  emit(out, j);
  return 0;
}

WordPrefix random_prefix(const std::vector<std::string>& alphabet, std::size_t depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<std::string> letters;
  for (std::size_t k = 0; k < depth; ++k) letters.push_back(alphabet[pick(rng)]);
  return WordPrefix(Word(std::move(letters)));
}

json not_applicable(const std::string& name, const std::string& why) {
  return PropertyReport::inconclusive(name, 0.0, "not applicable: " + why).to_json();
}

int run_bounds(const RunConfig& cfg, std::ostream& out) {
  IifsSpec spec = load_spec(cfg);
  json reports = json::array();
  Verdict worst = Verdict::holds;
  auto record = [&](const json& j) {
    std::string v = j.at("verdict");
    if (v == "fails") worst = Verdict::fails;
    if (v == "inconclusive" && worst == Verdict::holds) worst = Verdict::inconclusive;
    reports.push_back(j);
  };

  std::size_t steps = cfg.steps ? *cfg.steps : default_steps(spec, cfg.cap);
  std::size_t ref_depth = default_word_depth(spec, steps + 2, cfg.cap);
  record(check_convergence_rate(spec, default_start(spec), steps, ref_depth, cfg.cap).to_json());

  RunConfig approx_cfg = cfg;
  approx_cfg.steps = steps;
  CodingMap pi(spec, approximate(spec, approx_cfg));
  const auto alphabet = spec.alphabet();
  std::size_t depth = cfg.depth ? *cfg.depth : 12;
  std::mt19937_64 rng(20260101);

  try {
    std::vector<PrefixPair> pairs;
    for (int k = 0; k < 1000; ++k) pairs.emplace_back(random_prefix(alphabet, depth, rng), random_prefix(alphabet, depth, rng));
    record(check_pi_lipschitz(pi, pairs).to_json());
  } catch (const PreconditionFailed& e) {
    record(not_applicable("coding-lipschitz", e.what()));
  }

  std::size_t modulus_depth = default_word_depth(spec, std::min<std::size_t>(depth, 10), 1024);
  for (const char* eps : {"1/3", "1/9", "1/27"}) {
    try {
      json j = inverse_modulus_exhaustive(pi, parse_rational(eps), modulus_depth).to_json();
      record(j);
    } catch (const PreconditionFailed& e) {
      record(not_applicable("inverse-modulus", e.what()));
      break;
    }
  }
  json doc;
  doc["reports"] = reports;
  doc["fingerprint"] = spec.fingerprint();
  emit(out, doc);
  return exit_code(worst);
}

std::int64_t demo_int(const std::vector<std::string>& demo, std::size_t k, const char* what) {
  if (k >= demo.size()) throw UsageError(std::string("--demo ") + demo[0] + " needs " + what);
  try {
    std::size_t used = 0;
    long long v = std::stoll(demo[k], &used);
    if (used != demo[k].size()) throw std::invalid_argument(demo[k]);
    return v;
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + demo[k] + "'");
  }
}

int run_lattice(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.demo.empty()) {
    const std::string& name = cfg.demo[0];
    if (name == "frac-shift" || name == "remark31") {
      std::int64_t n = demo_int(cfg.demo, 1, "N M");
      std::int64_t m = demo_int(cfg.demo, 2, "N M");
      PropertyReport r = frac_shift_counterexample(n, m);
      json j = r.to_json();
      std::int64_t grid_m = std::min<std::int64_t>(m, 10);
      j["grid_system"] = {{"M", grid_m}, {"premises", check_continuity_premises(frac_shift_system(grid_m)).to_json()}};
      emit(out, j);
      return exit_code(r.verdict());
    }
    if (name == "dyadic-cluster" || name == "remark42") {
      PropertyReport r = dyadic_cluster_counterexample(demo_int(cfg.demo, 1, "M"));
      emit(out, r.to_json());
      return exit_code(r.verdict());
    }
    throw UsageError("unknown demo '" + name + "' (expected frac-shift or dyadic-cluster)");
  }
  if (cfg.input.empty()) throw UsageError("lattice needs an input file or --demo");
  SelfMapTable maps = load_lattice_problem(cfg.input);
  json j = gfp_report(maps);
  emit(out, j);
  return j.at("fixed").get<bool>() ? 0 : 3;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--steps", cfg.steps, "Hutchinson-Barnsley steps");
  app->add_option("--depth", cfg.depth, "Word depth");
  app->add_option("--target-error", cfg.target_error, "Iterate until the error bound drops below this");
  app->add_option("--epsilon", cfg.epsilon, "Pruning radius or grid resolution (decimal or a/b)");
  app->add_flag("--exact", cfg.exact, "Exact rational arithmetic (1-D systems)");
  app->add_option("--truncate", cfg.truncate, "Truncation of a parametric family");
  app->add_option("--out", cfg.out, "Output path");
  app->add_option("--png", cfg.png_width, "Also write a PNG of this width (2-D)");
  app->add_option("--cap", cfg.cap, "Cap on cloud size and enumerations");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attractors, separation checks and coding maps of iterated function systems", "hlab"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* render = app.add_subcommand("render", "Approximate the attractor; write CSV, JSON sidecar, optional PNG");
  render->add_option("spec", cfg.spec_path, "System JSON")->required();
  add_common(render, cfg);

  CLI::App* verify = app.add_subcommand("verify", "Check a separation or finiteness property");
  verify->add_option("property", cfg.property, "Property to check")
      ->required()
      ->check(CLI::IsMember({"non-overlapping", "locally-finite", "strongly-non-overlapping", "ssc"}));
  verify->add_option("spec", cfg.spec_path, "System JSON")->required();
  add_common(verify, cfg);

  CLI::App* code = app.add_subcommand("code", "Approximate the coded point of a word");
  code->add_option("spec", cfg.spec_path, "System JSON")->required();
  code->add_option("word", cfg.word, "Letters joined by '.'")->required();
  add_common(code, cfg);

  CLI::App* bounds = app.add_subcommand("bounds", "Check the error estimate and coding-map bounds");
  bounds->add_option("spec", cfg.spec_path, "System JSON")->required();
  add_common(bounds, cfg);

  CLI::App* lattice = app.add_subcommand("lattice", "Greatest fixed point of a finite self-map family");
  lattice->add_option("input", cfg.input, "Lattice JSON");
  lattice->add_option("--demo", cfg.demo, "frac-shift N M | dyadic-cluster M")->expected(2, 3);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code_ = app.exit(e, out, err);
    return code_ == 0 ? 0 : 1;
  }

  try {
    if (*render) return run_render(cfg, out);
    if (*verify) return run_verify(cfg, out);
    if (*code) return run_code(cfg, out);
    if (*bounds) return run_bounds(cfg, out);
    return run_lattice(cfg, out);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
  } catch (const PreconditionFailed& e) {
    err << "precondition not met: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace hlab::cli
