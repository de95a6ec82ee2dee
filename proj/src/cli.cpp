#include "coherence_lab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "CLI11.hpp"
#include "coherence_lab/interpretation.hpp"
#include "coherence_lab/lattice.hpp"
#include "coherence_lab/logic.hpp"
#include "coherence_lab/mc_simulator.hpp"
#include "coherence_lab/probability.hpp"
#include "coherence_lab/report.hpp"

namespace coherence_lab::cli {

namespace {

using report::format_number;
using report::Table;

constexpr double kPi = std::numbers::pi;
constexpr double kIdempotencyTolerance = 1e-10;
constexpr double kProbabilityTolerance = 1e-12;
constexpr double kCommutatorFloor = 1e-6;
constexpr double kMcSigmas = 4.0;
constexpr std::size_t kMaxTautologyVariables = 12;

/// Thrown for flag values CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "table";
  std::string output;
  bool degrees = false;

  std::string formula;
  std::string vars;
  std::size_t n = 3;

  double a = 0.5;
  std::vector<double> thetas;
  std::vector<double> varthetas;
  std::size_t steps = 16;

  std::size_t sites = 0;
  double weight = 1.0;

  std::size_t group_size = 0;
  double theta_min = -kPi;
  double theta_max = kPi;

  double theta = kPi / 2;
  double vartheta = kPi / 2;
  std::uint64_t trials = mc::kDefaultTrials;
  std::uint64_t seed = mc::kDefaultSeed;
  std::size_t sweep_steps = 0;
  unsigned threads = 0;
};

/// Routes report output to --output when given, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_ != nullptr; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw UsageError(std::string(kSeedEnvVar) + " must be an unsigned 64-bit integer, got '" + text + "'");
  return value;
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "csv"}));
  cmd->add_option("-o,--output", o.output, "Write the report to a file instead of standard output");
}

// ---------------------------------------------------------------- logic

int cmd_logic_expand(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> vars;
  try {
    vars = logic::parse_variable_list(o.vars);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (vars.size() > logic::kMaxVariables)
    throw UsageError("at most " + std::to_string(logic::kMaxVariables) + " variables supported");
  logic::Formula f = logic::parse_formula(o.formula, vars);
  const auto indices = logic::to_minterm_disjunction(f);
  // The tautology sweep is quadratic in 2^n; above the oracle scale report it as skipped.
  const bool check_tautology = vars.size() <= kMaxTautologyVariables;
  const bool tautology = check_tautology && logic::verify_tautology_of_all(logic::enumerate_minterms(vars.size()));

  Sink sink(o.output, out);
  const auto format = report::parse_format(o.format);
  Table table({"k", "conjunction"});
  for (std::size_t k : indices)
    table.add_row({format_number(std::uint64_t{k}), logic::minterm_from_index(k, vars.size()).describe(vars)});
  if (format == report::Format::Table) {
    sink.stream() << "formula: " << logic::to_string(f) << '\n';
    sink.stream() << "minterms: " << indices.size() << " of " << (std::size_t{1} << vars.size()) << '\n';
    table.write_text(sink.stream());
    if (indices.empty()) sink.stream() << "contradiction: no minterm satisfies the formula\n";
    if (indices.size() == (std::size_t{1} << vars.size())) sink.stream() << "formula is a tautology\n";
    sink.stream() << "tautology of all minterms: " << (check_tautology ? (tautology ? "true" : "false") : "skipped")
                  << '\n';
  } else {
    table.write_csv(sink.stream());
    if (indices.empty()) err << "contradiction: no minterm satisfies the formula\n";
  }
  return check_tautology && !tautology ? kExitVerificationFailed : kExitOk;
}

int cmd_logic_tautology(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.n > kMaxTautologyVariables)
    throw UsageError("--n must lie in 1.." + std::to_string(kMaxTautologyVariables));
  const auto ms = logic::enumerate_minterms(o.n);
  const bool ok = logic::verify_tautology_of_all(ms);
  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    Table table({"n", "N", "tautology"});
    table.add_row({format_number(std::uint64_t{o.n}), format_number(std::uint64_t{ms.count}), ok ? "true" : "false"});
    table.write_csv(sink.stream());
  } else {
    sink.stream() << "n: " << o.n << "\nN: " << ms.count << "\ntautology: " << (ok ? "true" : "false") << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- coherence

int cmd_coherence_table(const Options& o, std::ostream& out, std::ostream& err) {
  const probability::CoherenceModel<double> model(o.a);
  const double scale = o.degrees ? kPi / 180.0 : 1.0;
  auto axis = [&](const std::vector<double>& given) {
    if (given.empty()) return probability::linspace(0.0, kPi, o.steps);
    std::vector<double> v(given);
    for (double& x : v) x *= scale;
    return v;
  };
  const auto thetas = axis(o.thetas);
  const auto varthetas = axis(o.varthetas);

  Table table({"theta", "vartheta", "p_theta", "p_vartheta", "classical", "interference", "composed", "exact",
               "abs_error"});
  double worst = 0;
  for (double t : thetas)
    for (double v : varthetas) {
      const auto r = probability::composition_row(model, t, v);
      worst = std::max(worst, r.abs_error);
      table.add_row({format_number(r.theta), format_number(r.vartheta), format_number(r.p_theta),
                     format_number(r.p_vartheta), format_number(r.classical), format_number(r.interference),
                     format_number(r.composed), format_number(r.exact), format_number(r.abs_error)});
    }
  const bool ok = worst < probability::kIdentityTolerance<double>;
  const std::string summary = "max abs_error: " + format_number(worst) + " (tolerance 1e-12) " + (ok ? "ok" : "FAIL");

  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    table.write_csv(sink.stream());
    err << summary << '\n';
  } else {
    sink.stream() << "a: " << format_number(o.a) << '\n';
    table.write_text(sink.stream());
    sink.stream() << summary << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_coherence_violate(const Options& o, std::ostream& out) {
  const probability::CoherenceModel<double> model(o.a);
  if (o.a == 0.0) throw UsageError("--a must be nonzero: a = 0 makes every interpretation identical");
  const auto w = probability::classical_violation_witness(model);
  const bool ok = std::abs(w.classical - 0.5) < probability::kIdentityTolerance<double> &&
                  std::abs(w.required) < probability::kIdentityTolerance<double> &&
                  std::abs(w.classical + w.interference - w.required) < probability::kIdentityTolerance<double>;

  Table table({"a", "theta", "vartheta", "p_theta", "classical", "required", "interference", "gap",
               "classical_infimum"});
  table.add_row({format_number(o.a), format_number(w.theta), format_number(w.theta), format_number(w.p_theta),
                 format_number(w.classical), format_number(w.required), format_number(w.interference),
                 format_number(w.gap), format_number(w.classical_infimum)});
  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    table.write_csv(sink.stream());
  } else {
    auto& s = sink.stream();
    s << "a: " << format_number(o.a) << '\n';
    s << "theta = vartheta: " << format_number(w.theta) << " (a*theta = pi/4)\n";
    s << "classical p(theta)^2 + (1-p(theta))^2: " << format_number(w.classical) << '\n';
    s << "required p(theta+vartheta): " << format_number(w.required) << '\n';
    s << "gap: " << format_number(w.gap) << " at theta=" << format_number(w.theta) << '\n';
    s << "interference term: " << format_number(w.interference) << '\n';
    s << "p^2 + (1-p)^2 >= " << format_number(w.classical_infimum) << " for every p in [0,1] (minimum at p="
      << format_number(w.infimum_at) << "), so no classical assignment reaches 0\n";
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- lattice

int cmd_lattice_check(const Options& o, std::ostream& out) {
  if (o.sites < 2) throw UsageError("--L must be at least 2");
  if (!(o.weight > 0)) throw UsageError("--K must be positive");
  const lattice::LatticeConfig<double> config(o.sites, o.weight);
  const std::size_t L = config.sites;
  const double expected = config.weight / static_cast<double>(L);

  std::vector<lattice::MomentumStatement<double>> momenta;
  std::vector<lattice::PositionStatement<double>> positions;
  for (std::size_t i = 0; i < L; ++i) {
    momenta.push_back(lattice::build_momentum_statement(config, i));
    positions.push_back(lattice::build_position_statement(config, i));
  }

  double worst_idempotency = 0, worst_eigen = 0, min_commutator = INFINITY, worst_probability = 0;
  double worst_order = 0, worst_momentum_shift = 0, worst_position_shift = 0;
  std::vector<double> idempotency(L);
  for (std::size_t k = 0; k < L; ++k) {
    idempotency[k] = lattice::verify_idempotent(momenta[k]);
    worst_idempotency = std::max(worst_idempotency, idempotency[k]);
    worst_eigen = std::max(worst_eigen, lattice::eigenvector_check(momenta[k]).max_deviation());
    for (std::size_t shift = 1; shift < L; ++shift) {
      const auto moved = lattice::translate(momenta[k], static_cast<long long>(shift));
      worst_momentum_shift = std::max(worst_momentum_shift, lattice::max_norm(moved.matrix - momenta[k].matrix));
    }
  }

  Table table({"L", "k", "q0", "K", "idempotency_residual", "commutator_norm", "joint_probability"});
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t q0 = 0; q0 < L; ++q0) {
      const double comm = lattice::commutator_norm(momenta[k], positions[q0]);
      const double prob = lattice::joint_probability(momenta[k], positions[q0]);
      min_commutator = std::min(min_commutator, comm);
      worst_probability = std::max(worst_probability, std::abs(prob - expected));
      worst_order =
          std::max(worst_order, std::abs(lattice::joint_probability(positions[q0], momenta[k]) - prob));
      for (std::size_t shift = 1; shift < L; ++shift) {
        const auto moved = lattice::translate(positions[q0], static_cast<long long>(shift));
        worst_position_shift =
            std::max(worst_position_shift, std::abs(lattice::joint_probability(momenta[k], moved) - prob));
      }
      table.add_row({format_number(std::uint64_t{L}), format_number(std::uint64_t{k}), format_number(std::uint64_t{q0}),
                     format_number(config.weight), format_number(idempotency[k]), format_number(comm),
                     format_number(prob)});
    }

  struct Check {
    const char* name;
    double value;
    bool ok;
    const char* rule;
  };
  const std::vector<Check> checks{
      {"idempotency residual", worst_idempotency, worst_idempotency < kIdempotencyTolerance, "< 1e-10"},
      {"eigenvector deviation", worst_eigen, worst_eigen < kIdempotencyTolerance, "< 1e-10"},
      {"min commutator norm", min_commutator, min_commutator > kCommutatorFloor, "> 1e-6"},
      {"joint probability - K/L", worst_probability, worst_probability < kProbabilityTolerance, "< 1e-12"},
      {"order swap difference", worst_order, worst_order < kProbabilityTolerance, "< 1e-12"},
      {"momentum translation change", worst_momentum_shift, worst_momentum_shift < kProbabilityTolerance, "< 1e-12"},
      {"probability translation change", worst_position_shift, worst_position_shift < kProbabilityTolerance,
       "< 1e-12"},
  };
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });

  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    table.write_csv(sink.stream());
  } else {
    auto& s = sink.stream();
    s << "L: " << L << "  K: " << format_number(config.weight) << "  K/L: " << format_number(expected) << '\n';
    table.write_text(s);
    s << '\n';
    Table summary({"check", "worst", "rule", "status"});
    for (const Check& c : checks) summary.add_row({c.name, format_number(c.value), c.rule, c.ok ? "ok" : "FAIL"});
    summary.write_text(s);
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- theorem1

int cmd_theorem1(const Options& o, std::ostream& out) {
  if (o.group_size < 2 || o.group_size > interpretation::kMaxSearchSize)
    throw UsageError("--N must lie in 2.." + std::to_string(interpretation::kMaxSearchSize));
  const interpretation::ThetaInterval interval = [&] {
    try {
      return interpretation::ThetaInterval(o.theta_min, o.theta_max);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const std::size_t N = o.group_size;
  const auto result = interpretation::exhaustive_algorithm_search(N);
  const std::uint64_t steps = interpretation::factorial(N);
  const double theta = interval.widest();

  Table table({"N", "step", "order", "step_power", "consistent_targets"});
  for (const auto& step : interpretation::Permutation::all(N)) {
    const auto power = interpretation::permutation_power(step, steps);
    const std::uint64_t hits = power.is_identity() ? 0 : 1;
    table.add_row({format_number(std::uint64_t{N}), step.to_one_line(), format_number(step.order()),
                   power.to_one_line(), format_number(hits)});
  }
  const bool ok = result.consistent_pairs == 0 && result.identity_returns == result.candidates;

  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    table.write_csv(sink.stream());
  } else {
    auto& s = sink.stream();
    s << "N: " << N << "  N!: " << steps << '\n';
    s << "theta: " << format_number(theta) << "  step theta/N!: "
      << format_number(interpretation::step_for(theta, N)) << '\n';
    table.write_text(s);
    s << result.consistent_candidates << " of " << result.candidates
      << " candidates consistent with a non-identity target\n";
    s << "step^(N!) = identity for " << result.identity_returns << " of " << result.candidates << " candidates\n";
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- mc

int cmd_mc_run(const Options& o, std::ostream& out) {
  if (o.trials == 0) throw UsageError("--trials must be positive");
  const probability::CoherenceModel<double> model(o.a);
  const double scale = o.degrees ? kPi / 180.0 : 1.0;
  std::vector<mc::TrialReport> rows;
  if (o.sweep_steps > 0) {
    const auto grid = probability::linspace(0.0, kPi, o.sweep_steps);
    rows = mc::sweep(model, grid, o.vartheta * scale, o.trials, o.seed, o.threads);
  } else {
    rows.push_back(mc::run_chained({model, o.theta * scale, o.vartheta * scale, o.trials, o.seed}, o.threads));
  }

  Table table({"a", "theta", "vartheta", "trials", "seed", "p_direct_hat", "p_chained_hat", "interference_hat",
               "analytic_interference", "std_error"});
  std::size_t inside = 0;
  for (const auto& r : rows) {
    inside += r.within(kMcSigmas) ? 1 : 0;
    table.add_row({format_number(r.a), format_number(r.theta), format_number(r.vartheta), format_number(r.trials),
                   format_number(r.seed), format_number(r.p_direct_hat), format_number(r.p_chained_hat),
                   format_number(r.interference_hat), format_number(r.analytic_interference),
                   format_number(r.std_error)});
  }
  const bool ok = inside == rows.size();

  Sink sink(o.output, out);
  if (report::parse_format(o.format) == report::Format::Csv) {
    table.write_csv(sink.stream());
  } else {
    auto& s = sink.stream();
    s << "generator: " << mc::kGeneratorName << '\n';
    table.write_text(s);
    s << inside << " of " << rows.size() << " rows within 4 sigma of the analytic interference term\n";
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  if (const char* value = std::getenv(name.c_str())) return std::string(value);
  return std::nullopt;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  Options o;
  CLI::App app{"Statement-matrix and interpretation-coherence verification tool", "coherence_lab"};
  app.require_subcommand(1);

  auto* logic_cmd = app.add_subcommand("logic", "Minterm decomposition of propositional formulas");
  logic_cmd->require_subcommand(1);
  auto* expand = logic_cmd->add_subcommand("expand", "List the minterms whose disjunction equals a formula");
  expand->add_option("--formula", o.formula, "Formula, e.g. \"a & !b\"")->required();
  expand->add_option("--vars", o.vars, "Comma-separated variable names in order")->required();
  add_format(expand, o);
  auto* tautology = logic_cmd->add_subcommand("tautology", "Check that the disjunction of all minterms is true");
  tautology->add_option("--n", o.n, "Number of independent statements");
  add_format(tautology, o);

  auto* coherence = app.add_subcommand("coherence", "Composition of answer probabilities");
  coherence->require_subcommand(1);
  auto* table_cmd = coherence->add_subcommand("table", "Classical composition plus interference vs the direct law");
  table_cmd->add_option("--a", o.a, "Phase rate a");
  table_cmd->add_option("--theta", o.thetas, "First displacement(s); default grid 0..pi");
  table_cmd->add_option("--vartheta", o.varthetas, "Second displacement(s); default grid 0..pi");
  table_cmd->add_option("--steps", o.steps, "Intervals in the default grid")->check(CLI::PositiveNumber);
  table_cmd->add_flag("--degrees", o.degrees, "Interpret given angles in degrees");
  add_format(table_cmd, o);
  auto* violate = coherence->add_subcommand("violate", "Show the classical rule failing at a*theta = pi/4");
  violate->add_option("--a", o.a, "Phase rate a");
  add_format(violate, o);

  auto* lattice_cmd = app.add_subcommand("lattice", "Statement matrices on a periodic lattice");
  lattice_cmd->require_subcommand(1);
  auto* check = lattice_cmd->add_subcommand("check", "Idempotency, eigenvectors, commutators, joint probability");
  check->add_option("--L", o.sites, "Number of lattice sites (>= 2)")->required();
  check->add_option("--K", o.weight, "Position statement weight K (> 0)");
  add_format(check, o);

  auto* theorem1 = app.add_subcommand("theorem1", "Exhaustive search for a displacement-indexed permutation rule");
  theorem1->add_option("--N", o.group_size, "Number of statements, 2..5")->required();
  theorem1->add_option("--theta-min", o.theta_min, "Lower end of the displacement interval");
  theorem1->add_option("--theta-max", o.theta_max, "Upper end of the displacement interval");
  add_format(theorem1, o);

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo chained answers");
  mc_cmd->require_subcommand(1);
  auto* mc_run = mc_cmd->add_subcommand("run", "Estimate the interference term by simulation");
  mc_run->add_option("--a", o.a, "Phase rate a");
  mc_run->add_option("--theta", o.theta, "First displacement");
  mc_run->add_option("--vartheta", o.vartheta, "Second displacement");
  mc_run->add_option("--trials", o.trials, "Number of trials");
  auto* seed_opt = mc_run->add_option("--seed", o.seed, "Generator seed (overrides COHERENCE_LAB_SEED)");
  mc_run->add_option("--sweep", o.sweep_steps, "Sweep theta over 0..pi with this many intervals");
  mc_run->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
  mc_run->add_flag("--degrees", o.degrees, "Interpret given angles in degrees");
  add_format(mc_run, o);

  std::vector<std::string> storage{"coherence_lab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (mc_run->parsed() && seed_opt->count() == 0)
      if (auto from_env = env(kSeedEnvVar)) o.seed = parse_seed(*from_env);

    if (expand->parsed()) return cmd_logic_expand(o, out, err);
    if (tautology->parsed()) return cmd_logic_tautology(o, out);
    if (table_cmd->parsed()) return cmd_coherence_table(o, out, err);
    if (violate->parsed()) return cmd_coherence_violate(o, out);
    if (check->parsed()) return cmd_lattice_check(o, out);
    if (theorem1->parsed()) return cmd_theorem1(o, out);
    if (mc_run->parsed()) return cmd_mc_run(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const logic::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const logic::UnknownVariableError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace coherence_lab::cli
