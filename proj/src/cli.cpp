#include "perron/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "perron/errors.hpp"
#include "perron/fixtures.hpp"
#include "perron/io.hpp"
#include "perron/properties.hpp"
#include "perron/spectral.hpp"
#include "perron/structure.hpp"

namespace perron {

namespace {

struct EigOptions {
  std::string file;
  std::optional<double> eps;
  std::optional<double> perturb_eps;
  int max_iter = 1000;
  std::string x0_file;
  bool trace = false;
  bool json = false;
};

struct CheckCmdOptions {
  std::string file;
};

struct PropsOptions {
  std::string suite;
  std::uint64_t seed = 1;
  int samples = 100;
  std::optional<int> order;
  std::optional<int> dim;
  bool json = false;
};

struct ExamplesOptions {
  std::string dir = ".";
  std::string layout = "coo";
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string format_set(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.elements()) {
    out += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

double default_eps() {
  const char* env = std::getenv(kEpsEnvVar);
  if (env == nullptr || *env == '\0') return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    throw ArgumentError(std::string(kEpsEnvVar) + " must be a positive number");
  }
  return v;
}

int run_eig(const EigOptions& o, std::ostream& out, std::ostream& err) {
  const DenseTensor a = parse_tensor(read_file(o.file));
  SolverConfig cfg;
  cfg.eps = o.eps.value_or(default_eps());
  cfg.max_iter = o.max_iter;
  cfg.perturbation = o.perturb_eps;
  if (!o.x0_file.empty()) cfg.x0 = parse_vector(read_file(o.x0_file));

  const EigenResult r = solve_dominant(a, cfg);
  if (o.json) {
    out << nlohmann::json(r).dump(2) << "\n";
  } else {
    if (o.trace) out << render_trace(r) << "\n";
    out << "dominant eigenvalue: " << fixed(r.lambda, 10) << "\n";
    out << "eigenvector:";
    for (double v : r.eigenvector.values()) out << " " << fixed(v, 10);
    out << "\n";
    out << "iterations: " << r.iterations << "\n";
    out << "converged: " << (r.converged ? "yes" : "no") << "\n\n";
    out << render_summary(std::filesystem::path(o.file).stem().string(), r);
  }
  if (!r.converged) {
    err << "warning: no convergence within " << cfg.max_iter << " iterations (gap "
        << r.trace.back().gap << ")\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run_check(const CheckCmdOptions& o, std::ostream& out) {
  const DenseTensor a = parse_tensor(read_file(o.file));
  auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  out << "order: " << a.order() << ", dim: " << a.dim() << "\n";
  out << "essentially nonnegative: " << yes_no(is_essentially_nonnegative(a)) << "\n";
  out << "nonnegative: " << yes_no(is_nonnegative(a)) << "\n";
  out << "symmetric: " << yes_no(is_symmetric(a)) << "\n";
  const ReducibilityReport rep = is_irreducible(a);
  out << "irreducible: " << yes_no(rep.irreducible) << "\n";
  if (!rep.irreducible) {
    out << "reducible, witness I = " << format_set(*rep.witness) << "\n";
  }
  try {
    require_essentially_nonnegative(a);
  } catch (const SignError& e) {
    out << e.what() << "\n";
  }
  return kExitOk;
}

int run_props(const PropsOptions& o, std::ostream& out) {
  SuiteOptions opts;
  opts.seed = o.seed;
  opts.samples = o.samples;
  opts.order = o.order;
  opts.dim = o.dim;
  return report_suite(run_suite(parse_suite(o.suite), opts), o.json, out);
}

int run_examples(const ExamplesOptions& o, std::ostream& out) {
  const Layout layout = o.layout == "dense" ? Layout::dense : Layout::coo;
  std::filesystem::create_directories(o.dir);
  for (const auto& f : fixtures::all()) {
    const auto path = std::filesystem::path(o.dir) / (f.name + ".json");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << serialize_tensor(f.tensor, layout, f.comment);
    out << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int report_suite(const std::vector<PropertyReport>& reports, bool json, std::ostream& out) {
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  if (json) {
    out << nlohmann::json(reports).dump(2) << "\n";
  } else {
    for (const auto& r : reports) {
      char line[256];
      std::snprintf(line, sizeof line, "%-4s %-30s samples=%-5d max_violation=% .3e tolerance=% .1e\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.samples, r.max_violation,
                    r.tolerance);
      out << line;
      for (const auto& w : r.witnesses) out << "     witness: " << w << "\n";
    }
    out << (pass ? "all properties hold\n" : "property violations found\n");
  }
  return pass ? kExitOk : kExitFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dominant eigenvalues of essentially nonnegative tensors", "perron"};
  app.require_subcommand(1);

  EigOptions eig;
  auto* eig_cmd = app.add_subcommand("eig", "Compute the dominant eigenvalue of a tensor file");
  eig_cmd->add_option("file", eig.file, "Tensor document")->required();
  eig_cmd->add_option("--eps", eig.eps, "Stopping tolerance and perturbation (default 1e-9)")
      ->check(CLI::PositiveNumber);
  eig_cmd->add_option("--perturb-eps", eig.perturb_eps,
                      "Perturbation size, if different from --eps")
      ->check(CLI::NonNegativeNumber);
  eig_cmd->add_option("--max-iter", eig.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  eig_cmd->add_option("--x0", eig.x0_file, "Starting vector (JSON array)");
  eig_cmd->add_flag("--trace", eig.trace, "Print the per-iteration table");
  eig_cmd->add_flag("--json", eig.json, "Machine-readable output");

  CheckCmdOptions check;
  auto* check_cmd = app.add_subcommand("check", "Report structural properties of a tensor file");
  check_cmd->add_option("file", check.file, "Tensor document")->required();

  PropsOptions props;
  auto* props_cmd = app.add_subcommand("props", "Run randomized property suites");
  props_cmd->add_option("suite", props.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(
          {"minimax", "monotone", "convexity", "symmetric-convexity", "logconvexity", "all"}));
  props_cmd->add_option("--seed", props.seed, "RNG seed");
  props_cmd->add_option("--samples", props.samples, "Instances per check")
      ->check(CLI::PositiveNumber);
  props_cmd->add_option("--order", props.order, "Tensor order m")->check(CLI::Range(2, 8));
  props_cmd->add_option("--dim", props.dim, "Tensor dimension n")->check(CLI::Range(1, 16));
  props_cmd->add_flag("--json", props.json, "Machine-readable output");

  ExamplesOptions examples;
  auto* examples_cmd = app.add_subcommand("examples", "Write the bundled fixture files");
  examples_cmd->add_option("--dir", examples.dir, "Output directory");
  examples_cmd->add_option("--layout", examples.layout, "coo or dense")
      ->check(CLI::IsMember({"coo", "dense"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*eig_cmd) return run_eig(eig, out, err);
    if (*check_cmd) return run_check(check, out);
    if (*props_cmd) return run_props(props, out);
    if (*examples_cmd) return run_examples(examples, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace perron
