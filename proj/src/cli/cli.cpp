#include "lemmaflow/cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lemmaflow/flow/report.hpp"
#include "lemmaflow/lang/network.hpp"
#include "lemmaflow/lfd/diagram.hpp"

namespace lemmaflow::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  std::size_t max_clauses = prover::ResourceLimits{}.max_clauses;
  std::size_t max_depth = prover::ResourceLimits{}.max_depth;
  long long timeout_ms = prover::ResourceLimits{}.max_millis->count();
  std::string trace = "summary";
  std::size_t jobs = 1;

  prover::ResourceLimits limits() const {
    return {max_clauses, max_depth, std::chrono::milliseconds(timeout_ms)};
  }
};

void add_common(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("input", cfg.input, "network file (.lfd)")->required();
  cmd.add_option("--out", cfg.output, "write the result here instead of standard output");
}

void add_limits(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--max-clauses", cfg.max_clauses, "kept-clause budget per proof")->check(CLI::PositiveNumber);
  cmd.add_option("--max-depth", cfg.max_depth, "inference depth bound")->check(CLI::PositiveNumber);
  cmd.add_option("--timeout-ms", cfg.timeout_ms, "wall-clock budget per proof")->check(CLI::PositiveNumber);
  cmd.add_option("--trace", cfg.trace, "report verbosity")->check(CLI::IsMember({"summary", "full"}));
  cmd.add_option("--jobs", cfg.jobs, "concurrent lemma tasks")->check(CLI::PositiveNumber);
}

/// Parses the input file, reporting every problem to `err`.
std::optional<lang::AgentNetwork> load(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << path << ": cannot read file\n";
    return std::nullopt;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return lang::parse_network(text.str());
  } catch (const lang::LangError& e) {
    for (const auto& d : e.diagnostics()) err << path << ": " << lang::to_string(d) << '\n';
    return std::nullopt;
  }
}

bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!(file << text)) {
    err << cfg.output << ": cannot write file\n";
    return false;
  }
  return true;
}

int cmd_prove(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto net = load(cfg.input, err);
  if (!net) return kInputError;
  flow::LemmaFlowPlan plan;
  try {
    plan = flow::plan(*net);
  } catch (const flow::PlanError& e) {
    err << cfg.input << ": " << e.what() << '\n';
    return kInputError;
  }
  flow::DischargeOptions options;
  options.limits = cfg.limits();
  options.jobs = cfg.jobs;
  const flow::LemmaFlowProof proof = flow::discharge(*net, plan, options);
  const auto verbosity = cfg.trace == "full" ? flow::Verbosity::Full : flow::Verbosity::Summary;
  if (!emit(cfg, flow::render_report(proof, verbosity), out, err)) return kInputError;
  return proof.proved() ? kOk : kProofFailure;
}

int cmd_diagram(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto net = load(cfg.input, err);
  if (!net) return kInputError;
  return emit(cfg, lfd::emit_dot(lfd::build_diagram(*net)), out, err) ? kOk : kInputError;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto net = load(cfg.input, err);
  if (!net) return kInputError;
  try {
    const flow::LemmaFlowPlan plan = flow::plan(*net);
    return emit(cfg, flow::render_check(*net, plan) + "\n", out, err) ? kOk : kInputError;
  } catch (const flow::PlanError& e) {
    err << cfg.input << ": " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lemma flow theorem proving over agent networks", "lemmaflow"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App* prove = app.add_subcommand("prove", "prove the query lemma by lemma and print a report");
  CLI::App* diagram = app.add_subcommand("diagram", "write the lemma flow diagram as DOT");
  CLI::App* check = app.add_subcommand("check", "validate and plan without proving");
  for (CLI::App* cmd : {prove, diagram, check}) add_common(*cmd, cfg);
  add_limits(*prove, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (prove->parsed()) return cmd_prove(cfg, out, err);
  if (diagram->parsed()) return cmd_diagram(cfg, out, err);
  return cmd_check(cfg, out, err);
}

}  // namespace lemmaflow::cli
