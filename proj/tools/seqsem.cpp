#include <cstddef>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "seqsem/cli.hpp"

namespace {

int emit(const seqsem::cli::OutputReport& r) {
  std::cout << r.body << std::flush;
  std::cerr << r.diagnostics << std::flush;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace seqsem::cli;

  CLI::App app{"Trace semantics of asynchronous sequence diagrams"};
  app.require_subcommand(1);

  std::string file, other, log, mode;
  std::size_t max_loop = kDefaultMaxLoop;
  std::size_t max_traces = kDefaultMaxTraces;
  std::size_t depth = 0;
  bool count_only = false;

  auto* parse_cmd = app.add_subcommand("parse", "Print the abstract syntax tree of a diagram");
  parse_cmd->add_option("FILE", file, "Diagram file")->required();

  auto* check_cmd = app.add_subcommand("check", "Report lifeline scope violations");
  check_cmd->add_option("FILE", file, "Diagram file")->required();

  auto* traces_cmd = app.add_subcommand("traces", "Enumerate the traces of a diagram");
  traces_cmd->add_option("FILE", file, "Diagram file")->required();
  traces_cmd->add_option("--max-loop", max_loop, "Maximum loop unrolling");
  traces_cmd->add_option("--max-traces", max_traces, "Abort when a trace set grows beyond this")
      ->check(CLI::PositiveNumber);
  traces_cmd->add_flag("--count", count_only, "Print only the number of traces");

  auto* refine_cmd = app.add_subcommand("refine", "Check that every trace of A is a trace of B");
  refine_cmd->add_option("A", file, "Refining diagram")->required();
  refine_cmd->add_option("B", other, "Refined diagram")->required();
  refine_cmd->add_option("--max-loop", max_loop, "Maximum loop unrolling");
  refine_cmd->add_option("--max-traces", max_traces, "Trace set size limit")
      ->check(CLI::PositiveNumber);

  auto* conform_cmd = app.add_subcommand("conform", "Compare a diagram with a recorded trace log");
  conform_cmd->add_option("FILE", file, "Diagram file")->required();
  conform_cmd->add_option("LOG", log, "Trace log file")->required();
  conform_cmd->add_option("--mode", mode, "required | exhaust | forbid")
      ->required()
      ->check(CLI::IsMember({"required", "exhaust", "forbid"}));
  conform_cmd->add_option("--max-loop", max_loop, "Maximum loop unrolling");
  conform_cmd->add_option("--max-traces", max_traces, "Trace set size limit")
      ->check(CLI::PositiveNumber);

  auto* theorem_cmd =
      app.add_subcommand("theorem", "Compare a loop with its unrolled alternative");
  theorem_cmd->add_option("FILE", file, "Diagram whose top-level fragment is a loop")->required();
  theorem_cmd->add_option("--depth", depth, "Number of unrollings")->required();
  theorem_cmd->add_option("--max-traces", max_traces, "Trace set size limit")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*parse_cmd) return emit(cmd_parse(file));
  if (*check_cmd) return emit(cmd_check(file));
  if (*traces_cmd) return emit(cmd_traces(file, max_loop, max_traces, count_only));
  if (*refine_cmd) return emit(cmd_refine(file, other, max_loop, max_traces));
  if (*conform_cmd) return emit(cmd_conform(file, log, *parse_mode(mode), max_loop, max_traces));
  if (*theorem_cmd) return emit(cmd_theorem(file, depth, max_traces));
  return 2;
}
