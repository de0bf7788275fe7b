#pragma once

// Command implementations behind the `seqsem` executable. Each command
// returns its exit code, standard output body and diagnostics separately so
// that it can be driven in-process by tests.
//
// Exit codes: 0 success / property holds, 1 property fails, 2 usage, parse
// or evaluation error.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "conformance.hpp"
#include "parser.hpp"
#include "semantics.hpp"

namespace seqsem::cli {

struct OutputReport {
  int exit_code{0};
  std::string body;
  std::string diagnostics;
};

inline constexpr std::size_t kDefaultMaxLoop = 2;
inline constexpr std::size_t kDefaultMaxTraces = 1'000'000;

class FileError : public Error {
 public:
  explicit FileError(const std::string& path) : Error("FileError", "cannot read '" + path + "'") {}
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline OutputReport failure(const std::string& context, const std::exception& e) {
  return {2, "", context + ": " + e.what() + "\n"};
}

inline ParsedDiagram load(const std::string& path) { return parse(read_file(path)); }

// Loads and validates; scope violations become one located error each.
inline std::optional<OutputReport> load_valid(const std::string& path, ParsedDiagram& out) {
  try {
    out = load(path);
  } catch (const Error& e) {
    return failure(path, e);
  }
  auto diags = validate(out);
  if (diags.empty()) return std::nullopt;
  OutputReport r{2, "", ""};
  for (const auto& d : diags) r.diagnostics += path + ":" + d.str() + "\n";
  return r;
}

inline EvalLimits limits(std::size_t max_loop, std::size_t max_traces) {
  return EvalLimits{LoopBound{max_loop}, max_traces};
}

inline std::string bound_note(std::size_t max_loop) {
  return "note: loops unrolled at most " + std::to_string(max_loop) + " times\n";
}

inline void append_witnesses(OutputReport& r, const Verdict& v) {
  for (const auto& w : v.witnesses) r.body += format_trace(w.trace) + "\n";
}

}  // namespace detail

inline OutputReport cmd_parse(const std::string& path) {
  try {
    return {0, dump_ast(detail::load(path)), ""};
  } catch (const Error& e) {
    return detail::failure(path, e);
  }
}

inline OutputReport cmd_check(const std::string& path) {
  ParsedDiagram d;
  try {
    d = detail::load(path);
  } catch (const Error& e) {
    return detail::failure(path, e);
  }
  OutputReport r;
  for (const auto& diag : validate(d)) r.body += path + ":" + diag.str() + "\n";
  r.exit_code = r.body.empty() ? 0 : 1;
  return r;
}

inline OutputReport cmd_traces(const std::string& path, std::size_t max_loop = kDefaultMaxLoop,
                               std::size_t max_traces = kDefaultMaxTraces,
                               bool count_only = false) {
  ParsedDiagram d;
  if (auto err = detail::load_valid(path, d)) return *err;
  try {
    auto traces = diagram_traces(d, detail::limits(max_loop, max_traces));
    if (count_only) return {0, std::to_string(traces.size()) + "\n", ""};
    return {0, format_traces(traces), ""};
  } catch (const Error& e) {
    return detail::failure(path, e);
  }
}

inline OutputReport cmd_refine(const std::string& path_a, const std::string& path_b,
                               std::size_t max_loop = kDefaultMaxLoop,
                               std::size_t max_traces = kDefaultMaxTraces) {
  ParsedDiagram a, b;
  if (auto err = detail::load_valid(path_a, a)) return *err;
  if (auto err = detail::load_valid(path_b, b)) return *err;
  try {
    auto v = refines(a, b, detail::limits(max_loop, max_traces));
    OutputReport r{v.holds ? 0 : 1, v.holds ? "REFINES\n" : "FAILS\n", detail::bound_note(max_loop)};
    detail::append_witnesses(r, v);
    return r;
  } catch (const Error& e) {
    return detail::failure(path_a + " / " + path_b, e);
  }
}

inline std::optional<ConformanceMode> parse_mode(const std::string& text) {
  if (text == "required") return ConformanceMode::Required;
  if (text == "exhaust") return ConformanceMode::Exhaustive;
  if (text == "forbid") return ConformanceMode::Forbidden;
  return std::nullopt;
}

inline OutputReport cmd_conform(const std::string& path, const std::string& log_path,
                                ConformanceMode mode, std::size_t max_loop = kDefaultMaxLoop,
                                std::size_t max_traces = kDefaultMaxTraces) {
  ParsedDiagram d;
  if (auto err = detail::load_valid(path, d)) return *err;
  TraceLog log;
  try {
    log = parse_trace_log(read_file(log_path));
  } catch (const Error& e) {
    return detail::failure(log_path, e);
  }
  try {
    auto v = conform(d, log, mode, detail::limits(max_loop, max_traces));
    OutputReport r{v.holds ? 0 : 1, v.holds ? "HOLDS\n" : "FAILS\n", detail::bound_note(max_loop)};
    detail::append_witnesses(r, v);
    return r;
  } catch (const Error& e) {
    return detail::failure(path, e);
  }
}

inline OutputReport cmd_theorem(const std::string& path, std::size_t depth,
                                std::size_t max_traces = kDefaultMaxTraces) {
  ParsedDiagram d;
  if (auto err = detail::load_valid(path, d)) return *err;
  if (!d.root.is<Loop>()) {
    return {2, "",
            path + ": the diagram's top-level fragment must be a single loop block, found " +
                variant_name(d.root) + "\n"};
  }
  try {
    auto cmp = compare_loop_unrolling(*d.root.as<Loop>().body, d.initial_namespace,
                                      LoopBound{depth}, detail::limits(depth, max_traces));
    if (cmp.equal()) return {0, "EQUAL\n", ""};
    return {1, "DIFFERENT\n" + format_traces(cmp.symmetric_difference()), ""};
  } catch (const Error& e) {
    return detail::failure(path, e);
  }
}

}  // namespace seqsem::cli
