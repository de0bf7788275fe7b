#pragma once

// Namespace validation, trace-set refinement, and conformance of recorded
// system traces against a diagram.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"
#include "errors.hpp"
#include "parser.hpp"
#include "semantics.hpp"

namespace seqsem {

// ---------------------------------------------------------------------------
// Trace text format: one trace per line, messages `sender.label.receiver`
// separated by spaces, `ε` for the empty trace.

inline constexpr std::string_view kEmptyTrace = "ε";

inline std::string format_message(const Message& m) {
  return m.sender.str() + "." + m.label + "." + m.receiver.str();
}

inline std::string format_trace(const Trace& t) {
  if (t.empty()) return std::string(kEmptyTrace);
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_message(t[i]);
  }
  return out;
}

// Traces ordered by their rendered text.
inline std::vector<Trace> sorted_by_text(const TraceSet& ts) {
  std::vector<std::pair<std::string, const Trace*>> keyed;
  keyed.reserve(ts.size());
  for (const auto& t : ts) keyed.emplace_back(format_trace(t), &t);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Trace> out;
  out.reserve(keyed.size());
  for (const auto& [text, t] : keyed) out.push_back(*t);
  return out;
}

inline std::string format_traces(const TraceSet& ts) {
  std::string out;
  for (const auto& t : sorted_by_text(ts)) out += format_trace(t) + "\n";
  return out;
}

// Sender and receiver contain no dots, so the first and last dots delimit
// the label, which may itself contain dots.
inline Message parse_log_message(std::string_view token, int line) {
  auto first = token.find('.');
  auto last = token.rfind('.');
  if (first == std::string_view::npos || first == last) {
    throw LogParseError(line, "expected sender.label.receiver, found '" + std::string(token) + "'");
  }
  auto sender = token.substr(0, first);
  auto label = token.substr(first + 1, last - first - 1);
  auto receiver = token.substr(last + 1);
  if (!LifelineName::is_valid(sender) || !LifelineName::is_valid(receiver) ||
      !is_valid_label(label)) {
    throw LogParseError(line, "malformed message '" + std::string(token) + "'");
  }
  return Message{LifelineName(std::string(sender)), std::string(label),
                 LifelineName(std::string(receiver))};
}

inline Trace parse_log_trace(std::string_view text, int line) {
  Trace t;
  std::size_t i = 0;
  bool saw_empty_marker = false;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r') {
      ++i;
      continue;
    }
    auto end = text.find_first_of(" \t\r", i);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(i, end - i);
    if (token == kEmptyTrace) {
      saw_empty_marker = true;
    } else {
      t.push_back(parse_log_message(token, line));
    }
    i = end;
  }
  if (saw_empty_marker && !t.empty()) {
    throw LogParseError(line, "'ε' must stand alone on its line");
  }
  return t;
}

struct TraceLog {
  TraceSet traces;
};

inline TraceLog parse_trace_log(std::string_view text) {
  TraceLog log;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) log.traces.insert(parse_log_trace(line, line_no));
    if (end == text.size()) break;
    start = end + 1;
  }
  return log;
}

// ---------------------------------------------------------------------------
// Validation

struct Diagnostic {
  enum class Kind { UnknownLifeline, DuplicateCreate, DestroyAbsent };
  Kind kind;
  LifelineName name;
  SourceLocation location;

  std::string kind_name() const {
    switch (kind) {
      case Kind::UnknownLifeline: return "UnknownLifeline";
      case Kind::DuplicateCreate: return "DuplicateCreate";
      case Kind::DestroyAbsent: return "DestroyAbsent";
    }
    return "";
  }

  std::string str() const { return to_string(location) + ": " + kind_name() + ": " + name.str(); }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

namespace detail {

inline Namespace validate_into(const Fragment& f, Namespace ns, std::vector<Diagnostic>& out) {
  using K = Diagnostic::Kind;
  auto restore = [&](const Fragment& body) { validate_into(body, ns, out); };
  std::visit(overloaded{
                 [&](const Basic& b) {
                   for (std::size_t i = 0; i < b.messages.size(); ++i) {
                     const auto& m = b.messages[i];
                     auto loc = b.location_of(i).known() ? b.location_of(i) : f.location;
                     if (!ns.contains(m.sender)) out.push_back({K::UnknownLifeline, m.sender, loc});
                     if (m.receiver != m.sender && !ns.contains(m.receiver)) {
                       out.push_back({K::UnknownLifeline, m.receiver, loc});
                     }
                   }
                 },
                 [&](const WeakSeq& w) {
                   for (const auto& c : w.children) ns = validate_into(c, std::move(ns), out);
                 },
                 [&](const Alt& a) {
                   for (const auto& c : a.branches) restore(c);
                 },
                 [&](const Par& p) {
                   for (const auto& c : p.operands) restore(c);
                 },
                 [&](const Loop& l) { restore(*l.body); },
                 [&](const Create& c) {
                   if (!ns.insert(c.name).second) {
                     out.push_back({K::DuplicateCreate, c.name, f.location});
                   }
                 },
                 [&](const Destroy& d) {
                   if (ns.erase(d.name) == 0) out.push_back({K::DestroyAbsent, d.name, f.location});
                 },
                 [](const Skip&) {},
                 [&](const Consider& c) { restore(*c.body); },
                 [&](const Ignore& i) { restore(*i.body); },
             },
             f.node);
  return ns;
}

}  // namespace detail

// Threads the namespace through the tree as denote does, without computing
// traces, and reports every scope violation in source order.
inline std::vector<Diagnostic> validate(const Fragment& root, const Namespace& ns) {
  std::vector<Diagnostic> out;
  detail::validate_into(root, ns, out);
  return out;
}

inline std::vector<Diagnostic> validate(const ParsedDiagram& d) {
  return validate(d.root, d.initial_namespace);
}

// ---------------------------------------------------------------------------
// Refinement and conformance

enum class WitnessSide {
  OnlyInFirst,   // in the diagram (or refining diagram) but not the other side
  OnlyInSecond,  // in the log (or refined diagram) but not the first side
  InBoth,
};

struct Witness {
  Trace trace;
  WitnessSide side;
};

struct Verdict {
  bool holds{true};
  std::vector<Witness> witnesses;
};

enum class ConformanceMode {
  Required,    // D ⊆ S
  Exhaustive,  // S ⊆ D
  Forbidden,   // D ∩ S = ∅
};

inline constexpr std::size_t kDefaultWitnesses = 10;

namespace detail {

inline Verdict verdict_from(const TraceSet& offending, WitnessSide side, std::size_t max_witnesses) {
  Verdict v;
  v.holds = offending.empty();
  for (const auto& t : sorted_by_text(offending)) {
    if (v.witnesses.size() >= std::max<std::size_t>(max_witnesses, 1)) break;
    v.witnesses.push_back({t, side});
  }
  return v;
}

inline TraceSet difference(const TraceSet& a, const TraceSet& b) {
  TraceSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline TraceSet intersection(const TraceSet& a, const TraceSet& b) {
  TraceSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace detail

inline TraceSet diagram_traces(const ParsedDiagram& d, const EvalLimits& limits) {
  return denote(d.root, d.initial_namespace, limits).traces;
}

// D(a) ⊆ D(b) under identical limits. Witnesses are traces of `a` missing from `b`.
inline Verdict refines(const ParsedDiagram& a, const ParsedDiagram& b, const EvalLimits& limits,
                       std::size_t max_witnesses = kDefaultWitnesses) {
  auto da = diagram_traces(a, limits);
  auto db = diagram_traces(b, limits);
  return detail::verdict_from(detail::difference(da, db), WitnessSide::OnlyInFirst, max_witnesses);
}

inline Verdict conform(const TraceSet& diagram, const TraceLog& log, ConformanceMode mode,
                       std::size_t max_witnesses = kDefaultWitnesses) {
  switch (mode) {
    case ConformanceMode::Required:
      return detail::verdict_from(detail::difference(diagram, log.traces), WitnessSide::OnlyInFirst,
                                  max_witnesses);
    case ConformanceMode::Exhaustive:
      return detail::verdict_from(detail::difference(log.traces, diagram),
                                  WitnessSide::OnlyInSecond, max_witnesses);
    case ConformanceMode::Forbidden:
      return detail::verdict_from(detail::intersection(diagram, log.traces), WitnessSide::InBoth,
                                  max_witnesses);
  }
  return {};
}

inline Verdict conform(const ParsedDiagram& d, const TraceLog& log, ConformanceMode mode,
                       const EvalLimits& limits, std::size_t max_witnesses = kDefaultWitnesses) {
  return conform(diagram_traces(d, limits), log, mode, max_witnesses);
}

}  // namespace seqsem
