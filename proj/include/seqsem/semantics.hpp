#pragma once

// Trace semantics of interaction fragments: the trace-set function D and the
// namespace function N, together with the set operators they are built from.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <utility>
#include <vector>

#include "ast.hpp"
#include "errors.hpp"

namespace seqsem {

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

// Loops unroll at most `max_iterations` times; 0 leaves only the empty trace.
struct LoopBound {
  std::size_t max_iterations{2};
};

struct EvalLimits {
  LoopBound loop_bound{};
  std::size_t max_traces{1'000'000};
};

struct SemanticResult {
  TraceSet traces;
  Namespace namespace_out;
};

namespace detail {

inline void check_size(const TraceSet& ts, std::size_t max_traces) {
  if (ts.size() > max_traces) throw TraceSetOverflow(max_traces);
}

// Adds every ordering of `ms` that keeps lifeline-sharing occurrences in
// their original relative order. Occurrences are tracked by position, so
// repeated equal messages never swap.
inline void add_weak_orderings(const std::vector<Message>& ms, TraceSet& out,
                               std::size_t max_traces) {
  const std::size_t n = ms.size();
  std::vector<std::vector<std::size_t>> later(n);
  std::vector<std::size_t> blockers(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shares_lifeline(ms[i], ms[j])) {
        later[i].push_back(j);
        ++blockers[j];
      }
    }
  }

  std::vector<bool> used(n, false);
  Trace current;
  current.reserve(n);

  // Any occurrence with no remaining earlier peer-sharing occurrence may lead.
  auto extend = [&](auto&& self) -> void {
    if (current.size() == n) {
      out.insert(current);
      check_size(out, max_traces);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i] || blockers[i] != 0) continue;
      used[i] = true;
      for (auto j : later[i]) --blockers[j];
      current.push_back(ms[i]);
      self(self);
      current.pop_back();
      for (auto j : later[i]) ++blockers[j];
      used[i] = false;
    }
  };
  extend(extend);
}

}  // namespace detail

inline TraceSet weak(const std::vector<Message>& ms, std::size_t max_traces = kUnlimited) {
  TraceSet out;
  detail::add_weak_orderings(ms, out, max_traces);
  return out;
}

inline TraceSet weak_over_set(const TraceSet& ts, std::size_t max_traces = kUnlimited) {
  TraceSet out;
  for (const auto& t : ts) {
    // Every member of weak(s) has the same weak closure as s.
    if (out.contains(t)) continue;
    detail::add_weak_orderings(t, out, max_traces);
  }
  return out;
}

inline TraceSet concat_sets(const TraceSet& u, const TraceSet& v,
                            std::size_t max_traces = kUnlimited) {
  TraceSet out;
  for (const auto& x : u) {
    for (const auto& y : v) {
      Trace t;
      t.reserve(x.size() + y.size());
      t.insert(t.end(), x.begin(), x.end());
      t.insert(t.end(), y.begin(), y.end());
      out.insert(std::move(t));
      detail::check_size(out, max_traces);
    }
  }
  return out;
}

// Union of u^0 .. u^k.
inline TraceSet kleene_bounded(const TraceSet& u, LoopBound k,
                               std::size_t max_traces = kUnlimited) {
  TraceSet power{Trace{}};
  TraceSet out = power;
  for (std::size_t n = 1; n <= k.max_iterations; ++n) {
    power = concat_sets(power, u, max_traces);
    if (power.empty()) break;
    out.insert(power.begin(), power.end());
    detail::check_size(out, max_traces);
  }
  return out;
}

// Shuffle product: every merge of x and y that preserves the order within each.
inline TraceSet interleave_traces(const Trace& x, const Trace& y,
                                  std::size_t max_traces = kUnlimited) {
  TraceSet out;
  Trace current;
  current.reserve(x.size() + y.size());
  auto merge = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    if (i == x.size() || j == y.size()) {
      Trace t = current;
      t.insert(t.end(), x.begin() + static_cast<std::ptrdiff_t>(i), x.end());
      t.insert(t.end(), y.begin() + static_cast<std::ptrdiff_t>(j), y.end());
      out.insert(std::move(t));
      detail::check_size(out, max_traces);
      return;
    }
    current.push_back(x[i]);
    self(self, i + 1, j);
    current.back() = y[j];
    self(self, i, j + 1);
    current.pop_back();
  };
  merge(merge, 0, 0);
  return out;
}

inline TraceSet interleave_sets(const TraceSet& xs, const TraceSet& ys,
                                std::size_t max_traces = kUnlimited) {
  TraceSet out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      auto merged = interleave_traces(x, y, max_traces);
      out.insert(merged.begin(), merged.end());
      detail::check_size(out, max_traces);
    }
  }
  return out;
}

// Subsequence of t made of the messages in `keep`.
inline Trace filter(const MessageSet& keep, const Trace& t) {
  Trace out;
  std::copy_if(t.begin(), t.end(), std::back_inserter(out),
               [&](const Message& m) { return keep.contains(m); });
  return out;
}

// N(f, ns). Only create, destroy and weak sequencing change the namespace.
inline Namespace namespace_of(const Fragment& f, Namespace ns) {
  std::visit(overloaded{
                 [&](const Create& c) { ns.insert(c.name); },
                 [&](const Destroy& d) { ns.erase(d.name); },
                 [&](const WeakSeq& w) {
                   for (const auto& child : w.children) ns = namespace_of(child, std::move(ns));
                 },
                 [](const auto&) {},
             },
             f.node);
  return ns;
}

namespace detail {

class Evaluator {
 public:
  Evaluator(const EvalLimits& limits, const MessageSet& universe)
      : limits_(limits), universe_(universe) {}

  SemanticResult eval(const Fragment& f, const Namespace& ns) const {
    try {
      return std::visit([&](const auto& node) { return eval_node(node, f, ns); }, f.node);
    } catch (const TraceSetOverflow& e) {
      if (!e.location().known() && f.location.known()) {
        throw TraceSetOverflow(e.limit(), f.location);
      }
      throw;
    }
  }

 private:
  std::size_t cap() const { return limits_.max_traces; }

  static TraceSet empty_trace() { return TraceSet{Trace{}}; }

  SemanticResult eval_node(const Basic& b, const Fragment& f, const Namespace& ns) const {
    for (std::size_t i = 0; i < b.messages.size(); ++i) {
      const auto& m = b.messages[i];
      for (const auto& peer : {m.sender, m.receiver}) {
        if (ns.contains(peer)) continue;
        auto loc = b.location_of(i);
        throw UnknownLifeline(peer, loc.known() ? loc : f.location);
      }
    }
    return {weak(b.messages, cap()), ns};
  }

  SemanticResult eval_node(const WeakSeq& w, const Fragment&, const Namespace& ns) const {
    TraceSet acc = empty_trace();
    Namespace current = ns;
    for (const auto& child : w.children) {
      auto r = eval(child, current);
      acc = concat_sets(acc, r.traces, cap());
      current = std::move(r.namespace_out);
    }
    return {weak_over_set(acc, cap()), std::move(current)};
  }

  SemanticResult eval_node(const Alt& a, const Fragment&, const Namespace& ns) const {
    TraceSet out;
    for (const auto& branch : a.branches) {
      auto r = eval(branch, ns);
      out.insert(r.traces.begin(), r.traces.end());
      check_size(out, cap());
    }
    return {std::move(out), ns};
  }

  SemanticResult eval_node(const Par& p, const Fragment&, const Namespace& ns) const {
    if (p.operands.empty()) return {empty_trace(), ns};
    TraceSet acc = eval(p.operands.front(), ns).traces;
    for (std::size_t i = 1; i < p.operands.size(); ++i) {
      acc = interleave_sets(acc, eval(p.operands[i], ns).traces, cap());
    }
    return {std::move(acc), ns};
  }

  SemanticResult eval_node(const Loop& l, const Fragment&, const Namespace& ns) const {
    auto body = eval(*l.body, ns);
    auto closure = kleene_bounded(body.traces, limits_.loop_bound, cap());
    return {weak_over_set(closure, cap()), ns};
  }

  SemanticResult eval_node(const Create& c, const Fragment& f, const Namespace& ns) const {
    if (ns.contains(c.name)) throw DuplicateCreate(c.name, f.location);
    return {empty_trace(), namespace_of(f, ns)};
  }

  SemanticResult eval_node(const Destroy& d, const Fragment& f, const Namespace& ns) const {
    if (!ns.contains(d.name)) throw DestroyAbsent(d.name, f.location);
    return {empty_trace(), namespace_of(f, ns)};
  }

  SemanticResult eval_node(const Skip&, const Fragment&, const Namespace& ns) const {
    return {empty_trace(), ns};
  }

  SemanticResult eval_node(const Consider& c, const Fragment&, const Namespace& ns) const {
    return {filter_all(c.alphabet, eval(*c.body, ns).traces), ns};
  }

  SemanticResult eval_node(const Ignore& i, const Fragment&, const Namespace& ns) const {
    MessageSet keep;
    std::set_difference(universe_.begin(), universe_.end(), i.alphabet.begin(), i.alphabet.end(),
                        std::inserter(keep, keep.end()));
    return {filter_all(keep, eval(*i.body, ns).traces), ns};
  }

  static TraceSet filter_all(const MessageSet& keep, const TraceSet& ts) {
    TraceSet out;
    for (const auto& t : ts) out.insert(filter(keep, t));
    return out;
  }

  const EvalLimits& limits_;
  const MessageSet& universe_;
};

}  // namespace detail

// Evaluates D and N for `f` under namespace `ns`. `universe` stands in for the
// set of all messages when resolving `ignore`.
inline SemanticResult denote(const Fragment& f, const Namespace& ns, const EvalLimits& limits,
                             const MessageSet& universe) {
  return detail::Evaluator(limits, universe).eval(f, ns);
}

inline SemanticResult denote(const Fragment& f, const Namespace& ns,
                             const EvalLimits& limits = {}) {
  return denote(f, ns, limits, message_alphabet(f));
}

// alt(skip, b, weakseq(b,b), ..., weakseq(b x k)): the loop unrolled k times.
inline Fragment unrolled_alternatives(const Fragment& body, LoopBound k) {
  std::vector<Fragment> branches;
  branches.push_back(skip());
  for (std::size_t n = 1; n <= k.max_iterations; ++n) {
    if (n == 1) {
      branches.push_back(body);
    } else {
      branches.push_back(weakseq(std::vector<Fragment>(n, body)));
    }
  }
  return alt(std::move(branches));
}

struct LoopUnrollingComparison {
  TraceSet loop_traces;
  TraceSet unrolled_traces;

  bool equal() const { return loop_traces == unrolled_traces; }

  TraceSet symmetric_difference() const {
    TraceSet out;
    std::set_symmetric_difference(loop_traces.begin(), loop_traces.end(),
                                  unrolled_traces.begin(), unrolled_traces.end(),
                                  std::inserter(out, out.end()));
    return out;
  }
};

// Evaluates loop(body) and its k-fold unrolled alternative as two independent
// trees under the same bound.
inline LoopUnrollingComparison compare_loop_unrolling(const Fragment& body, const Namespace& ns,
                                                      LoopBound k, EvalLimits limits = {}) {
  limits.loop_bound = k;
  LoopUnrollingComparison out;
  out.loop_traces = denote(loop(body), ns, limits).traces;
  out.unrolled_traces = denote(unrolled_alternatives(body, k), ns, limits).traces;
  return out;
}

inline bool loop_unrolling_holds(const Fragment& body, const Namespace& ns, LoopBound k,
                                 EvalLimits limits = {}) {
  return compare_loop_unrolling(body, ns, k, limits).equal();
}

}  // namespace seqsem
