#pragma once

// Brute-force reference implementations of weak sequencing and interleaving,
// and a seeded random generator of well-scoped fragments for property tests.
// Nothing here shares code with semantics.hpp beyond the value types.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ast.hpp"
#include "errors.hpp"

namespace seqsem::oracle {

inline constexpr std::size_t kWeakLimit = 8;
inline constexpr std::size_t kInterleaveLimit = 12;

// All permutations of the occurrences of `ms`, filtered so that any two
// occurrences sharing a lifeline keep their original order.
inline TraceSet oracle_weak(const std::vector<Message>& ms, std::size_t limit = kWeakLimit) {
  if (ms.size() > limit) throw InputTooLarge(ms.size(), limit);
  const std::size_t n = ms.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> position(n);
  TraceSet out;
  do {
    for (std::size_t p = 0; p < n; ++p) position[perm[p]] = p;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if (shares_lifeline(ms[i], ms[j]) && position[i] > position[j]) ok = false;
      }
    }
    if (!ok) continue;
    Trace t;
    t.reserve(n);
    for (auto idx : perm) t.push_back(ms[idx]);
    out.insert(std::move(t));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Chooses which of the |x|+|y| positions hold x; the rest hold y.
inline TraceSet oracle_interleave(const Trace& x, const Trace& y,
                                  std::size_t limit = kInterleaveLimit) {
  const std::size_t n = x.size() + y.size();
  if (n > limit) throw InputTooLarge(n, limit);
  TraceSet out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != x.size()) continue;
    Trace t;
    t.reserve(n);
    std::size_t xi = 0, yi = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (mask & (std::uint32_t{1} << pos)) {
        t.push_back(x[xi++]);
      } else {
        t.push_back(y[yi++]);
      }
    }
    out.insert(std::move(t));
  }
  return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct GeneratorConfig {
  int max_depth{3};
  int max_messages_per_basic{3};
  std::vector<LifelineName> lifeline_pool{"A", "B", "C", "D"};
  std::uint64_t seed{42};
  int max_children{3};
  std::vector<std::string> labels{"a", "b", "c"};
};

// Produces fragments that evaluate without namespace errors under
// `lifeline_pool`, and whose namespace effect at the root is nil: a create
// at statement level is always closed by a destroy, and an unclosed create
// only appears directly inside a combined fragment body.
class FragmentGenerator {
 public:
  explicit FragmentGenerator(GeneratorConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {}

  const GeneratorConfig& config() const { return cfg_; }

  Fragment next() {
    std::vector<LifelineName> scope = cfg_.lifeline_pool;
    return fragment(std::max(cfg_.max_depth, 1), scope, false);
  }

  Namespace initial_namespace() const {
    return Namespace(cfg_.lifeline_pool.begin(), cfg_.lifeline_pool.end());
  }

  Message next_message() { return message(cfg_.lifeline_pool); }

  std::vector<Message> next_messages(std::size_t count) {
    std::vector<Message> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next_message());
    return out;
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

 private:
  enum class Kind { Basic, Skip, Seq, Alt, Par, Loop, Consider, Ignore, Scoped };

  Message message(const std::vector<LifelineName>& scope) {
    const auto& s = scope[uniform(0, scope.size() - 1)];
    const auto& r = scope[uniform(0, scope.size() - 1)];
    return Message{s, cfg_.labels[uniform(0, cfg_.labels.size() - 1)], r};
  }

  Fragment make_basic(const std::vector<LifelineName>& scope) {
    auto count = uniform(1, static_cast<std::size_t>(std::max(cfg_.max_messages_per_basic, 1)));
    std::vector<Message> ms;
    for (std::size_t i = 0; i < count; ++i) ms.push_back(message(scope));
    return basic(std::move(ms));
  }

  LifelineName fresh_name() {
    for (;;) {
      LifelineName name("P" + std::to_string(fresh_counter_++));
      if (std::find(cfg_.lifeline_pool.begin(), cfg_.lifeline_pool.end(), name) ==
          cfg_.lifeline_pool.end()) {
        return name;
      }
    }
  }

  std::vector<Fragment> children(int depth, std::vector<LifelineName>& scope, std::size_t min,
                                 bool body_scope) {
    auto count = uniform(min, static_cast<std::size_t>(std::max<int>(cfg_.max_children, min)));
    std::vector<Fragment> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(fragment(depth, scope, body_scope));
    return out;
  }

  MessageSet random_alphabet(const Fragment& body, const std::vector<LifelineName>& scope) {
    MessageSet out;
    for (const auto& m : message_alphabet(body)) {
      if (coin()) out.insert(m);
    }
    if (coin(0.2)) out.insert(message(scope));
    return out;
  }

  // `body_scope`: the result is a whole combined-fragment operand, so its
  // namespace changes are discarded by the enclosing fragment.
  Fragment fragment(int depth, std::vector<LifelineName>& scope, bool body_scope) {
    if (depth <= 1) {
      return coin(0.85) ? make_basic(scope) : skip();
    }
    static constexpr std::array<std::pair<Kind, int>, 9> weights{{
        {Kind::Basic, 3},
        {Kind::Skip, 1},
        {Kind::Seq, 2},
        {Kind::Alt, 2},
        {Kind::Par, 2},
        {Kind::Loop, 1},
        {Kind::Consider, 1},
        {Kind::Ignore, 1},
        {Kind::Scoped, 1},
    }};
    int total = 0;
    for (const auto& [kind, w] : weights) total += w;
    int pick = static_cast<int>(uniform(0, static_cast<std::size_t>(total - 1)));
    Kind kind = Kind::Basic;
    for (const auto& [k, w] : weights) {
      if (pick < w) {
        kind = k;
        break;
      }
      pick -= w;
    }

    const int sub = depth - 1;
    switch (kind) {
      case Kind::Basic:
        return make_basic(scope);
      case Kind::Skip:
        return skip();
      case Kind::Seq:
        return weakseq(children(sub, scope, 2, false));
      case Kind::Alt:
        return alt(children(sub, scope, 1, true));
      case Kind::Par:
        return par(children(sub, scope, 1, true));
      case Kind::Loop:
        return loop(fragment(sub, scope, true));
      case Kind::Consider: {
        auto body = fragment(sub, scope, true);
        auto ms = random_alphabet(body, scope);
        return consider(std::move(ms), std::move(body));
      }
      case Kind::Ignore: {
        auto body = fragment(sub, scope, true);
        auto ms = random_alphabet(body, scope);
        return ignore(std::move(ms), std::move(body));
      }
      case Kind::Scoped: {
        auto name = fresh_name();
        std::vector<Fragment> seq;
        seq.push_back(create(name));
        scope.push_back(name);
        auto inner = children(sub, scope, 1, false);
        scope.pop_back();
        for (auto& f : inner) seq.push_back(std::move(f));
        if (!body_scope || coin()) seq.push_back(destroy(name));
        return weakseq(std::move(seq));
      }
    }
    return skip();
  }

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
  std::size_t fresh_counter_{0};
};

inline Fragment generate_fragment(const GeneratorConfig& cfg) {
  return FragmentGenerator(cfg).next();
}

}  // namespace seqsem::oracle
