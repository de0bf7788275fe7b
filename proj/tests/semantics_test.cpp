#include <gtest/gtest.h>

#include "test_support.hpp"

namespace seqsem {
namespace {

using namespace seqsem::testing;

// ---------------------------------------------------------------------------
// weak

TEST(Weak, FourMessageExampleHasThreeTraces) {
  EXPECT_EQ(weak(four_message_sequence()), four_message_traces());
}

TEST(Weak, EmptySequenceIsTheEmptyTrace) { EXPECT_EQ(weak({}), TraceSet{Trace{}}); }

TEST(Weak, SingleMessage) { EXPECT_EQ(weak({m1}), TraceSet{Trace{m1}}); }

TEST(Weak, TwoConversationsMatchOracle) {
  auto expected = oracle::oracle_weak(two_conversations());
  ASSERT_EQ(expected.size(), oracle::binomial(4, 2));
  EXPECT_EQ(weak(two_conversations()), expected);
}

TEST(Weak, LaterIndependentMessageMayLead) {
  // m1 and m2 are ordered; m3 is independent of both and may come first.
  auto ts = weak({m1, m2, m3});
  EXPECT_TRUE(ts.contains(Trace{m3, m1, m2}));
  EXPECT_EQ(ts, oracle::oracle_weak({m1, m2, m3}));
}

TEST(Weak, RepeatedMessagesKeepIterationOrder) {
  // Unrolled twice: every copy of m1 precedes the matching m2.
  std::vector<Message> seq{m1, m2, m1, m2};
  EXPECT_EQ(weak(seq), TraceSet{seq});
}

TEST(Weak, SelfMessagesOrderTheirLifeline) {
  auto a_self = msg("A", "tick", "A");
  EXPECT_EQ(weak({m1, a_self}), (TraceSet{Trace{m1, a_self}}));
  auto c_self = msg("C", "tick", "C");
  EXPECT_EQ(weak({m1, c_self}).size(), 2u);
}

TEST(Weak, OverflowIsDiagnosed) {
  EXPECT_THROW(weak(two_conversations(), 5), TraceSetOverflow);
  EXPECT_NO_THROW(weak(two_conversations(), 6));
}

TEST(Weak, TracesArePermutationsPreservingSharedOrder) {
  oracle::FragmentGenerator gen({.seed = 3});
  for (int i = 0; i < 200; ++i) {
    auto ms = gen.next_messages(gen.uniform(0, 7));
    auto sorted_ms = ms;
    std::sort(sorted_ms.begin(), sorted_ms.end());
    for (const auto& t : weak(ms)) {
      auto sorted_t = t;
      std::sort(sorted_t.begin(), sorted_t.end());
      ASSERT_EQ(sorted_t, sorted_ms);
      // The k-th occurrence of each message in t is the k-th in ms; check
      // every sharing pair keeps its order under that matching.
      std::vector<std::size_t> pos(ms.size());
      std::vector<bool> taken(t.size(), false);
      for (std::size_t i2 = 0; i2 < ms.size(); ++i2) {
        for (std::size_t p = 0; p < t.size(); ++p) {
          if (!taken[p] && t[p] == ms[i2]) {
            taken[p] = true;
            pos[i2] = p;
            break;
          }
        }
      }
      for (std::size_t a = 0; a < ms.size(); ++a) {
        for (std::size_t b = a + 1; b < ms.size(); ++b) {
          if (shares_lifeline(ms[a], ms[b])) {
            ASSERT_LT(pos[a], pos[b]);
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// weak_over_set, concat_sets, kleene_bounded

TEST(WeakOverSet, Examples) {
  EXPECT_EQ(weak_over_set({Trace{}}), TraceSet{Trace{}});
  auto a = msg("A", "a", "B");
  auto c = msg("C", "c", "D");
  auto expected = oracle::oracle_weak({a, c});
  ASSERT_EQ(expected.size(), 2u);
  EXPECT_EQ(weak_over_set({Trace{a, c}}), expected);
  EXPECT_EQ(weak_over_set({Trace(four_message_sequence())}), four_message_traces());
}

TEST(WeakOverSet, IsIdempotent) {
  auto once = weak_over_set({Trace(two_conversations())});
  EXPECT_EQ(weak_over_set(once), once);
}

TEST(ConcatSets, Examples) {
  auto a = msg("A", "a", "B"), b = msg("A", "b", "B"), c = msg("A", "c", "B");
  TraceSet v{{b}, {c}};
  EXPECT_EQ(concat_sets({Trace{}}, v), v);
  EXPECT_EQ(concat_sets({{a}}, v), (TraceSet{{a, b}, {a, c}}));
  EXPECT_EQ(concat_sets({{a}, {b}}, {{a}}), (TraceSet{{a, a}, {b, a}}));
  EXPECT_TRUE(concat_sets({}, v).empty());
  EXPECT_THROW(concat_sets({{a}, {b}}, v, 3), TraceSetOverflow);
}

TEST(KleeneBounded, Examples) {
  auto a = msg("A", "a", "B");
  EXPECT_EQ(kleene_bounded({{a}, {m1}}, LoopBound{0}), TraceSet{Trace{}});
  EXPECT_EQ(kleene_bounded({{a}}, LoopBound{3}), (TraceSet{{}, {a}, {a, a}, {a, a, a}}));
}

TEST(KleeneBounded, TwoConversationsUnrolledTwice) {
  // Oracle: the loop's traces are the linear extensions of zero, one and two
  // copies of the body; 1 + C(4,2) + C(8,4).
  auto body = two_conversations();
  auto twice = body;
  twice.insert(twice.end(), body.begin(), body.end());
  TraceSet expected{Trace{}};
  auto one = oracle::oracle_weak(body);
  auto two = oracle::oracle_weak(twice);
  ASSERT_EQ(one.size(), 6u);
  ASSERT_EQ(two.size(), 70u);
  expected.insert(one.begin(), one.end());
  expected.insert(two.begin(), two.end());
  ASSERT_EQ(expected.size(), 77u);

  auto closure = kleene_bounded(weak(body), LoopBound{2});
  EXPECT_EQ(closure.size(), 1u + 6u + 36u);
  EXPECT_EQ(weak_over_set(closure), expected);
}

TEST(KleeneBounded, MonotoneInBound) {
  oracle::FragmentGenerator gen({.seed = 5});
  for (int i = 0; i < 50; ++i) {
    TraceSet u;
    for (std::size_t n = gen.uniform(0, 3); n > 0; --n) u.insert(gen.next_messages(gen.uniform(0, 2)));
    for (std::size_t k = 0; k < 3; ++k) {
      auto small = kleene_bounded(u, LoopBound{k});
      auto large = kleene_bounded(u, LoopBound{k + 1});
      EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
  }
}

// ---------------------------------------------------------------------------
// interleaving

TEST(InterleaveTraces, EmptySide) {
  auto a = msg("A", "a", "B");
  EXPECT_EQ(interleave_traces({}, {a}), TraceSet{{a}});
  EXPECT_EQ(interleave_traces({a}, {}), TraceSet{{a}});
  EXPECT_EQ(interleave_traces({}, {}), TraceSet{Trace{}});
}

TEST(InterleaveTraces, Invitations) {
  EXPECT_EQ(interleave_traces({invite_x, accept_x}, {invite_y, accept_y}), invitation_traces());
}

TEST(InterleaveTraces, ThreeByTwoDistinct) {
  Trace x{msg("A", "a", "B"), msg("A", "b", "B"), msg("A", "c", "B")};
  Trace y{msg("C", "d", "D"), msg("C", "e", "D")};
  auto expected = oracle::oracle_interleave(x, y);
  ASSERT_EQ(expected.size(), 10u);
  EXPECT_EQ(interleave_traces(x, y), expected);
}

TEST(InterleaveTraces, DuplicatesCollapse) {
  auto a = msg("A", "a", "B");
  EXPECT_EQ(interleave_traces({a}, {a}), (TraceSet{{a, a}}));
}

TEST(InterleaveTraces, CommutativeAndContainsBothOperands) {
  oracle::FragmentGenerator gen({.seed = 9});
  for (int i = 0; i < 200; ++i) {
    auto x = gen.next_messages(gen.uniform(0, 4));
    auto y = gen.next_messages(gen.uniform(0, 4));
    auto xy = interleave_traces(x, y);
    EXPECT_EQ(xy, interleave_traces(y, x));
    for (const auto& t : xy) {
      ASSERT_EQ(t.size(), x.size() + y.size());
      // Greedy matching of x as a subsequence always succeeds for some
      // choice; check both are subsequences.
      auto is_subsequence = [&](const Trace& sub) {
        std::size_t j = 0;
        for (const auto& m : t) {
          if (j < sub.size() && m == sub[j]) ++j;
        }
        return j == sub.size();
      };
      ASSERT_TRUE(is_subsequence(x));
      ASSERT_TRUE(is_subsequence(y));
    }
  }
}

TEST(InterleaveSets, Examples) {
  auto a = msg("A", "a", "B"), b = msg("A", "b", "B"), c = msg("C", "c", "D");
  TraceSet v{{a}, {b, c}};
  EXPECT_EQ(interleave_sets({Trace{}}, v), v);
  EXPECT_EQ(interleave_sets({{a}, {b}}, {{c}}), (TraceSet{{a, c}, {c, a}, {b, c}, {c, b}}));
  EXPECT_EQ(interleave_sets({{invite_x, accept_x}}, {{invite_y, accept_y}}), invitation_traces());
  EXPECT_TRUE(interleave_sets({}, v).empty());
}

// ---------------------------------------------------------------------------
// filter

TEST(Filter, Examples) {
  auto a = msg("A", "a", "B"), b = msg("A", "b", "B");
  EXPECT_EQ(filter({}, {a, b}), Trace{});
  EXPECT_EQ(filter({a, b}, {a, b}), (Trace{a, b}));
  // Independent scan: keep positions 0 and 2.
  Trace t{m1, m3, m1};
  Trace expected;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == m1) expected.push_back(t[i]);
  }
  EXPECT_EQ(filter({m1}, t), expected);
  EXPECT_EQ(expected, (Trace{m1, m1}));
}

TEST(Filter, Idempotent) {
  oracle::FragmentGenerator gen({.seed = 13});
  for (int i = 0; i < 200; ++i) {
    auto t = gen.next_messages(gen.uniform(0, 6));
    MessageSet keep;
    for (std::size_t n = gen.uniform(0, 4); n > 0; --n) keep.insert(gen.next_message());
    EXPECT_EQ(filter(keep, filter(keep, t)), filter(keep, t));
  }
}

// ---------------------------------------------------------------------------
// namespace_of

TEST(NamespaceOf, CreateAndDestroy) {
  EXPECT_EQ(namespace_of(create("C"), names({"A", "B"})), names({"A", "B", "C"}));
  EXPECT_EQ(namespace_of(destroy("C"), names({"A", "B", "C"})), names({"A", "B"}));
}

TEST(NamespaceOf, CombinedFragmentsAreScopes) {
  auto ab = names({"A", "B"});
  auto body = weakseq({create("P"), basic({msg("A", "q", "P")})});
  EXPECT_EQ(namespace_of(body, ab), names({"A", "B", "P"}));
  EXPECT_EQ(namespace_of(loop(body), ab), ab);
  EXPECT_EQ(namespace_of(alt({body, skip()}), ab), ab);
  EXPECT_EQ(namespace_of(par({body}), ab), ab);
  EXPECT_EQ(namespace_of(consider({}, body), ab), ab);
  EXPECT_EQ(namespace_of(ignore({}, body), ab), ab);
  EXPECT_EQ(namespace_of(basic({m1}), ab), ab);
}

// ---------------------------------------------------------------------------
// denote

TEST(Denote, BasicFourMessages) {
  auto r = denote(basic(four_message_sequence()), names({"A", "B", "C", "D"}));
  EXPECT_EQ(r.traces, four_message_traces());
}

TEST(Denote, SkipCreateDestroyProduceTheEmptyTrace) {
  auto ab = names({"A", "B"});
  EXPECT_EQ(denote(skip(), ab).traces, TraceSet{Trace{}});
  auto c = denote(create("P"), ab);
  EXPECT_EQ(c.traces, TraceSet{Trace{}});
  EXPECT_EQ(c.namespace_out, names({"A", "B", "P"}));
  auto d = denote(destroy("B"), ab);
  EXPECT_EQ(d.namespace_out, names({"A"}));
}

TEST(Denote, AltChoiceThenMessage) {
  auto m_c = msg("A", "m3", "C");
  auto f = weakseq({alt({basic({m1}), basic({m2})}), basic({m_c})});
  EXPECT_EQ(denote(f, names({"A", "B", "C"})).traces, (TraceSet{{m1, m_c}, {m2, m_c}}));
}

TEST(Denote, ParInvitations) {
  auto f = par({basic({invite_x, accept_x}), basic({invite_y, accept_y})});
  EXPECT_EQ(denote(f, names({"c", "x", "y"})).traces, invitation_traces());
}

TEST(Denote, LoopTwoConversations) {
  auto f = loop(basic(two_conversations()));
  auto ns = names({"A", "B", "C", "D"});
  EXPECT_EQ(denote(f, ns, {LoopBound{2}}).traces.size(), 77u);
  EXPECT_EQ(denote(f, ns, {LoopBound{0}}).traces, TraceSet{Trace{}});
  EXPECT_EQ(denote(f, ns, {LoopBound{1}}).traces.size(), 7u);
}

TEST(Denote, ScopedLifelineInsideLoop) {
  auto sp = msg("S", "query", "P");
  auto ps = msg("P", "answer", "S");
  auto body = weakseq({create("P"), basic({sp, ps}), destroy("P")});
  auto r = denote(loop(body), names({"S"}), {LoopBound{2}});
  EXPECT_EQ(r.traces, (TraceSet{{}, {sp, ps}, {sp, ps, sp, ps}}));
  EXPECT_EQ(r.namespace_out, names({"S"}));
}

TEST(Denote, LoopLocalLifelineUsedAfterwards) {
  auto body = weakseq({create("P"), basic({msg("S", "q", "P")})});
  auto f = weakseq({loop(body), basic({msg("S", "query", "P")}, {7, 1})});
  try {
    denote(f, names({"S"}));
    FAIL() << "expected UnknownLifeline";
  } catch (const UnknownLifeline& e) {
    EXPECT_EQ(e.name(), LifelineName("P"));
    EXPECT_EQ(e.location(), (SourceLocation{7, 1}));
  }
}

TEST(Denote, NamespaceErrors) {
  auto ab = names({"A", "B"});
  EXPECT_THROW(denote(basic({msg("A", "x", "Z")}), ab), UnknownLifeline);
  EXPECT_THROW(denote(create("A"), ab), DuplicateCreate);
  EXPECT_THROW(denote(destroy("Q"), ab), DestroyAbsent);
  EXPECT_THROW(denote(weakseq({destroy("A"), basic({m1})}), ab), UnknownLifeline);
  // Branches and operands start from the enclosing namespace.
  EXPECT_NO_THROW(denote(alt({create("P"), create("P")}), ab));
  EXPECT_THROW(denote(weakseq({create("P"), create("P")}), ab), DuplicateCreate);
}

TEST(Denote, ConsiderAndIgnore) {
  auto ns = names({"A", "B", "C", "D"});
  auto body = basic({m1, m3});
  EXPECT_EQ(denote(consider({m1}, body), ns).traces, TraceSet{{m1}});
  EXPECT_EQ(denote(ignore({m1}, body), ns).traces, TraceSet{{m3}});
  EXPECT_EQ(denote(consider({}, body), ns).traces, TraceSet{Trace{}});
  EXPECT_EQ(denote(ignore({}, body), ns).traces, denote(body, ns).traces);
}

TEST(Denote, OverflowCarriesLocation) {
  auto f = weakseq({skip({1, 1}), loop(basic(two_conversations()), {4, 3})}, {1, 1});
  try {
    denote(f, names({"A", "B", "C", "D"}), {LoopBound{2}, 50});
    FAIL() << "expected TraceSetOverflow";
  } catch (const TraceSetOverflow& e) {
    EXPECT_EQ(e.limit(), 50u);
    EXPECT_EQ(e.location(), (SourceLocation{4, 3}));
  }
}

// ---------------------------------------------------------------------------
// Properties over generated fragments

class GeneratedFragments : public ::testing::Test {
 protected:
  static constexpr std::size_t kSamples = 200;
  static constexpr EvalLimits kLimits{LoopBound{2}, 20'000};

  // Runs `check` on generated fragments whose evaluation stays within limits.
  template <typename F>
  void for_each_fragment(std::uint64_t seed, int depth, F check) {
    oracle::FragmentGenerator gen({.max_depth = depth, .seed = seed});
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < kSamples; ++i) {
      auto f = gen.next();
      try {
        check(f, gen.initial_namespace());
        ++evaluated;
      } catch (const TraceSetOverflow&) {
      }
    }
    EXPECT_GT(evaluated, kSamples / 2);
  }
};

TEST_F(GeneratedFragments, AltIsIdempotent) {
  for_each_fragment(21, 3, [](const Fragment& f, const Namespace& ns) {
    auto d = denote(f, ns, kLimits).traces;
    auto u = message_alphabet(f);
    EXPECT_EQ(denote(alt({f, f}), ns, kLimits, u).traces, d);
  });
}

TEST_F(GeneratedFragments, WeakSeqIsAssociative) {
  oracle::FragmentGenerator other({.max_depth = 2, .seed = 99});
  for_each_fragment(22, 2, [&](const Fragment& a, const Namespace& ns) {
    auto b = other.next();
    auto c = other.next();
    MessageSet u = message_alphabet(weakseq({a, b, c}));
    auto left = denote(weakseq({weakseq({a, b}), c}), ns, kLimits, u);
    auto right = denote(weakseq({a, weakseq({b, c})}), ns, kLimits, u);
    EXPECT_EQ(left.traces, right.traces);
    EXPECT_EQ(left.namespace_out, right.namespace_out);
  });
}

TEST_F(GeneratedFragments, CombinedFragmentsRestoreNamespace) {
  for_each_fragment(23, 3, [](const Fragment& f, const Namespace& ns) {
    auto r = denote(loop(f), ns, kLimits);
    EXPECT_EQ(r.namespace_out, ns);
    EXPECT_EQ(denote(alt({f, skip()}), ns, kLimits).namespace_out, ns);
    EXPECT_EQ(denote(par({f, skip()}), ns, kLimits).namespace_out, ns);
    EXPECT_EQ(denote(f, ns, kLimits).namespace_out, namespace_of(f, ns));
  });
}

TEST_F(GeneratedFragments, ConsiderAlphabetAndEmptyIgnoreAreIdentities) {
  for_each_fragment(24, 3, [](const Fragment& f, const Namespace& ns) {
    auto u = message_alphabet(f);
    auto d = denote(f, ns, kLimits, u).traces;
    EXPECT_EQ(denote(consider(u, f), ns, kLimits, u).traces, d);
    EXPECT_EQ(denote(ignore({}, f), ns, kLimits, u).traces, d);
  });
}

TEST_F(GeneratedFragments, FilteringIsIdempotent) {
  oracle::FragmentGenerator pick({.seed = 77});
  for_each_fragment(25, 3, [&](const Fragment& f, const Namespace& ns) {
    MessageSet keep;
    for (std::size_t n = pick.uniform(0, 3); n > 0; --n) keep.insert(pick.next_message());
    auto u = message_alphabet(f);
    EXPECT_EQ(denote(consider(keep, consider(keep, f)), ns, kLimits, u).traces,
              denote(consider(keep, f), ns, kLimits, u).traces);
  });
}

TEST_F(GeneratedFragments, LoopBoundIsMonotone) {
  for_each_fragment(26, 2, [](const Fragment& f, const Namespace& ns) {
    TraceSet previous;
    for (std::size_t k = 0; k <= 3; ++k) {
      auto d = denote(loop(f), ns, {LoopBound{k}, kLimits.max_traces}).traces;
      EXPECT_TRUE(std::includes(d.begin(), d.end(), previous.begin(), previous.end()));
      previous = std::move(d);
    }
  });
}

// ---------------------------------------------------------------------------
// Loop unrolling

TEST(LoopUnrolling, TwoConversationsMatchUnrolledAlternatives) {
  auto body = basic(two_conversations());
  auto ns = names({"A", "B", "C", "D"});
  for (std::size_t k = 0; k <= 3; ++k) {
    auto cmp = compare_loop_unrolling(body, ns, LoopBound{k});
    EXPECT_TRUE(cmp.equal()) << "k = " << k;
    EXPECT_TRUE(cmp.symmetric_difference().empty());
  }
}

TEST(LoopUnrolling, UnrolledAlternativesShape) {
  auto b = basic({m1});
  EXPECT_EQ(unrolled_alternatives(b, LoopBound{0}), alt({skip()}));
  EXPECT_EQ(unrolled_alternatives(b, LoopBound{2}), alt({skip(), b, weakseq({b, b})}));
}

TEST(LoopUnrolling, ScopedBody) {
  auto body = weakseq({create("P"), basic({msg("S", "q", "P"), msg("P", "r", "S")}),
                       destroy("P")});
  EXPECT_TRUE(loop_unrolling_holds(body, names({"S"}), LoopBound{3}));
}

}  // namespace
}  // namespace seqsem
