#pragma once

// Abstract syntax of asynchronous sequence diagrams and the value types
// (messages, traces, trace sets, namespaces) the semantics is defined over.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace seqsem {

struct SourceLocation {
  int line{0};
  int column{0};

  bool known() const { return line > 0; }

  friend auto operator<=>(const SourceLocation&, const SourceLocation&) = default;
};

inline std::string to_string(const SourceLocation& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

// A lifeline name: [A-Za-z][A-Za-z0-9_]*, compared case-sensitively.
class LifelineName {
 public:
  LifelineName() = default;
  LifelineName(std::string name) : name_(std::move(name)) {}
  LifelineName(const char* name) : name_(name) {}

  const std::string& str() const { return name_; }

  static bool is_valid(std::string_view text) {
    if (text.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) return false;
    for (char c : text) {
      if (!alpha(c) && !digit(c) && c != '_') return false;
    }
    return true;
  }

  friend auto operator<=>(const LifelineName&, const LifelineName&) = default;

 private:
  std::string name_;
};

inline bool is_valid_label(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

// One atomic communication event. Sender and receiver may coincide.
struct Message {
  LifelineName sender;
  std::string label;
  LifelineName receiver;

  friend auto operator<=>(const Message&, const Message&) = default;
};

using Trace = std::vector<Message>;
using TraceSet = std::set<Trace>;
using MessageSet = std::set<Message>;
using Namespace = std::set<LifelineName>;

inline std::set<LifelineName> peers(const Message& m) { return {m.sender, m.receiver}; }

inline bool shares_lifeline(const Message& x, const Message& y) {
  return x.sender == y.sender || x.sender == y.receiver || x.receiver == y.sender ||
         x.receiver == y.receiver;
}

// Owning pointer with value semantics, used to break the recursion in Fragment.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T& operator*() { return *ptr_; }
  T* operator->() { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

struct Fragment;

struct Basic {
  std::vector<Message> messages;
  // Parallel to `messages`; may be empty for programmatically built nodes.
  std::vector<SourceLocation> locations;

  SourceLocation location_of(std::size_t i) const {
    return i < locations.size() ? locations[i] : SourceLocation{};
  }
};
struct WeakSeq {
  std::vector<Fragment> children;
};
struct Alt {
  std::vector<Fragment> branches;
};
struct Par {
  std::vector<Fragment> operands;
};
struct Loop {
  Box<Fragment> body;
};
struct Create {
  LifelineName name;
};
struct Destroy {
  LifelineName name;
};
struct Skip {};
struct Consider {
  MessageSet alphabet;
  Box<Fragment> body;
};
struct Ignore {
  MessageSet alphabet;
  Box<Fragment> body;
};

using FragmentNode =
    std::variant<Basic, WeakSeq, Alt, Par, Loop, Create, Destroy, Skip, Consider, Ignore>;

// An interaction fragment. Equality is structural and ignores source locations.
struct Fragment {
  FragmentNode node;
  SourceLocation location;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(node);
  }
};

bool operator==(const Fragment& a, const Fragment& b);

inline bool operator==(const Basic& a, const Basic& b) { return a.messages == b.messages; }
inline bool operator==(const WeakSeq& a, const WeakSeq& b) { return a.children == b.children; }
inline bool operator==(const Alt& a, const Alt& b) { return a.branches == b.branches; }
inline bool operator==(const Par& a, const Par& b) { return a.operands == b.operands; }
inline bool operator==(const Loop& a, const Loop& b) { return *a.body == *b.body; }
inline bool operator==(const Create& a, const Create& b) { return a.name == b.name; }
inline bool operator==(const Destroy& a, const Destroy& b) { return a.name == b.name; }
inline bool operator==(const Skip&, const Skip&) { return true; }
inline bool operator==(const Consider& a, const Consider& b) {
  return a.alphabet == b.alphabet && *a.body == *b.body;
}
inline bool operator==(const Ignore& a, const Ignore& b) {
  return a.alphabet == b.alphabet && *a.body == *b.body;
}

inline bool operator==(const Fragment& a, const Fragment& b) { return a.node == b.node; }

inline const char* variant_name(const Fragment& f) {
  static constexpr const char* names[] = {"Basic",  "WeakSeq", "Alt",  "Par",      "Loop",
                                          "Create", "Destroy", "Skip", "Consider", "Ignore"};
  return names[f.node.index()];
}

// Node constructors.

inline Message msg(LifelineName sender, std::string label, LifelineName receiver) {
  return Message{std::move(sender), std::move(label), std::move(receiver)};
}

inline Fragment basic(std::vector<Message> messages, SourceLocation loc = {}) {
  return Fragment{Basic{std::move(messages), {}}, loc};
}
inline Fragment weakseq(std::vector<Fragment> children, SourceLocation loc = {}) {
  return Fragment{WeakSeq{std::move(children)}, loc};
}
inline Fragment alt(std::vector<Fragment> branches, SourceLocation loc = {}) {
  return Fragment{Alt{std::move(branches)}, loc};
}
inline Fragment par(std::vector<Fragment> operands, SourceLocation loc = {}) {
  return Fragment{Par{std::move(operands)}, loc};
}
inline Fragment loop(Fragment body, SourceLocation loc = {}) {
  return Fragment{Loop{Box<Fragment>(std::move(body))}, loc};
}
inline Fragment create(LifelineName name, SourceLocation loc = {}) {
  return Fragment{Create{std::move(name)}, loc};
}
inline Fragment destroy(LifelineName name, SourceLocation loc = {}) {
  return Fragment{Destroy{std::move(name)}, loc};
}
inline Fragment skip(SourceLocation loc = {}) { return Fragment{Skip{}, loc}; }
inline Fragment consider(MessageSet alphabet, Fragment body, SourceLocation loc = {}) {
  return Fragment{Consider{std::move(alphabet), Box<Fragment>(std::move(body))}, loc};
}
inline Fragment ignore(MessageSet alphabet, Fragment body, SourceLocation loc = {}) {
  return Fragment{Ignore{std::move(alphabet), Box<Fragment>(std::move(body))}, loc};
}

template <typename... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <typename... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

namespace detail {
inline void collect_alphabet(const Fragment& f, MessageSet& out) {
  std::visit(overloaded{
                 [&](const Basic& b) { out.insert(b.messages.begin(), b.messages.end()); },
                 [&](const WeakSeq& w) {
                   for (const auto& c : w.children) collect_alphabet(c, out);
                 },
                 [&](const Alt& a) {
                   for (const auto& c : a.branches) collect_alphabet(c, out);
                 },
                 [&](const Par& p) {
                   for (const auto& c : p.operands) collect_alphabet(c, out);
                 },
                 [&](const Loop& l) { collect_alphabet(*l.body, out); },
                 [&](const Consider& c) { collect_alphabet(*c.body, out); },
                 [&](const Ignore& i) { collect_alphabet(*i.body, out); },
                 [](const auto&) {},
             },
             f.node);
}
}  // namespace detail

// Every message occurring in a Basic fragment anywhere inside `f`.
inline MessageSet message_alphabet(const Fragment& f) {
  MessageSet out;
  detail::collect_alphabet(f, out);
  return out;
}

// Flattens nested WeakSeq nodes, merges adjacent Basic children and unwraps
// single-child sequences: the normal form the parser produces.
inline Fragment canonicalize(const Fragment& f) {
  auto seq = [](std::vector<Fragment> items, SourceLocation loc) {
    std::vector<Fragment> flat;
    for (auto& item : items) {
      if (item.is<WeakSeq>()) {
        for (const auto& c : item.as<WeakSeq>().children) flat.push_back(c);
      } else {
        flat.push_back(std::move(item));
      }
    }
    std::vector<Fragment> merged;
    for (auto& item : flat) {
      if (item.is<Basic>() && !merged.empty() && merged.back().is<Basic>()) {
        auto& dst = std::get<Basic>(merged.back().node);
        const auto& src = item.as<Basic>();
        if (dst.locations.size() == dst.messages.size() &&
            src.locations.size() == src.messages.size()) {
          dst.locations.insert(dst.locations.end(), src.locations.begin(), src.locations.end());
        } else {
          dst.locations.clear();
        }
        dst.messages.insert(dst.messages.end(), src.messages.begin(), src.messages.end());
      } else {
        merged.push_back(std::move(item));
      }
    }
    if (merged.size() == 1) return std::move(merged.front());
    if (merged.empty()) return skip(loc);
    return weakseq(std::move(merged), loc);
  };
  auto each = [](const std::vector<Fragment>& items) {
    std::vector<Fragment> out;
    out.reserve(items.size());
    for (const auto& c : items) out.push_back(canonicalize(c));
    return out;
  };
  return std::visit(
      overloaded{
          [&](const WeakSeq& w) { return seq(each(w.children), f.location); },
          [&](const Alt& a) { return alt(each(a.branches), f.location); },
          [&](const Par& p) { return par(each(p.operands), f.location); },
          [&](const Loop& l) { return loop(canonicalize(*l.body), f.location); },
          [&](const Consider& c) { return consider(c.alphabet, canonicalize(*c.body), f.location); },
          [&](const Ignore& i) { return ignore(i.alphabet, canonicalize(*i.body), f.location); },
          [&](const auto&) { return f; },
      },
      f.node);
}

}  // namespace seqsem
