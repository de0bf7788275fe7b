#pragma once

// Textual diagram language.
//
//   diagram   := (header | stmt)*
//   header    := "lifeline" NAME
//   stmt      := message | "create" NAME | "destroy" NAME | "skip" | block
//   message   := NAME "->" NAME ":" LABEL
//   block     := ("loop" | "par" | "alt") "{" stmts ("--" stmts)* "}"
//              | ("consider" | "ignore") msgset "{" stmts "}"
//   msgset    := "[" (message ("," message)*)? "]"
//
// `#` starts a comment running to the end of the line. Line breaks carry no
// meaning beyond separating tokens. `--` is only legal in alt and par blocks.

#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"
#include "errors.hpp"

namespace seqsem {

struct ParsedDiagram {
  Namespace initial_namespace;
  Fragment root;
};

namespace detail {

enum class Tok { Word, Arrow, Colon, LBrace, RBrace, Separator, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

inline const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Word: return "identifier";
    case Tok::Arrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Separator: return "'--'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "token";
}

inline std::string describe(const Token& t) {
  if (t.kind == Tok::Word) return "'" + t.text + "'";
  return describe(t.kind);
}

inline bool is_word_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
         c == '.';
}

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    SourceLocation loc{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (is_word_char(c)) {
      std::size_t start = i;
      while (i < src.size() && is_word_char(src[i])) advance(1);
      out.push_back({Tok::Word, std::string(src.substr(start, i - start)), loc});
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      advance(2);
      out.push_back({Tok::Arrow, "->", loc});
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      advance(2);
      out.push_back({Tok::Separator, "--", loc});
    } else {
      static constexpr std::array<std::pair<char, Tok>, 6> punct{{
          {':', Tok::Colon},
          {'{', Tok::LBrace},
          {'}', Tok::RBrace},
          {'[', Tok::LBracket},
          {']', Tok::RBracket},
          {',', Tok::Comma},
      }};
      std::optional<Tok> kind;
      for (const auto& [ch, k] : punct) {
        if (ch == c) kind = k;
      }
      if (!kind) {
        auto byte = static_cast<unsigned char>(c);
        std::string shown = byte >= 0x20 && byte < 0x7f ? std::string(1, c) : "byte " + std::to_string(byte);
        throw SyntaxError("unexpected character '" + shown + "'", loc);
      }
      advance(1);
      out.push_back({*kind, std::string(1, c), loc});
    }
  }
  out.push_back({Tok::End, "", SourceLocation{line, col}});
  return out;
}

inline constexpr std::array<std::string_view, 9> kKeywords{
    "lifeline", "create", "destroy", "skip", "loop", "par", "alt", "consider", "ignore"};

inline bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  ParsedDiagram parse_diagram() {
    ParsedDiagram out;
    Sequence top;
    while (peek().kind != Tok::End) {
      if (peek_word("lifeline")) {
        take();
        auto [name, loc] = expect_name();
        if (!out.initial_namespace.insert(name).second) throw DuplicateLifelineDecl(name, loc);
      } else if (peek().kind == Tok::RBrace || peek().kind == Tok::Separator) {
        throw error("statement or 'lifeline' declaration");
      } else {
        statement(top, 0);
      }
    }
    out.root = top.items.empty() ? skip(SourceLocation{1, 1}) : top.finish();
    return out;
  }

 private:
  static constexpr int kMaxNesting = 200;

  struct Sequence {
    std::vector<Fragment> items;

    void add_message(Message m, SourceLocation loc) {
      if (items.empty() || !items.back().is<Basic>()) {
        items.push_back(Fragment{Basic{}, loc});
      }
      auto& b = std::get<Basic>(items.back().node);
      b.messages.push_back(std::move(m));
      b.locations.push_back(loc);
    }

    Fragment finish() {
      if (items.size() == 1) return std::move(items.front());
      auto loc = items.front().location;
      return weakseq(std::move(items), loc);
    }
  };

  const Token& peek() const { return tokens_[pos_]; }
  bool peek_word(std::string_view w) const { return peek().kind == Tok::Word && peek().text == w; }
  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  SyntaxError error(const std::string& expected) const {
    return SyntaxError("expected " + expected + ", found " + describe(peek()), peek().loc);
  }

  Token expect(Tok kind) {
    if (peek().kind != kind) throw error(describe(kind));
    return take();
  }

  std::pair<LifelineName, SourceLocation> expect_name() {
    if (peek().kind != Tok::Word || !LifelineName::is_valid(peek().text) || is_keyword(peek().text)) {
      throw error("lifeline name");
    }
    auto t = take();
    return {LifelineName(t.text), t.loc};
  }

  std::string expect_label() {
    if (peek().kind != Tok::Word || !is_valid_label(peek().text)) throw error("message label");
    return take().text;
  }

  std::pair<Message, SourceLocation> message() {
    auto [sender, loc] = expect_name();
    expect(Tok::Arrow);
    auto receiver = expect_name().first;
    expect(Tok::Colon);
    auto label = expect_label();
    return {Message{std::move(sender), std::move(label), std::move(receiver)}, loc};
  }

  MessageSet message_set() {
    expect(Tok::LBracket);
    MessageSet out;
    if (peek().kind == Tok::RBracket) {
      take();
      return out;
    }
    for (;;) {
      out.insert(message().first);
      if (peek().kind == Tok::Comma) {
        take();
        continue;
      }
      expect(Tok::RBracket);
      return out;
    }
  }

  // Statements up to (not including) '}' or '--'.
  Fragment operand(const Token& block, int depth) {
    Sequence seq;
    while (peek().kind != Tok::RBrace && peek().kind != Tok::Separator) {
      if (peek().kind == Tok::End) throw error("'}'");
      if (peek_word("lifeline")) {
        throw SyntaxError("'lifeline' declarations are only allowed at top level", peek().loc);
      }
      statement(seq, depth);
    }
    if (seq.items.empty()) throw EmptyBlock(block.text, peek().loc);
    return seq.finish();
  }

  void statement(Sequence& seq, int depth) {
    const Token& t = peek();
    if (t.kind != Tok::Word) throw error("statement");
    if (t.text == "create" || t.text == "destroy") {
      auto kw = take();
      auto name = expect_name().first;
      seq.items.push_back(kw.text == "create" ? create(std::move(name), kw.loc)
                                              : destroy(std::move(name), kw.loc));
    } else if (t.text == "skip") {
      seq.items.push_back(skip(take().loc));
    } else if (t.text == "loop" || t.text == "alt" || t.text == "par") {
      seq.items.push_back(combined(depth + 1));
    } else if (t.text == "consider" || t.text == "ignore") {
      seq.items.push_back(filtered(depth + 1));
    } else if (is_keyword(t.text)) {
      throw error("statement");
    } else {
      auto [m, loc] = message();
      seq.add_message(std::move(m), loc);
    }
  }

  void check_depth(int depth, SourceLocation loc) const {
    if (depth > kMaxNesting) throw SyntaxError("blocks nested too deeply", loc);
  }

  Fragment combined(int depth) {
    auto kw = take();
    check_depth(depth, kw.loc);
    expect(Tok::LBrace);
    std::vector<Fragment> operands;
    operands.push_back(operand(kw, depth));
    while (peek().kind == Tok::Separator) {
      if (kw.text == "loop") {
        throw SyntaxError("'--' separators are only allowed in alt and par blocks", peek().loc);
      }
      take();
      operands.push_back(operand(kw, depth));
    }
    expect(Tok::RBrace);
    if (kw.text == "loop") return loop(std::move(operands.front()), kw.loc);
    if (kw.text == "alt") return alt(std::move(operands), kw.loc);
    return par(std::move(operands), kw.loc);
  }

  Fragment filtered(int depth) {
    auto kw = take();
    check_depth(depth, kw.loc);
    auto ms = message_set();
    expect(Tok::LBrace);
    auto body = operand(kw, depth);
    if (peek().kind == Tok::Separator) {
      throw SyntaxError("'--' separators are only allowed in alt and par blocks", peek().loc);
    }
    expect(Tok::RBrace);
    if (kw.text == "consider") return consider(std::move(ms), std::move(body), kw.loc);
    return ignore(std::move(ms), std::move(body), kw.loc);
  }

  std::vector<Token> tokens_;
  std::size_t pos_{0};
};

}  // namespace detail

inline std::string render_message(const Message& m) {
  return m.sender.str() + " -> " + m.receiver.str() + " : " + m.label;
}

inline std::string render_message_set(const MessageSet& ms) {
  std::string out = "[";
  bool first = true;
  for (const auto& m : ms) {
    if (!first) out += ", ";
    out += render_message(m);
    first = false;
  }
  return out + "]";
}

namespace detail {

inline void render_statements(const Fragment& f, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto block = [&](const std::string& head, const std::vector<const Fragment*>& operands) {
    os << pad << head << " {\n";
    for (std::size_t i = 0; i < operands.size(); ++i) {
      if (i > 0) os << pad << "--\n";
      render_statements(*operands[i], indent + 1, os);
    }
    os << pad << "}\n";
  };
  auto ptrs = [](const std::vector<Fragment>& v) {
    std::vector<const Fragment*> out;
    for (const auto& c : v) out.push_back(&c);
    return out;
  };
  std::visit(overloaded{
                 [&](const Basic& b) {
                   for (const auto& m : b.messages) os << pad << render_message(m) << "\n";
                 },
                 [&](const WeakSeq& w) {
                   for (const auto& c : w.children) render_statements(c, indent, os);
                 },
                 [&](const Alt& a) { block("alt", ptrs(a.branches)); },
                 [&](const Par& p) { block("par", ptrs(p.operands)); },
                 [&](const Loop& l) { block("loop", {&*l.body}); },
                 [&](const Create& c) { os << pad << "create " << c.name.str() << "\n"; },
                 [&](const Destroy& d) { os << pad << "destroy " << d.name.str() << "\n"; },
                 [&](const Skip&) { os << pad << "skip\n"; },
                 [&](const Consider& c) {
                   block("consider " + render_message_set(c.alphabet), {&*c.body});
                 },
                 [&](const Ignore& i) {
                   block("ignore " + render_message_set(i.alphabet), {&*i.body});
                 },
             },
             f.node);
}

inline void collect_names(const Fragment& f, Namespace& used, Namespace& created) {
  std::visit(overloaded{
                 [&](const Basic& b) {
                   for (const auto& m : b.messages) {
                     used.insert(m.sender);
                     used.insert(m.receiver);
                   }
                 },
                 [&](const WeakSeq& w) {
                   for (const auto& c : w.children) collect_names(c, used, created);
                 },
                 [&](const Alt& a) {
                   for (const auto& c : a.branches) collect_names(c, used, created);
                 },
                 [&](const Par& p) {
                   for (const auto& c : p.operands) collect_names(c, used, created);
                 },
                 [&](const Loop& l) { collect_names(*l.body, used, created); },
                 [&](const Create& c) { created.insert(c.name); },
                 [&](const Destroy& d) { used.insert(d.name); },
                 [](const Skip&) {},
                 [&](const Consider& c) { collect_names(*c.body, used, created); },
                 [&](const Ignore& i) { collect_names(*i.body, used, created); },
             },
             f.node);
}

}  // namespace detail

inline ParsedDiagram parse(std::string_view source) {
  return detail::Parser(source).parse_diagram();
}

inline std::string render_diagram(const ParsedDiagram& d) {
  std::ostringstream os;
  for (const auto& name : d.initial_namespace) os << "lifeline " << name.str() << "\n";
  detail::render_statements(d.root, 0, os);
  return os.str();
}

// Canonical text for `f`, preceded by a `lifeline` header for every name it
// uses without creating it.
inline std::string render_fragment(const Fragment& f) {
  Namespace used, created;
  detail::collect_names(f, used, created);
  std::ostringstream os;
  for (const auto& name : used) {
    if (!created.contains(name)) os << "lifeline " << name.str() << "\n";
  }
  detail::render_statements(f, 0, os);
  return os.str();
}

namespace detail {

inline void dump_node(const Fragment& f, int indent, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << variant_name(f) << " @"
     << to_string(f.location);
  std::visit(overloaded{
                 [&](const Basic& b) {
                   os << " (";
                   for (std::size_t i = 0; i < b.messages.size(); ++i) {
                     if (i > 0) os << ", ";
                     os << render_message(b.messages[i]);
                   }
                   os << ")\n";
                 },
                 [&](const WeakSeq& w) {
                   os << "\n";
                   for (const auto& c : w.children) dump_node(c, indent + 1, os);
                 },
                 [&](const Alt& a) {
                   os << "\n";
                   for (const auto& c : a.branches) dump_node(c, indent + 1, os);
                 },
                 [&](const Par& p) {
                   os << "\n";
                   for (const auto& c : p.operands) dump_node(c, indent + 1, os);
                 },
                 [&](const Loop& l) {
                   os << "\n";
                   dump_node(*l.body, indent + 1, os);
                 },
                 [&](const Create& c) { os << " " << c.name.str() << "\n"; },
                 [&](const Destroy& d) { os << " " << d.name.str() << "\n"; },
                 [&](const Skip&) { os << "\n"; },
                 [&](const Consider& c) {
                   os << " " << render_message_set(c.alphabet) << "\n";
                   dump_node(*c.body, indent + 1, os);
                 },
                 [&](const Ignore& i) {
                   os << " " << render_message_set(i.alphabet) << "\n";
                   dump_node(*i.body, indent + 1, os);
                 },
             },
             f.node);
}

}  // namespace detail

// Stable indented tree, one node per line.
inline std::string dump_ast(const ParsedDiagram& d) {
  std::ostringstream os;
  os << "Diagram lifelines [";
  bool first = true;
  for (const auto& n : d.initial_namespace) {
    if (!first) os << ", ";
    os << n.str();
    first = false;
  }
  os << "]\n";
  detail::dump_node(d.root, 1, os);
  return os.str();
}

}  // namespace seqsem
