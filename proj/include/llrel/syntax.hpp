#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "llrel/point.hpp"

namespace llrel {

struct ParseError : Error {
  int line, column;
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line), column(column) {}
};

enum class Tok { Ident, Nat, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line, column;
};

/// Tokenizer shared by the point, type, term and model-file grammars.
/// `#` starts a comment running to the end of the line.
inline std::vector<Token> tokenize(const std::string& s) {
  static const std::vector<std::string> multi = {"-o", "->", "=>", "<>"};
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Nat, s.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& m : multi)
      if (s.compare(i, m.size(), m) == 0) {
        out.push_back({Tok::Punct, m, l, cl});
        advance(m.size());
        matched = true;
        break;
      }
    if (matched) continue;
    if (std::string("()[]{},;:=*!&<>\\.|").find(c) == std::string::npos)
      throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    out.push_back({Tok::Punct, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  explicit TokenStream(const std::string& text) : toks_(tokenize(text)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is(const std::string& p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool is_word(const std::string& w) const { return peek().kind == Tok::Ident && peek().text == w; }
  bool accept(const std::string& p) {
    if (!is(p)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.column);
  }
  void expect(const std::string& p) {
    if (!accept(p)) fail("expected '" + p + "'");
  }
  std::string expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return next().text;
  }
  std::uint32_t expect_nat() {
    if (peek().kind != Tok::Nat) fail("expected number");
    return static_cast<std::uint32_t>(std::stoul(next().text));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Parses a point of the given object. With-points accept `inl p`, `inr p`
/// and the tagged-pair forms `(1,p)`, `(2,p)`; multiset entries may repeat.
inline Point parse_point(TokenStream& ts, const Object& o) {
  switch (o.kind()) {
    case ObjKind::Base: {
      auto t = ts.peek();
      std::string name = ts.expect_ident();
      int idx = o.element_index(name);
      if (idx < 0) throw ParseError("'" + name + "' is not an element of " + o.str(), t.line, t.column);
      return Point::atom(idx, name);
    }
    case ObjKind::Unit: ts.expect("*"); return Point::star();
    case ObjKind::Top: ts.fail("the object T has no points");
    case ObjKind::Tensor:
    case ObjKind::Lolli: {
      ts.expect("(");
      auto a = parse_point(ts, o.left());
      ts.expect(",");
      auto b = parse_point(ts, o.right());
      ts.expect(")");
      return Point::pair(a, b);
    }
    case ObjKind::With: {
      if (ts.is_word("inl") || ts.is_word("inr")) {
        bool left = ts.next().text == "inl";
        auto p = parse_point(ts, left ? o.left() : o.right());
        return left ? Point::in1(p) : Point::in2(p);
      }
      ts.expect("(");
      auto tag = ts.expect_nat();
      if (tag != 1 && tag != 2) ts.fail("tag must be 1 or 2");
      ts.expect(",");
      auto p = parse_point(ts, tag == 1 ? o.left() : o.right());
      ts.expect(")");
      return tag == 1 ? Point::in1(p) : Point::in2(p);
    }
    case ObjKind::Bang: {
      ts.expect("[");
      std::vector<Multiset::Entry> es;
      if (!ts.is("]")) {
        do {
          auto p = parse_point(ts, o.left());
          Mult m(1);
          if (ts.accept(":")) {
            if (ts.is_word("w")) {
              ts.next();
              m = Mult::omega();
            } else {
              auto k = ts.expect_nat();
              if (k == 0) ts.fail("multiplicity must be positive");
              m = Mult(k);
            }
          }
          es.emplace_back(p, m);
        } while (ts.accept(","));
      }
      ts.expect("]");
      return Point::bag(Multiset(std::move(es)));
    }
    case ObjKind::Box: {
      ts.expect("<");
      auto c = static_cast<int>(ts.expect_nat());
      if (c < 1 || c > o.colours()) ts.fail("colour out of range 1.." + std::to_string(o.colours()));
      ts.expect(">");
      return Point::coloured(c, parse_point(ts, o.left()));
    }
  }
  ts.fail("unsupported object");
}

inline Point parse_point(const std::string& text, const Object& o) {
  TokenStream ts(text);
  auto p = parse_point(ts, o);
  if (!ts.at_end()) ts.fail("trailing input after point");
  return p;
}

/// Types: `ID | !t | <>t | t * t | t & t | t -o t | 1 | T | (t)`, with
/// `-o` weakest and right associative, then `*`, then `&`.
struct TypeEnv {
  std::map<std::string, Object> objects;
  int colours = 0;
};

namespace detail {
inline Object parse_type_prec(TokenStream& ts, const TypeEnv& env, int prec) {
  Object lhs;
  if (ts.accept("!")) {
    lhs = Object::bang(parse_type_prec(ts, env, 4));
  } else if (ts.accept("<>")) {
    if (env.colours < 1) ts.fail("'<>' needs a 'colours' declaration");
    lhs = Object::box(parse_type_prec(ts, env, 4), env.colours);
  } else if (ts.accept("(")) {
    lhs = parse_type_prec(ts, env, 0);
    ts.expect(")");
  } else if (ts.peek().kind == Tok::Nat && ts.peek().text == "1") {
    ts.next();
    lhs = Object::unit();
  } else {
    auto t = ts.peek();
    auto name = ts.expect_ident();
    if (name == "T") {
      lhs = Object::top();
    } else {
      auto it = env.objects.find(name);
      if (it == env.objects.end()) throw ParseError("unknown object '" + name + "'", t.line, t.column);
      lhs = it->second;
    }
  }
  while (true) {
    if (prec <= 1 && ts.accept("-o")) {
      lhs = Object::lolli(lhs, parse_type_prec(ts, env, 1));
    } else if (prec <= 2 && ts.is("*")) {
      ts.next();
      lhs = Object::tensor(lhs, parse_type_prec(ts, env, 3));
    } else if (prec <= 3 && ts.is("&")) {
      ts.next();
      lhs = Object::with(lhs, parse_type_prec(ts, env, 4));
    } else {
      return lhs;
    }
  }
}
}  // namespace detail

inline Object parse_type(TokenStream& ts, const TypeEnv& env) { return detail::parse_type_prec(ts, env, 0); }

inline Object parse_type(const std::string& text, const TypeEnv& env) {
  TokenStream ts(text);
  auto o = parse_type(ts, env);
  if (!ts.at_end()) ts.fail("trailing input after type");
  return o;
}

}  // namespace llrel
