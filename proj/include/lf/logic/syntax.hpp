#pragma once

// Text syntax for formulas.
//
//   f    := 'all' v '.' f | 'ex' v '.' f
//         | 'all' v 'in' 'succ[' INT '](' term ')' '.' f
//         | 'ex'  v 'in' 'succ[' INT '](' term ')' '.' f
//         | f '=>' f | f '|' f | f '&' f | '~' f | '(' f ')' | atom
//   atom := 'P[' INT '](' term ')' | 'lt[' INT '](' term ',' term ')'
//         | 'eq(' term ',' term ')' | 'pred(' term ',' term ')' | 'true' | 'false'
//   term := IDENT | '#' CONSTNAME
//
// Binding strength, loosest first: quantifier bodies (extend as far right as
// possible), '=>' (right associative), '|', '&' (both left associative), '~'.

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lf/errors.hpp"
#include "lf/logic/formula.hpp"

namespace lf::logic {

namespace detail {

enum class Tok { Ident, ConstName, Int, Dot, LParen, RParen, Comma, LBrack, RBrack, Tilde, Amp, Bar, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline bool is_reserved(const std::string& s) {
  static const std::set<std::string> words{"all", "ex", "in", "succ", "P", "lt", "eq", "pred", "true", "false"};
  return words.count(s) > 0;
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
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1) throw ParseError("expected a constant name after '#'", l, cl);
      out.push_back({Tok::ConstName, std::string(src.substr(i + 1, j - i - 1)), l, cl});
      advance(j - i);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "=>", l, cl});
      advance(2);
    } else {
      Tok k;
      switch (c) {
        case '.': k = Tok::Dot; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '[': k = Tok::LBrack; break;
        case ']': k = Tok::RBrack; break;
        case '~': k = Tok::Tilde; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Bar; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
      }
      out.push_back({k, std::string(1, c), l, cl});
      advance(1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Formula parse_all() {
    Formula f = parse_implies();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    ++pos_;
  }

  int parse_index() {
    expect(Tok::LBrack, "'['");
    const Token t = expect(Tok::Int, "an index");
    expect(Tok::RBrack, "']'");
    return std::stoi(t.text);
  }

  Term parse_term() {
    if (peek().kind == Tok::ConstName) return cst(toks_[pos_++].text);
    if (peek().kind == Tok::Ident && !is_reserved(peek().text)) return var(toks_[pos_++].text);
    fail("expected a variable or #constant");
  }

  std::vector<Term> parse_args(int n) {
    expect(Tok::LParen, "'('");
    std::vector<Term> out{parse_term()};
    for (int i = 1; i < n; ++i) {
      expect(Tok::Comma, "','");
      out.push_back(parse_term());
    }
    expect(Tok::RParen, "')'");
    return out;
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return implies(std::move(l), parse_implies());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (peek().kind == Tok::Bar) {
      ++pos_;
      l = disj(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (peek().kind == Tok::Amp) {
      ++pos_;
      l = conj(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Tilde) {
      ++pos_;
      return neg(parse_unary());
    }
    if (peek().kind == Tok::LParen) {
      ++pos_;
      Formula f = parse_implies();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_word("all") || at_word("ex")) return parse_quantifier();
    return parse_atom();
  }

  Formula parse_quantifier() {
    const bool universal = peek().text == "all";
    ++pos_;
    if (peek().kind != Tok::Ident || is_reserved(peek().text)) fail("expected a bound variable");
    std::string v = toks_[pos_++].text;
    if (at_word("in")) {
      ++pos_;
      expect_word("succ");
      const int i = parse_index();
      Term anchor = parse_args(1).front();
      expect(Tok::Dot, "'.'");
      Formula body = parse_implies();
      return universal ? forall_succ(std::move(v), i, std::move(anchor), std::move(body))
                       : exists_succ(std::move(v), i, std::move(anchor), std::move(body));
    }
    expect(Tok::Dot, "'.'");
    Formula body = parse_implies();
    return universal ? forall(std::move(v), std::move(body)) : exists(std::move(v), std::move(body));
  }

  Formula parse_atom() {
    if (at_word("true")) {
      ++pos_;
      return truth();
    }
    if (at_word("false")) {
      ++pos_;
      return falsity();
    }
    if (at_word("P")) {
      ++pos_;
      const int i = parse_index();
      return P(i, parse_args(1)[0]);
    }
    if (at_word("lt")) {
      ++pos_;
      const int i = parse_index();
      auto a = parse_args(2);
      return lt(i, a[0], a[1]);
    }
    if (at_word("eq")) {
      ++pos_;
      auto a = parse_args(2);
      return eq(a[0], a[1]);
    }
    if (at_word("pred")) {
      ++pos_;
      auto a = parse_args(2);
      return pred(a[0], a[1]);
    }
    fail("expected a formula");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::string render_term(const Term& t) { return t.kind == Term::Kind::Const ? "#" + t.name : t.name; }

// ctx is the binding strength demanded by the enclosing position:
// 0 top/quantifier body, 1 right of '=>', 2 left of '=>' or inside '|',
// 3 inside '&' (left), 4 right of '&' or under '~'.
inline std::string render(const Formula& f, int ctx) {
  auto wrap = [](bool p, std::string s) { return p ? "(" + s + ")" : s; };
  switch (f.op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::P: return "P[" + std::to_string(f.index) + "](" + render_term(f.terms[0]) + ")";
    case Op::Lt:
      return "lt[" + std::to_string(f.index) + "](" + render_term(f.terms[0]) + "," + render_term(f.terms[1]) + ")";
    case Op::Eq: return "eq(" + render_term(f.terms[0]) + "," + render_term(f.terms[1]) + ")";
    case Op::Pred: return "pred(" + render_term(f.terms[0]) + "," + render_term(f.terms[1]) + ")";
    case Op::Not: return "~" + render(f.args[0], 4);
    case Op::And: return wrap(ctx > 3, render(f.args[0], 3) + " & " + render(f.args[1], 4));
    case Op::Or: return wrap(ctx > 2, render(f.args[0], 2) + " | " + render(f.args[1], 3));
    case Op::Implies: return wrap(ctx > 1, render(f.args[0], 2) + " => " + render(f.args[1], 1));
    case Op::Forall: return wrap(ctx > 0, "all " + f.var + " . " + render(f.args[0], 0));
    case Op::Exists: return wrap(ctx > 0, "ex " + f.var + " . " + render(f.args[0], 0));
    case Op::LocalForall:
    case Op::LocalExists:
      return wrap(ctx > 0, std::string(f.op == Op::LocalForall ? "all " : "ex ") + f.var + " in succ[" +
                               std::to_string(f.index) + "](" + render_term(f.terms[0]) + ") . " + render(f.args[0], 0));
  }
  return {};
}

}  // namespace detail

/// Throws ParseError (with line and column) on malformed input.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Inverse of parse up to whitespace: parse(render(f)) == f.
inline std::string render(const Formula& f) { return detail::render(f, 0); }

}  // namespace lf::logic
