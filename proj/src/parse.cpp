#include "dtl/parse.hpp"

#include <cctype>
#include <vector>

namespace dtl {

namespace {

enum class Tok { End, Ident, Not, And, Or, Imp, Iff, Dia, Box, LParen, RParen, LBrace, RBrace,
                 Comma, KwX, KwG, KwF };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(at, i - at));
      Tok k = Tok::Ident;
      if (word == "X") k = Tok::KwX;
      else if (word == "G") k = Tok::KwG;
      else if (word == "F") k = Tok::KwF;
      out.push_back({k, at, std::move(word)});
      continue;
    }
    if (starts("<->")) { out.push_back({Tok::Iff, at, "<->"}); i += 3; continue; }
    if (starts("->")) { out.push_back({Tok::Imp, at, "->"}); i += 2; continue; }
    if (starts("<>")) { out.push_back({Tok::Dia, at, "<>"}); i += 2; continue; }
    if (starts("[]")) { out.push_back({Tok::Box, at, "[]"}); i += 2; continue; }
    Tok k;
    switch (c) {
      case '~': k = Tok::Not; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(at, std::string("unexpected character '") + s[i] + "'");
    }
    out.push_back({k, at, std::string(1, s[i])});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("trailing input '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  Formula formula() {
    Formula l = imp();
    while (accept(Tok::Iff)) l = iff(l, imp());
    return l;
  }
  Formula imp() {
    Formula l = disjunction();
    if (accept(Tok::Imp)) return implies(l, imp());
    return l;
  }
  Formula disjunction() {
    Formula l = conjunction();
    while (accept(Tok::Or)) l = disj(l, conjunction());
    return l;
  }
  Formula conjunction() {
    Formula l = unary();
    while (accept(Tok::And)) l = conj(l, unary());
    return l;
  }
  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not: ++pos_; return neg(unary());
      case Tok::KwX: ++pos_; return next(unary());
      case Tok::KwG: ++pos_; return always(unary());
      case Tok::KwF: ++pos_; return eventually(unary());
      case Tok::Box: ++pos_; return box(unary());
      case Tok::Dia: {
        ++pos_;
        if (!accept(Tok::LBrace)) return diamond(unary());
        std::vector<Formula> members;
        if (!accept(Tok::RBrace)) {
          members.push_back(formula());
          while (accept(Tok::Comma)) members.push_back(formula());
          expect(Tok::RBrace, "'}'");
        }
        return tangle(std::move(members));
      }
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident: ++pos_; return var(t.text);
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(lex(text)).run(); }

}  // namespace dtl
