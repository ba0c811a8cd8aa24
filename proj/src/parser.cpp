#include "wildquot/parser.hpp"

#include <cctype>
#include <vector>

namespace wq {

namespace {

enum class Tok { integer, ident, plus, minus, star, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::integer, s.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::ident, s.substr(i, j - i), l, cl});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const RingPtr& ring, const Constants& consts)
      : toks_(lex(text)), ring_(ring), consts_(consts) {}

  Poly run() {
    Poly p = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const RingPtr& ring_;
  const Constants& consts_;

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SyntaxError(t.kind == Tok::end ? what + " (end of input)" : what, t.line, t.col);
  }

  Field::Code reduce_integer(const std::string& digits) const {
    const Field& F = *ring_->field();
    unsigned long long p = F.characteristic(), acc = 0;
    for (char d : digits) acc = (acc * 10 + static_cast<unsigned>(d - '0')) % p;
    return static_cast<Field::Code>(acc);
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (peek().kind == Tok::plus) {
        next();
        acc = acc + term();
      } else if (peek().kind == Tok::minus) {
        next();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (peek().kind == Tok::star) {
      next();
      acc = acc * unary();
    }
    return acc;
  }

  Poly unary() {
    if (peek().kind == Tok::minus) {
      next();
      return -unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    while (peek().kind == Tok::caret) {
      next();
      if (peek().kind != Tok::integer) fail("exponent must be a non-negative integer literal");
      const Token& t = next();
      if (t.text.size() > 5 || std::stoul(t.text) > 65535)
        throw ExponentOverflow("exponent " + t.text + " is too large");
      base = base.pow(static_cast<unsigned>(std::stoul(t.text)));
    }
    return base;
  }

  bool tuple_ahead() const {
    return peek().kind == Tok::lparen && peek(1).kind == Tok::integer &&
           peek(2).kind == Tok::comma;
  }

  Poly primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer:
        next();
        return Poly::monomial(ring_, Monomial{}, reduce_integer(t.text));
      case Tok::ident: {
        next();
        if (auto i = ring_->index_of(t.text)) return Poly::var(ring_, *i);
        auto it = consts_.find(t.text);
        if (it != consts_.end()) return Poly::constant(ring_, it->second);
        throw UnknownVariable("'" + t.text + "' at line " + std::to_string(t.line) +
                              ", column " + std::to_string(t.col));
      }
      case Tok::lparen: {
        if (tuple_ahead()) return tuple();
        next();
        Poly inner = expr();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        next();
        return inner;
      }
      default:
        fail(t.kind == Tok::end ? "expected an operand" : "unexpected '" + t.text + "'");
    }
  }

  Poly tuple() {
    next();  // (
    const Field& F = *ring_->field();
    std::vector<unsigned> digits;
    for (;;) {
      if (peek().kind != Tok::integer) fail("tuple entries must be integer literals");
      digits.push_back(reduce_integer(next().text));
      if (peek().kind == Tok::comma) {
        next();
        continue;
      }
      if (peek().kind != Tok::rparen) fail("expected ',' or ')' in field tuple");
      next();
      break;
    }
    if (digits.size() != F.degree())
      throw SyntaxError("field tuple needs " + std::to_string(F.degree()) + " entries",
                        peek().line, peek().col);
    return Poly::monomial(ring_, Monomial{}, F.from_coeffs(digits));
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const RingPtr& ring, const Constants& constants) {
  return Parser(text, ring, constants).run();
}

Constants parameter_constants(const FieldElement& a, const FieldElement& b) {
  Constants c;
  c.emplace("a", a);
  c.emplace("b", b);
  c.emplace("alpha", a.pow(3) - a);
  return c;
}

}  // namespace wq
