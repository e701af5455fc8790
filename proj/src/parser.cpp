#include "tensorlift/parser.hpp"

#include <cctype>
#include <optional>
#include <string>

#include "tensorlift/error.hpp"

namespace tensorlift {

namespace {

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::string text;
  int column;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(int col, const std::string& msg) { throw ParseError(1, col, msg); }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= text_.size()) {
      current_ = {Token::Type::End, "", col};
      return;
    }
    char c = text_[pos_];
    auto single = [&](Token::Type t) {
      current_ = {t, std::string(1, c), col};
      ++pos_;
    };
    switch (c) {
      case '+': single(Token::Type::Plus); return;
      case '-': single(Token::Type::Minus); return;
      case '*': single(Token::Type::Star); return;
      case '/': single(Token::Type::Slash); return;
      case '^': single(Token::Type::Caret); return;
      case '(': single(Token::Type::LParen); return;
      case ')': single(Token::Type::RParen); return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail(static_cast<int>(pos_) + 1, "malformed number: expected digits after '.'");
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      current_ = {Token::Type::Number, std::string(text_.substr(start, pos_ - start)), col};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail(static_cast<int>(pos_) + 1, "expected level digits after '@'");
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      current_ = {Token::Type::Ident, std::string(text_.substr(start, pos_ - start)), col};
      return;
    }
    fail(col, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{Token::Type::End, "", 1};
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Expr parse() {
    Expr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End) {
      fail(t, "unexpected token '" + t.text + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(1, t.column, msg);
  }

  Expr parse_sum() {
    Expr lhs = parse_term();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t == Token::Type::Plus) {
        lex_.take();
        lhs = lhs + parse_term();
      } else if (t == Token::Type::Minus) {
        lex_.take();
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t == Token::Type::Star) {
        lex_.take();
        lhs = lhs * parse_unary();
      } else if (t == Token::Type::Slash) {
        Token tok = lex_.take();
        Expr rhs = parse_unary();
        if (rhs.is_zero()) fail(tok, "division by zero");
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      return -parse_unary();
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (lex_.peek().type != Token::Type::Caret) return base;
    lex_.take();
    bool neg = false;
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      neg = true;
    }
    Token at = lex_.peek();
    Expr exp = parse_power();  // right-associative
    if (!exp.is_constant() || !exp.constant_value().is_integer()) {
      fail(at, "exponent must be an integer constant");
    }
    long e = exp.constant_value().to_long();
    return Expr::power(base, neg ? -e : e);
  }

  Expr parse_primary() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number:
        return number_literal(t);
      case Token::Type::Ident:
        return identifier(t);
      case Token::Type::LParen: {
        Expr e = parse_sum();
        Token close = lex_.take();
        if (close.type != Token::Type::RParen) {
          fail(close, close.type == Token::Type::End ? "unexpected end of input; expected ')'"
                                                     : "expected ')'");
        }
        return e;
      }
      case Token::Type::End:
        fail(t, "unexpected end of input");
      default:
        fail(t, "unexpected token '" + t.text + "'");
    }
  }

  Expr number_literal(const Token& t) {
    auto dot = t.text.find('.');
    if (dot == std::string::npos) {
      return Expr::constant(GaussianRational(mpq_class(mpz_class(t.text)), 0));
    }
    std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
    std::size_t frac = t.text.size() - dot - 1;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    mpq_class q(mpz_class(digits), den);
    q.canonicalize();
    return Expr::constant(GaussianRational(q, 0));
  }

  Expr identifier(const Token& t) {
    const std::string& s = t.text;
    if (s == "i") return Expr::imaginary();
    if (s == "sin" || s == "cos" || s == "exp") {
      Primitive p = s == "sin" ? Primitive::Sin : (s == "cos" ? Primitive::Cos : Primitive::Exp);
      Token open = lex_.take();
      if (open.type != Token::Type::LParen) fail(open, "expected '(' after '" + s + "'");
      Expr arg = parse_sum();
      Token close = lex_.take();
      if (close.type != Token::Type::RParen) {
        fail(close, close.type == Token::Type::End ? "unexpected end of input; expected ')'"
                                                   : "expected ')'");
      }
      return Expr::call(p, arg);
    }
    // variable: x<index> or x<index>@<level>
    if (s.size() >= 2 && s[0] == 'x' && std::isdigit(static_cast<unsigned char>(s[1]))) {
      std::size_t at = s.find('@');
      std::string idx = at == std::string::npos ? s.substr(1) : s.substr(1, at - 1);
      bool digits_ok = !idx.empty();
      for (char c : idx) digits_ok = digits_ok && std::isdigit(static_cast<unsigned char>(c));
      if (digits_ok) {
        int index = std::stoi(idx);
        int level = at == std::string::npos ? 0 : std::stoi(s.substr(at + 1));
        if (index < 1) fail(t, "coordinate index must be >= 1");
        return Expr::variable(index, level);
      }
    }
    fail(t, "unknown variable or function '" + s + "'");
  }

  Lexer lex_;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace tensorlift
