#include "itl/parser.hpp"

#include <cctype>
#include <sstream>

namespace itl {

namespace {
std::string format_error(std::size_t offset, const std::string& msg,
                         const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "syntax error at byte " << offset << ": " << msg;
  if (!expected.empty()) {
    os << " (expected";
    for (const auto& e : expected) os << " " << e;
    os << ")";
  }
  return os.str();
}
}  // namespace

ParseError::ParseError(std::size_t off, const std::string& msg,
                       std::vector<std::string> exp)
    : Error(format_error(off, msg, exp)), offset(off), expected(std::move(exp)) {}

namespace {

enum class Tok { Ident, T, F, Not, X, Diam, Box, U, R, And, Or, Imp, LPar, RPar, End };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  std::size_t tok_pos = 0;

  explicit Lexer(std::string_view t) : text(t) { advance(); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    if (c >= 'a' && c <= 'z') {
      std::size_t s = pos;
      ++pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      ident.assign(text.substr(s, pos - s));
      tok = Tok::Ident;
      return;
    }
    switch (c) {
      case 'T': ++pos; tok = Tok::T; return;
      case 'F': ++pos; tok = Tok::F; return;
      case 'X': ++pos; tok = Tok::X; return;
      case 'U': ++pos; tok = Tok::U; return;
      case 'R': ++pos; tok = Tok::R; return;
      case '~': ++pos; tok = Tok::Not; return;
      case '&': ++pos; tok = Tok::And; return;
      case '|': ++pos; tok = Tok::Or; return;
      case '(': ++pos; tok = Tok::LPar; return;
      case ')': ++pos; tok = Tok::RPar; return;
      case '-':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Imp;
          return;
        }
        throw ParseError(pos, "stray '-'", {"->"});
      case '<':
        if (pos + 1 < text.size() && text[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Diam;
          return;
        }
        throw ParseError(pos, "stray '<'", {"<>"});
      case '[':
        if (pos + 1 < text.size() && text[pos + 1] == ']') {
          pos += 2;
          tok = Tok::Box;
          return;
        }
        throw ParseError(pos, "stray '['", {"[]"});
      default:
        throw ParseError(pos, std::string("unknown operator '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lx;
  explicit Parser(std::string_view t) : lx(t) {}

  Fptr parse_imp() {
    Fptr l = parse_or();
    if (lx.tok == Tok::Imp) {
      lx.advance();
      return imp(l, parse_imp());
    }
    return l;
  }

  Fptr parse_or() {
    Fptr l = parse_and();
    while (lx.tok == Tok::Or) {
      lx.advance();
      l = disj(l, parse_and());
    }
    return l;
  }

  Fptr parse_and() {
    Fptr l = parse_ur();
    while (lx.tok == Tok::And) {
      lx.advance();
      l = conj(l, parse_ur());
    }
    return l;
  }

  Fptr parse_ur() {
    std::vector<Fptr> parts{parse_unary()};
    std::vector<Tok> ops;
    while (lx.tok == Tok::U || lx.tok == Tok::R) {
      if (!ops.empty() && ops.back() != lx.tok)
        throw ParseError(lx.tok_pos, "mixing U and R requires parentheses");
      ops.push_back(lx.tok);
      lx.advance();
      parts.push_back(parse_unary());
    }
    Fptr r = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      r = ops[0] == Tok::U ? until(parts[i], r) : release(parts[i], r);
    return r;
  }

  Fptr parse_unary() {
    switch (lx.tok) {
      case Tok::Not: lx.advance(); return neg(parse_unary());
      case Tok::X: lx.advance(); return next(parse_unary());
      case Tok::Diam: lx.advance(); return diam(parse_unary());
      case Tok::Box: lx.advance(); return box(parse_unary());
      default: return parse_primary();
    }
  }

  Fptr parse_primary() {
    switch (lx.tok) {
      case Tok::Ident: {
        Fptr a = atom(lx.ident);
        lx.advance();
        return a;
      }
      case Tok::F: lx.advance(); return bottom();
      case Tok::T: lx.advance(); return top();
      case Tok::LPar: {
        lx.advance();
        Fptr f = parse_imp();
        if (lx.tok != Tok::RPar)
          throw ParseError(lx.tok_pos, "unbalanced parenthesis", {")"});
        lx.advance();
        return f;
      }
      default:
        throw ParseError(lx.tok_pos, "expected a formula",
                         {"atom", "T", "F", "~", "X", "<>", "[]", "("});
    }
  }
};

// Precedence levels for rendering: 0 ->, 1 |, 2 &, 3 U/R, 4 unary/atomic.
int prec_of(Conn c) {
  switch (c) {
    case Conn::Imp: return 0;
    case Conn::Or: return 1;
    case Conn::And: return 2;
    case Conn::Until:
    case Conn::Release: return 3;
    default: return 4;
  }
}

void render_rec(const Fptr& f, int ctx, std::string& out) {
  int p = prec_of(f->conn);
  bool parens = p < ctx;
  if (parens) out += '(';
  switch (f->conn) {
    case Conn::Bottom: out += 'F'; break;
    case Conn::Atom: out += f->name; break;
    case Conn::Neg:
      out += "~ ";
      render_rec(f->left, 4, out);
      break;
    case Conn::Next:
      out += "X ";
      render_rec(f->left, 4, out);
      break;
    case Conn::Diam:
      out += "<> ";
      render_rec(f->left, 4, out);
      break;
    case Conn::Box:
      out += "[] ";
      render_rec(f->left, 4, out);
      break;
    case Conn::And:
      render_rec(f->left, 2, out);
      out += " & ";
      render_rec(f->right, 3, out);
      break;
    case Conn::Or:
      render_rec(f->left, 1, out);
      out += " | ";
      render_rec(f->right, 2, out);
      break;
    case Conn::Imp:
      render_rec(f->left, 1, out);
      out += " -> ";
      render_rec(f->right, 0, out);
      break;
    case Conn::Until:
    case Conn::Release: {
      render_rec(f->left, 4, out);
      out += f->conn == Conn::Until ? " U " : " R ";
      // right-assoc chains of the same operator stay unparenthesized
      if (f->right->conn == f->conn)
        render_rec(f->right, 3, out);
      else
        render_rec(f->right, 4, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

Fptr parse(std::string_view text) {
  Parser p(text);
  Fptr f = p.parse_imp();
  if (p.lx.tok != Tok::End)
    throw ParseError(p.lx.tok_pos, "trailing input", {"end of input"});
  return f;
}

std::string render(const Fptr& f) {
  std::string out;
  render_rec(f, 0, out);
  return out;
}

}  // namespace itl
