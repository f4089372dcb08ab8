#include "pground/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "pground/errors.hpp"

namespace pground::frontend {

namespace {

enum class Tok {
  Atom, Var, Int,
  LParen, RParen, LBracket, RBracket, Comma, Bar,
  EndDot, Neck,     // '.' terminating a clause, ':-'
  Eq, Le, Ge, Lt, Gt, EqEq, Slash,
  Semicolon, Bang, NotProvable, // ';' '!' '\+'
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip_layout();
    Token t;
    t.line = line_;
    t.col = col_;
    if (eof()) {
      t.kind = Tok::Eof;
      return t;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) num += get();
      t.kind = Tok::Int;
      t.value = std::stoll(num);
      t.text = num;
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::Atom;
      t.text = ident();
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Var;
      t.text = ident();
      return t;
    }
    if (c == '\'') {
      get();
      std::string text;
      while (!eof() && peek() != '\'') text += get();
      if (eof()) fail(t, "unterminated quoted atom");
      get();
      t.kind = Tok::Atom;
      t.text = text;
      return t;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < s_.size() && s_[pos_ + 1] == b;
    };
    if (two(':', '-')) { get(); get(); t.kind = Tok::Neck; return t; }
    if (two('=', '<')) { get(); get(); t.kind = Tok::Le; return t; }
    if (two('>', '=')) { get(); get(); t.kind = Tok::Ge; return t; }
    if (two('=', '=')) { get(); get(); t.kind = Tok::EqEq; return t; }
    if (two('\\', '+')) { get(); get(); t.kind = Tok::NotProvable; return t; }
    switch (c) {
      case '(': get(); t.kind = Tok::LParen; return t;
      case ')': get(); t.kind = Tok::RParen; return t;
      case '[': get(); t.kind = Tok::LBracket; return t;
      case ']': get(); t.kind = Tok::RBracket; return t;
      case ',': get(); t.kind = Tok::Comma; return t;
      case '|': get(); t.kind = Tok::Bar; return t;
      case '=': get(); t.kind = Tok::Eq; return t;
      case '<': get(); t.kind = Tok::Lt; return t;
      case '>': get(); t.kind = Tok::Gt; return t;
      case '/': get(); t.kind = Tok::Slash; return t;
      case ';': get(); t.kind = Tok::Semicolon; return t;
      case '!': get(); t.kind = Tok::Bang; return t;
      case '.': {
        get();
        // A clause-terminating dot is followed by layout or end of input.
        if (eof() || std::isspace(static_cast<unsigned char>(peek())) || peek() == '%') {
          t.kind = Tok::EndDot;
          return t;
        }
        fail(t, "unexpected '.'");
      }
    }
    fail(t, std::string("unexpected character '") + c + "'");
  }

private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() {
    char c = s_[pos_++];
    if (c == '\n') { ++line_; col_ = 1; }
    else ++col_;
    return c;
  }

  std::string ident() {
    std::string out;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      out += get();
    return out;
  }

  void skip_layout() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) { get(); continue; }
      if (c == '%') {
        while (!eof() && peek() != '\n') get();
        continue;
      }
      if (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '*') {
        int ln = line_, cl = col_;
        get(); get();
        while (true) {
          if (eof()) throw ParseError(ln, cl, "unterminated block comment");
          if (peek() == '*' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/') {
            get(); get();
            break;
          }
          get();
        }
        continue;
      }
      return;
    }
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class ProgramParser {
public:
  explicit ProgramParser(std::string_view text) : lex_(text) { advance(); }

  ast::SourceProgram parse() {
    ast::SourceProgram out;
    bool have_main = false, have_parametric = false;
    while (cur_.kind != Tok::Eof) {
      if (cur_.kind == Tok::Neck) {
        advance();
        parse_directive(out, have_main, have_parametric);
        continue;
      }
      out.clauses.push_back(parse_clause());
    }
    if (!have_main)
      throw ParseError("missing ':- main(Name/Arity).' directive");
    return out;
  }

private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur_.line, cur_.col, msg);
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  void parse_directive(ast::SourceProgram& out, bool& have_main, bool& have_parametric) {
    if (cur_.kind != Tok::Atom) fail("expected directive name");
    std::string name = cur_.text;
    advance();
    if (name == "main") {
      if (have_main) fail("duplicate main directive");
      expect(Tok::LParen, "'('");
      if (cur_.kind != Tok::Atom) fail("expected predicate name");
      out.config.goal.name = cur_.text;
      advance();
      expect(Tok::Slash, "'/'");
      if (cur_.kind != Tok::Int) fail("expected arity");
      out.config.goal.arity = static_cast<int>(cur_.value);
      advance();
      expect(Tok::RParen, "')'");
      have_main = true;
    } else if (name == "parametric") {
      if (have_parametric) fail("duplicate parametric directive");
      expect(Tok::LParen, "'('");
      if (cur_.kind != Tok::Atom || (cur_.text != "yes" && cur_.text != "no"))
        fail("expected yes or no");
      out.config.parametric = cur_.text == "yes";
      out.config.parametric_directive_present = true;
      advance();
      expect(Tok::RParen, "')'");
      have_parametric = true;
    } else {
      fail("unknown directive '" + name + "'");
    }
    expect(Tok::EndDot, "'.'");
  }

  ast::Clause parse_clause() {
    ast::Clause c;
    c.head = parse_term();
    if (!c.head.is_compound())
      fail("clause head must be an atom or compound term");
    if (cur_.kind == Tok::Neck) {
      advance();
      parse_body(c.body);
    }
    expect(Tok::EndDot, "'.' terminating the clause");
    return c;
  }

  void parse_body(std::vector<ast::Term>& goals) {
    parse_goal_group(goals);
    while (true) {
      if (cur_.kind == Tok::Semicolon)
        throw UnsupportedError("unsupported construct: disjunction");
      if (cur_.kind != Tok::Comma) return;
      advance();
      parse_goal_group(goals);
    }
  }

  void parse_goal_group(std::vector<ast::Term>& goals) {
    if (cur_.kind == Tok::NotProvable) {
      throw UnsupportedError("unsupported construct: negation");
    }
    if (cur_.kind == Tok::Bang) {
      throw UnsupportedError("unsupported construct: cut");
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      parse_body(goals);
      expect(Tok::RParen, "')'");
      return;
    }
    ast::Term t = parse_term();
    if (auto op = infix_name()) {
      advance();
      ast::Term rhs = parse_term();
      t = ast::Term::compound(*op, {std::move(t), std::move(rhs)});
    }
    goals.push_back(std::move(t));
  }

  std::optional<std::string> infix_name() {
    switch (cur_.kind) {
      case Tok::Eq: return "=";
      case Tok::Le: return "=<";
      case Tok::Ge: return ">=";
      case Tok::Lt: return "<";
      case Tok::Gt: return ">";
      case Tok::EqEq: return "==";
      case Tok::Atom:
        if (cur_.text == "is") return "is";
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  ast::Term parse_term() {
    switch (cur_.kind) {
      case Tok::Var: {
        std::string name = cur_.text;
        advance();
        if (name == "_") name = "_G" + std::to_string(++anon_);
        return ast::Term::var(std::move(name));
      }
      case Tok::Int: {
        long long v = cur_.value;
        advance();
        return ast::Term::integer(v);
      }
      case Tok::Atom: {
        std::string f = cur_.text;
        advance();
        std::vector<ast::Term> args;
        if (cur_.kind == Tok::LParen) {
          advance();
          args.push_back(parse_term());
          while (cur_.kind == Tok::Comma) {
            advance();
            args.push_back(parse_term());
          }
          expect(Tok::RParen, "')'");
        }
        return ast::Term::compound(std::move(f), std::move(args));
      }
      case Tok::LBracket: {
        advance();
        if (cur_.kind == Tok::RBracket) {
          advance();
          return ast::Term::atom("[]");
        }
        std::vector<ast::Term> elems;
        elems.push_back(parse_term());
        while (cur_.kind == Tok::Comma) {
          advance();
          elems.push_back(parse_term());
        }
        ast::Term tail = ast::Term::atom("[]");
        if (cur_.kind == Tok::Bar) {
          advance();
          tail = parse_term();
        }
        expect(Tok::RBracket, "']'");
        for (auto it = elems.rbegin(); it != elems.rend(); ++it)
          tail = ast::Term::compound(".", {std::move(*it), std::move(tail)});
        return tail;
      }
      case Tok::LParen: {
        advance();
        ast::Term t = parse_term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        fail("expected a term");
    }
  }

  Lexer lex_;
  Token cur_;
  int anon_ = 0;
};

} // namespace

ast::SourceProgram parse_program(std::string_view text) {
  return ProgramParser(text).parse();
}

} // namespace pground::frontend
