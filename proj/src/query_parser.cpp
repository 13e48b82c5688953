#include <algorithm>
#include <cctype>
#include <charconv>

#include "dfq/errors.hpp"
#include "dfq/query.hpp"

namespace dfq {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

std::string syntax_message(std::size_t offset, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::string msg = "syntax error at offset " + std::to_string(offset);
  if (!expected.empty()) msg += ": expected " + join_expected(expected);
  msg += ", found " + found;
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : Error(syntax_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace query {
namespace {

enum class Tok {
  ident,
  quoted_ident,
  string,
  integer,
  star,
  comma,
  lparen,
  rparen,
  semicolon,
  op,
  end,
};

struct Token {
  Tok kind;
  std::string text;  // identifier / string contents, operator spelling
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

constexpr std::string_view kKeywords[] = {"SELECT", "FROM", "WHERE", "AND", "DIRECTLYFOLLOWS"};

bool is_keyword(std::string_view word) {
  const std::string u = upper(word);
  return std::find(std::begin(kKeywords), std::end(kKeywords), u) != std::end(kKeywords);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    const std::size_t start = i;
    const char c = s[i];
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), start});
    } else if (c == '"' || c == '\'') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == c) {
          if (i + 1 < s.size() && s[i + 1] == c) {
            text.push_back(c);
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        text.push_back(s[i++]);
      }
      if (!closed) throw SyntaxError(s.size(), {std::string(1, c)}, "end of input");
      if (c == '"' && text.empty()) throw SyntaxError(start, {"identifier"}, "empty quoted identifier");
      out.push_back({c == '"' ? Tok::quoted_ident : Tok::string, std::move(text), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && ident_char(s[i])) {
        throw SyntaxError(i, {}, "'" + std::string(1, s[i]) + "' inside a number");
      }
      out.push_back({Tok::integer, std::string(s.substr(start, i - start)), start});
    } else if (c == '<' || c == '>') {
      ++i;
      if (i < s.size() && s[i] == '=') ++i;
      out.push_back({Tok::op, std::string(s.substr(start, i - start)), start});
    } else {
      Tok kind;
      switch (c) {
        case '=': kind = Tok::op; break;
        case '*': kind = Tok::star; break;
        case ',': kind = Tok::comma; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ';': kind = Tok::semicolon; break;
        default:
          throw SyntaxError(start, {}, "unexpected character '" + std::string(1, c) + "'");
      }
      ++i;
      out.push_back({kind, std::string(1, c), start});
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  QueryAst parse_query() {
    expect_keyword("SELECT");
    // Only the outer form of a DIRECTLYFOLLOWS query starts with
    // "SELECT * FROM DIRECTLYFOLLOWS"; decide after FROM.
    std::optional<std::vector<std::string>> columns = parse_projection();
    expect_keyword("FROM");
    QueryAst result;
    if (!columns && at_keyword("DIRECTLYFOLLOWS")) {
      ++pos_;
      expect(Tok::lparen, "(");
      BaseSelect inner = parse_select();
      expect(Tok::rparen, ")", {inner.predicates.empty() ? "WHERE" : "AND"});
      result = DfWrap{std::move(inner)};
    } else {
      result = parse_select_tail(std::move(columns));
    }
    if (peek().kind == Tok::semicolon) {
      ++pos_;
      if (peek().kind != Tok::end) fail({"end of input"});
    } else if (peek().kind != Tok::end) {
      std::vector<std::string> expected;
      if (const auto* sel = std::get_if<BaseSelect>(&result)) {
        expected.push_back(sel->predicates.empty() ? "WHERE" : "AND");
      }
      expected.push_back(";");
      expected.push_back("end of input");
      fail(std::move(expected));
    }
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::ident && upper(peek().text) == kw;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found;
    switch (t.kind) {
      case Tok::end: found = "end of input"; break;
      case Tok::string: found = "'" + t.text + "'"; break;
      case Tok::quoted_ident: found = "\"" + t.text + "\""; break;
      default: found = "'" + t.text + "'"; break;
    }
    throw SyntaxError(t.offset, std::move(expected), std::move(found));
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail({std::string(kw)});
    ++pos_;
  }

  // `also` lists optional tokens that could have appeared before this one.
  void expect(Tok kind, const std::string& spelling, std::vector<std::string> also = {}) {
    if (peek().kind != kind) {
      also.push_back(spelling);
      fail(std::move(also));
    }
    ++pos_;
  }

  std::string parse_ident(std::vector<std::string> also = {}) {
    const Token& t = peek();
    if (t.kind == Tok::quoted_ident || (t.kind == Tok::ident && !is_keyword(t.text))) {
      ++pos_;
      return t.text;
    }
    also.push_back("identifier");
    fail(std::move(also));
  }

  std::optional<std::vector<std::string>> parse_projection() {
    if (peek().kind == Tok::star) {
      ++pos_;
      return std::nullopt;
    }
    std::vector<std::string> cols;
    cols.push_back(parse_ident({"*"}));
    while (peek().kind == Tok::comma) {
      ++pos_;
      cols.push_back(parse_ident());
    }
    return cols;
  }

  BaseSelect parse_select() {
    expect_keyword("SELECT");
    auto columns = parse_projection();
    expect_keyword("FROM");
    return parse_select_tail(std::move(columns));
  }

  BaseSelect parse_select_tail(std::optional<std::vector<std::string>> columns) {
    BaseSelect sel;
    sel.columns = std::move(columns);
    sel.table = parse_ident();
    if (at_keyword("WHERE")) {
      ++pos_;
      sel.predicates.push_back(parse_predicate());
      while (at_keyword("AND")) {
        ++pos_;
        sel.predicates.push_back(parse_predicate());
      }
    }
    return sel;
  }

  Predicate parse_predicate() {
    Predicate p;
    p.column = parse_ident();
    const Token& op = peek();
    if (op.kind != Tok::op) fail({"=", "<", "<=", ">", ">="});
    if (op.text == "=") p.op = Comparator::eq;
    else if (op.text == "<") p.op = Comparator::lt;
    else if (op.text == "<=") p.op = Comparator::le;
    else if (op.text == ">") p.op = Comparator::gt;
    else p.op = Comparator::ge;
    ++pos_;
    const Token& lit = peek();
    if (lit.kind == Tok::integer) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(lit.text.data(), lit.text.data() + lit.text.size(), v);
      if (ec != std::errc{}) throw SyntaxError(lit.offset, {"integer literal"}, "'" + lit.text + "' out of range");
      p.value = v;
    } else if (lit.kind == Tok::string) {
      p.value = lit.text;
    } else {
      fail({"integer literal", "string literal"});
    }
    ++pos_;
    return p;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string render_ident(const std::string& id) {
  const bool bare = !id.empty() && ident_start(id[0]) &&
                    std::all_of(id.begin(), id.end(), ident_char) && !is_keyword(id);
  if (bare) return id;
  std::string out = "\"";
  for (char c : id) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_literal(const Literal& lit) {
  if (const auto* v = std::get_if<std::int64_t>(&lit)) return std::to_string(*v);
  std::string out = "'";
  for (char c : std::get<std::string>(lit)) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

const char* render_op(Comparator op) {
  switch (op) {
    case Comparator::eq: return "=";
    case Comparator::lt: return "<";
    case Comparator::le: return "<=";
    case Comparator::gt: return ">";
    case Comparator::ge: return ">=";
  }
  return "=";
}

std::string render_select(const BaseSelect& s) {
  std::string out = "SELECT ";
  if (!s.columns) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < s.columns->size(); ++i) {
      if (i) out += ", ";
      out += render_ident((*s.columns)[i]);
    }
  }
  out += " FROM " + render_ident(s.table);
  for (std::size_t i = 0; i < s.predicates.size(); ++i) {
    const auto& p = s.predicates[i];
    out += i == 0 ? " WHERE " : " AND ";
    out += render_ident(p.column) + " " + render_op(p.op) + " " + render_literal(p.value);
  }
  return out;
}

}  // namespace

QueryAst parse(std::string_view text) { return Parser(text).parse_query(); }

std::string render(const QueryAst& ast) {
  if (const auto* wrap = std::get_if<DfWrap>(&ast)) {
    return "SELECT * FROM DIRECTLYFOLLOWS (" + render_select(wrap->inner) + ")";
  }
  return render_select(std::get<BaseSelect>(ast));
}

}  // namespace query
}  // namespace dfq
