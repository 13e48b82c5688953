#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Recursive-descent checker for the Graphviz DOT language (directed graphs,
// no subgraphs or ports). Independent of the exporter under test.
namespace dfq::testing {

struct DotGraph {
  std::set<std::string> nodes;                                 // declared node ids
  std::map<std::string, std::map<std::string, std::string>> node_attrs;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::map<std::string, std::string>> edge_attrs;
};

class DotChecker {
 public:
  explicit DotChecker(std::string text) : s_(std::move(text)) {}

  // nullopt when the text is not a well-formed digraph; error() explains.
  std::optional<DotGraph> check() {
    try {
      DotGraph g;
      auto kw = id();
      if (lower(kw) == "strict") kw = id();
      if (lower(kw) != "digraph") return fail("expected 'digraph'");
      skip_ws();
      if (peek() != '{') id();
      expect('{');
      while (true) {
        skip_ws();
        if (peek() == '}') break;
        if (at_end()) return fail("unterminated graph body");
        statement(g);
        skip_ws();
        if (peek() == ';') ++pos_;
      }
      expect('}');
      skip_ws();
      if (!at_end()) return fail("trailing text after graph");
      for (const auto& [a, b] : g.edges) {
        if (!g.nodes.contains(a) || !g.nodes.contains(b)) return fail("edge references undeclared node");
      }
      return g;
    } catch (const std::string& msg) {
      error_ = msg;
      return std::nullopt;
    }
  }

  const std::string& error() const { return error_; }

 private:
  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  std::optional<DotGraph> fail(const std::string& msg) {
    error_ = msg + " at " + std::to_string(pos_);
    return std::nullopt;
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) throw std::string("expected '") + c + "' at " + std::to_string(pos_);
    ++pos_;
  }

  bool accept_arrow() {
    skip_ws();
    if (s_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      return true;
    }
    if (s_.compare(pos_, 2, "--") == 0) throw std::string("undirected edge in digraph");
    return false;
  }

  std::string id() {
    skip_ws();
    const char c = peek();
    if (c == '"') {
      ++pos_;
      std::string out;
      while (true) {
        if (at_end()) throw std::string("unterminated string");
        const char ch = s_[pos_++];
        if (ch == '"') break;
        if (ch == '\\' && !at_end()) {
          out.push_back(ch);
          out.push_back(s_[pos_++]);
          continue;
        }
        out.push_back(ch);
      }
      return out;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return s_.substr(start, pos_ - start);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
      const auto start = pos_;
      if (c == '-') ++pos_;
      bool digits = false;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
        digits = true;
        ++pos_;
      }
      if (!digits) throw std::string("malformed numeral at ") + std::to_string(start);
      return s_.substr(start, pos_ - start);
    }
    throw std::string("expected identifier at ") + std::to_string(pos_);
  }

  std::map<std::string, std::string> attr_lists() {
    std::map<std::string, std::string> attrs;
    skip_ws();
    while (peek() == '[') {
      ++pos_;
      while (true) {
        skip_ws();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        const auto key = id();
        expect('=');
        attrs[key] = id();
        skip_ws();
        if (peek() == ',' || peek() == ';') ++pos_;
      }
      skip_ws();
    }
    return attrs;
  }

  void statement(DotGraph& g) {
    const auto first = id();
    const auto kw = lower(first);
    if (kw == "graph" || kw == "node" || kw == "edge") {
      attr_lists();
      return;
    }
    if (kw == "subgraph") throw std::string("subgraphs not supported");
    skip_ws();
    if (peek() == '=') {
      ++pos_;
      id();
      return;
    }
    if (accept_arrow()) {
      std::vector<std::string> chain{first, id()};
      while (accept_arrow()) chain.push_back(id());
      const auto attrs = attr_lists();
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        g.edges.emplace_back(chain[i], chain[i + 1]);
        g.edge_attrs.push_back(attrs);
      }
      return;
    }
    g.nodes.insert(first);
    g.node_attrs[first] = attr_lists();
  }

  std::string s_;
  std::size_t pos_ = 0;
  std::string error_;
};

}  // namespace dfq::testing
