#include "dot_check.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace lemmaflow::testkit {

const DotGraph::Node* DotGraph::node(const std::string& id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

namespace {

struct Token {
  enum Kind { Id, Punct, End } kind;
  std::string text;
  bool quoted = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {Token::End, ""};
    const char c = s_[pos_];
    if (c == '-' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '>' || s_[pos_ + 1] == '-')) {
      pos_ += 2;
      return {Token::Punct, std::string(s_.substr(pos_ - 2, 2))};
    }
    if (std::string_view("{}[]=;,").find(c) != std::string_view::npos) {
      ++pos_;
      return {Token::Punct, std::string(1, c)};
    }
    if (c == '"') {
      std::string out;
      ++pos_;
      while (true) {
        if (pos_ >= s_.size()) throw std::runtime_error("unterminated string");
        const char d = s_[pos_++];
        if (d == '"') break;
        if (d == '\\' && pos_ < s_.size() && s_[pos_] == '"') {
          out += '"';
          ++pos_;
          continue;
        }
        out += d;
      }
      return {Token::Id, out, true};
    }
    auto ident_start = [](unsigned char ch) { return std::isalpha(ch) || ch == '_' || ch >= 0x80; };
    if (ident_start(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (ident_start(static_cast<unsigned char>(s_[pos_])) || std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
        ++pos_;
      }
      return {Token::Id, std::string(s_.substr(start, pos_ - start))};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
      const std::size_t start = pos_++;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return {Token::Id, std::string(s_.substr(start, pos_ - start))};
    }
    throw std::runtime_error(std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

bool keyword(const Token& t, std::string_view word) {
  if (t.kind != Token::Id || t.quoted || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { advance(); }

  DotGraph graph() {
    DotGraph g;
    if (keyword(tok_, "strict")) advance();
    if (keyword(tok_, "digraph")) {
      g.directed = true;
    } else if (!keyword(tok_, "graph")) {
      fail("expected 'graph' or 'digraph'");
    }
    advance();
    if (tok_.kind == Token::Id) {
      g.name = tok_.text;
      advance();
    }
    expect("{");
    while (!is("}")) {
      statement(g);
      if (is(";")) advance();
    }
    advance();
    if (tok_.kind != Token::End) fail("trailing input after '}'");
    return g;
  }

 private:
  void advance() { tok_ = lex_.next(); }
  bool is(std::string_view p) const { return tok_.kind == Token::Punct && tok_.text == p; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(msg + (tok_.kind == Token::End ? " at end of input" : " near '" + tok_.text + "'"));
  }
  void expect(std::string_view p) {
    if (!is(p)) fail("expected '" + std::string(p) + "'");
    advance();
  }
  std::string id() {
    if (tok_.kind != Token::Id) fail("expected an ID");
    if (!tok_.quoted && (keyword(tok_, "node") || keyword(tok_, "edge") || keyword(tok_, "graph") ||
                         keyword(tok_, "digraph") || keyword(tok_, "subgraph") || keyword(tok_, "strict"))) {
      fail("keyword used as ID");
    }
    std::string s = tok_.text;
    advance();
    return s;
  }

  std::map<std::string, std::string> attr_lists() {
    std::map<std::string, std::string> attrs;
    while (is("[")) {
      advance();
      while (!is("]")) {
        std::string key = id();
        expect("=");
        attrs[key] = id();
        if (is(",") || is(";")) advance();
      }
      advance();
    }
    return attrs;
  }

  void statement(DotGraph& g) {
    if (keyword(tok_, "node") || keyword(tok_, "edge") || keyword(tok_, "graph")) {
      advance();
      if (!is("[")) fail("expected '['");
      attr_lists();
      return;
    }
    if (keyword(tok_, "subgraph") || is("{")) fail("subgraphs are not supported");
    std::string first = id();
    if (is("=")) {
      advance();
      id();
      return;
    }
    const std::string op = g.directed ? "->" : "--";
    if (is("->") || is("--")) {
      std::vector<std::string> chain{first};
      while (is("->") || is("--")) {
        if (tok_.text != op) fail("edge operator does not match graph kind");
        advance();
        chain.push_back(id());
      }
      attr_lists();
      g.edges.push_back(std::move(chain));
      return;
    }
    auto attrs = attr_lists();
    g.nodes.push_back({std::move(first), std::move(attrs)});
  }

  Lexer lex_;
  Token tok_{Token::End, ""};
};

}  // namespace

DotParse parse_dot(std::string_view text) {
  DotParse out;
  try {
    out.graph = Parser(text).graph();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace lemmaflow::testkit
