// Copyright 2026 The QualiBD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qualibd/dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <tuple>

#include "qualibd/document.hpp"
#include "qualibd/validation.hpp"

namespace qualibd {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, String, Arrow, LBrace, RBrace, Semi, Equals, Invalid, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // raw lexeme
  std::string value;  // decoded string literal
  SourceSpan span;
};

bool ident_start(unsigned char c) { return std::isalpha(c) != 0 || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) != 0 || c == '_'; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

class Lexer {
 public:
  Lexer(std::string_view text, std::vector<ParseError>& errors) : text_(text), errors_(errors) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token tok = next();
      const bool end = tok.kind == Tok::End;
      out.push_back(std::move(tok));
      if (end) return out;
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? static_cast<unsigned char>(text_[pos_ + ahead]) : 0;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!at_end()) {
      const unsigned char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else {
        return;
      }
    }
  }

  Token start(Tok kind) const {
    Token t;
    t.kind = kind;
    t.span = SourceSpan{line_, column_, 0};
    return t;
  }

  void finish(Token& t, std::size_t begin) const {
    t.text = std::string{text_.substr(begin, pos_ - begin)};
    t.span.length = static_cast<int>(pos_ - begin);
  }

  Token next() {
    const std::size_t begin = pos_;
    if (at_end()) return start(Tok::End);
    const unsigned char c = peek();
    Token tok;
    if (ident_start(c)) {
      tok = start(Tok::Ident);
      while (!at_end() && ident_char(peek())) advance();
    } else if (c == '"') {
      return string_literal();
    } else if (c == '-' && peek(1) == '>') {
      tok = start(Tok::Arrow);
      advance();
      advance();
    } else {
      Tok kind = Tok::Invalid;
      switch (c) {
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ';': kind = Tok::Semi; break;
        case '=': kind = Tok::Equals; break;
        default: break;
      }
      tok = start(kind);
      const std::size_t n = kind == Tok::Invalid ? utf8_length(c) : 1;
      for (std::size_t i = 0; i < n && !at_end(); ++i) advance();
    }
    finish(tok, begin);
    return tok;
  }

  void error(SourceSpan span, std::string expected, std::string found, std::string detail) {
    errors_.push_back(ParseError{span, {std::move(expected)}, std::move(found), std::move(detail)});
  }

  Token string_literal() {
    const std::size_t begin = pos_;
    Token tok = start(Tok::String);
    advance();  // opening quote
    for (;;) {
      if (at_end() || peek() == '\n') {
        finish(tok, begin);
        error(tok.span, "'\"'", at_end() ? "end of input" : "end of line",
              "unterminated string literal");
        return tok;
      }
      const unsigned char c = peek();
      if (c == '"') {
        advance();
        break;
      }
      if (c != '\\') {
        tok.value.push_back(static_cast<char>(c));
        advance();
        continue;
      }
      const SourceSpan escape_span{line_, column_, 2};
      advance();
      const unsigned char e = at_end() ? 0 : peek();
      switch (e) {
        case '"': tok.value.push_back('"'); advance(); break;
        case '\\': tok.value.push_back('\\'); advance(); break;
        case 'n': tok.value.push_back('\n'); advance(); break;
        case 't': tok.value.push_back('\t'); advance(); break;
        case 'r': tok.value.push_back('\r'); advance(); break;
        case 'u': {
          advance();
          if (!unicode_escape(tok.value)) {
            error(escape_span, "escape \\u{hex}", "malformed escape", "invalid \\u escape");
          }
          break;
        }
        default:
          error(escape_span, "escape sequence", std::string{"\\"} + static_cast<char>(e),
                "invalid escape sequence");
          if (!at_end() && e != '\n') advance();
          break;
      }
    }
    finish(tok, begin);
    return tok;
  }

  // After "\u": expects "{hex+}".
  bool unicode_escape(std::string& out) {
    if (peek() != '{') return false;
    advance();
    char32_t cp = 0;
    int digits = 0;
    while (!at_end() && std::isxdigit(peek()) != 0 && digits < 6) {
      const unsigned char h = peek();
      cp = cp * 16 + static_cast<char32_t>(std::isdigit(h) != 0 ? h - '0' : std::tolower(h) - 'a' + 10);
      ++digits;
      advance();
    }
    if (digits == 0 || peek() != '}') return false;
    advance();
    if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
    append_utf8(out, cp);
    return true;
  }

  std::string_view text_;
  std::vector<ParseError>& errors_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// ---------------------------------------------------------------------------
// Keywords

struct NodeKeyword {
  std::string_view word;
  NodeKind kind;
  char prefix;
};

constexpr std::array kNodeKeywords{
    NodeKeyword{"goal", NodeKind::Goal, 'G'},
    NodeKeyword{"characteristic", NodeKind::BigDataCharacteristic, 'C'},
    NodeKeyword{"softgoal", NodeKind::NfrSoftgoal, 'S'},
    NodeKeyword{"permutation", NodeKind::Permutation, 'P'},
    NodeKeyword{"opgoal", NodeKind::OperationalizingSoftgoal, 'O'},
    NodeKeyword{"claim", NodeKind::ClaimSoftgoal, 'K'},
};

struct EdgeKeyword {
  std::string_view word;
  EdgeKind kind;
};

constexpr std::array kEdgeKeywords{
    EdgeKeyword{"associate", EdgeKind::AssociationLink},
    EdgeKeyword{"permute", EdgeKind::PermutationLink},
    EdgeKeyword{"decompose", EdgeKind::DecompositionLink},
    EdgeKeyword{"contribute", EdgeKind::ContributionLink},
    EdgeKeyword{"argue", EdgeKind::ArgumentationLink},
};

constexpr std::array<std::string_view, 6> kOtherKeywords{
    "model", "attribute", "quantitative", "qualitative", "label", "permutation"};

std::optional<NodeKind> node_keyword(std::string_view word) {
  for (const auto& k : kNodeKeywords) {
    if (k.word == word) return k.kind;
  }
  return std::nullopt;
}

std::optional<EdgeKind> edge_keyword(std::string_view word) {
  for (const auto& k : kEdgeKeywords) {
    if (k.word == word) return k.kind;
  }
  return std::nullopt;
}

bool reserved(std::string_view word) {
  return node_keyword(word) || edge_keyword(word) ||
         std::ranges::find(kOtherKeywords, word) != kOtherKeywords.end();
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return t.text;
    default: return "'" + t.text + "'";
  }
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<ParseError> errors, const ParseOptions& options)
      : tokens_(std::move(tokens)), errors_(std::move(errors)) {
    Model seed;
    seed.next_id = std::max<std::uint64_t>(1, options.first_id);
    doc_ = Document{std::move(seed)};
  }

  ParseResult run() {
    if (!header()) return ParseResult{std::move(errors_)};
    while (peek().kind != Tok::RBrace && peek().kind != Tok::End) statement();
    if (peek().kind == Tok::End) {
      expected({"'}'"});
    } else {
      advance();
      if (peek().kind != Tok::End) expected({"end of input"});
    }
    if (!errors_.empty()) {
      std::ranges::stable_sort(errors_, [](const ParseError& a, const ParseError& b) {
        return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
      });
      return ParseResult{std::move(errors_)};
    }
    Model model = doc_.model();
    model.name = name_;
    model.id = ModelId{slugify(name_)};
    model.geometry.clear();
    model.revision = 0;
    return ParseResult{std::move(model)};
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  void expected(std::vector<std::string> what) {
    errors_.push_back(ParseError{peek().span, std::move(what), describe(peek()), {}});
  }

  void semantic(SourceSpan span, std::string expected, std::string found, std::string detail) {
    errors_.push_back(ParseError{span, {std::move(expected)}, std::move(found), std::move(detail)});
  }

  // Skips to the next statement boundary: a ';' (consumed), a '}', or the
  // first token on a later line than `line`.
  void sync(int line) {
    while (peek().kind != Tok::End && peek().kind != Tok::RBrace) {
      if (peek().kind == Tok::Semi) {
        advance();
        return;
      }
      if (peek().span.line > line) return;
      advance();
    }
  }

  bool at_statement_keyword() const {
    return peek().kind == Tok::Ident && (node_keyword(peek().text) || edge_keyword(peek().text));
  }

  // A statement ends at ';', '}', end of input, a line break, or the next statement keyword.
  void end_statement(int line) {
    const Token& t = peek();
    if (t.kind == Tok::Semi) {
      advance();
    } else if (t.kind != Tok::RBrace && t.kind != Tok::End && t.span.line == line &&
               !at_statement_keyword()) {
      expected({"';'", "newline"});
      sync(line);
    }
  }

  bool header() {
    if (!at_word("model")) {
      expected({"'model'"});
      return false;
    }
    advance();
    if (peek().kind != Tok::String) {
      expected({"string"});
      return false;
    }
    name_ = advance().value;
    if (peek().kind != Tok::LBrace) {
      expected({"'{'"});
      return false;
    }
    advance();
    return true;
  }

  std::optional<Token> identifier() {
    if (peek().kind == Tok::Ident && !reserved(peek().text)) return advance();
    expected({"identifier"});
    return std::nullopt;
  }

  void statement() {
    const Token& t = peek();
    if (t.kind == Tok::Semi) {
      advance();
      return;
    }
    if (t.kind == Tok::Ident) {
      if (auto kind = node_keyword(t.text)) return declaration(*kind);
      if (auto kind = edge_keyword(t.text)) return link(*kind);
    }
    const int line = t.span.line;
    expected({"declaration", "link", "'}'"});
    advance();
    sync(line);
  }

  void declaration(NodeKind kind) {
    const int line = advance().span.line;
    auto ident = identifier();
    if (!ident) return sync(line);
    std::optional<std::string> name;
    int last_line = ident->span.line;
    if (peek().kind == Tok::String) {
      last_line = peek().span.line;
      name = advance().value;
    }

    std::optional<NodeId> id;
    if (symbols_.contains(ident->text)) {
      semantic(ident->span, "fresh identifier", ident->text, "duplicate identifier " + ident->text);
    } else {
      EditOutcome outcome = doc_.apply(CreateNode{kind, name, std::nullopt, std::nullopt, std::nullopt});
      id = std::get<NodeId>(outcome.created.front());
      symbols_.emplace(ident->text, *id);
    }

    if (kind == NodeKind::Permutation && peek().kind == Tok::LBrace) {
      attribute_block(id);
      last_line = tokens_[pos_ - 1].span.line;
    }
    end_statement(last_line);
  }

  void attribute_block(std::optional<NodeId> owner) {
    advance();  // '{'
    while (peek().kind != Tok::RBrace && peek().kind != Tok::End) {
      if (peek().kind == Tok::Semi) {
        advance();
        continue;
      }
      const int line = peek().span.line;
      if (!at_word("attribute")) {
        expected({"'attribute'", "'}'"});
        advance();
        sync(line);
        continue;
      }
      advance();
      std::optional<AttributeValueKind> value_kind;
      if (at_word("quantitative")) value_kind = AttributeValueKind::Quantitative;
      if (at_word("qualitative")) value_kind = AttributeValueKind::Qualitative;
      if (!value_kind) {
        expected({"'quantitative'", "'qualitative'"});
        sync(line);
        continue;
      }
      int last_line = advance().span.line;
      std::optional<std::string> name;
      std::optional<std::string> value;
      if (peek().kind == Tok::String) {
        last_line = peek().span.line;
        name = advance().value;
      }
      if (peek().kind == Tok::Equals) {
        advance();
        if (peek().kind != Tok::String) {
          expected({"string"});
          sync(line);
          continue;
        }
        last_line = peek().span.line;
        value = advance().value;
      }
      if (owner) doc_.apply(AddPermutationAttribute{*owner, name, *value_kind, value});
      end_statement(last_line);
    }
    if (peek().kind == Tok::End) {
      expected({"'}'"});
      return;
    }
    advance();  // '}'
  }

  std::optional<NodeId> resolve(const Token& ident) {
    auto it = symbols_.find(ident.text);
    if (it != symbols_.end()) return it->second;
    semantic(ident.span, "declared identifier", ident.text, "unknown identifier " + ident.text);
    return std::nullopt;
  }

  void link(EdgeKind kind) {
    const Token keyword = advance();
    const int line = keyword.span.line;
    auto from = identifier();
    if (!from) return sync(line);
    if (peek().kind != Tok::Arrow) {
      expected({"'->'"});
      return sync(line);
    }
    advance();
    auto to = identifier();
    if (!to) return sync(line);
    std::optional<std::string> label;
    int last_line = to->span.line;
    if (at_word("label")) {
      advance();
      if (peek().kind != Tok::String) {
        expected({"string"});
        return sync(line);
      }
      last_line = peek().span.line;
      label = advance().value;
    }
    const Token& last = tokens_[pos_ - 1];

    auto source = resolve(*from);
    auto target = resolve(*to);
    if (source && target) {
      const EditOutcome outcome = doc_.apply(CreateEdge{kind, *source, *target, label});
      if (!outcome.applied()) {
        SourceSpan span = keyword.span;
        span.length = last.span.line == keyword.span.line
                          ? last.span.column + last.span.length - keyword.span.column
                          : keyword.span.length;
        const std::string pair = from->text + " -> " + to->text;
        std::string expectation;
        switch (outcome.reason) {
          case Reason::DuplicateEdge: expectation = "unconnected node pair"; break;
          case Reason::IncompatibleEndpoints: expectation = "compatible endpoint kinds"; break;
          case Reason::SelfLoop: expectation = "distinct endpoints"; break;
          case Reason::LabelNotSupported: expectation = "'contribute' for a labelled link"; break;
          default: expectation = "valid link"; break;
        }
        semantic(span, expectation, pair,
                 std::string{to_string(outcome.reason)} + ": " + std::string{keyword.text} + ' ' +
                     pair);
      }
    }
    end_statement(last_line);
  }

  std::vector<Token> tokens_;
  std::vector<ParseError> errors_;
  std::size_t pos_ = 0;
  Document doc_;
  std::string name_;
  std::map<std::string, NodeId, std::less<>> symbols_;
};

// ---------------------------------------------------------------------------
// Formatter

std::string quote(std::string_view text) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "\"";
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          out += "\\u{";
          if (c >= 0x10) out.push_back(kHex[c >> 4]);
          out.push_back(kHex[c & 0xf]);
          out += '}';
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out += '"';
  return out;
}

char ident_prefix(NodeKind kind) {
  for (const auto& k : kNodeKeywords) {
    if (k.kind == kind) return k.prefix;
  }
  return 'N';
}

}  // namespace

std::string ParseError::message() const {
  std::string out = std::to_string(span.line) + ':' + std::to_string(span.column) + ": ";
  if (!detail.empty()) return out + detail;
  out += "expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out + ", found " + found;
}

std::string_view dsl_keyword(NodeKind kind) noexcept {
  for (const auto& k : kNodeKeywords) {
    if (k.kind == kind) return k.word;
  }
  return "attribute";
}

std::string_view dsl_keyword(EdgeKind kind) noexcept {
  for (const auto& k : kEdgeKeywords) {
    if (k.kind == kind) return k.word;
  }
  return "?";
}

ParseResult parse_dsl(std::string_view text, const ParseOptions& options) {
  std::vector<ParseError> errors;
  std::vector<Token> tokens = Lexer{text, errors}.run();
  return Parser{std::move(tokens), std::move(errors), options}.run();
}

std::string format_dsl(const Model& model) {
  const auto problems = rule_structural(model);
  if (!problems.empty()) {
    std::string what = "cannot format a structurally invalid model:";
    for (const auto& d : problems) what += "\n  " + render_human(d);
    throw FormatError{what};
  }

  std::vector<const Node*> declared;
  for (const auto& [id, node] : model.nodes) {
    if (node.kind != NodeKind::PermutationAttribute) declared.push_back(&node);
  }
  std::ranges::stable_sort(declared, [](const Node* a, const Node* b) {
    return declaration_rank(a->kind) < declaration_rank(b->kind);
  });

  std::map<NodeId, std::size_t> rank;
  std::map<NodeId, std::string> ident;
  std::map<NodeKind, int> counters;
  for (const Node* node : declared) {
    rank.emplace(node->id, rank.size());
    ident.emplace(node->id,
                  std::string(1, ident_prefix(node->kind)) + std::to_string(++counters[node->kind]));
  }

  std::string out = "model " + quote(model.name) + " {\n";
  for (const Node* node : declared) {
    out += "  ";
    out += dsl_keyword(node->kind);
    out += ' ';
    out += ident.at(node->id);
    if (node->name) out += ' ' + quote(*node->name);
    const auto attributes = model.attributes_of(node->id);
    if (node->kind == NodeKind::Permutation && !attributes.empty()) {
      out += " {\n";
      for (NodeId aid : attributes) {
        const Node& attr = model.nodes.at(aid);
        out += "    attribute ";
        out += attr.attr_value_kind == AttributeValueKind::Quantitative ? "quantitative"
                                                                         : "qualitative";
        if (attr.name) out += ' ' + quote(*attr.name);
        if (attr.attr_value) out += " = " + quote(*attr.attr_value);
        out += '\n';
      }
      out += "  }";
    }
    out += '\n';
  }

  std::vector<const Edge*> links;
  for (const auto& [id, edge] : model.edges) links.push_back(&edge);
  std::ranges::sort(links, [&](const Edge* a, const Edge* b) {
    return std::tuple{a->kind, rank.at(a->from), rank.at(a->to)} <
           std::tuple{b->kind, rank.at(b->from), rank.at(b->to)};
  });
  for (const Edge* edge : links) {
    out += "  ";
    out += dsl_keyword(edge->kind);
    out += ' ' + ident.at(edge->from) + " -> " + ident.at(edge->to);
    if (edge->label) out += " label " + quote(*edge->label);
    out += '\n';
  }
  out += "}\n";
  return out;
}

}  // namespace qualibd
