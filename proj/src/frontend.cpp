#include "fl0/frontend.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fl0/errors.hpp"

namespace fl0 {

SyntaxError::SyntaxError(std::size_t line, std::size_t column, std::string expected, std::string found)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected + ", found " +
                 (found.empty() ? std::string("end of input") : "'" + found + "'")),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

UnsupportedConstructor::UnsupportedConstructor(std::size_t line, std::size_t column, std::string constructor)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": unsupported constructor '" + constructor +
                 "' (only top, conjunction and value restriction are allowed)"),
      constructor_(std::move(constructor)) {}

namespace {

struct Token {
  enum class Kind : std::uint8_t { Open, Close, Word, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_name_start(unsigned char ch) { return std::isalpha(ch) || ch >= 0x80; }
bool is_name_char(unsigned char ch) { return std::isalnum(ch) || ch == '_' || ch >= 0x80; }

/// Splits text into parentheses and words. In `.flu` mode words must be
/// NAMEs; in axiom mode anything up to whitespace or a parenthesis is a word,
/// and `<...>` is kept whole so IRIs may contain parentheses.
class Lexer {
 public:
  Lexer(std::string_view text, bool strict_names, char comment)
      : text_(text), strict_(strict_names), comment_(comment) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char ch = text_[pos_];
      if (ch == '(' || ch == ')') {
        t.kind = ch == '(' ? Token::Kind::Open : Token::Kind::Close;
        t.text = std::string(1, ch);
        advance();
      } else if (strict_) {
        if (!is_name_start(static_cast<unsigned char>(ch))) {
          throw SyntaxError(line_, column_, "'(', ')' or a name", std::string(1, ch));
        }
        t.kind = Token::Kind::Word;
        while (pos_ < text_.size() && is_name_char(static_cast<unsigned char>(text_[pos_]))) {
          t.text += text_[pos_];
          advance();
        }
      } else {
        t.kind = Token::Kind::Word;
        if (ch == '<') {
          while (pos_ < text_.size() && text_[pos_] != '>') {
            t.text += text_[pos_];
            advance();
          }
          if (pos_ >= text_.size()) throw SyntaxError(t.line, t.column, "'>' closing the IRI", "");
          t.text += '>';
          advance();
        } else {
          while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                 text_[pos_] != '(' && text_[pos_] != ')') {
            t.text += text_[pos_];
            advance();
          }
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == comment_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  bool strict_;
  char comment_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  void expect(Token::Kind kind, std::string_view what) {
    const Token& t = next();
    if (t.kind != kind) throw SyntaxError(t.line, t.column, std::string(what), t.text);
  }
  const Token& expect_word(std::string_view what) {
    const Token& t = next();
    if (t.kind != Token::Kind::Word) throw SyntaxError(t.line, t.column, std::string(what), t.text);
    return t;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

RoleId intern_role_checked(Signature& sig, const Token& t) {
  if (Signature::has_variable_suffix(t.text)) {
    throw SyntaxError(t.line, t.column, "a role name without the _var suffix", t.text);
  }
  return sig.intern_role(t.text);
}

NameId intern_concept_name(Signature& sig, const Token& t) {
  try {
    return sig.intern_name(t.text);
  } catch (const std::invalid_argument&) {
    throw SyntaxError(t.line, t.column, "a name not reserved for generated variables", t.text);
  }
}

// ---- .flu ----

class FluParser {
 public:
  FluParser(std::string_view text, Signature base)
      : tokens_(Lexer(text, true, ';').run()) {
    src_.signature = std::move(base);
  }

  ProblemSource run() {
    while (!tokens_.at_end()) {
      tokens_.expect(Token::Kind::Open, "'('");
      const Token& head = tokens_.expect_word("sub, equiv or roles");
      if (head.text == "roles") {
        intern_role_checked(src_.signature, tokens_.expect_word("a role name"));
        while (tokens_.peek().kind == Token::Kind::Word) intern_role_checked(src_.signature, tokens_.next());
        tokens_.expect(Token::Kind::Close, "')' closing roles");
      } else if (head.text == "sub" || head.text == "equiv") {
        Axiom ax;
        ax.kind = head.text == "sub" ? Axiom::Kind::Subsumption : Axiom::Kind::Equivalence;
        ax.lhs = concept_expr();
        ax.rhs = concept_expr();
        tokens_.expect(Token::Kind::Close, "')' closing the axiom");
        src_.axioms.push_back(std::move(ax));
      } else {
        throw SyntaxError(head.line, head.column, "sub, equiv or roles", head.text);
      }
    }
    return std::move(src_);
  }

 private:
  Concept concept_expr() {
    const Token& t = tokens_.next();
    if (t.kind == Token::Kind::Word) {
      if (t.text == "top") return Concept::top();
      return Concept::atom(intern_concept_name(src_.signature, t));
    }
    if (t.kind != Token::Kind::Open) throw SyntaxError(t.line, t.column, "a concept", t.text);
    const Token& head = tokens_.expect_word("and or all");
    if (head.text == "and") {
      std::vector<Concept> conjuncts;
      conjuncts.push_back(concept_expr());
      conjuncts.push_back(concept_expr());
      while (tokens_.peek().kind != Token::Kind::Close) {
        if (tokens_.at_end()) throw SyntaxError(tokens_.peek().line, tokens_.peek().column, "')' closing and", "");
        conjuncts.push_back(concept_expr());
      }
      tokens_.next();
      Concept c;
      c.kind = Concept::Kind::And;
      c.children = std::move(conjuncts);
      return c;
    }
    if (head.text == "all") {
      RoleId r = intern_role_checked(src_.signature, tokens_.expect_word("a role name"));
      Concept body = concept_expr();
      tokens_.expect(Token::Kind::Close, "')' closing all");
      return Concept::all(r, std::move(body));
    }
    throw UnsupportedConstructor(head.line, head.column, head.text);
  }

  TokenStream tokens_;
  ProblemSource src_;
};

// ---- functional-style axiom subset ----

class AxiomSubsetParser {
 public:
  AxiomSubsetParser(std::string_view text, Signature base) : tokens_(Lexer(text, false, '#').run()) {
    src_.signature = std::move(base);
  }

  ProblemSource run() {
    items(false);
    return std::move(src_);
  }

 private:
  // Top level, or the body of Ontology( ... ).
  void items(bool inside_ontology) {
    while (true) {
      const Token& t = tokens_.peek();
      if (t.kind == Token::Kind::End) {
        if (inside_ontology) throw SyntaxError(t.line, t.column, "')' closing Ontology", "");
        return;
      }
      if (t.kind == Token::Kind::Close) {
        if (!inside_ontology) throw SyntaxError(t.line, t.column, "an axiom", t.text);
        tokens_.next();
        return;
      }
      if (t.kind == Token::Kind::Open) throw SyntaxError(t.line, t.column, "an axiom", t.text);
      const Token& head = tokens_.next();
      tokens_.expect(Token::Kind::Open, "'(' after " + head.text);
      if (head.text == "Prefix" || head.text == "Import" || head.text == "Annotation") {
        skip_balanced();
      } else if (head.text == "Ontology") {
        while (tokens_.peek().kind == Token::Kind::Word && tokens_.peek().text.starts_with("<")) tokens_.next();
        items(true);
      } else if (head.text == "Declaration") {
        declaration();
      } else if (head.text == "SubClassOf") {
        Axiom ax;
        ax.lhs = class_expression();
        ax.rhs = class_expression();
        tokens_.expect(Token::Kind::Close, "')' closing SubClassOf");
        src_.axioms.push_back(std::move(ax));
      } else if (head.text == "EquivalentClasses") {
        std::vector<Concept> operands;
        operands.push_back(class_expression());
        operands.push_back(class_expression());
        while (tokens_.peek().kind != Token::Kind::Close) {
          if (tokens_.at_end()) {
            throw SyntaxError(tokens_.peek().line, tokens_.peek().column, "')' closing EquivalentClasses", "");
          }
          operands.push_back(class_expression());
        }
        tokens_.next();
        for (std::size_t i = 1; i < operands.size(); ++i) {
          src_.axioms.push_back(Axiom{Axiom::Kind::Equivalence, operands[0], operands[i]});
        }
      } else {
        throw UnsupportedConstructor(head.line, head.column, head.text);
      }
    }
  }

  void skip_balanced() {
    int depth = 1;
    while (depth > 0) {
      const Token& t = tokens_.next();
      if (t.kind == Token::Kind::End) throw SyntaxError(t.line, t.column, "')'", "");
      if (t.kind == Token::Kind::Open) ++depth;
      if (t.kind == Token::Kind::Close) --depth;
    }
  }

  void declaration() {
    const Token& kind = tokens_.expect_word("an entity type");
    tokens_.expect(Token::Kind::Open, "'('");
    const Token& entity = tokens_.expect_word("an entity name");
    if (kind.text == "Class") {
      if (!is_thing(entity.text)) intern_concept_name(src_.signature, with_text(entity, local_name(entity)));
    } else if (kind.text == "ObjectProperty") {
      intern_role_checked(src_.signature, with_text(entity, local_name(entity)));
    } else {
      throw UnsupportedConstructor(kind.line, kind.column, kind.text);
    }
    tokens_.expect(Token::Kind::Close, "')'");
    tokens_.expect(Token::Kind::Close, "')' closing Declaration");
  }

  Concept class_expression() {
    const Token& t = tokens_.next();
    if (t.kind != Token::Kind::Word) throw SyntaxError(t.line, t.column, "a class expression", t.text);
    if (tokens_.peek().kind != Token::Kind::Open) {
      if (is_thing(t.text)) return Concept::top();
      if (t.text == "owl:Nothing") throw UnsupportedConstructor(t.line, t.column, t.text);
      return Concept::atom(intern_concept_name(src_.signature, with_text(t, local_name(t))));
    }
    tokens_.next();
    if (t.text == "ObjectIntersectionOf") {
      std::vector<Concept> conjuncts;
      conjuncts.push_back(class_expression());
      while (tokens_.peek().kind != Token::Kind::Close) {
        if (tokens_.at_end()) {
          throw SyntaxError(tokens_.peek().line, tokens_.peek().column, "')' closing ObjectIntersectionOf", "");
        }
        conjuncts.push_back(class_expression());
      }
      tokens_.next();
      if (conjuncts.size() == 1) return std::move(conjuncts.front());
      Concept c;
      c.kind = Concept::Kind::And;
      c.children = std::move(conjuncts);
      return c;
    }
    if (t.text == "ObjectAllValuesFrom") {
      const Token& role = tokens_.expect_word("an object property");
      if (tokens_.peek().kind == Token::Kind::Open) throw UnsupportedConstructor(role.line, role.column, role.text);
      RoleId r = intern_role_checked(src_.signature, with_text(role, local_name(role)));
      Concept body = class_expression();
      tokens_.expect(Token::Kind::Close, "')' closing ObjectAllValuesFrom");
      return Concept::all(r, std::move(body));
    }
    throw UnsupportedConstructor(t.line, t.column, t.text);
  }

  static bool is_thing(std::string_view text) {
    return text == "owl:Thing" || text == "<http://www.w3.org/2002/07/owl#Thing>";
  }

  static Token with_text(const Token& t, std::string text) {
    Token out = t;
    out.text = std::move(text);
    return out;
  }

  // `:A`, `ex:A` and `<http://...#A>` all name A.
  static std::string local_name(const Token& t) {
    std::string_view s = t.text;
    if (s.starts_with("<") && s.ends_with(">")) {
      s = s.substr(1, s.size() - 2);
      auto cut = s.find_last_of("#/");
      if (cut != std::string_view::npos) s = s.substr(cut + 1);
    } else if (auto colon = s.rfind(':'); colon != std::string_view::npos) {
      s = s.substr(colon + 1);
    }
    if (s.empty() || !is_name_start(static_cast<unsigned char>(s.front())) ||
        !std::all_of(s.begin(), s.end(), [](char ch) { return is_name_char(static_cast<unsigned char>(ch)); })) {
      throw SyntaxError(t.line, t.column, "a class or property name", t.text);
    }
    return std::string(s);
  }

  TokenStream tokens_;
  ProblemSource src_;
};

}  // namespace

ProblemSource parse_text(std::string_view text, Signature base) { return FluParser(text, std::move(base)).run(); }

ProblemSource parse_axiom_subset(std::string_view text, Signature base) {
  return AxiomSubsetParser(text, std::move(base)).run();
}

InputFormat detect_format(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".ofn" || ext == ".owl" || ext == ".owx" || ext == ".fss") return InputFormat::AxiomSubset;
  return InputFormat::Flu;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemSource load_problem(const std::filesystem::path& path, InputFormat format) {
  std::string text = read_file(path);
  if (format == InputFormat::Auto) format = detect_format(path);
  return format == InputFormat::AxiomSubset ? parse_axiom_subset(text) : parse_text(text);
}

std::string render_axiom(const Axiom& axiom, const Signature& sig) {
  std::string out = axiom.kind == Axiom::Kind::Subsumption ? "(sub " : "(equiv ";
  out += render_flu(axiom.lhs, sig);
  out += ' ';
  out += render_flu(axiom.rhs, sig);
  out += ')';
  return out;
}

std::string render_flu(const ProblemSource& src) {
  std::string out;
  if (src.signature.role_count() > 0) {
    out += "(roles";
    for (RoleId r : src.signature.roles()) {
      out += ' ';
      out += src.signature.role_name(r);
    }
    out += ")\n";
  }
  for (const auto& ax : src.axioms) {
    out += render_axiom(ax, src.signature);
    out += '\n';
  }
  return out;
}

std::vector<GoalSubsumption> goal_subsumptions(const ProblemSource& src) {
  std::vector<GoalSubsumption> out;
  auto add = [&out](const ConceptNF& lhs, const ConceptNF& rhs) {
    for (const auto& p : rhs) out.push_back(GoalSubsumption{lhs, p});
  };
  for (const auto& ax : src.axioms) {
    ConceptNF lhs = normalize(ax.lhs);
    ConceptNF rhs = normalize(ax.rhs);
    add(lhs, rhs);
    if (ax.kind == Axiom::Kind::Equivalence) add(rhs, lhs);
  }
  return out;
}

Substitution read_substitution(const ProblemSource& solution) {
  const Signature& sig = solution.signature;
  Substitution sigma;
  std::set<NameId> seen;
  for (const auto& ax : solution.axioms) {
    if (ax.kind != Axiom::Kind::Equivalence || ax.lhs.kind != Concept::Kind::Name) {
      throw InputError("solution lines must have the form (equiv VARIABLE concept)");
    }
    NameId var = ax.lhs.name;
    if (!sig.is_variable(var)) {
      throw InputError("solution assigns to constant '" + std::string(sig.name(var)) + "'");
    }
    if (!seen.insert(var).second) {
      throw InputError("solution assigns '" + std::string(sig.name(var)) + "' twice");
    }
    ConceptNF value = normalize(ax.rhs);
    for (const auto& p : value) {
      if (sig.is_variable(p.head)) {
        throw InputError("value of '" + std::string(sig.name(var)) + "' mentions variable '" +
                         std::string(sig.name(p.head)) + "'");
      }
    }
    sigma.assign(var, std::move(value));
  }
  return sigma;
}

std::string render_substitution(const Substitution& sigma, std::span<const NameId> variables, const Signature& sig) {
  std::string out;
  for (NameId v : variables) {
    out += "(equiv ";
    out += sig.name(v);
    out += ' ';
    out += render_flu(sigma.value(v), sig);
    out += ")\n";
  }
  return out;
}

}  // namespace fl0
