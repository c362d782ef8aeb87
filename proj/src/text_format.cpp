#include "conglab/text_format.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "conglab/error.hpp"

namespace conglab {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

class Tokens {
 public:
  Tokens(std::string_view text, std::string file) : file_(std::move(file)) {
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '\n') {
        ++line;
        ++i;
      } else if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else {
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               text[j] != '#') {
          ++j;
        }
        tokens_.push_back({std::string(text.substr(i, j - i)), line});
        i = j;
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token* peek() const { return done() ? nullptr : &tokens_[pos_]; }
  std::size_t line() const {
    if (!done()) return tokens_[pos_].line;
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  const Token& next(const char* expected) {
    if (done()) fail("", std::string("unexpected end of input, expected ") + expected);
    return tokens_[pos_++];
  }

  void expect(const std::string& keyword) {
    const Token& t = next(keyword.c_str());
    if (t.text != keyword) fail(t, "expected '" + keyword + "'");
  }

  std::size_t integer(const char* what) {
    const Token& t = next(what);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(t, std::string("expected ") + what);
    }
    return v;
  }

  bool next_is_integer() const {
    const Token* t = peek();
    if (t == nullptr || t->text.empty()) return false;
    for (char c : t->text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
  }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw ParseError(file_, t.line, t.text, message);
  }
  [[noreturn]] void fail(const std::string& token, const std::string& message) const {
    throw ParseError(file_, line(), token, message);
  }

  const std::string& file() const { return file_; }

 private:
  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

FiniteAlgebra read_algebra(Tokens& in) {
  in.expect("algebra");
  const Token& name_tok = in.next("algebra name");
  const std::size_t header_line = name_tok.line;
  std::string name = name_tok.text;
  in.expect("size");
  const std::size_t n = in.integer("universe size");
  if (n == 0) in.fail("0", "universe size must be positive");
  std::vector<OperationTable> ops;
  while (in.peek() != nullptr && in.peek()->text == "op") {
    in.next("op");
    OperationTable op;
    op.symbol = in.next("operation symbol").text;
    op.arity = static_cast<unsigned>(in.integer("arity"));
    std::size_t entries = 1;
    for (unsigned i = 0; i < op.arity; ++i) {
      if (entries > size_cap() / n) in.fail(op.symbol, "operation table too large");
      entries *= n;
    }
    op.table.reserve(entries);
    for (std::size_t i = 0; i < entries; ++i) {
      const Token* t = in.peek();
      const std::size_t v = in.integer("table entry");
      if (v >= n) in.fail(*t, "table entry outside universe");
      op.table.push_back(static_cast<Element>(v));
    }
    ops.push_back(std::move(op));
  }
  try {
    return FiniteAlgebra(std::move(name), n, std::move(ops));
  } catch (const InvalidArgument& e) {
    throw ParseError(in.file(), header_line, name_tok.text, e.what());
  }
}

NamedRelation read_relation(Tokens& in) {
  const Token& kw = in.next("relation keyword (rel, diag, full, cong)");
  if (kw.text == "diag" || kw.text == "full") {
    const std::size_t n = in.integer("universe size");
    return {kw.text, kw.text == "diag" ? BinRelation::diagonal(n) : BinRelation::full(n)};
  }
  if (kw.text == "rel") {
    std::string name = in.next("relation name").text;
    const std::size_t n = in.integer("universe size");
    BinRelation r(n);
    while (in.next_is_integer()) {
      const Token& at = *in.peek();
      const std::size_t a = in.integer("pair element");
      const std::size_t b = in.integer("pair element");
      if (a >= n || b >= n) in.fail(at, "pair element outside universe");
      r.set(static_cast<Element>(a), static_cast<Element>(b));
    }
    return {std::move(name), std::move(r)};
  }
  if (kw.text == "cong") {
    std::string name = in.next("congruence name").text;
    const std::size_t n = in.integer("universe size");
    in.expect(":");
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(in.integer("block id"));
    return {std::move(name), Congruence::from_partition(std::move(blocks)).relation()};
  }
  in.fail(kw, "expected rel, diag, full or cong");
}

std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Recursive-descent S-expression reader.
class SexprReader {
 public:
  SexprReader(std::string_view text, std::string file, std::size_t line)
      : text_(text), file_(std::move(file)), line_(line) {}

  Term term() {
    skip_space();
    if (pos_ >= text_.size()) fail("", "unexpected end of term");
    if (text_[pos_] == '(') {
      ++pos_;
      std::string sym = atom();
      if (sym.empty()) fail(std::string(1, peek_char()), "expected operation symbol");
      std::vector<Term> kids;
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) fail(sym, "unclosed '('");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        kids.push_back(term());
      }
      return Term::app(std::move(sym), std::move(kids));
    }
    std::string a = atom();
    if (a.empty()) fail(std::string(1, peek_char()), "unexpected character");
    if (a == "x") return Term::var(0);
    if (a == "y") return Term::var(1);
    if (a == "z") return Term::var(2);
    return Term::app(std::move(a));
  }

  std::string atom() {
    skip_space();
    std::size_t b = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(b, pos_ - b));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(pos_ < text_.size() ? std::string(1, text_[pos_]) : "",
           std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail(std::string(text_.substr(pos_)), "trailing input");
  }

  [[noreturn]] void fail(const std::string& token, const std::string& message) const {
    throw ParseError(file_, line_, token, message);
  }

 private:
  char peek_char() const { return pos_ < text_.size() ? text_[pos_] : ' '; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::string file_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text, const std::string& file) {
  Tokens in(text, file);
  FiniteAlgebra a = read_algebra(in);
  if (!in.done()) in.fail(*in.peek(), "trailing input after algebra");
  return a;
}

std::string serialize_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << a.name() << "\n";
  out << "size " << a.size() << "\n";
  for (const auto& op : a.ops()) {
    out << "op " << op.symbol << " " << op.arity << "\n";
    const std::size_t row = op.arity == 0 ? 1 : a.size();
    for (std::size_t i = 0; i < op.table.size(); ++i) {
      out << op.table[i] << ((i + 1) % row == 0 ? "\n" : " ");
    }
  }
  return out.str();
}

NamedRelation parse_relation(std::string_view text, const std::string& file) {
  Tokens in(text, file);
  NamedRelation r = read_relation(in);
  if (!in.done()) in.fail(*in.peek(), "trailing input after relation");
  return r;
}

std::string serialize_relation(const BinRelation& r, const std::string& name) {
  std::ostringstream out;
  out << "rel " << name << " " << r.size() << "\n";
  for (auto [a, b] : r.pairs()) out << a << " " << b << "\n";
  return out.str();
}

std::string serialize_congruence(const Congruence& c, const std::string& name) {
  std::ostringstream out;
  out << "cong " << name << " " << c.size() << " :";
  for (std::size_t b : c.partition()) out << " " << b;
  out << "\n";
  return out.str();
}

std::map<std::string, BinRelation> parse_role_relations(std::string_view text,
                                                        const std::string& file) {
  Tokens in(text, file);
  std::map<std::string, BinRelation> out;
  while (!in.done()) {
    const Token& role = in.next("role name");
    if (out.count(role.text)) in.fail(role, "duplicate role");
    out.emplace(role.text, read_relation(in).relation);
  }
  return out;
}

Term parse_term(std::string_view text, const std::string& file) {
  SexprReader r(text, file, 1);
  Term t = r.term();
  r.expect_end();
  return t;
}

HMChain parse_hm_certificate(std::string_view text, const std::string& file) {
  HMChain chain;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string body = trim_copy(line);
    if (!body.empty()) {
      SexprReader r(body, file, line_no);
      r.expect('(');
      std::string label = r.atom();
      const std::string want = "t" + std::to_string(chain.terms.size());
      if (label != want) r.fail(label, "expected label " + want);
      chain.terms.push_back(r.term());
      r.expect(')');
      r.expect_end();
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (chain.terms.size() < 2) {
    throw ParseError(file, line_no, "", "certificate needs at least t0 and t1");
  }
  return chain;
}

std::string serialize_hm_certificate(const HMChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.terms.size(); ++i) {
    out += "(t" + std::to_string(i) + " " + to_sexpr(chain.terms[i]) + ")\n";
  }
  return out;
}

NestedSpec parse_nested_spec(std::string_view text, const std::string& file) {
  Tokens in(text, file);
  in.expect("nested");
  const std::size_t m = in.integer("m");
  if (m < 2) in.fail(std::to_string(m), "m must be at least 2");
  FiniteAlgebra a = read_algebra(in);
  std::map<std::string, BinRelation> roles;
  while (!in.done()) {
    const Token& role = in.next("role name");
    if (roles.count(role.text)) in.fail(role, "duplicate role");
    NamedRelation r = read_relation(in);
    if (r.relation.size() != a.size()) in.fail(role, "relation size differs from algebra");
    roles.emplace(role.text, std::move(r.relation));
  }
  NestedInstance inst;
  auto take = [&](const std::string& role) {
    auto it = roles.find(role);
    if (it == roles.end()) in.fail(role, "missing role " + role);
    BinRelation r = std::move(it->second);
    roles.erase(it);
    return r;
  };
  for (std::size_t i = 0; i <= m; ++i) inst.r.push_back(take("R" + std::to_string(i)));
  for (std::size_t i = 1; i <= m; ++i) {
    inst.s.push_back(take("S" + std::to_string(i)));
    inst.t.push_back(take("T" + std::to_string(i)));
  }
  if (!roles.empty()) in.fail(roles.begin()->first, "unexpected role");
  return {std::move(a), std::move(inst)};
}

std::string serialize_nested_spec(const FiniteAlgebra& a, const NestedInstance& inst) {
  std::string out = "nested " + std::to_string(inst.m()) + "\n" + serialize_algebra(a);
  for (std::size_t i = 0; i < inst.r.size(); ++i) {
    out += "R" + std::to_string(i) + " " + serialize_relation(inst.r[i], "R" + std::to_string(i));
  }
  for (unsigned i = 1; i <= inst.m(); ++i) {
    out += "S" + std::to_string(i) + " " + serialize_relation(inst.S(i), "S" + std::to_string(i));
    out += "T" + std::to_string(i) + " " + serialize_relation(inst.T(i), "T" + std::to_string(i));
  }
  return out;
}

}  // namespace conglab
