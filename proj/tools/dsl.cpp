#include "dsl.hpp"

#include <cctype>
#include <limits>

#include "toptree/errors.hpp"
#include "toptree/family.hpp"

namespace toptree::dsl {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Expr read_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after expression");
    return e;
  }

 private:
  Expr expr() {
    skip_ws();
    const std::size_t start = pos_;
    Expr e;
    if (peek() == '(') {
      e.tree = fin();
    } else if (peek() == '_') {
      ++pos_;
      e.kind = ExprKind::empty;
    } else {
      const std::string word = identifier();
      if (word == "seq") {
        e = seq();
      } else if (word == "spine") {
        e = spine();
      } else if (word == "S") {
        e.kind = ExprKind::sord;
        expect('(');
        e.ordinal = ordinal();
        expect(')');
      } else if (word == "comb" || word == "hairycomb") {
        e.kind = ExprKind::comb;
        e.hairy = word == "hairycomb";
        expect('(');
        skip_ws();
        if (peek() == 'w') {
          ++pos_;
        } else {
          e.n = number();
        }
        expect(')');
      } else if (word == "sf") {
        e.kind = ExprKind::sf;
        expect('(');
        e.base.push_back(expr());
        expect(',');
        e.lengths = natspec();
        expect(')');
      } else {
        pos_ = start;
        fail(word.empty() ? "expected an expression" : "unknown constructor '" + word + "'");
      }
    }
    check(e, start);
    return e;
  }

  // semantic checks, reported at the start of the offending expression
  void check(const Expr& e, std::size_t start) {
    if (e.kind == ExprKind::fin || e.kind == ExprKind::empty) return;
    try {
      evaluate(e);
    } catch (const ArgumentError& err) {
      pos_ = start;
      fail(err.what());
    }
  }

  FiniteTree fin() {
    expect('(');
    std::vector<FiniteTree> children;
    for (;;) {
      skip_ws();
      if (peek() == ')') break;
      if (peek() != '(') fail("expected '(' or ')' in a finite tree");
      children.push_back(fin());
    }
    ++pos_;
    return FiniteTree(std::move(children));
  }

  Expr seq() {
    Expr e;
    e.kind = ExprKind::seq;
    expect('(');
    keyword("prefix");
    expect(':');
    e.prefix = list(Entries::fin);
    expect(';');
    keyword("cycle");
    expect(':');
    e.cycle = list(Entries::fin);
    expect(')');
    return e;
  }

  Expr spine() {
    Expr e;
    e.kind = ExprKind::spine;
    expect('[');
    skip_ws();
    const std::size_t mode_at = pos_;
    const std::string mode = identifier();
    if (mode == "attach") {
      e.mode = JoinMode::attach;
    } else if (mode == "glue") {
      e.mode = JoinMode::glue;
    } else {
      pos_ = mode_at;
      fail("expected 'attach' or 'glue'");
    }
    expect(']');
    expect('(');
    skip_ws();
    const std::size_t at = pos_;
    const std::string body = identifier();
    if (body == "prefix") {
      expect(':');
      e.prefix = list(Entries::tree);
      expect(';');
      keyword("cycle");
      expect(':');
      e.cycle = list(Entries::tree);
    } else if (body == "oramp") {
      e.gen = GenKind::oramp;
      expect(':');
      e.ordinal = ordinal();
    } else if (body == "vramp") {
      e.gen = GenKind::vramp;
    } else {
      pos_ = at;
      fail("expected 'prefix', 'oramp' or 'vramp'");
    }
    skip_ws();
    if (peek() == ';') {
      ++pos_;
      keyword("lengths");
      expect(':');
      e.lengths = natspec();
    }
    expect(')');
    return e;
  }

  enum class Entries { fin, tree };

  std::vector<Expr> list(Entries kind) {
    expect('[');
    std::vector<Expr> out;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      out.push_back(expr());
      if (kind == Entries::fin && out.back().kind != ExprKind::fin) {
        pos_ = at;
        fail("seq entries must be finite trees");
      }
      if (kind == Entries::tree && out.back().kind == ExprKind::seq) {
        pos_ = at;
        fail("a seq cannot be a spine attachment");
      }
      skip_ws();
      if (peek() == ']') break;
      expect(',');
    }
    ++pos_;
    return out;
  }

  std::vector<std::size_t> number_list() {
    expect('[');
    std::vector<std::size_t> out;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    for (;;) {
      out.push_back(number());
      skip_ws();
      if (peek() == ']') break;
      expect(',');
    }
    ++pos_;
    return out;
  }

  NatSeq natspec() {
    skip_ws();
    const std::size_t start = pos_;
    const std::string word = identifier();
    NatSeq f;
    if (word == "ppow") {
      expect('(');
      const std::size_t p = number();
      expect(')');
      f = PrimePowers{static_cast<std::uint32_t>(p)};
    } else if (word == "natseq") {
      PeriodicNat nat;
      expect('(');
      keyword("prefix");
      expect(':');
      nat.prefix = number_list();
      expect(';');
      keyword("cycle");
      expect(':');
      nat.cycle = number_list();
      expect(')');
      f = nat;
    } else {
      pos_ = start;
      fail("expected 'ppow' or 'natseq'");
    }
    try {
      Spine probe{JoinMode::attach, Periodic{{}, {Empty{}}}, f};
      SpinedTree checked(probe);
    } catch (const ArgumentError& err) {
      pos_ = start;
      fail(err.what());
    }
    return f;
  }

  Ordinal ordinal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ';' && text_[pos_] != ',') ++pos_;
    const std::string_view part = text_.substr(start, pos_ - start);
    try {
      return parse_ordinal(part);
    } catch (const ParseError& err) {
      // position inside the ordinal back to the whole text
      std::size_t offset = 0, line = 1;
      while (line < err.line() && offset < part.size()) {
        if (part[offset++] == '\n') ++line;
      }
      pos_ = start + offset + err.column() - 1;
      fail(std::string(err.what()).substr(std::string(err.what()).find(": ") + 2));
    }
  }

  std::size_t number() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::size_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t d = static_cast<std::size_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint32_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::string identifier() {
    skip_ws();
    std::string out;
    while (std::isalpha(static_cast<unsigned char>(peek()))) out += text_[pos_++];
    return out;
  }

  void keyword(const char* word) {
    skip_ws();
    const std::size_t at = pos_;
    if (identifier() != word) {
      pos_ = at;
      fail(std::string("expected '") + word + "'");
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<Expr>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += print(xs[i]);
  }
  return out + "]";
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string print_nat(const NatSeq& f) {
  if (const auto* p = std::get_if<PrimePowers>(&f)) return "ppow(" + std::to_string(p->p) + ")";
  const auto& nat = std::get<PeriodicNat>(f);
  return "natseq(prefix:" + join(nat.prefix) + ";cycle:" + join(nat.cycle) + ")";
}

std::vector<SpinedTree> trees(const std::vector<Expr>& xs) {
  std::vector<SpinedTree> out;
  for (const auto& x : xs) out.push_back(evaluate_tree(x));
  return out;
}

}  // namespace

Expr parse(std::string_view text) { return Reader(text).read_all(); }

std::string print(const Expr& e) {
  switch (e.kind) {
    case ExprKind::fin:
      return to_string(e.tree);
    case ExprKind::empty:
      return "_";
    case ExprKind::seq:
      return "seq(prefix:" + join(e.prefix) + ";cycle:" + join(e.cycle) + ")";
    case ExprKind::spine: {
      std::string out = e.mode == JoinMode::attach ? "spine[attach](" : "spine[glue](";
      if (e.gen == GenKind::periodic) {
        out += "prefix:" + join(e.prefix) + ";cycle:" + join(e.cycle);
      } else if (e.gen == GenKind::oramp) {
        out += "oramp:" + to_string(e.ordinal);
      } else {
        out += "vramp";
      }
      if (e.lengths) out += ";lengths:" + print_nat(*e.lengths);
      return out + ")";
    }
    case ExprKind::sord:
      return "S(" + to_string(e.ordinal) + ")";
    case ExprKind::comb:
      return std::string(e.hairy ? "hairycomb(" : "comb(") + (e.n ? std::to_string(*e.n) : "w") + ")";
    case ExprKind::sf:
      return "sf(" + print(e.base.at(0)) + "," + print_nat(*e.lengths) + ")";
  }
  return {};
}

Value evaluate(const Expr& e) {
  switch (e.kind) {
    case ExprKind::fin:
      return SpinedTree(Fin{e.tree});
    case ExprKind::empty:
      return SpinedTree(Empty{});
    case ExprKind::seq: {
      std::vector<FiniteTree> prefix, cycle;
      for (const auto& x : e.prefix) prefix.push_back(x.tree);
      for (const auto& x : e.cycle) cycle.push_back(x.tree);
      return EPSeq(std::move(prefix), std::move(cycle));
    }
    case ExprKind::spine: {
      GenSeq gen = VRamp{};
      if (e.gen == GenKind::periodic) {
        gen = Periodic{trees(e.prefix), trees(e.cycle)};
      } else if (e.gen == GenKind::oramp) {
        gen = OrdinalRamp{e.ordinal};
      }
      return SpinedTree(Spine{e.mode, std::move(gen), e.lengths.value_or(PeriodicNat{})});
    }
    case ExprKind::sord:
      return SpinedTree(SOrd{e.ordinal});
    case ExprKind::comb:
      return make_comb(e.n, e.hairy);
    case ExprKind::sf:
      return s_f(evaluate_tree(e.base.at(0)), *e.lengths);
  }
  throw ArgumentError("unknown expression kind");
}

SpinedTree evaluate_tree(const Expr& e) {
  Value v = evaluate(e);
  if (auto* t = std::get_if<SpinedTree>(&v)) return *t;
  throw ArgumentError("expected a tree, got a sequence");
}

Expr quote(const SpinedTree& t) {
  Expr e;
  if (t.is<Fin>()) {
    e.tree = t.as<Fin>().tree;
  } else if (t.is<Empty>()) {
    e.kind = ExprKind::empty;
  } else if (t.is<SOrd>()) {
    e.kind = ExprKind::sord;
    e.ordinal = t.as<SOrd>().alpha;
  } else {
    const Spine& s = t.as<Spine>();
    e.kind = ExprKind::spine;
    e.mode = s.mode;
    if (const auto* p = std::get_if<Periodic>(&s.gen)) {
      for (const auto& x : p->prefix) e.prefix.push_back(quote(x));
      for (const auto& x : p->cycle) e.cycle.push_back(quote(x));
    } else if (const auto* r = std::get_if<OrdinalRamp>(&s.gen)) {
      e.gen = GenKind::oramp;
      e.ordinal = r->limit;
    } else {
      e.gen = GenKind::vramp;
    }
    if (!(s.lengths == NatSeq(PeriodicNat{}))) e.lengths = s.lengths;
  }
  return e;
}

Expr quote(const EPSeq& f) {
  Expr e;
  e.kind = ExprKind::seq;
  for (const auto& t : f.prefix()) e.prefix.push_back(quote(SpinedTree(Fin{t})));
  for (const auto& t : f.cycle()) e.cycle.push_back(quote(SpinedTree(Fin{t})));
  return e;
}

std::string print(const SpinedTree& t) { return print(quote(t)); }

}  // namespace toptree::dsl
