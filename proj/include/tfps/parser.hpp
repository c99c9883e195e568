#ifndef TFPS_PARSER_HPP
#define TFPS_PARSER_HPP

#include <json.hpp>

#include <cctype>
#include <string>
#include <vector>

#include "tfps/series.hpp"

namespace tfps {

// Coefficient printing hooks. Fp residues are never printed with a minus
// sign; rationals are, so "- 1/2*x" round-trips through the grammar.
template <class K>
struct CoeffIO;

template <>
struct CoeffIO<Rational> {
  static bool is_negative(const Rational& c) { return c.numerator() < 0; }
  static std::string field_name(Rational::Meta) { return "Q"; }
};

template <>
struct CoeffIO<Fp> {
  static bool is_negative(const Fp&) { return false; }
  static std::string field_name(Fp::Meta m) { return m.name(); }
};

namespace detail {

enum class TokKind { Nat, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](TokKind k, std::string s) {
    out.push_back({k, std::move(s), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(TokKind::Nat, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(TokKind::Ident, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    TokKind k;
    switch (c) {
      case '+': k = TokKind::Plus; break;
      case '-': k = TokKind::Minus; break;
      case '*': k = TokKind::Star; break;
      case '^': k = TokKind::Caret; break;
      case '/': k = TokKind::Slash; break;
      case '(': k = TokKind::LParen; break;
      case ')': k = TokKind::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    push(k, std::string(1, c));
    ++col;
    ++i;
  }
  out.push_back({TokKind::End, "", line, col});
  return out;
}

// Recursive-descent parser over the grammar
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := nat ('/' nat)? | ident | '(' expr ')'
// Evaluation happens directly into Series values; no AST is retained.
template <class K>
class Parser {
 public:
  Parser(const std::string& text, ContextPtr<K> ctx, int precision)
      : toks_(lex(text)), ctx_(std::move(ctx)), prec_(precision) {}

  Series<K> run() {
    Series<K> v = expr();
    expect(TokKind::End, "end of input");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  void expect(TokKind k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("expected " + what + ", found '" + peek().text + "'",
                       peek().line, peek().col);
    ++pos_;
  }

  Series<K> expr() {
    Series<K> v = term();
    while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
      bool minus = next().kind == TokKind::Minus;
      Series<K> t = term();
      v = minus ? v - t : v + t;
    }
    return v;
  }

  Series<K> term() {
    Series<K> v = factor();
    while (peek().kind == TokKind::Star) {
      next();
      v = v * factor();
    }
    return v;
  }

  Series<K> factor() {
    if (peek().kind == TokKind::Minus) {
      next();
      return -factor();
    }
    Series<K> v = atom();
    if (peek().kind == TokKind::Caret) {
      next();
      Token t = peek();
      expect(TokKind::Nat, "a natural-number exponent");
      return power(v, parse_nat(t));
    }
    return v;
  }

  Series<K> power(const Series<K>& v, long e) {
    Series<K> acc = Series<K>::constant(ctx_, prec_, K::one(ctx_->field));
    Series<K> base = v;
    long k = e;
    while (k > 0) {
      if (k & 1) acc = acc * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return acc;
  }

  long parse_nat(const Token& t) {
    if (t.text.size() > 9)
      throw ParseError("exponent overflow", t.line, t.col);
    return std::stol(t.text);
  }

  Series<K> atom() {
    Token t = peek();
    switch (t.kind) {
      case TokKind::Nat: {
        next();
        std::string num = t.text, den = "1";
        if (peek().kind == TokKind::Slash) {
          next();
          Token d = peek();
          expect(TokKind::Nat, "a denominator");
          den = d.text;
        }
        K c = K::from_decimal_strings(ctx_->field, num, den);
        return Series<K>::constant(ctx_, prec_, c);
      }
      case TokKind::Ident: {
        next();
        int idx;
        try {
          idx = ctx_->var_index(t.text);
        } catch (const ContextError&) {
          throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
        }
        return Series<K>::variable(ctx_, prec_, idx);
      }
      case TokKind::LParen: {
        next();
        Series<K> v = expr();
        expect(TokKind::RParen, "')'");
        return v;
      }
      default:
        throw ParseError("expected a number, variable or '('; found '" +
                             t.text + "'",
                         t.line, t.col);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ContextPtr<K> ctx_;
  int prec_;
};

}  // namespace detail

// Parses an expression to an exact polynomial value at the given working
// precision. Errors carry line/column positions.
template <class K>
Series<K> parse_expr(const std::string& text, ContextPtr<K> ctx,
                     int precision) {
  detail::Parser<K> p(text, std::move(ctx), precision);
  return p.run();
}

// Deterministic printer; terms in graded-lex sequence, trailing precision
// marker. parse_expr(format_series(f)) reproduces f below precision.
template <class K>
std::string format_series(const Series<K>& f) {
  std::string out;
  const auto& ctx = *f.context();
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    K mag = CoeffIO<K>::is_negative(c) ? -c : c;
    if (first) {
      if (CoeffIO<K>::is_negative(c)) out += "-";
      first = false;
    } else {
      out += CoeffIO<K>::is_negative(c) ? " - " : " + ";
    }
    std::string vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += ctx.vars[i];
      if (e[i] > 1) vars += "^" + std::to_string(e[i]);
    }
    bool unit_coeff = mag == K::one(ctx.field);
    if (vars.empty()) {
      out += mag.to_string();
    } else if (unit_coeff) {
      out += vars;
    } else {
      out += mag.to_string() + "*" + vars;
    }
  }
  if (first) out += "0";
  out += " + O(deg " + std::to_string(f.precision()) + ")";
  return out;
}

// Splits the trailing " + O(deg N)" marker produced by format_series, if
// present, returning the expression body and the declared precision.
struct MarkedExpr {
  std::string body;
  std::optional<int> precision;
};
inline MarkedExpr split_precision_marker(const std::string& text) {
  auto pos = text.rfind("+ O(deg ");
  if (pos == std::string::npos) return {text, std::nullopt};
  auto close = text.find(')', pos);
  if (close == std::string::npos) return {text, std::nullopt};
  int prec = 0;
  try {
    prec = std::stoi(text.substr(pos + 8, close - pos - 8));
  } catch (const std::exception&) {
    return {text, std::nullopt};
  }
  std::string body = text.substr(0, pos);
  while (!body.empty() && (body.back() == ' ' || body.back() == '\n'))
    body.pop_back();
  return {body, prec};
}

// Parses output of format_series back to a series: the precision marker,
// when present, overrides the caller's working precision.
template <class K>
Series<K> parse_formatted(const std::string& text, ContextPtr<K> ctx,
                          int default_precision) {
  MarkedExpr m = split_precision_marker(text);
  return parse_expr<K>(m.body, std::move(ctx),
                       m.precision.value_or(default_precision));
}

// Term-list file format: a JSON envelope with the context header and one
// record per term, all coefficients as exact decimal strings.
template <class K>
nlohmann::json series_to_json(const Series<K>& f) {
  nlohmann::json j;
  j["variables"] = f.context()->vars;
  j["field"] = CoeffIO<K>::field_name(f.context()->field);
  j["precision"] = f.precision();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : f.terms()) {
    nlohmann::json rec;
    rec["exponents"] = e;
    if constexpr (std::is_same_v<K, Rational>) {
      rec["numerator"] = c.numerator().get_str();
      rec["denominator"] = c.denominator().get_str();
    } else {
      rec["numerator"] = c.to_string();
      rec["denominator"] = "1";
    }
    terms.push_back(std::move(rec));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline std::string json_field_name(const nlohmann::json& j) {
  if (!j.contains("field") || !j["field"].is_string())
    throw ParseError("term-list file lacks a \"field\" string", 1, 1);
  return j["field"].get<std::string>();
}

template <class K>
Series<K> series_from_json(const nlohmann::json& j, typename K::Meta meta) {
  if (!j.contains("variables") || !j.contains("precision") || !j.contains("terms"))
    throw ParseError("term-list file lacks variables/precision/terms", 1, 1);
  auto ctx = make_context<K>(j["variables"].get<std::vector<std::string>>(), meta);
  Series<K> f(ctx, j["precision"].get<int>());
  for (const auto& rec : j["terms"]) {
    Expo e = rec["exponents"].get<Expo>();
    K c = K::from_decimal_strings(meta, rec["numerator"].get<std::string>(),
                                  rec["denominator"].get<std::string>());
    f.add_term(e, c);
  }
  return f;
}

}  // namespace tfps

#endif
