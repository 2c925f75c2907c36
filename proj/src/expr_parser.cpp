#include "lrps/expr_parser.hpp"

#include <cctype>
#include <string>

#include "lrps/error.hpp"

namespace lrps {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int dimension) : text_(text), dimension_(dimension) {}

  Expr parse() {
    Expr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SchemaError,
                msg + " at offset " + std::to_string(pos_) + " in expression '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr parse_sum() {
    Expr acc = parse_product();
    for (;;) {
      if (accept('+')) acc = acc + parse_product();
      else if (accept('-')) acc = acc - parse_product();
      else return acc;
    }
  }

  Expr parse_product() {
    Expr acc = parse_unary();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/')
        fail("division is only allowed inside rational literals; write (expr)^-n for reciprocals");
      if (!accept('*')) return acc;
      acc = acc * parse_unary();
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    skip_ws();
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (!negative) return power(base, n);
    return reciprocal_power(base, n);
  }

  static Expr power(const Expr& base, int n) {
    Expr acc = Expr::constant(1);
    for (int i = 0; i < n; ++i) acc = acc * base;
    return acc;
  }

  // (k*z + b)^-n = k^-n (z + b/k)^-n; also Gamma(q)^-n and pi^-n.
  Expr reciprocal_power(const Expr& base, int n) {
    if (base.size() == 1) {
      const Term& t = base.terms().front();
      const Factors& f = t.factors;
      if (!f.exp_arg && f.trig.empty() && f.powers.empty()) {
        Expr out = Expr::constant(pow(t.coeff, -n)) * Expr::pi(-f.pi_power * n);
        for (const auto& [arg, e] : f.gamma) out = out * Expr::gamma_token(arg, -e * n);
        return out;
      }
      if (f.pi_power == 0 && f.gamma.empty() && !f.exp_arg && f.trig.empty() && f.powers.size() == 1 &&
          f.powers.front().second == 1) {
        const Affine& a = f.powers.front().first;
        return Expr::constant(pow(t.coeff, -n)) * Expr::affine_power(a.var, a.shift, -n);
      }
    }
    if (base.size() == 2 && base.is_polynomial()) {
      const Term* lin = nullptr;
      const Term* cst = nullptr;
      for (const Term& t : base.terms()) {
        if (t.factors.powers.empty()) cst = &t;
        else if (t.factors.powers.size() == 1 && t.factors.powers.front().second == 1 &&
                 t.factors.powers.front().first.shift == 0)
          lin = &t;
      }
      if (lin && cst) {
        const int var = lin->factors.powers.front().first.var;
        return Expr::constant(pow(lin->coeff, -n)) * Expr::affine_power(var, cst->coeff / lin->coeff, -n);
      }
    }
    fail("negative exponents are only allowed on affine factors (k*z + b)");
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational number_literal() {
    skip_ws();
    auto scan = [&] {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      return text_.substr(start, pos_ - start);
    };
    std::string lit(scan());
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      const std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        lit += "/" + std::string(scan());
      } else {
        pos_ = save;
      }
    }
    try {
      return parse_rational(lit);
    } catch (const Error& e) {
      fail(std::string("bad number: ") + e.what());
    }
  }

  // Argument of sin/cos: c*[pi]*z + d*[pi] in a single variable.
  Expr trig_call(TrigKind kind) {
    expect('(');
    Expr arg = parse_sum();
    expect(')');
    int var = -1;
    int pi_power = -1;
    Rational slope, offset;
    for (const Term& t : arg.terms()) {
      const Factors& f = t.factors;
      if (!f.gamma.empty() || f.exp_arg || !f.trig.empty() || (f.pi_power != 0 && f.pi_power != 1))
        fail("sin/cos argument must be affine in one variable, optionally times pi");
      if (pi_power >= 0 && f.pi_power != pi_power) fail("sin/cos argument mixes terms with and without pi");
      pi_power = f.pi_power;
      if (f.powers.empty()) {
        offset = t.coeff;
      } else if (f.powers.size() == 1 && f.powers.front().second == 1 && f.powers.front().first.shift == 0) {
        if (var >= 0) fail("sin/cos argument must involve a single variable");
        var = f.powers.front().first.var;
        slope = t.coeff;
      } else {
        fail("sin/cos argument must be affine in one variable");
      }
    }
    if (var < 0) fail("sin/cos of a constant is not supported");
    return Expr::trig(kind, var, slope, pi_power == 1, offset / slope);
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::constant(number_literal());
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::string id = identifier();
    if (id == "pi") return Expr::pi();
    if (id.size() >= 2 && id[0] == 'z' && std::isdigit(static_cast<unsigned char>(id[1])) && id.size() == 2) {
      const int var = id[1] - '1';
      if (var < 0 || var >= kMaxDimension) fail("unknown variable '" + id + "'");
      if (var >= dimension_)
        throw Error(ErrorKind::DimensionError, "variable " + id + " used in a " + std::to_string(dimension_) +
                                                   "-dimensional problem");
      return Expr::variable(var);
    }
    if (id == "exp") {
      expect('(');
      Expr arg = parse_sum();
      expect(')');
      if (!arg.is_polynomial()) fail("exp() argument must be a polynomial");
      return Expr::exp_of(arg);
    }
    if (id == "sin") return trig_call(TrigKind::Sin);
    if (id == "cos") return trig_call(TrigKind::Cos);
    if (id == "Gamma") {
      expect('(');
      const Rational q = number_literal();
      expect(')');
      if (q <= 0) fail("Gamma() needs a positive rational literal");
      return Expr::gamma_token(q);
    }
    fail("unknown identifier '" + id + "'");
  }

  std::string_view text_;
  int dimension_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, int dimension) { return Parser(text, dimension).parse(); }

}  // namespace lrps
