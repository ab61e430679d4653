#include <cctype>

#include "nufact/error.hpp"
#include "nufact/polyring.hpp"

namespace nufact {

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, CoefficientField field, std::span<const std::string> names)
      : text_(text), field_(field), names_(names) {}

  SparsePoly parse() {
    SparsePoly out(field_, names_.size());
    skip_space();
    bool first = true;
    while (pos_ < text_.size() || first) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(out, sign);
      skip_space();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "at position " + std::to_string(pos_) + ": " + what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Exponent small_number() {
    const std::string d = digits();
    if (d.size() > 9) fail("exponent too large");
    return std::stoll(d);
  }

  void parse_term(SparsePoly& out, int sign) {
    mpq_class coef = sign;
    ExponentVector exps(names_.size(), 0);
    Exponent t = 0;
    bool need_factor = true;
    for (;;) {
      skip_space();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        mpz_class num(digits());
        mpz_class den = 1;
        if (peek() == '/') {
          ++pos_;
          den = mpz_class(digits());
          if (den == 0) fail("zero denominator");
        }
        mpq_class factor(num, den);
        factor.canonicalize();
        coef *= factor;
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        const std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        Exponent power = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          power = small_number();
        }
        if (name == "t") {
          t += power;
        } else {
          std::size_t i = 0;
          while (i < names_.size() && names_[i] != name) ++i;
          if (i == names_.size()) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
          }
          exps[i] += power;
        }
      } else {
        fail(need_factor ? "expected a coefficient or variable" : "unexpected character");
      }
      need_factor = false;
      skip_space();
      if (peek() != '*') break;
      ++pos_;
      need_factor = true;
    }
    out.add_term(std::move(exps), t, coef);
  }

  std::string_view text_;
  CoefficientField field_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_poly(std::string_view text, CoefficientField field,
                      std::span<const std::string> names) {
  return PolyParser(text, field, names).parse();
}

SparsePoly parse_poly(std::string_view text, CoefficientField field, std::size_t dim) {
  const auto names = default_variable_names(dim);
  return parse_poly(text, field, names);
}

}  // namespace nufact
