#include "eqloc/poly_text.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "eqloc/errors.hpp"

namespace eqloc {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw InvalidArgument("malformed rational '" + text + "'");
  }
  q.canonicalize();
  return q;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::string to_string(const LinearForm& f, const std::string& prefix) {
  return to_string(f.to_poly(), prefix);
}

std::string to_string(const MultiPoly& p, const std::string& prefix) {
  std::vector<std::string> names(p.nvars());
  for (std::size_t v = 0; v < names.size(); ++v) names[v] = prefix + std::to_string(v + 1);
  return to_string(p, std::span<const std::string>(names));
}

std::string to_string(const MultiPoly& p, std::span<const std::string> names) {
  if (names.size() != p.nvars()) throw ArityMismatch("one name per variable is required");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = sgn(t.coef) < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(t.coef);
    bool wrote = false;
    if (t.mono.is_one() || mag != 1) {
      out << to_string(mag);
      wrote = true;
    }
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      const unsigned e = t.mono.exponent(v);
      if (e == 0) continue;
      if (wrote) out << '*';
      out << names[v];
      if (e > 1) out << '^' << e;
      wrote = true;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, const std::string& prefix)
      : text_(text), nvars_(nvars), prefix_(prefix) {}

  MultiPoly parse() {
    MultiPoly result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                          std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  MultiPoly expr() {
    MultiPoly acc(nvars_);
    bool first = true;
    while (true) {
      skip_space();
      int sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      MultiPoly t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = power();
    while (accept('*')) acc = acc * power();
    return acc;
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (accept('^')) {
      const std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        num += "/" + digits();
      }
      return MultiPoly::constant(nvars_, parse_rational(num));
    }
    if (text_.compare(pos_, prefix_.size(), prefix_) == 0) {
      pos_ += prefix_.size();
      const std::string idx = digits();
      const unsigned long v = std::stoul(idx);
      if (v == 0 || v > nvars_) fail("variable index out of range");
      return MultiPoly::variable(nvars_, v - 1);
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::string prefix_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, std::size_t nvars, const std::string& prefix) {
  return Parser(text, nvars, prefix).parse();
}

}  // namespace eqloc
