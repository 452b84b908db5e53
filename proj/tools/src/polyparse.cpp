#include "polydil/polyparse.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "polydil/error.hpp"

namespace polydil {

MultiPoly poly_product(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() != b.vars()) throw Error(ErrorKind::ArityMismatch, "product of polynomials in different rings");
  MultiPoly out(a.vars());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      MultiIndex k(ka);
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      out.add_term(k, ca * cb);
    }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t vars) : vars_(vars) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
  }

  MultiPoly parse() {
    if (src_.empty()) fail("empty polynomial");
    MultiPoly p = sum();
    if (pos_ != src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at position " + std::to_string(pos_), 0.0,
                static_cast<std::ptrdiff_t>(pos_));
  }

  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  MultiPoly sum() {
    MultiPoly acc(vars_);
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1.0;
      } else if (!first) {
        break;
      }
      MultiPoly t = term();
      for (const auto& [k, c] : t.terms()) acc.add_term(k, sign * c);
      first = false;
      if (pos_ >= src_.size() || src_[pos_] == ')') break;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    while (eat('*')) acc = poly_product(acc, factor());
    return acc;
  }

  MultiPoly factor() {
    if (pos_ >= src_.size()) fail("expected a factor");
    const char c = src_[pos_];
    if (eat('(')) {
      MultiPoly inner = sum();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      const long idx = integer("variable index");
      if (idx < 1 || static_cast<std::size_t>(idx) > vars_) {
        throw Error(ErrorKind::ParseError, "variable z" + std::to_string(idx) + " outside z1..z" + std::to_string(vars_),
                    0.0, static_cast<std::ptrdiff_t>(pos_));
      }
      long power = 1;
      if (eat('^')) power = integer("exponent");
      MultiIndex k(vars_, 0);
      k[static_cast<std::size_t>(idx - 1)] = static_cast<int>(power);
      MultiPoly p(vars_);
      p.add_term(k, 1.0);
      return p;
    }
    if (c == 'i') {
      ++pos_;
      return MultiPoly::constant(vars_, cplx(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double x = number();
      if (eat('i')) return MultiPoly::constant(vars_, cplx(0.0, x));
      return MultiPoly::constant(vars_, x);
    }
    if (c == '-' || c == '+') {
      ++pos_;
      MultiPoly p = factor();
      if (c == '+') return p;
      MultiPoly neg(vars_);
      for (const auto& [k, v] : p.terms()) neg.add_term(k, -v);
      return neg;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  long integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    long v = 0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc{} || v > 1000) fail(std::string(what) + " out of range");
    return v;
  }

  double number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    double v = 0.0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (res.ec != std::errc{} || res.ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return v;
  }

  std::size_t vars_;
  std::string src_;
  std::size_t pos_ = 0;
};

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

MultiPoly parse_poly(std::string_view text, std::size_t vars) {
  if (vars == 0) throw Error(ErrorKind::ArityMismatch, "polynomial needs at least one variable");
  return Parser(text, vars).parse();
}

std::vector<MultiPoly> parse_poly_lines(std::string_view text, std::size_t vars) {
  std::vector<MultiPoly> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back(parse_poly(line, vars));
    start = end + 1;
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "no polynomial found");
  return out;
}

std::string format_poly(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_real(c.real()) << (c.imag() < 0 || std::signbit(c.imag()) ? "-" : "+")
       << format_real(std::abs(c.imag())) << "i)";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] == 0) continue;
      os << "*z" << (i + 1);
      if (k[i] > 1) os << "^" << k[i];
    }
  }
  return os.str();
}

}  // namespace polydil
