#include "sgmc/rational.hpp"

#include <cctype>

#include "sgmc/error.hpp"

namespace sgmc {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_text(s)) {
    throw Error(ErrorKind::kInvalidArgument, "not an integer: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)));
    Integer den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) {
      throw Error(ErrorKind::kInvalidArgument, "zero denominator in '" + std::string(text) + "'");
    }
    return make_rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    if (frac.empty() || !is_integer_text(frac) || frac[0] == '-' || frac[0] == '+') {
      throw Error(ErrorKind::kInvalidArgument, "malformed decimal '" + std::string(text) + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer w = parse_integer(whole);
    if (w < 0) w = -w;
    Rational r = make_rational(w * scale + parse_integer(frac), scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& r) {
  return r.get_str(10);
}

double to_double(const Rational& r) {
  return r.get_d();
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace sgmc
