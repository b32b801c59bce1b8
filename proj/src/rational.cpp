#include "smg/rational.hpp"

#include <stdexcept>

namespace smg {

namespace {

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed integer literal");
  for (size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    }
    bool negative = !int_part.empty() && int_part[0] == '-';
    std::string whole(int_part);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpz_class magnitude = abs(parse_integer(whole)) * scale + parse_integer(frac_part);
    return Rational(negative ? mpz_class(-magnitude) : magnitude, scale);
  }
  return Rational(parse_integer(text));
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled_num = v_.get_num() * scale;
  mpz_class den = v_.get_den();
  // Round half away from zero.
  mpz_class q = (abs(scaled_num) * 2 + den) / (den * 2);
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - static_cast<size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<size_t>(digits));
  if (sgn(scaled_num) < 0 && q != 0) out.insert(0, "-");
  return out;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, unsigned e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.get().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), r.get().get_den_mpz_t(), e);
  return Rational(num, den);
}

Rational inverse_power_of_two(unsigned e) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, e);
  return Rational(mpz_class(1), den);
}

}  // namespace smg

size_t std::hash<smg::Rational>::operator()(const smg::Rational& r) const noexcept {
  size_t h = mpz_get_ui(r.get().get_num_mpz_t()) * 1000003u;
  h ^= mpz_get_ui(r.get().get_den_mpz_t()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h ^ static_cast<size_t>(r.sign() + 1);
}
