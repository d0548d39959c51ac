#include "braidkh/laurent.hpp"

namespace braidkh {

namespace detail {

std::string format_power(std::string_view var, int e) {
  if (e == 0) return {};
  std::string s(var);
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

std::string format_monomial(const BigInt& c, const std::string& vars, bool first) {
  const bool negative = c < 0;
  const BigInt mag = negative ? BigInt(-c) : c;
  std::string out;
  if (first)
    out = negative ? "-" : "";
  else
    out = negative ? " - " : " + ";
  if (vars.empty())
    out += mag.str();
  else if (mag == 1)
    out += vars;
  else
    out += mag.str() + " " + vars;
  return out;
}

}  // namespace detail

LaurentPoly::LaurentPoly(BigInt constant) {
  if (constant != 0) terms_.emplace(0, std::move(constant));
}

LaurentPoly LaurentPoly::monomial(int exponent, BigInt coefficient) {
  LaurentPoly p;
  if (coefficient != 0) p.terms_.emplace(exponent, std::move(coefficient));
  return p;
}

LaurentPoly LaurentPoly::delta() {
  LaurentPoly p;
  p.terms_.emplace(-2, -1);
  p.terms_.emplace(2, -1);
  return p;
}

BigInt LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(int exponent, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned exponent) const {
  LaurentPoly result(1);
  LaurentPoly base = *this;
  while (exponent) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(int shift) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c);
  return r;
}

std::string LaurentPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    out += detail::format_monomial(it->second, detail::format_power(var, it->first), first);
    first = false;
  }
  return out;
}

}  // namespace braidkh
