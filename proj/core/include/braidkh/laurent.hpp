#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace braidkh {

using BigInt = boost::multiprecision::cpp_int;

/// Laurent polynomial in A with arbitrary-precision integer coefficients.
/// Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(BigInt constant);  // NOLINT(google-explicit-constructor)
  LaurentPoly(int constant) : LaurentPoly(BigInt(constant)) {}  // NOLINT

  static LaurentPoly monomial(int exponent, BigInt coefficient = 1);
  /// -A^2 - A^{-2}, the value of a trivial circle.
  static LaurentPoly delta();

  const std::map<int, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  BigInt coefficient(int exponent) const;
  void add_term(int exponent, const BigInt& coefficient);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  LaurentPoly pow(unsigned exponent) const;
  /// Multiplies by A^shift.
  LaurentPoly shifted(int shift) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// e.g. "-A^-3 - A"; "0" for the zero polynomial.
  std::string to_string(std::string_view var = "A") const;

 private:
  std::map<int, BigInt> terms_;
};

/// Laurent polynomial in two variables (A and a second variable). `Tag`
/// only distinguishes lightened brackets (second variable chi, exponents >= 0)
/// from Euler polynomials (second variable H).
template <class Tag>
class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (A-exponent, second exponent)

  const std::map<Key, BigInt>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(int a, int b, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{a, b}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  BigInt coefficient(int a, int b) const {
    auto it = terms_.find(Key{a, b});
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  friend BiPoly operator*(const BiPoly& x, const BiPoly& y) {
    BiPoly r;
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_) r.add_term(kx.first + ky.first, kx.second + ky.second, cx * cy);
    return r;
  }
  /// Multiplies by sign * A^shift.
  BiPoly scaled(int shift, int sign) const {
    BiPoly r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(Key{k.first + shift, k.second}, sign * c);
    return r;
  }
  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  std::string to_string() const;

 private:
  std::map<Key, BigInt> terms_;
};

struct ChiTag {
  static constexpr const char* name = "chi";
};
struct HTag {
  static constexpr const char* name = "H";
};

/// Element of Z[A, A^-1, chi].
using LightenedBracket = BiPoly<ChiTag>;
/// Element of Z[A, A^-1, H, H^-1].
using EulerPoly = BiPoly<HTag>;

namespace detail {
std::string format_monomial(const BigInt& c, const std::string& vars, bool first);
std::string format_power(std::string_view var, int e);
}  // namespace detail

template <class Tag>
std::string BiPoly<Tag>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // Descending A-exponent, ties by descending second exponent.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [k, c] = *it;
    std::string vars = detail::format_power("A", k.first);
    const std::string second = detail::format_power(Tag::name, k.second);
    if (!second.empty()) vars += vars.empty() ? second : " " + second;
    out += detail::format_monomial(c, vars, first);
    first = false;
  }
  return out;
}

}  // namespace braidkh
