#pragma once

#include <map>
#include <string>
#include <utility>

#include "braidkh/diagram.hpp"
#include "braidkh/laurent.hpp"
#include "braidkh/states.hpp"

namespace braidkh {

/// Element of the free Z[A, A^-1]-module on plane configurations, keyed by
/// canonical configuration strings. Zero coefficients are never stored.
class BracketElement {
 public:
  const std::map<std::string, LaurentPoly>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  LaurentPoly coefficient(const std::string& config) const;
  void add(const std::string& config, const LaurentPoly& p);

  BracketElement& operator+=(const BracketElement& o);
  /// Multiplies every coefficient by p.
  BracketElement scaled(const LaurentPoly& p) const;

  friend bool operator==(const BracketElement&, const BracketElement&) = default;

  std::string to_string() const;

 private:
  std::map<std::string, LaurentPoly> terms_;
};

/// State sum over all 2^n smoothings. `threads` > 1 splits the smoothing
/// range across workers; the result does not depend on it.
BracketElement bracket_br(const Diagram& d, int cap = kDefaultCap, int threads = 1);

/// The two partial smoothings of crossing v (A first, then A^{-1}). The
/// disoriented one carries a break on each of its two new arcs.
std::pair<Diagram, Diagram> skein_expand(const Diagram& d, int v);

LightenedBracket lighten(const BracketElement& b);

/// Multiplies by (-A)^{-3 w(d)}.
LightenedBracket normalize(const Diagram& d, const LightenedBracket& x);
BracketElement normalize(const Diagram& d, const BracketElement& x);

/// chi -> -A^2 - A^-2.
LaurentPoly specialize_chi_to_delta(const LightenedBracket& l);

/// Classical unnormalised Kauffman bracket; independent of break points.
LaurentPoly kauffman_oracle(const Diagram& d, int cap = kDefaultCap);

/// The configuration with the most circles in the bracket and its coefficient.
/// Throws std::logic_error unless it is unique, equals the Seifert
/// configuration and has coefficient A^{w(d)}.
std::pair<Configuration, LaurentPoly> seifert_leading_term(const Diagram& d, int cap = kDefaultCap);

/// {"terms":[{"config":"(())","poly":{"1":"1"}}, ...]}
std::string bracket_json(const BracketElement& b, int indent = -1);
/// {"terms":[{"a":1,"chi":2,"coeff":"1"}, ...]}
std::string lightened_json(const LightenedBracket& l, int indent = -1);
std::string poly_json(const LaurentPoly& p, int indent = -1);

}  // namespace braidkh
