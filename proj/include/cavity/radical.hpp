#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace cavity {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Rank into the ascending sequence of squarefree integers (1-based).
using SquarefreeRank = std::uint32_t;

/// p-th squarefree integer: 1, 2, 3, 5, 6, 7, 10, ...  Throws std::domain_error for p == 0.
long squarefree(SquarefreeRank p);

/// True iff no d >= 2 has d*d dividing v.
bool is_squarefree(long v);

/// Element of the free abelian group generated by square roots of squarefree
/// integers: sum of coeff_p * sqrt(squarefree(p)).  Kept canonical (no zero
/// coefficients), so map equality decides equality of the represented reals
/// exactly -- square roots of distinct squarefree integers are linearly
/// independent over the rationals.
///
/// Terms are keyed by rank p, not by the squarefree value; encoders allocate
/// ranks in O(1) and the value is materialized only for float conversion.
class Radical {
public:
  Radical() = default;

  /// coeff * sqrt(squarefree(p))
  static Radical term(SquarefreeRank p, BigInt coeff = 1);
  /// n embedded via rank 1 (squarefree(1) == 1).
  static Radical integer(BigInt n);

  const std::map<SquarefreeRank, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient at rank p (zero if absent).
  BigInt coefficient(SquarefreeRank p) const;

  Radical& operator+=(const Radical& o);
  Radical& operator-=(const Radical& o);
  Radical operator+(const Radical& o) const;
  Radical operator-(const Radical& o) const;
  Radical operator-() const;
  /// Integer scaling.
  Radical operator*(const BigInt& c) const;

  bool operator==(const Radical& o) const { return terms_ == o.terms_; }
  bool operator!=(const Radical& o) const { return terms_ != o.terms_; }

  /// Value as a multiprecision float carrying ~digits decimal digits.
  /// digits must be >= 15.
  mpf_class eval(unsigned digits = 30) const;
  /// eval() rounded to double.
  double to_float(unsigned digits = 30) const;

  /// Canonical text form: [(p,c),...] sorted by p, e.g. [(1,3),(4,-2)].
  std::string to_text() const;
  static Radical from_text(const std::string& text);

private:
  void add_term(SquarefreeRank p, const BigInt& coeff);

  std::map<SquarefreeRank, BigInt> terms_;
};

} // namespace cavity
