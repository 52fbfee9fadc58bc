#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace eaqcc {

// Binary Laurent polynomial in the delay variable D.
//
// Bit i of the packed words is the coefficient of D^(lo + i). The
// representation is trimmed at both ends, so equal polynomials compare equal
// member-wise and zero is the empty word list with lo == 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(0); }
  static LaurentPoly monomial(int e);
  static LaurentPoly from_exponents(const std::vector<int>& exps);
  static LaurentPoly from_exponents(std::initializer_list<int> exps) {
    return from_exponents(std::vector<int>(exps));
  }
  static LaurentPoly parse(std::string_view text);

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return lo_ == 0 && words_.size() == 1 && words_[0] == 1; }
  // A unit of the Laurent ring is a single power of D.
  bool is_unit() const;
  bool is_polynomial() const { return is_zero() || lo_ >= 0; }

  // Highest / lowest exponent. Both throw std::domain_error on zero.
  int deg() const;
  int del() const;
  int span() const { return deg() - del(); }

  bool coeff(int e) const;
  std::vector<int> exponents() const;
  std::size_t weight() const;

  LaurentPoly shifted(int k) const;
  LaurentPoly reverse() const;
  // Divides out the lowest power of D, leaving a constant term of 1.
  LaurentPoly delay_free() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly& operator*=(const LaurentPoly& other) { return *this = *this * other; }

  bool operator==(const LaurentPoly& other) const = default;

  std::string str() const;
  std::size_t hash() const;

 private:
  void trim();
  std::size_t nbits() const;

  std::vector<std::uint64_t> words_;
  int lo_ = 0;
};

struct PolyDivision {
  LaurentPoly quotient;
  LaurentPoly remainder;
};

// Division in GF(2)[D]: both operands must have del >= 0; remainder has
// degree below deg(b).
PolyDivision poly_divmod(const LaurentPoly& a, const LaurentPoly& b);

// Euclidean division in the Laurent ring with norm deg - del: the
// remainder is zero or has span strictly below span(b).
PolyDivision laurent_divmod(const LaurentPoly& a, const LaurentPoly& b);

// Delay-free gcd of the delay-free parts. Throws if both are zero.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

// a | b in the Laurent ring (a nonzero).
bool divides(const LaurentPoly& a, const LaurentPoly& b);

// Multiplicative order of D modulo a delay-free polynomial with deg >= 1.
// Returns 0 when D is not invertible modulo f (never for delay-free f).
int order_of_d(const LaurentPoly& f);

// Quotient of the ring: num / den with gcd(num, den) = 1 and den delay-free.
class RationalPoly {
 public:
  RationalPoly() : den_(LaurentPoly::one()) {}
  RationalPoly(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}  // NOLINT
  RationalPoly(LaurentPoly num, LaurentPoly den);

  static RationalPoly parse(std::string_view text);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  // Throws std::domain_error when the denominator is not 1.
  const LaurentPoly& as_poly() const;

  RationalPoly reverse() const;
  RationalPoly inverse() const;

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator*=(const RationalPoly& other);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator/(const RationalPoly& a, const RationalPoly& b) { return a * b.inverse(); }

  bool operator==(const RationalPoly& other) const = default;

  std::string str() const;

 private:
  void canonicalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

// Coefficients of the ascending power series of r, restricted to [lo, hi].
LaurentPoly series_expand(const RationalPoly& r, int lo, int hi);

}  // namespace eaqcc
