#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ncgame {

using Rational = mpq_class;

/// The cyclotomic field Q(zeta_N), zeta_N = exp(2*pi*i/N).
///
/// Elements are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1)
/// reduced modulo the N-th cyclotomic polynomial. Fields are interned: two
/// calls to make() with the same order return the same object, so identity
/// comparison is field equality.
class CycloField {
 public:
  static const CycloField& make(int order);

  int order() const noexcept { return order_; }
  int degree() const noexcept { return static_cast<int>(minpoly_.size()) - 1; }

  /// Coefficients of Phi_N, constant term first; monic.
  const std::vector<Rational>& minimal_polynomial() const noexcept { return minpoly_; }

  /// Power-basis coordinates of zeta^k for any integer k.
  const std::vector<Rational>& power(long k) const;

  CycloField(const CycloField&) = delete;
  CycloField& operator=(const CycloField&) = delete;

 private:
  explicit CycloField(int order);

  int order_;
  std::vector<Rational> minpoly_;
  std::vector<std::vector<Rational>> powers_;
};

/// Exact element of a cyclotomic field.
class Cyclo {
 public:
  explicit Cyclo(const CycloField& field);
  Cyclo(const CycloField& field, const Rational& value);
  Cyclo(const CycloField& field, std::vector<Rational> coords);

  static Cyclo zero(const CycloField& f) { return Cyclo(f); }
  static Cyclo one(const CycloField& f) { return Cyclo(f, Rational(1)); }
  /// zeta_N^k.
  static Cyclo root(const CycloField& f, long k);

  const CycloField& field() const noexcept { return *field_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// Meaningful only when is_rational().
  const Rational& rational_part() const noexcept { return coords_[0]; }

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator*=(const Rational& r);
  Cyclo operator-() const;

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator*(Cyclo a, const Rational& b) { return a *= b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);

  /// Throws DomainError on zero.
  Cyclo inverse() const;
  Cyclo conj() const;
  Cyclo norm_squared() const { return conj() * *this; }
  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }

  std::complex<double> to_complex() const;

  /// "a0 + a1*z + a2*z^2"; "0" for zero.
  std::string to_string() const;
  /// Accepts the to_string() grammar; exponents may be any non-negative integer.
  static Cyclo parse(const CycloField& field, std::string_view text);

 private:
  void check_field(const Cyclo& o) const;

  const CycloField* field_;
  std::vector<Rational> coords_;
};

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

}  // namespace ncgame
