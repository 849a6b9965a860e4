#pragma once

// Minimal value wrapper over an mpfr_t carrying its own precision.

#include <mpfr.h>

#include <compare>
#include <string>

#include "qck/arith.hpp"

namespace qck::arith {

class Real {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  explicit Real(mpfr_prec_t prec = kDefaultPrecision);
  Real(double v, mpfr_prec_t prec);
  Real(long v, mpfr_prec_t prec);
  Real(const BigInt& v, mpfr_prec_t prec);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  BigInt round() const;  // nearest integer
  BigInt floor() const;
  BigInt ceil() const;
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  std::string str(int digits = 20) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long b);
  friend Real operator*(long b, Real a) { return std::move(a) * b; }
  Real operator-() const;

  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, double b);

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pi(mpfr_prec_t prec);

}  // namespace qck::arith
