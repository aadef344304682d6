#pragma once

#include <gmpxx.h>

#include <string>

#include "tropkit/error.hpp"

namespace tropkit {

using Rational = mpq_class;

inline Rational frac(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

enum class Tag { MaxPlus, MinPlus, MaxTimes, Boolean };

const char* tag_name(Tag t);
Tag tag_from_name(const std::string& s);

// value or the semiring zero. For MaxTimes the number 0 is stored as bottom,
// for Boolean false is bottom and true is the value 1.
struct Scalar {
  Tag tag = Tag::MaxPlus;
  bool bottom = true;
  Rational v = 0;

  static Scalar zero(Tag t);
  static Scalar one(Tag t);
  static Scalar of(Tag t, const Rational& q);
  static Scalar of(Tag t, long p, long q = 1) { return of(t, Rational(p, q)); }

  bool is_zero() const { return bottom; }
  std::string str() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.tag == b.tag && a.bottom == b.bottom && (a.bottom || a.v == b.v);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

Scalar sr_add(const Scalar& a, const Scalar& b);
Scalar sr_mul(const Scalar& a, const Scalar& b);
Scalar sr_residual(const Scalar& x, const Scalar& y);
Scalar sr_star(const Scalar& a);

// canonical order a <= b iff a (+) b = b
bool sr_leq(const Scalar& a, const Scalar& b);

// MinPlus <-> MaxPlus by negation; other tags returned unchanged
Scalar to_maxplus(const Scalar& a);
Scalar from_maxplus(const Scalar& a, Tag target);

struct Interval {
  Scalar lo, hi;
  bool contains(const Scalar& x) const { return sr_leq(lo, x) && sr_leq(x, hi); }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

Interval make_interval(const Scalar& lo, const Scalar& hi);

enum class IvOp { Add, Mul, Residual };

Interval iv_binary(IvOp op, const Interval& a, const Interval& b);

}  // namespace tropkit
