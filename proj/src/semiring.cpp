#include "tropkit/semiring.hpp"

namespace tropkit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::TagMismatch: return "TagMismatch";
    case Errc::DivisionByBottom: return "DivisionByBottom";
    case Errc::Divergent: return "Divergent";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroColumn: return "ZeroColumn";
    case Errc::NoCycle: return "NoCycle";
    case Errc::Unbounded: return "Unbounded";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::NotSeparable: return "NotSeparable";
    case Errc::Infeasible: return "Infeasible";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NoFlow: return "NoFlow";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NotStronglyRegular: return "NotStronglyRegular";
    case Errc::CertificateInvalid: return "CertificateInvalid";
    case Errc::ImprovingCycle: return "ImprovingCycle";
    case Errc::Diverged: return "Diverged";
    case Errc::BadConfig: return "BadConfig";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

nlohmann::json Error::body() const {
  nlohmann::json j;
  j["error"] = errc_name(code_);
  j["message"] = what();
  if (!detail_.is_null()) j["detail"] = detail_;
  return j;
}

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::MaxPlus: return "max-plus";
    case Tag::MinPlus: return "min-plus";
    case Tag::MaxTimes: return "max-times";
    case Tag::Boolean: return "boolean";
  }
  return "?";
}

Tag tag_from_name(const std::string& s) {
  if (s == "max-plus") return Tag::MaxPlus;
  if (s == "min-plus") return Tag::MinPlus;
  if (s == "max-times") return Tag::MaxTimes;
  if (s == "boolean") return Tag::Boolean;
  throw Error(Errc::Parse, "unknown semiring '" + s + "'");
}

Scalar Scalar::zero(Tag t) {
  Scalar s;
  s.tag = t;
  s.bottom = true;
  s.v = 0;
  return s;
}

Scalar Scalar::one(Tag t) {
  switch (t) {
    case Tag::MaxPlus:
    case Tag::MinPlus: return of(t, Rational(0));
    case Tag::MaxTimes:
    case Tag::Boolean: return of(t, Rational(1));
  }
  return of(t, Rational(0));
}

Scalar Scalar::of(Tag t, const Rational& q) {
  Scalar s;
  s.tag = t;
  s.bottom = false;
  s.v = q;
  s.v.canonicalize();
  if (t == Tag::MaxTimes) {
    if (s.v < 0) throw Error(Errc::InvalidArgument, "max-times values must be nonnegative");
    if (s.v == 0) s.bottom = true;
  } else if (t == Tag::Boolean) {
    if (s.v != 0 && s.v != 1) throw Error(Errc::InvalidArgument, "boolean values must be 0 or 1");
    s.bottom = (s.v == 0);
    s.v = s.bottom ? 0 : 1;
  }
  return s;
}

std::string Scalar::str() const {
  if (bottom) {
    switch (tag) {
      case Tag::MaxPlus: return "-inf";
      case Tag::MinPlus: return "+inf";
      default: return "0";
    }
  }
  return v.get_str();
}

static void same_tag(const Scalar& a, const Scalar& b) {
  if (a.tag != b.tag) throw Error(Errc::TagMismatch, std::string("semiring tags differ: ") + tag_name(a.tag) + " vs " + tag_name(b.tag));
}

Scalar to_maxplus(const Scalar& a) {
  if (a.tag != Tag::MinPlus) return a;
  Scalar r = a;
  r.tag = Tag::MaxPlus;
  if (!r.bottom) r.v = -r.v;
  return r;
}

Scalar from_maxplus(const Scalar& a, Tag target) {
  if (target != Tag::MinPlus) return a;
  Scalar r = a;
  r.tag = Tag::MinPlus;
  if (!r.bottom) r.v = -r.v;
  return r;
}

Scalar sr_add(const Scalar& a, const Scalar& b) {
  same_tag(a, b);
  if (a.tag == Tag::MinPlus) return from_maxplus(sr_add(to_maxplus(a), to_maxplus(b)), Tag::MinPlus);
  if (a.bottom) return b;
  if (b.bottom) return a;
  return a.v >= b.v ? a : b;
}

Scalar sr_mul(const Scalar& a, const Scalar& b) {
  same_tag(a, b);
  if (a.bottom || b.bottom) return Scalar::zero(a.tag);
  switch (a.tag) {
    case Tag::MaxPlus:
    case Tag::MinPlus: return Scalar::of(a.tag, a.v + b.v);
    case Tag::MaxTimes: return Scalar::of(a.tag, a.v * b.v);
    case Tag::Boolean: return Scalar::one(a.tag);
  }
  return a;
}

Scalar sr_residual(const Scalar& x, const Scalar& y) {
  same_tag(x, y);
  if (x.tag == Tag::Boolean) throw Error(Errc::InvalidArgument, "residual is not defined for the boolean semiring");
  if (y.bottom) throw Error(Errc::DivisionByBottom, "residual by the semiring zero");
  if (x.bottom) return Scalar::zero(x.tag);
  if (x.tag == Tag::MaxTimes) return Scalar::of(x.tag, x.v / y.v);
  return Scalar::of(x.tag, x.v - y.v);
}

Scalar sr_star(const Scalar& a) {
  switch (a.tag) {
    case Tag::Boolean: return Scalar::one(a.tag);
    case Tag::MinPlus: return from_maxplus(sr_star(to_maxplus(a)), Tag::MinPlus);
    case Tag::MaxPlus:
      if (a.bottom || a.v <= 0) return Scalar::one(a.tag);
      break;
    case Tag::MaxTimes:
      if (a.bottom || a.v <= 1) return Scalar::one(a.tag);
      break;
  }
  throw Error(Errc::Divergent, "star diverges for " + a.str());
}

bool sr_leq(const Scalar& a, const Scalar& b) { return sr_add(a, b) == b; }

Interval make_interval(const Scalar& lo, const Scalar& hi) {
  if (!sr_leq(lo, hi)) throw Error(Errc::InvalidArgument, "interval endpoints out of order: [" + lo.str() + ", " + hi.str() + "]");
  return Interval{lo, hi};
}

Interval iv_binary(IvOp op, const Interval& a, const Interval& b) {
  same_tag(a.lo, b.lo);
  switch (op) {
    case IvOp::Add: return Interval{sr_add(a.lo, b.lo), sr_add(a.hi, b.hi)};
    case IvOp::Mul: return Interval{sr_mul(a.lo, b.lo), sr_mul(a.hi, b.hi)};
    case IvOp::Residual:
      if (b.lo.bottom) throw Error(Errc::DivisionByBottom, "interval residual with a divisor containing the semiring zero");
      return Interval{sr_residual(a.lo, b.hi), sr_residual(a.hi, b.lo)};
  }
  return a;
}

}  // namespace tropkit
