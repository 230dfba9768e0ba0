#include "slowdiff/rotation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slowdiff {

namespace {

constexpr int kMaxConvergents = 40;
constexpr std::int64_t kQOverflowGuard = std::int64_t(1) << 62;
// Stop once q_k * q_{k+1} approaches 1/eps; convergents beyond that are not
// numerically meaningful against a double alpha.
constexpr double kQProductGuard = 4e14;
// A terminating expansion with final denominator this small is treated as a
// genuinely rational alpha (degenerate for Weyl-sum purposes).
constexpr std::int64_t kDegenerateDenominator = std::int64_t(1) << 20;

struct CfResult {
  std::vector<Convergent> convergents;
  bool terminated = false;  // expansion of the exact rational double finished
};

// Continued fraction of the exact rational represented by the double alpha,
// via the Euclidean algorithm on its mantissa/2^e decomposition.
CfResult continued_fraction_of_double(double alpha) {
  CfResult out;
  if (alpha == 0.0) {
    out.convergents.push_back({0, 1});
    out.terminated = true;
    return out;
  }

  int exp2 = 0;
  const double mant = std::frexp(alpha, &exp2);  // alpha = mant * 2^exp2, mant in [0.5,1)
  const int shift = 53 - exp2;                   // alpha = M / 2^shift with integer M
  if (shift > 120) throw std::invalid_argument("RotationNumber: alpha too small for exact cf");
  __int128 num = static_cast<__int128>(std::ldexp(mant, 53));
  __int128 den = static_cast<__int128>(1) << shift;

  std::int64_t p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  std::int64_t p_cur = 0, q_cur = 1;    // p_0 = a_0 = 0, q_0 = 1 (alpha < 1)
  // first step: invert, since a_0 = 0
  __int128 a = num, b = den;  // expanding den/num after the leading 0 term

  for (int k = 0; k < kMaxConvergents; ++k) {
    if (a == 0) {
      out.terminated = true;
      break;
    }
    const __int128 quot = b / a;
    const __int128 rem = b % a;
    b = a;
    a = rem;

    if (quot > kQOverflowGuard / (q_cur > 0 ? q_cur : 1)) break;  // q would overflow
    const std::int64_t qi = static_cast<std::int64_t>(quot);
    const std::int64_t p_next = qi * p_cur + p_prev;
    const std::int64_t q_next = qi * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    out.convergents.push_back({p_cur, q_cur});
    if (a == 0) {
      out.terminated = true;
      break;
    }
    if (static_cast<double>(q_cur) * static_cast<double>(q_prev) > kQProductGuard) break;
  }
  return out;
}

}  // namespace

void RotationNumber::finish(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("RotationNumber: alpha must lie in [0,1)");
  }
  alpha_ = alpha;
  CfResult cf = continued_fraction_of_double(alpha);
  convergents_ = std::move(cf.convergents);
  if (family_ == Family::Explicit && cf.terminated) {
    const std::int64_t qlast = convergents_.empty() ? 1 : convergents_.back().q;
    degenerate_ = qlast <= kDegenerateDenominator;
  }
}

RotationNumber RotationNumber::explicit_value(double alpha) {
  RotationNumber r;
  r.family_ = Family::Explicit;
  r.name_ = "explicit";
  r.finish(alpha);
  return r;
}

RotationNumber RotationNumber::quadratic(const std::string& name) {
  RotationNumber r;
  r.family_ = Family::QuadraticIrrational;
  r.name_ = name;
  double v = 0.0;
  if (name == "golden") {
    v = (std::sqrt(5.0) - 1.0) / 2.0;
  } else if (name == "silver") {
    v = std::sqrt(2.0) - 1.0;
  } else if (name == "sqrt3") {
    v = std::sqrt(3.0) - 1.0;
  } else {
    throw std::invalid_argument("RotationNumber: unknown quadratic irrational \"" + name +
                                "\" (known: golden, silver, sqrt3)");
  }
  r.finish(v);
  return r;
}

RotationNumber RotationNumber::liouville(int base, int depth) {
  if (base < 2) throw std::invalid_argument("RotationNumber: liouville base must be >= 2");
  if (depth < 1) throw std::invalid_argument("RotationNumber: liouville depth must be >= 1");
  // k! * log2(base) must stay below the double exponent range
  double factorial = 1.0;
  for (int k = 1; k <= depth; ++k) {
    factorial *= k;
    if (factorial * std::log2(static_cast<double>(base)) > 1020.0) {
      throw std::invalid_argument("RotationNumber: liouville depth overflows the exponent range");
    }
  }
  double v = 0.0;
  factorial = 1.0;
  for (int k = 1; k <= depth; ++k) {
    factorial *= k;
    v += std::pow(static_cast<double>(base), -factorial);
  }
  RotationNumber r;
  r.family_ = Family::Liouville;
  r.name_ = "liouville(b=" + std::to_string(base) + ",J=" + std::to_string(depth) + ")";
  r.finish(v);
  return r;
}

RotationNumber RotationNumber::cf_constant(int quotient) {
  if (quotient < 1) throw std::invalid_argument("RotationNumber: cf quotient must be >= 1");
  const double a = static_cast<double>(quotient);
  RotationNumber r;
  r.family_ = Family::CfConstant;
  r.name_ = "cf-constant-" + std::to_string(quotient);
  r.finish((std::sqrt(a * a + 4.0) - a) / 2.0);
  return r;
}

std::string RotationNumber::family_string() const {
  switch (family_) {
    case Family::Explicit:
      return "explicit";
    case Family::QuadraticIrrational:
      return "quadratic-irrational";
    case Family::Liouville:
      return "liouville";
    case Family::CfConstant:
      return "cf-constant";
  }
  return "?";
}

std::string RotationNumber::describe() const {
  std::string s = family_string();
  if (!name_.empty() && name_ != s) s += ":" + name_;
  if (degenerate_) s += " [degenerate: rational]";
  return s;
}

}  // namespace slowdiff
