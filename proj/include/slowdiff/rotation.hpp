#pragma once

// Rotation numbers alpha in (0,1) with continued-fraction convergents.
// Convergents are those of the working double itself, computed with exact
// integer arithmetic, so |q_k alpha - p_k| < 1/q_{k+1} holds as stated.

#include <cstdint>
#include <string>
#include <vector>

namespace slowdiff {

struct Convergent {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

class RotationNumber {
 public:
  enum class Family { Explicit, QuadraticIrrational, Liouville, CfConstant };

  /// Any value in [0,1); rationals with small denominator are flagged degenerate.
  static RotationNumber explicit_value(double alpha);
  /// Named quadratic irrationals: "golden", "silver", "sqrt3".
  static RotationNumber quadratic(const std::string& name);
  /// sum_{k=1..depth} base^{-k!}, evaluated in double precision.
  static RotationNumber liouville(int base, int depth);
  /// Constant continued fraction [0; a, a, a, ...] = (sqrt(a^2+4) - a) / 2.
  static RotationNumber cf_constant(int quotient);

  double value() const { return alpha_; }
  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  bool degenerate() const { return degenerate_; }
  const std::vector<Convergent>& convergents() const { return convergents_; }

  std::string family_string() const;
  std::string describe() const;

 private:
  RotationNumber() = default;
  void finish(double alpha);

  double alpha_ = 0.0;
  Family family_ = Family::Explicit;
  std::string name_;
  bool degenerate_ = false;
  std::vector<Convergent> convergents_;
};

}  // namespace slowdiff
