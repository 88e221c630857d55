#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hforms/numerics/certified.hpp"
#include "hforms/numerics/integer.hpp"
#include "hforms/numerics/matrix.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

/// Eventual period of a digit sequence: digits[j + length] == digits[j] for j >= start.
struct Period {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

/// Digits a_0, a_1, ... of x = a_0 - 1/(a_1 - 1/(a_2 - ...)).
struct DigitSequence {
  std::vector<Integer> digits;
  std::optional<Period> period;
  std::string source;
  /// Set by expand_certified when the next digit could not be decided.
  bool precision_exhausted = false;

  std::size_t size() const { return digits.size(); }
  const Integer& operator[](std::size_t j) const { return digits[j]; }
};

struct DigitViolation {
  std::size_t index;
  int rule;  // 1: |a_j| >= 2, 2: |a_j| = 2 forces a_j a_{j+1} < 0
  friend bool operator==(const DigitViolation&, const DigitViolation&) = default;
};

struct ValidityReport {
  std::vector<DigitViolation> violations;
  bool valid() const { return violations.empty(); }
};

/// Thrown for rational input, whose expansion terminates.
class TerminatingExpansion : public std::domain_error {
 public:
  TerminatingExpansion() : std::domain_error("terminating expansion") {}
};

/// First n minus continued fraction digits of an irrational surd. The exact
/// state x_j is hashed, so eventual periodicity is found and recorded.
DigitSequence expand(const QuadraticSurd& x, std::size_t n);

/// As expand, driving the digit choice from certified brackets of x. Stops early
/// with precision_exhausted set when nu(x_j) is still ambiguous at `cap` bits.
DigitSequence expand_certified(const CertifiedReal& x, std::size_t n, Precision cap = 4096);

/// Conditions (i) and (ii), checked for j >= 1.
ValidityReport validate(const DigitSequence& digits);
ValidityReport validate(const std::vector<Integer>& digits);
/// Conditions (i) and (ii) for the infinite repetition of `block`, every index included.
ValidityReport validate_cyclic(const std::vector<Integer>& block);

/// Exact value of the finite expansion [a_0, ..., a_{n-1}].
BigRational evaluate(const std::vector<Integer>& digits);

struct GaussStep {
  Integer digit;
  QuadraticSurd next;
};

/// T(x) = -1/x - nu(-1/x) on [-1/2, 1/2]; the digit is nu(-1/x).
GaussStep gauss_step(const QuadraticSurd& x);

/// The matrix [[a, -1], [1, 0]] of x' -> a - 1/x'.
UnimodularMatrix digit_matrix(const Integer& a);

/// Product of digit matrices for the block, in order.
UnimodularMatrix block_matrix(const std::vector<Integer>& block);

/// The irrational fixed by repeating `block` forever.
QuadraticSurd periodic_value(const std::vector<Integer>& block);

/// Digits whose repetition from `period.start` is implied: extends `seq` to n digits.
std::vector<Integer> unroll(const DigitSequence& seq, std::size_t n);

/// JSON object {"digits": [...], "period": [start, length]}; period omitted when unknown.
std::string to_json(const DigitSequence& seq);
DigitSequence digits_from_json(const std::string& text);

}  // namespace hforms
