#pragma once

// Command-line front end: argument parsing, alpha specifications and
// CSV/JSON output for the library operations.

#include <ostream>
#include <string>
#include <vector>

#include "latdisc/alpha.hpp"

namespace latdisc::cli {

/// "p/q", "surd:P,D,Q", "rule:<name>" or "bits:<hex>@B".
struct AlphaSpec {
  enum class Kind { Rational, Surd, Rule, Bits };
  Kind kind = Kind::Rational;
  BigInt p = 0, q = 1;          // Rational, reduced with q > 0
  BigInt P = 0, D = 0, Q = 1;   // Surd, as written
  std::string rule;             // Rule
  BigInt mantissa = 0;          // Bits, alpha = mantissa / 2^B
  unsigned B = 0;

  static AlphaSpec parse(const std::string& s);
  std::string str() const;
  /// Irrational expansions are evaluated to `bits` bits; Bits specs keep their own B.
  Alpha to_alpha(unsigned bits = kDefaultBits) const;

  bool operator==(const AlphaSpec& o) const { return str() == o.str(); }
};

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kPrecision = 3, kViolation = 4 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latdisc::cli
