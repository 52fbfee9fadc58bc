#pragma once

#include <string>
#include <vector>

#include "eaqcc/construct.hpp"

namespace eaqcc {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  int window = 0;
  int scratch = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult& check(const std::string& name) const;
  std::string str() const;
};

// Largest 4 * deg(f) over the infinite-depth gates of both circuits.
int default_scratch(const CodeSpec& spec);

// Recomputes the encoded and decoded streams from spec.start and the two
// circuits, then checks
//   commute:    the encoded stabilizer has vanishing shifted symplectic
//               products, algebraically and over the window
//   equivalent: the transmitter part spans the rows of [[H1, 0], [0, H2]]
//   roundtrip:  decoded logical rows equal the expected ones modulo the
//               decoded stabilizer
//   simulate:   the truncated stream simulation agrees with the algebra at
//               every position the truncation cannot reach
// A negative scratch selects default_scratch. Throws WindowTooSmall when
// the window cannot hold a generator or a gate.
VerificationReport verify_code(const CodeSpec& spec, int window = 32, int scratch = -1);

}  // namespace eaqcc
