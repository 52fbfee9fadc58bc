#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eaqcc/poly.hpp"

namespace eaqcc {

enum class Pauli : unsigned char { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p);
// Letters anticommute iff both are non-identity and differ.
bool anticommute(Pauli a, Pauli b);

// Finite-support Pauli sequence, one frame of n letters per time step.
// Leading and trailing identity frames are trimmed.
class PauliFrameStream {
 public:
  PauliFrameStream() = default;
  PauliFrameStream(std::size_t n, int start_frame, std::vector<std::vector<Pauli>> frames);

  // Frames separated by '|', letters from IXYZ, e.g. "XXX|XZY".
  static PauliFrameStream parse(std::string_view text, int start_frame = 0);

  std::size_t n() const { return n_; }
  int start_frame() const { return start_; }
  const std::vector<std::vector<Pauli>>& frames() const { return frames_; }
  bool is_identity() const { return frames_.empty(); }

  Pauli at(int frame, std::size_t qubit) const;
  std::size_t weight() const;
  PauliFrameStream shifted(int frames) const;

  bool operator==(const PauliFrameStream& other) const = default;
  std::string str() const;

 private:
  void trim();

  std::size_t n_ = 0;
  int start_ = 0;
  std::vector<std::vector<Pauli>> frames_;
};

// One generator h(D) = (z(D) | x(D)).
struct CheckRow {
  std::vector<RationalPoly> z;
  std::vector<RationalPoly> x;

  CheckRow() = default;
  explicit CheckRow(std::size_t n) : z(n), x(n) {}
  CheckRow(std::vector<RationalPoly> zz, std::vector<RationalPoly> xx);

  std::size_t n() const { return z.size(); }
  bool is_zero() const;
  bool is_polynomial() const;
  bool operator==(const CheckRow& other) const = default;
  // "(z_0, ..., z_n-1 | x_0, ..., x_n-1)"
  std::string str() const;
};

// Pauli-to-binary: X sets x, Z sets z, Y sets both; frame t contributes D^t.
// Phases are not represented.
CheckRow p2b(const PauliFrameStream& stream);

// Inverse map, keeping frames in [lo, hi]. Rational entries are expanded as
// ascending series and truncated to the window.
PauliFrameStream b2p(const CheckRow& row, int lo, int hi);

// (h1 . h2)(D) = z1(D^-1) x2(D) + x1(D^-1) z2(D)
RationalPoly shifted_symplectic(const CheckRow& h1, const CheckRow& h2);

// Parity of anticommuting positions between h2 and h1 delayed by `shift`
// frames. Equals the D^shift coefficient of the shifted symplectic product.
bool anticommute_parity(const PauliFrameStream& h1, const PauliFrameStream& h2, int shift);

// Brute force over the letter streams: true iff every relative shift in
// [-max_shift, max_shift] has an even anticommutation count.
bool commute_oracle(const CheckRow& h1, const CheckRow& h2, int max_shift);

}  // namespace eaqcc
