#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "eaqcc/gates.hpp"
#include "eaqcc/pauli_stream.hpp"
#include "eaqcc/qcm.hpp"

namespace eaqcc {

// Binary (z | x) image of one shifted generator over the window. Bit index
// is frame * n + qubit.
struct WindowRow {
  std::vector<std::uint8_t> z;
  std::vector<std::uint8_t> x;
  int shift = 0;
  std::size_t source = 0;  // row of the expanded matrix
  bool logical = false;
};

// Frames [0, scratch) are leading scratch frames; frames [scratch,
// scratch + W) form the verified window. Positions whose value may differ
// from the untruncated stream (because a gate leg fell past the last frame)
// are flagged in the taint masks.
class BinarySymplecticWindow {
 public:
  BinarySymplecticWindow(std::size_t n, int window, int scratch);

  std::size_t n() const { return n_; }
  int window() const { return window_; }
  int scratch() const { return scratch_; }
  int frames() const { return window_ + scratch_; }
  std::size_t width() const { return n_ * static_cast<std::size_t>(frames()); }
  std::size_t index(int frame, std::size_t q) const { return static_cast<std::size_t>(frame) * n_ + q; }

  std::vector<WindowRow>& rows() { return rows_; }
  const std::vector<WindowRow>& rows() const { return rows_; }
  const std::vector<std::uint8_t>& z_taint() const { return z_taint_; }
  const std::vector<std::uint8_t>& x_taint() const { return x_taint_; }

  // Places row * D^shift. Rational entries are expanded as ascending series.
  // Bits before frame 0 are dropped, so callers pick shifts that keep the
  // support inside.
  void add_row(const CheckRow& row, int shift, std::size_t source, bool logical = false);

  void apply(const Gate& g);

  // Renders one row as a Pauli stream over all frames.
  std::string row_str(std::size_t r) const;

 private:
  void cnot_bits(std::size_t r, int fc, std::size_t c, int ft, std::size_t t);
  void taint_gate(const Gate& g);

  std::size_t n_;
  int window_;
  int scratch_;
  std::vector<WindowRow> rows_;
  std::vector<std::uint8_t> z_taint_;
  std::vector<std::uint8_t> x_taint_;
};

// Every row of the stabilizer (and logical rows when include_info) at every
// shift whose support fits. Throws WindowTooSmall when a polynomial row is
// wider than the window.
BinarySymplecticWindow expand(const QuantumCheckMatrix& qcm, int window, int scratch, bool include_info = false);

// Applies each gate at every frame where all of its legs lie in the window.
// Throws WindowTooSmall when a gate reaches further than the window.
BinarySymplecticWindow run_circuit(BinarySymplecticWindow win, const Circuit& circuit);

struct ErrorPattern {
  std::vector<std::tuple<int, std::size_t, Pauli>> entries;  // (frame, qubit, letter)
};

// Bit r is the symplectic product of the error with row r.
std::vector<std::uint8_t> syndrome(const BinarySymplecticWindow& win, const ErrorPattern& e);

// Symplectic product of two window rows.
bool symplectic(const WindowRow& a, const WindowRow& b);

// Rows agree at every position not tainted in `sim`. Returns the index of
// the first disagreeing row, or -1.
long first_mismatch(const BinarySymplecticWindow& sim, const BinarySymplecticWindow& alg);

}  // namespace eaqcc
