#pragma once

#include <cstddef>
#include <string>

#include "eaqcc/pauli_stream.hpp"
#include "eaqcc/polymat.hpp"

namespace eaqcc {

// Paired (Z | X) halves of a stabilizer, plus logical-operator rows with the
// same column layout. The leftmost bob_cols columns belong to the receiver.
struct QuantumCheckMatrix {
  PolyMatrix z;
  PolyMatrix x;
  PolyMatrix info_z;
  PolyMatrix info_x;
  std::size_t bob_cols = 0;

  QuantumCheckMatrix() = default;
  QuantumCheckMatrix(PolyMatrix zz, PolyMatrix xx, std::size_t bob = 0);
  QuantumCheckMatrix(PolyMatrix zz, PolyMatrix xx, PolyMatrix iz, PolyMatrix ix, std::size_t bob = 0);

  std::size_t cols() const { return z.cols(); }
  std::size_t rows() const { return z.rows(); }
  std::size_t info_rows() const { return info_z.rows(); }
  bool has_info() const { return info_z.rows() > 0; }

  CheckRow row(std::size_t r) const;
  CheckRow info_row(std::size_t r) const;

  // [Z | X] with Z and X side by side.
  PolyMatrix stabilizer() const { return PolyMatrix::hstack(z, x); }
  PolyMatrix logical() const { return PolyMatrix::hstack(info_z, info_x); }

  // Drops the first `count` columns from both halves.
  QuantumCheckMatrix drop_leading_cols(std::size_t count) const;

  // Row operation applied to Z and X of the stabilizer together.
  void stabilizer_row_op(const ElemOp& op);

  bool operator==(const QuantumCheckMatrix& other) const = default;

  // One line per row: "z_0, ..., z_n-1 | x_0, ..., x_n-1".
  std::string str() const;
  std::string info_str() const;
};

// Every pair of stabilizer rows has vanishing shifted symplectic product.
bool rows_commute(const QuantumCheckMatrix& m);

}  // namespace eaqcc
