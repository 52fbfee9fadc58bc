#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eaqcc/poly.hpp"

namespace eaqcc {

// Dense matrix over RationalPoly. A matrix with zero rows or zero columns is
// allowed and stands for an empty block.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  PolyMatrix(std::initializer_list<std::initializer_list<RationalPoly>> rows);

  static PolyMatrix identity(std::size_t n);
  // One row per line (or per ';'), entries separated by ','. Text after '#'
  // on a line is ignored.
  static PolyMatrix parse(std::string_view text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  RationalPoly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const RationalPoly& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  RationalPoly& operator()(std::size_t r, std::size_t c) { return at(r, c); }
  const RationalPoly& operator()(std::size_t r, std::size_t c) const { return at(r, c); }

  bool is_zero() const;
  bool is_polynomial() const;

  PolyMatrix transpose() const;
  // Transpose, then substitute D^-1 for D in every entry.
  PolyMatrix transpose_reverse() const;
  PolyMatrix reverse() const;

  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const PolyMatrix& b);
  static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
  static PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);

  bool operator==(const PolyMatrix& other) const = default;

  // Rows on separate lines, entries joined by ", ".
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RationalPoly> data_;
};

// Elementary operation on the lines (rows or columns) of a matrix.
//   Swap:          line dst <-> line src
//   AddMul:        line dst += mult * line src
//   ScaleUnit:     line dst *= D^exp
//   ScaleRational: line dst *= mult  (arbitrary non-zero; measurement stage only)
enum class OpKind { Swap, AddMul, ScaleUnit, ScaleRational };

struct ElemOp {
  OpKind kind = OpKind::Swap;
  std::size_t dst = 0;
  std::size_t src = 0;
  RationalPoly mult;
  int exp = 0;

  static ElemOp swap(std::size_t a, std::size_t b) { return {OpKind::Swap, a, b, {}, 0}; }
  static ElemOp add_mul(std::size_t dst, std::size_t src, RationalPoly q) {
    return {OpKind::AddMul, dst, src, std::move(q), 0};
  }
  static ElemOp scale_unit(std::size_t line, int e) { return {OpKind::ScaleUnit, line, line, {}, e}; }
  static ElemOp scale(std::size_t line, RationalPoly f) { return {OpKind::ScaleRational, line, line, std::move(f), 0}; }

  // The operation that undoes this one.
  ElemOp inverse() const;
  std::string str() const;
};

void row_op_inplace(PolyMatrix& m, const ElemOp& op);
void col_op_inplace(PolyMatrix& m, const ElemOp& op);
PolyMatrix apply_row_op(PolyMatrix m, const ElemOp& op);
PolyMatrix apply_col_op(PolyMatrix m, const ElemOp& op);

struct SmithStep {
  bool on_rows = true;
  ElemOp op;
};

// M = A * diag(gamma) * B. Replaying op_log on M (row steps on the left,
// column steps on the right) yields diag(gamma) exactly.
struct SmithDecomposition {
  PolyMatrix A;
  std::vector<LaurentPoly> gamma;
  PolyMatrix B;
  // Power of D divided out of each pivot row during normalization.
  std::vector<int> unit_exps;
  std::vector<SmithStep> op_log;

  std::size_t rank() const { return gamma.size(); }
  // diag(gamma) padded to the shape of the original matrix.
  PolyMatrix diagonal(std::size_t rows, std::size_t cols) const;
};

// Requires polynomial (Laurent) entries. When every entry has del >= 0 the
// reduction stays in GF(2)[D] and uses the degree norm; otherwise it uses
// the span norm of the Laurent ring.
SmithDecomposition smith_form(const PolyMatrix& m);

// Rank over the rational function field.
std::size_t rank(const PolyMatrix& m);

// Reduced row echelon form over GF(2)(D), zero rows dropped.
PolyMatrix rref(const PolyMatrix& m);

// Determinant over GF(2)(D). Requires a square matrix.
RationalPoly det(const PolyMatrix& m);

// Inverse over GF(2)(D). Throws std::domain_error when singular.
PolyMatrix inverse(const PolyMatrix& m);

// Multiplies each row by the lcm of its denominators.
PolyMatrix clear_denominators(const PolyMatrix& m, std::vector<LaurentPoly>* multipliers = nullptr);

}  // namespace eaqcc
