#include "eaqcc/qcm.hpp"

#include <stdexcept>

namespace eaqcc {

QuantumCheckMatrix::QuantumCheckMatrix(PolyMatrix zz, PolyMatrix xx, std::size_t bob)
    : QuantumCheckMatrix(std::move(zz), std::move(xx), PolyMatrix(), PolyMatrix(), bob) {}

QuantumCheckMatrix::QuantumCheckMatrix(PolyMatrix zz, PolyMatrix xx, PolyMatrix iz, PolyMatrix ix, std::size_t bob)
    : z(std::move(zz)), x(std::move(xx)), info_z(std::move(iz)), info_x(std::move(ix)), bob_cols(bob) {
  if (z.rows() != x.rows() || z.cols() != x.cols()) throw std::invalid_argument("Z and X halves differ in shape");
  if (info_z.rows() != info_x.rows() || info_z.cols() != info_x.cols())
    throw std::invalid_argument("logical Z and X halves differ in shape");
  if (info_z.rows() == 0) {
    info_z = PolyMatrix(0, z.cols());
    info_x = PolyMatrix(0, z.cols());
  } else if (info_z.cols() != z.cols()) {
    throw std::invalid_argument("logical rows have a different column count");
  }
  if (bob_cols > z.cols()) throw std::invalid_argument("more receiver columns than columns");
}

CheckRow QuantumCheckMatrix::row(std::size_t r) const {
  CheckRow out(cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    out.z[c] = z(r, c);
    out.x[c] = x(r, c);
  }
  return out;
}

CheckRow QuantumCheckMatrix::info_row(std::size_t r) const {
  CheckRow out(cols());
  for (std::size_t c = 0; c < cols(); ++c) {
    out.z[c] = info_z(r, c);
    out.x[c] = info_x(r, c);
  }
  return out;
}

QuantumCheckMatrix QuantumCheckMatrix::drop_leading_cols(std::size_t count) const {
  const std::size_t keep = cols() - count;
  QuantumCheckMatrix out;
  out.z = z.block(0, count, rows(), keep);
  out.x = x.block(0, count, rows(), keep);
  out.info_z = info_z.block(0, count, info_rows(), keep);
  out.info_x = info_x.block(0, count, info_rows(), keep);
  out.bob_cols = bob_cols > count ? bob_cols - count : 0;
  return out;
}

void QuantumCheckMatrix::stabilizer_row_op(const ElemOp& op) {
  row_op_inplace(z, op);
  row_op_inplace(x, op);
}

namespace {

std::string render(const PolyMatrix& zz, const PolyMatrix& xx) {
  std::string out;
  for (std::size_t r = 0; r < zz.rows(); ++r) {
    if (r != 0) out += '\n';
    for (std::size_t c = 0; c < zz.cols(); ++c) out += (c ? ", " : "") + zz(r, c).str();
    out += " | ";
    for (std::size_t c = 0; c < xx.cols(); ++c) out += (c ? ", " : "") + xx(r, c).str();
  }
  return out;
}

}  // namespace

std::string QuantumCheckMatrix::str() const { return render(z, x); }
std::string QuantumCheckMatrix::info_str() const { return render(info_z, info_x); }

bool rows_commute(const QuantumCheckMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const CheckRow a = m.row(i);
    for (std::size_t j = i; j < m.rows(); ++j)
      if (!shifted_symplectic(a, m.row(j)).is_zero()) return false;
  }
  return true;
}

}  // namespace eaqcc
