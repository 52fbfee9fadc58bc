#include "eaqcc/polymat.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "eaqcc/errors.hpp"

namespace eaqcc {

PolyMatrix::PolyMatrix(std::initializer_list<std::initializer_list<RationalPoly>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::one();
  return m;
}

PolyMatrix PolyMatrix::parse(std::string_view text) {
  std::vector<std::vector<RationalPoly>> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t rpos = 0;
    while (rpos <= line.size()) {
      std::size_t rend = line.find(';', rpos);
      if (rend == std::string_view::npos) rend = line.size();
      std::string_view row_text = line.substr(rpos, rend - rpos);
      const std::size_t row_off = rpos;
      rpos = rend + 1;
      if (row_text.find_first_not_of(" \t\r") == std::string_view::npos) continue;

      std::vector<RationalPoly> row;
      std::size_t epos = 0;
      while (epos <= row_text.size()) {
        std::size_t eend = row_text.find(',', epos);
        if (eend == std::string_view::npos) eend = row_text.size();
        const std::string_view entry = row_text.substr(epos, eend - epos);
        const int col = static_cast<int>(row_off + epos);
        try {
          row.push_back(RationalPoly::parse(entry));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no, col + e.column());
        }
        epos = eend + 1;
      }
      if (!rows.empty() && row.size() != rows.front().size()) {
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(rows.front().size()),
                         line_no, static_cast<int>(row_off) + 1);
      }
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw ParseError("empty matrix", line_no, 1);
  PolyMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = std::move(rows[r][c]);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const RationalPoly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_polynomial() const {
  return std::all_of(data_.begin(), data_.end(), [](const RationalPoly& p) { return p.is_polynomial(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = at(r, c);
  return t;
}

PolyMatrix PolyMatrix::transpose_reverse() const {
  PolyMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = at(r, c).reverse();
  return t;
}

PolyMatrix PolyMatrix::reverse() const {
  PolyMatrix t = *this;
  for (auto& e : t.data_) e = e.reverse();
  return t;
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
  PolyMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = at(r0 + r, c0 + c);
  return b;
}

void PolyMatrix::set_block(std::size_t r0, std::size_t c0, const PolyMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block outside matrix");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) at(r0 + r, c0 + c) = b(r, c);
}

PolyMatrix PolyMatrix::hstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
  PolyMatrix m(a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

PolyMatrix PolyMatrix::vstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
  PolyMatrix m(a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("dimension mismatch in product: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                std::to_string(b.cols_));
  }
  PolyMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RationalPoly& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
      }
    }
  }
  return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch in sum");
  PolyMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

std::string PolyMatrix::str() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r != 0) out += '\n';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c != 0) out += ", ";
      out += at(r, c).str();
    }
  }
  return out;
}

ElemOp ElemOp::inverse() const {
  switch (kind) {
    case OpKind::Swap:
    case OpKind::AddMul:
      return *this;
    case OpKind::ScaleUnit:
      return scale_unit(dst, -exp);
    case OpKind::ScaleRational:
      return scale(dst, mult.inverse());
  }
  return *this;
}

std::string ElemOp::str() const {
  const std::string d = std::to_string(dst);
  const std::string s = std::to_string(src);
  switch (kind) {
    case OpKind::Swap:
      return "swap " + d + " " + s;
    case OpKind::AddMul:
      return d + " += (" + mult.str() + ")*" + s;
    case OpKind::ScaleUnit:
      return d + " *= D^" + std::to_string(exp);
    case OpKind::ScaleRational:
      return d + " *= (" + mult.str() + ")";
  }
  return {};
}

namespace {

void check_line(std::size_t i, std::size_t n) {
  if (i >= n) throw std::out_of_range("line index " + std::to_string(i) + " out of range " + std::to_string(n));
}

// The op that keeps X = Y * E^-1 in step when Y undergoes `op` on the other
// side: a row op on Y is a column op on the witness and vice versa.
ElemOp witness_op(const ElemOp& op) {
  switch (op.kind) {
    case OpKind::Swap:
      return op;
    case OpKind::AddMul:
      return ElemOp::add_mul(op.src, op.dst, op.mult);
    case OpKind::ScaleUnit:
      return ElemOp::scale_unit(op.dst, -op.exp);
    case OpKind::ScaleRational:
      return ElemOp::scale(op.dst, op.mult.inverse());
  }
  return op;
}

}  // namespace

void row_op_inplace(PolyMatrix& m, const ElemOp& op) {
  check_line(op.dst, m.rows());
  check_line(op.src, m.rows());
  switch (op.kind) {
    case OpKind::Swap:
      if (op.dst == op.src) return;
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(op.dst, c), m(op.src, c));
      return;
    case OpKind::AddMul:
      if (op.dst == op.src) throw std::invalid_argument("row add with itself");
      if (op.mult.is_zero()) return;
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m(op.src, c).is_zero()) m(op.dst, c) += op.mult * m(op.src, c);
      return;
    case OpKind::ScaleUnit: {
      const LaurentPoly u = LaurentPoly::monomial(op.exp);
      for (std::size_t c = 0; c < m.cols(); ++c) m(op.dst, c) *= u;
      return;
    }
    case OpKind::ScaleRational:
      if (op.mult.is_zero()) throw std::invalid_argument("row scaling by zero");
      for (std::size_t c = 0; c < m.cols(); ++c) m(op.dst, c) *= op.mult;
      return;
  }
}

void col_op_inplace(PolyMatrix& m, const ElemOp& op) {
  check_line(op.dst, m.cols());
  check_line(op.src, m.cols());
  switch (op.kind) {
    case OpKind::Swap:
      if (op.dst == op.src) return;
      for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, op.dst), m(r, op.src));
      return;
    case OpKind::AddMul:
      if (op.dst == op.src) throw std::invalid_argument("column add with itself");
      if (op.mult.is_zero()) return;
      for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m(r, op.src).is_zero()) m(r, op.dst) += op.mult * m(r, op.src);
      return;
    case OpKind::ScaleUnit: {
      const LaurentPoly u = LaurentPoly::monomial(op.exp);
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, op.dst) *= u;
      return;
    }
    case OpKind::ScaleRational:
      if (op.mult.is_zero()) throw std::invalid_argument("column scaling by zero");
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, op.dst) *= op.mult;
      return;
  }
}

PolyMatrix apply_row_op(PolyMatrix m, const ElemOp& op) {
  row_op_inplace(m, op);
  return m;
}

PolyMatrix apply_col_op(PolyMatrix m, const ElemOp& op) {
  col_op_inplace(m, op);
  return m;
}

PolyMatrix SmithDecomposition::diagonal(std::size_t rows, std::size_t cols) const {
  PolyMatrix d(rows, cols);
  for (std::size_t i = 0; i < gamma.size(); ++i) d(i, i) = gamma[i];
  return d;
}

namespace {

class SmithRunner {
 public:
  explicit SmithRunner(const PolyMatrix& m)
      : w_(m), out_{PolyMatrix::identity(m.rows()), {}, PolyMatrix::identity(m.cols()), {}, {}} {
    poly_mode_ = true;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const RationalPoly& e = m(r, c);
        if (!e.is_polynomial()) throw std::invalid_argument("smith_form needs polynomial entries, got " + e.str());
        if (!e.is_zero() && e.num().del() < 0) poly_mode_ = false;
      }
  }

  SmithDecomposition run() {
    const std::size_t n = std::min(w_.rows(), w_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!place_pivot(t)) break;
      for (;;) {
        reduce_row_and_column(t);
        if (!fix_divisibility(t)) break;
      }
      const int e = get(t, t).del();
      out_.unit_exps.push_back(e);
      if (e != 0) row(ElemOp::scale_unit(t, -e));
      out_.gamma.push_back(get(t, t));
    }
    return std::move(out_);
  }

 private:
  const LaurentPoly& get(std::size_t r, std::size_t c) const { return w_(r, c).num(); }

  int norm(const LaurentPoly& p) const { return poly_mode_ ? p.deg() : p.span(); }

  LaurentPoly quotient(const LaurentPoly& a, const LaurentPoly& b) const {
    return poly_mode_ ? poly_divmod(a, b).quotient : laurent_divmod(a, b).quotient;
  }

  void row(const ElemOp& op) {
    row_op_inplace(w_, op);
    col_op_inplace(out_.A, witness_op(op));
    out_.op_log.push_back({true, op});
  }

  void col(const ElemOp& op) {
    col_op_inplace(w_, op);
    row_op_inplace(out_.B, witness_op(op));
    out_.op_log.push_back({false, op});
  }

  bool place_pivot(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    int best_span = std::numeric_limits<int>::max();
    for (std::size_t r = t; r < w_.rows(); ++r)
      for (std::size_t c = t; c < w_.cols(); ++c) {
        const LaurentPoly& e = get(r, c);
        if (e.is_zero()) continue;
        if (e.span() < best_span) {
          best_span = e.span();
          best = {r, c};
        }
      }
    if (!best) return false;
    if (best->first != t) row(ElemOp::swap(t, best->first));
    if (best->second != t) col(ElemOp::swap(t, best->second));
    return true;
  }

  // Clears row t beyond the pivot; returns true if anything changed.
  bool reduce_row(std::size_t t) {
    bool changed = false;
    for (;;) {
      std::vector<std::size_t> nz;
      for (std::size_t c = t; c < w_.cols(); ++c)
        if (!get(t, c).is_zero()) nz.push_back(c);
      if (nz.size() == 1) {
        if (nz[0] != t) {
          col(ElemOp::swap(t, nz[0]));
          changed = true;
        }
        return changed;
      }
      std::size_t p = nz[0];
      for (std::size_t c : nz)
        if (norm(get(t, c)) < norm(get(t, p))) p = c;
      for (std::size_t c : nz) {
        if (c == p) continue;
        LaurentPoly q = quotient(get(t, c), get(t, p));
        if (!q.is_zero()) {
          col(ElemOp::add_mul(c, p, q));
          changed = true;
        }
      }
    }
  }

  bool reduce_column(std::size_t t) {
    bool changed = false;
    for (;;) {
      std::vector<std::size_t> nz;
      for (std::size_t r = t; r < w_.rows(); ++r)
        if (!get(r, t).is_zero()) nz.push_back(r);
      if (nz.size() == 1) {
        if (nz[0] != t) {
          row(ElemOp::swap(t, nz[0]));
          changed = true;
        }
        return changed;
      }
      std::size_t p = nz[0];
      for (std::size_t r : nz)
        if (norm(get(r, t)) < norm(get(p, t))) p = r;
      for (std::size_t r : nz) {
        if (r == p) continue;
        LaurentPoly q = quotient(get(r, t), get(p, t));
        if (!q.is_zero()) {
          row(ElemOp::add_mul(r, p, q));
          changed = true;
        }
      }
    }
  }

  void reduce_row_and_column(std::size_t t) {
    reduce_row(t);
    while (reduce_column(t)) {
      if (!reduce_row(t)) break;
    }
  }

  bool fix_divisibility(std::size_t t) {
    const LaurentPoly& p = get(t, t);
    for (std::size_t r = t + 1; r < w_.rows(); ++r)
      for (std::size_t c = t + 1; c < w_.cols(); ++c) {
        if (!divides(p, get(r, c))) {
          row(ElemOp::add_mul(t, r, LaurentPoly::one()));
          return true;
        }
      }
    return false;
  }

  PolyMatrix w_;
  SmithDecomposition out_;
  bool poly_mode_ = true;
};

struct Elimination {
  PolyMatrix m;
  std::vector<std::size_t> pivot_cols;
  bool swapped_odd = false;
};

// Gauss-Jordan over the field; rows beyond pivot_cols.size() are zero.
Elimination eliminate(PolyMatrix m, bool full) {
  Elimination el;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<std::size_t> piv;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      if (!piv || m(i, c).num().weight() + m(i, c).den().weight() < m(*piv, c).num().weight() + m(*piv, c).den().weight())
        piv = i;
    }
    if (!piv) continue;
    if (*piv != r) {
      row_op_inplace(m, ElemOp::swap(r, *piv));
      el.swapped_odd = !el.swapped_odd;
    }
    if (full) {
      const RationalPoly inv = m(r, c).inverse();
      row_op_inplace(m, ElemOp::scale(r, inv));
    }
    for (std::size_t i = full ? 0 : r + 1; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      row_op_inplace(m, ElemOp::add_mul(i, r, m(i, c) / m(r, c)));
    }
    el.pivot_cols.push_back(c);
    ++r;
  }
  el.m = std::move(m);
  return el;
}

}  // namespace

SmithDecomposition smith_form(const PolyMatrix& m) { return SmithRunner(m).run(); }

std::size_t rank(const PolyMatrix& m) {
  if (m.empty()) return 0;
  return eliminate(m, false).pivot_cols.size();
}

PolyMatrix rref(const PolyMatrix& m) {
  if (m.empty()) return PolyMatrix(0, m.cols());
  Elimination el = eliminate(m, true);
  return el.m.block(0, 0, el.pivot_cols.size(), m.cols());
}

RationalPoly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of a non-square matrix");
  if (m.rows() == 0) return LaurentPoly::one();
  Elimination el = eliminate(m, false);
  if (el.pivot_cols.size() < m.rows()) return {};
  RationalPoly d = LaurentPoly::one();
  for (std::size_t i = 0; i < m.rows(); ++i) d *= el.m(i, i);
  return d;
}

PolyMatrix inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Elimination el = eliminate(PolyMatrix::hstack(m, PolyMatrix::identity(n)), true);
  if (el.pivot_cols.size() < n || (n > 0 && el.pivot_cols[n - 1] != n - 1))
    throw std::domain_error("matrix is singular");
  return el.m.block(0, n, n, n);
}

PolyMatrix clear_denominators(const PolyMatrix& m, std::vector<LaurentPoly>* multipliers) {
  PolyMatrix out = m;
  if (multipliers) multipliers->clear();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    LaurentPoly l = LaurentPoly::one();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const LaurentPoly& d = m(r, c).den();
      if (d.is_one()) continue;
      const LaurentPoly g = gcd(l, d);
      l = poly_divmod(l * d, g).quotient;
    }
    if (!l.is_one()) row_op_inplace(out, ElemOp::scale(r, l));
    if (multipliers) multipliers->push_back(l);
  }
  return out;
}

}  // namespace eaqcc
