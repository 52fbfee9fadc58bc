#include "eaqcc/construct.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "eaqcc/errors.hpp"

namespace eaqcc {

const char* to_string(CodeClass c) {
  switch (c) {
    case CodeClass::Class1:
      return "Class1";
    case CodeClass::Class2:
      return "Class2";
    case CodeClass::Class2Special:
      return "Class2Special";
  }
  return "Unknown";
}

std::string Fraction::str() const {
  if (num == 0) return "0";
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

Fraction make_fraction(long num, long den) {
  const long g = std::gcd(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

std::string entry_name(std::size_t r, std::size_t c) {
  return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

void validate_one(const PolyMatrix& h, const char* name) {
  if (h.rows() == 0 || h.cols() == 0) throw ValidationError(ValidationKind::DimensionMismatch, std::string(name) + " is empty");
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) {
      const RationalPoly& e = h(r, c);
      if (!e.is_polynomial())
        throw ValidationError(ValidationKind::Diagnostic,
                              std::string(name) + " entry " + entry_name(r, c) + " = " + e.str() + " is not a polynomial");
      if (!e.is_zero() && e.num().del() < 0)
        throw ValidationError(ValidationKind::NotDelayFree,
                              std::string(name) + " entry " + entry_name(r, c) + " = " + e.str() + " has a negative power of D");
    }
  if (rank(h) < h.rows())
    throw ValidationError(ValidationKind::RankDeficient, std::string(name) + " does not have full row rank");
  const SmithDecomposition s = smith_form(h);
  const int shift = std::accumulate(s.unit_exps.begin(), s.unit_exps.end(), 0);
  if (shift != 0)
    throw ValidationError(ValidationKind::NotDelayFree,
                          std::string(name) + " maximal minors share the factor D^" + std::to_string(shift));
  for (const LaurentPoly& g : s.gamma)
    if (!g.is_one())
      throw ValidationError(ValidationKind::CatastrophicInput, std::string(name) + " has invariant factor " + g.str());
}

bool touches(const Gate& g, std::size_t q) {
  switch (g.kind) {
    case GateKind::CNOT:
    case GateKind::CPhase:
      return g.a == q || g.b == q;
    default:
      return g.a == q;
  }
}

// Appends to a gate list, cancelling an H against an earlier H on the same
// qubit when nothing in between touches that qubit.
void push_gate(std::vector<Gate>& gates, Gate g) {
  if (g.kind == GateKind::H) {
    for (std::size_t i = gates.size(); i-- > 0;) {
      if (!touches(gates[i], g.a)) continue;
      if (gates[i].kind == GateKind::H) {
        gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
        return;
      }
      break;
    }
  }
  gates.push_back(std::move(g));
}

// Z col dst += q * Z col src, conjugated by Hadamards. Also does
// X col src += q(D^-1) * X col dst.
std::vector<Gate> zside_gates(std::size_t src, std::size_t dst, const LaurentPoly& q, bool receiver = false) {
  std::vector<Gate> out;
  auto mark = [&](Gate g) {
    if (receiver) g.receiver();
    return g;
  };
  out.push_back(mark(Gate::h(src)));
  out.push_back(Gate::h(dst));
  for (const Gate& g : column_poly_to_cnots(q, src, dst)) out.push_back(mark(g));
  out.push_back(mark(Gate::h(src)));
  out.push_back(Gate::h(dst));
  return out;
}

// Mutable view of the decomposition record used by every stage.
class Stage {
 public:
  explicit Stage(DecompositionRecord& rec) : rec_(rec) {}

  PolyMatrix& z() { return rec_.work.z; }
  PolyMatrix& x() { return rec_.work.x; }
  const LaurentPoly& zat(std::size_t r, std::size_t c) { return rec_.work.z(r, c).num(); }

  void gate(const Gate& g, const std::string& note) {
    apply_gate_inplace(rec_.work, g);
    Gate n = g;
    n.with_note(note);
    push_gate(rec_.gates, std::move(n));
  }

  void row(const ElemOp& op) {
    rec_.work.stabilizer_row_op(op);
    rec_.row_ops.push_back(op);
  }

  // X col dst += q * X col src.
  void xcol_add(std::size_t dst, std::size_t src, const LaurentPoly& q, const std::string& note) {
    for (const Gate& g : column_poly_to_cnots(q, src, dst)) gate(g, note);
  }

  // Z col dst += q * Z col src.
  void zcol_add(std::size_t dst, std::size_t src, const LaurentPoly& q, const std::string& note) {
    for (const Gate& g : zside_gates(src, dst, q)) gate(g, note);
  }

  void col_swap(std::size_t a, std::size_t b, const std::string& note) {
    gate(Gate::cnot(a, b), note);
    gate(Gate::cnot(b, a), note);
    gate(Gate::cnot(a, b), note);
  }

  // Z-side column op among the first m columns; the identity in the X rows
  // is restored with a row operation.
  void e_col(const ElemOp& op, const std::string& note) {
    const std::size_t r = rec_.r;
    switch (op.kind) {
      case OpKind::Swap:
        if (op.dst == op.src) return;
        col_swap(op.dst, op.src, note);
        row(ElemOp::swap(r + op.dst, r + op.src));
        return;
      case OpKind::AddMul: {
        const LaurentPoly& q = op.mult.as_poly();
        if (q.is_zero()) return;
        zcol_add(op.dst, op.src, q, note);
        row(ElemOp::add_mul(r + op.dst, r + op.src, RationalPoly(q.reverse())));
        return;
      }
      default:
        throw ValidationError(ValidationKind::Diagnostic, "column scaling has no gate realization");
    }
  }

  // Z-side column op among the trailing k2 columns.
  void f_col(const ElemOp& op, const std::string& note) {
    const std::size_t m = rec_.m;
    switch (op.kind) {
      case OpKind::Swap:
        if (op.dst == op.src) return;
        col_swap(m + op.dst, m + op.src, note);
        return;
      case OpKind::AddMul: {
        const LaurentPoly& q = op.mult.as_poly();
        if (q.is_zero()) return;
        zcol_add(m + op.dst, m + op.src, q, note);
        return;
      }
      default:
        throw ValidationError(ValidationKind::Diagnostic, "column scaling has no gate realization");
    }
  }

  ElemOp shift_row(ElemOp op, std::size_t off) {
    op.dst += off;
    op.src += off;
    return op;
  }

  // Smith form of Z rows [row0, row0+nr) restricted to E columns or F
  // columns, replayed on the working matrix.
  SmithDecomposition smith_on(std::size_t row0, std::size_t nr, bool e_block, const std::string& note) {
    const std::size_t c0 = e_block ? 0 : rec_.m;
    const std::size_t nc = e_block ? rec_.m : rec_.input.k2;
    if (nr == 0 || nc == 0) return {};
    SmithDecomposition s = smith_form(z().block(row0, c0, nr, nc));
    for (const SmithStep& st : s.op_log) {
      if (st.on_rows)
        row(shift_row(st.op, row0));
      else if (e_block)
        e_col(st.op, note);
      else
        f_col(st.op, note);
    }
    return s;
  }

  DecompositionRecord& rec() { return rec_; }

 private:
  DecompositionRecord& rec_;
};

bool all_units_full_rank(const PolyMatrix& f, std::size_t rank_needed) {
  if (f.cols() < rank_needed) return false;
  if (rank(f) < rank_needed) return false;
  const SmithDecomposition s = smith_form(f);
  if (s.gamma.size() != rank_needed) return false;
  return std::all_of(s.gamma.begin(), s.gamma.end(), [](const LaurentPoly& g) { return g.is_one(); });
}

// Q with F + E*Q of full row rank with unit invariant factors, searched over
// small Laurent entries.
std::optional<PolyMatrix> find_special_q(const PolyMatrix& E, const PolyMatrix& F) {
  const std::size_t r = F.rows(), m = E.cols(), k2 = F.cols();
  PolyMatrix q(m, k2);
  if (all_units_full_rank(F, r)) return q;
  if (k2 < r || m == 0) return std::nullopt;
  std::vector<LaurentPoly> values;
  const int exps[] = {0, 1, -1, 2, -2};
  for (int e : exps) values.push_back(LaurentPoly::monomial(e));
  for (int a = -2; a <= 2; ++a)
    for (int b = a + 1; b <= 2; ++b) values.push_back(LaurentPoly::from_exponents({a, b}));
  auto test = [&](const PolyMatrix& cand) { return all_units_full_rank(F + E * cand, r); };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k2; ++j)
      for (const LaurentPoly& v : values) {
        q(i, j) = v;
        if (test(q)) return q;
        q(i, j) = RationalPoly();
      }
  // Two monomial entries.
  const std::size_t cells = m * k2;
  int budget = 4000;
  for (std::size_t p1 = 0; p1 < cells; ++p1)
    for (std::size_t p2 = p1 + 1; p2 < cells; ++p2)
      for (int e1 : exps)
        for (int e2 : exps) {
          if (--budget < 0) return std::nullopt;
          q(p1 / k2, p1 % k2) = LaurentPoly::monomial(e1);
          q(p2 / k2, p2 % k2) = LaurentPoly::monomial(e2);
          if (test(q)) return q;
          q(p1 / k2, p1 % k2) = RationalPoly();
          q(p2 / k2, p2 % k2) = RationalPoly();
        }
  return std::nullopt;
}

std::size_t count_units(const std::vector<LaurentPoly>& gamma) {
  return static_cast<std::size_t>(
      std::count_if(gamma.begin(), gamma.end(), [](const LaurentPoly& g) { return g.is_unit(); }));
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(ValidationKind::Diagnostic, what);
}

// Every X row is a unit vector in the first m columns, with no Z part; Z
// rows have no X part.
void expect_x_identity(const DecompositionRecord& rec) {
  const std::size_t r = rec.r, m = rec.m, n = rec.input.n;
  for (std::size_t i = 0; i < r + m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RationalPoly& xv = rec.work.x(i, j);
      if (i < r) {
        expect(xv.is_zero(), "X part of a Z row survived the general stage");
      } else {
        expect(rec.work.z(i, j).is_zero(), "Z part of an X row survived the general stage");
        expect(xv.is_one() == (j == i - r), "X rows are not [I 0] after the general stage");
        if (j != i - r) expect(xv.is_zero(), "X rows are not [I 0] after the general stage");
      }
    }
}

// --- class-independent emission ------------------------------------------

struct Emission {
  std::vector<bool> flipped;  // local columns left in the Hadamard frame
  // Rows of the sub-block handled with infinite-depth gates.
  bool coupled = false;
  bool teleported = false;
  std::vector<std::size_t> f_cols;  // Class2Special, local, per i in [s, c)
  std::vector<int> f_exps;
};

Gate shifted_gate(Gate g, std::size_t off) {
  g.a += off;
  g.b += off;
  return g;
}

CodeSpec emit(const DecompositionRecord& rec, const Emission& em) {
  const std::size_t n = rec.input.n, r = rec.r, m = rec.m, c = rec.c, s = rec.s;
  const std::size_t total = c + n;
  const std::size_t k = rec.input.k1 + rec.input.k2 + c - n;
  const bool sub = em.coupled || em.teleported;

  CodeSpec spec;
  spec.n = n;
  spec.k = k;
  spec.c = c;
  spec.s = s;
  spec.k1 = rec.input.k1;
  spec.k2 = rec.input.k2;
  spec.code_class = rec.code_class;
  spec.record = rec;

  // Canonical state with the Hadamard frame applied.
  PolyMatrix cz = rec.work.z, cx = rec.work.x;
  for (std::size_t q = 0; q < n; ++q)
    if (em.flipped[q])
      for (std::size_t i = 0; i < r + m; ++i) std::swap(cz(i, q), cx(i, q));

  struct StartRow {
    std::size_t working;
    int group;
    bool is_z;
    std::size_t col;  // local
    std::size_t bob;  // valid when ebit
    bool ebit;
  };
  std::vector<StartRow> rows;
  for (std::size_t i = 0; i < r + m; ++i) {
    StartRow sr{i, 0, false, 0, 0, false};
    const bool in_sub = sub && ((i < r && i >= s && i < c) || (i >= r && i - r >= s && i - r < c));
    if (in_sub) {
      sr.is_z = i < r;
      sr.col = i < r ? i : i - r;
    } else {
      int found = 0;
      for (std::size_t q = 0; q < n; ++q) {
        if (!cz(i, q).is_zero()) {
          expect(cz(i, q).is_one(), "canonical row is not a unit vector");
          sr.is_z = true;
          sr.col = q;
          ++found;
        }
        if (!cx(i, q).is_zero()) {
          expect(cx(i, q).is_one(), "canonical row is not a unit vector");
          sr.is_z = false;
          sr.col = q;
          ++found;
        }
      }
      expect(found == 1, "canonical row " + std::to_string(i) + " is not a single Pauli");
    }
    sr.ebit = sr.col < c;
    sr.bob = sr.col;
    if (sr.ebit)
      sr.group = sr.is_z ? 0 : 2;
    else
      sr.group = i < r ? 1 : 3;
    rows.push_back(sr);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const StartRow& a, const StartRow& b) {
    if (a.group != b.group) return a.group < b.group;
    if (a.ebit) return a.col < b.col;
    return false;
  });

  const std::size_t nrows = r + m;
  PolyMatrix sz(nrows, total), sx(nrows, total);
  for (std::size_t p = 0; p < nrows; ++p) {
    PolyMatrix& half = rows[p].is_z ? sz : sx;
    half(p, c + rows[p].col) = LaurentPoly::one();
    if (rows[p].ebit) half(p, rows[p].bob) = LaurentPoly::one();
  }

  // Information qubits: the trailing k columns.
  const std::size_t info0 = n - k;
  PolyMatrix iz(2 * k, total), ix(2 * k, total);
  PolyMatrix ez(2 * k, total), ex(2 * k, total);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t g = c + info0 + j;
    ix(2 * j, g) = LaurentPoly::one();
    iz(2 * j + 1, g) = LaurentPoly::one();
    spec.info_cols.push_back(g);
    std::size_t dest = g;
    int off = 0;
    if (em.teleported) {
      for (std::size_t i = s; i < c; ++i)
        if (em.f_cols[i - s] == info0 + j) {
          dest = c + i;
          off = -em.f_exps[i - s];
        }
    }
    ex(2 * j, dest) = LaurentPoly::monomial(off);
    ez(2 * j + 1, dest) = LaurentPoly::monomial(off);
    spec.frame_offsets.push_back(off);
  }
  spec.start = QuantumCheckMatrix(sz, sx, iz, ix, c);
  spec.expected_info_z = ez;
  spec.expected_info_x = ex;

  // Sub-encoders and sub-decoders for the non-unit invariant factors.
  std::vector<Gate> sub_enc, sub_dec;
  for (std::size_t i = s; i < c && sub; ++i) {
    const std::size_t a = c + i, b = i;
    const LaurentPoly gam = rec.gamma[i];
    if (em.coupled) {
      for (std::size_t j = 0; j < k; ++j) {
        const LaurentPoly& l = rec.work.z(i, info0 + j).num();
        if (l.is_zero()) continue;
        for (Gate g : zside_gates(a, c + info0 + j, l)) push_gate(sub_enc, g.with_note("couple to information"));
        for (Gate g : zside_gates(b, c + info0 + j, l, true)) push_gate(sub_dec, g.with_note("uncouple information"));
      }
      push_gate(sub_enc, Gate::inf(a, gam, true).with_note("invariant factor " + gam.str()));
    } else {
      const std::size_t f = c + em.f_cols[i - s];
      const int e = em.f_exps[i - s];
      push_gate(sub_enc, Gate::h(a).with_note("ebit pair"));
      push_gate(sub_enc, Gate::cnot(a, f, e).with_note("ebit pair"));
      push_gate(sub_enc, Gate::inf(f, gam).with_note("invariant factor " + gam.str()));
      push_gate(sub_enc, Gate::h(a).with_note("ebit pair"));
      push_gate(sub_enc, Gate::h(f).with_note("ebit pair"));
      push_gate(sub_dec, Gate::cnot(b, a).receiver().with_note("release ebit"));
      for (int l : gam.shifted(-e).exponents())
        push_gate(sub_dec, Gate::cnot(a, f, -l).with_note("undo invariant factor"));
      push_gate(sub_dec, Gate::h(a).with_note("release ebit"));
      push_gate(sub_dec, Gate::h(f).with_note("release ebit"));
    }
  }

  Circuit decode;
  decode.direction = Direction::Decode;
  for (const Gate& g : rec.gates) decode.gates.push_back(shifted_gate(g, c));
  const Circuit inv = invert_circuit(decode);

  spec.encoder.direction = Direction::Encode;
  spec.encoder.gates = sub_enc;
  spec.encoder.gates.insert(spec.encoder.gates.end(), inv.gates.begin(), inv.gates.end());
  spec.decoder = decode;
  spec.decoder.gates.insert(spec.decoder.gates.end(), sub_dec.begin(), sub_dec.end());

  QuantumCheckMatrix state = spec.start;
  spec.encoder_trace.push_back({"start", state});
  for (const Gate& g : spec.encoder.gates) {
    apply_gate_inplace(state, g);
    spec.encoder_trace.push_back({g.str(), state});
  }
  spec.encoded = state;

  // Undo the start-row permutation, then the recorded row operations.
  QuantumCheckMatrix perm = state;
  for (std::size_t p = 0; p < nrows; ++p)
    for (std::size_t q = 0; q < total; ++q) {
      perm.z(rows[p].working, q) = state.z(p, q);
      perm.x(rows[p].working, q) = state.x(p, q);
    }
  state = perm;
  spec.encoder_trace.push_back({"row permutation", state});
  if (!rec.row_ops.empty()) {
    for (auto it = rec.row_ops.rbegin(); it != rec.row_ops.rend(); ++it) state.stabilizer_row_op(it->inverse());
    spec.encoder_trace.push_back({"inverse row operations", state});
  }
  spec.final_stabilizer = state;

  const PolyMatrix cleared = clear_denominators(state.stabilizer());
  spec.measurable = QuantumCheckMatrix(cleared.block(0, 0, nrows, total), cleared.block(0, total, nrows, total),
                                       state.info_z, state.info_x, c);

  state = spec.encoded;
  spec.decoder_trace.push_back({"received", state});
  for (const Gate& g : spec.decoder.gates) {
    apply_gate_inplace(state, g);
    spec.decoder_trace.push_back({g.str(), state});
  }
  spec.decoded = state;
  return spec;
}

void require_class(const DecompositionRecord& rec, bool ok) {
  if (!ok)
    throw ValidationError(ValidationKind::ClassMismatch, std::string("record is ") + to_string(rec.code_class));
}

}  // namespace

ValidatedPair validate_inputs(const PolyMatrix& h1, const PolyMatrix& h2) {
  validate_one(h1, "H1");
  validate_one(h2, "H2");
  if (h1.cols() != h2.cols())
    throw ValidationError(ValidationKind::DimensionMismatch, "H1 has " + std::to_string(h1.cols()) +
                                                                 " columns, H2 has " + std::to_string(h2.cols()));
  return {h1, h2, h1.cols(), h1.cols() - h1.rows(), h2.cols() - h2.rows()};
}

std::size_t ebit_count(const PolyMatrix& h1, const PolyMatrix& h2) { return rank(h1 * h2.transpose_reverse()); }

DecompositionRecord decompose_general(const PolyMatrix& h1, const PolyMatrix& h2) {
  DecompositionRecord rec;
  rec.input = validate_inputs(h1, h2);
  const std::size_t n = rec.input.n;
  rec.r = n - rec.input.k1;
  rec.m = n - rec.input.k2;
  const std::size_t r = rec.r, m = rec.m;
  rec.work = QuantumCheckMatrix(PolyMatrix::vstack(h1, PolyMatrix(m, n)), PolyMatrix::vstack(PolyMatrix(r, n), h2));
  Stage st(rec);

  for (const SmithStep& s : smith_form(h1).op_log)
    if (s.on_rows) st.row(s.op);
  const SmithDecomposition s2 = smith_form(h2);
  for (const SmithStep& s : s2.op_log) {
    if (s.on_rows) continue;
    if (s.op.kind == OpKind::Swap)
      st.col_swap(s.op.dst, s.op.src, "H2 column swap");
    else if (s.op.kind == OpKind::AddMul)
      st.xcol_add(s.op.dst, s.op.src, s.op.mult.as_poly(), "H2 column op");
    else
      throw ValidationError(ValidationKind::Diagnostic, "unexpected column scaling in the Smith form of H2");
  }
  for (const SmithStep& s : s2.op_log)
    if (s.on_rows) st.row(st.shift_row(s.op, r));
  expect_x_identity(rec);

  rec.E = rec.work.z.block(0, 0, r, m);
  rec.F = rec.work.z.block(0, m, r, rec.input.k2);
  rec.c = rank(rec.E);
  return rec;
}

DecompositionRecord classify(const PolyMatrix& h1, const PolyMatrix& h2) {
  DecompositionRecord rec = decompose_general(h1, h2);
  if (rec.c == 0) {
    rec.code_class = CodeClass::Class1;
    return rec;
  }
  rec.gamma = smith_form(rec.E).gamma;
  rec.s = count_units(rec.gamma);
  if (rec.s == rec.c) {
    rec.code_class = CodeClass::Class1;
    return rec;
  }
  if (auto q = find_special_q(rec.E, rec.F)) {
    rec.code_class = CodeClass::Class2Special;
    rec.Q = *q;
  } else {
    rec.code_class = CodeClass::Class2;
  }
  return rec;
}

CodeSpec build_class1(const DecompositionRecord& in) {
  require_class(in, in.code_class == CodeClass::Class1);
  DecompositionRecord rec = in;
  Stage st(rec);
  const std::size_t r = rec.r, m = rec.m, c = rec.c, k2 = rec.input.k2;

  const SmithDecomposition se = st.smith_on(0, r, true, "Smith of E");
  rec.gamma = se.gamma;
  rec.s = count_units(se.gamma);
  expect(rec.s == c, "E has a non-unit invariant factor");
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < k2; ++j) {
      const LaurentPoly q = st.zat(i, m + j);
      if (!q.is_zero()) st.zcol_add(m + j, i, q, "clear F1");
    }
  const SmithDecomposition sf = st.smith_on(c, r - c, false, "Smith of F2");
  expect(sf.gamma.size() == r - c, "remaining rows of F are rank deficient");
  for (const LaurentPoly& g : sf.gamma) expect(g.is_one(), "remaining rows of F have invariant factor " + g.str());

  // Trailing Hadamards only relabel the start state.
  Emission em;
  em.flipped.assign(rec.input.n, false);
  while (!rec.gates.empty() && rec.gates.back().kind == GateKind::H) {
    em.flipped[rec.gates.back().a] = !em.flipped[rec.gates.back().a];
    rec.gates.pop_back();
  }
  return emit(rec, em);
}

CodeSpec build_class2(const DecompositionRecord& in) {
  require_class(in, in.code_class == CodeClass::Class2 || in.code_class == CodeClass::Class2Special);
  DecompositionRecord rec = in;
  Stage st(rec);
  const std::size_t r = rec.r, m = rec.m, c = rec.c, k2 = rec.input.k2, n = rec.input.n;
  Emission em;
  em.flipped.assign(n, false);

  if (rec.code_class == CodeClass::Class2) {
    em.coupled = true;
    const SmithDecomposition se = st.smith_on(0, r, true, "Smith of E");
    rec.gamma = se.gamma;
    rec.s = count_units(se.gamma);
    const std::size_t s = rec.s;
    const SmithDecomposition sf = st.smith_on(c, r - c, false, "Smith of F3");
    expect(sf.gamma.size() == r - c, "rows of F below E are rank deficient");
    for (const LaurentPoly& g : sf.gamma) expect(g.is_one(), "rows of F below E have invariant factor " + g.str());
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < r - c; ++j) {
        const RationalPoly q = rec.work.z(i, m + j);
        if (!q.is_zero()) st.row(ElemOp::add_mul(i, c + j, q));
      }
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = r - c; j < k2; ++j) {
        const LaurentPoly q = st.zat(i, m + j);
        if (!q.is_zero()) st.zcol_add(m + j, i, q, "clear F1b");
      }
    // Column-only reduction of F2b to [L 0].
    const std::size_t base = m + (r - c), w = k2 - (r - c);
    for (std::size_t t = 0; t < c - s && t < w; ++t) {
      const std::size_t row = s + t;
      for (int guard = 0;; ++guard) {
        expect(guard < 10000, "lower triangular reduction did not terminate");
        std::size_t piv = w;
        for (std::size_t j = t; j < w; ++j) {
          const LaurentPoly& e = st.zat(row, base + j);
          if (e.is_zero()) continue;
          if (piv == w || e.span() < st.zat(row, base + piv).span()) piv = j;
        }
        if (piv == w) break;
        bool single = true;
        for (std::size_t j = t; j < w; ++j) {
          if (j == piv || st.zat(row, base + j).is_zero()) continue;
          single = false;
          const LaurentPoly q = laurent_divmod(st.zat(row, base + j), st.zat(row, base + piv)).quotient;
          st.zcol_add(base + j, base + piv, q, "triangularize");
        }
        if (single) {
          if (piv != t) st.col_swap(base + t, base + piv, "triangularize");
          break;
        }
      }
    }
    rec.L = rec.work.z.block(s, base, c - s, std::min(c - s, w));
    for (std::size_t i = s; i < c; ++i)
      for (std::size_t j = i - s + 1; j < w; ++j)
        expect(st.zat(i, base + j).is_zero(), "coupling block is not lower triangular");
  } else {
    em.teleported = true;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k2; ++j) {
        const LaurentPoly q = rec.Q(i, j).as_poly();
        if (!q.is_zero()) st.zcol_add(m + j, i, q, "adjust F");
      }
    const SmithDecomposition sf = st.smith_on(0, r, false, "Smith of F");
    expect(sf.gamma.size() == r, "adjusted F is rank deficient");
    for (const LaurentPoly& g : sf.gamma) expect(g.is_one(), "adjusted F has invariant factor " + g.str());

    // Smith of E', keeping the unit block of F diagonal.
    const SmithDecomposition se = smith_form(rec.work.z.block(0, 0, r, m));
    for (const SmithStep& s : se.op_log) {
      if (!s.on_rows) {
        st.e_col(s.op, "Smith of E");
        continue;
      }
      st.row(s.op);
      if (s.op.kind == OpKind::Swap) {
        if (s.op.dst != s.op.src) st.col_swap(m + s.op.dst, m + s.op.src, "keep F diagonal");
      } else if (s.op.kind == OpKind::AddMul) {
        const std::size_t d = s.op.dst, src = s.op.src;
        const RationalPoly stray = rec.work.z(d, m + src);
        if (!stray.is_zero()) {
          const RationalPoly q = stray / rec.work.z(d, m + d);
          st.zcol_add(m + src, m + d, q.as_poly(), "keep F diagonal");
        }
      }
    }
    rec.gamma = se.gamma;
    rec.s = count_units(se.gamma);
    const std::size_t s = rec.s;
    for (std::size_t i = 0; i < s; ++i) {
      const LaurentPoly u = st.zat(i, m + i);
      if (!u.is_zero()) st.zcol_add(m + i, i, u, "clear unit pair");
    }
    for (std::size_t i = c; i < r; ++i) {
      const int e = st.zat(i, m + i).del();
      if (e != 0) st.row(ElemOp::scale_unit(i, -e));
    }
    // Layout: ancillas, then teleport targets, then the remaining
    // information columns.
    std::vector<std::size_t> order;
    for (std::size_t j = c; j < r; ++j) order.push_back(j);
    for (std::size_t j = s; j < c; ++j) order.push_back(j);
    for (std::size_t j = 0; j < s; ++j) order.push_back(j);
    for (std::size_t j = r; j < k2; ++j) order.push_back(j);
    std::vector<std::size_t> cur(k2);
    std::iota(cur.begin(), cur.end(), 0);
    for (std::size_t p = 0; p < k2; ++p) {
      const std::size_t q = static_cast<std::size_t>(std::find(cur.begin(), cur.end(), order[p]) - cur.begin());
      if (q != p) {
        st.col_swap(m + p, m + q, "layout");
        std::swap(cur[p], cur[q]);
      }
    }
    for (std::size_t i = s; i < c; ++i) {
      const std::size_t pos = static_cast<std::size_t>(std::find(cur.begin(), cur.end(), i) - cur.begin());
      const LaurentPoly& u = st.zat(i, m + pos);
      expect(u.is_unit(), "teleport column entry is not a power of D");
      em.f_cols.push_back(m + pos);
      em.f_exps.push_back(u.del());
      rec.gamma2_exps.push_back(u.del());
    }
  }
  expect_x_identity(rec);
  return emit(rec, em);
}

CodeSpec build_code(const PolyMatrix& h1, const PolyMatrix& h2) {
  const DecompositionRecord rec = classify(h1, h2);
  return rec.code_class == CodeClass::Class1 ? build_class1(rec) : build_class2(rec);
}

std::string CodeParams::str() const {
  return "[[" + std::to_string(n) + "," + std::to_string(k) + ";" + std::to_string(c) + "]]";
}

CodeParams code_params(const CodeSpec& spec) {
  CodeParams p;
  p.n = spec.n;
  p.k = spec.k;
  p.c = spec.c;
  const long n = static_cast<long>(spec.n), k = static_cast<long>(spec.k), c = static_cast<long>(spec.c);
  p.ea_rate = make_fraction(k, n);
  p.tradeoff_k = make_fraction(k, n);
  p.tradeoff_c = make_fraction(c, n);
  p.catalytic = make_fraction(k - c, n);
  return p;
}

}  // namespace eaqcc
