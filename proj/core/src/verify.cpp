#include "eaqcc/verify.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "eaqcc/errors.hpp"
#include "eaqcc/simulate.hpp"

namespace eaqcc {

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

std::string VerificationReport::str() const {
  std::string out = "window=" + std::to_string(window) + " scratch=" + std::to_string(scratch) + "\n";
  for (const CheckResult& c : checks) {
    out += c.name + ": " + (c.passed ? "pass" : "FAIL");
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
  }
  return out;
}

int default_scratch(const CodeSpec& spec) {
  int s = 0;
  for (const Circuit* c : {&spec.encoder, &spec.decoder})
    for (const Gate& g : c->gates)
      if (g.kind == GateKind::InfDepth) s = std::max(s, 4 * g.f.deg());
  return s;
}

namespace {

int row_lo(const CheckRow& r) {
  int lo = std::numeric_limits<int>::max();
  for (const auto* half : {&r.z, &r.x})
    for (const RationalPoly& p : *half)
      if (!p.is_zero()) lo = std::min(lo, p.num().del());
  return lo;
}

int row_hi(const CheckRow& r) {
  int hi = std::numeric_limits<int>::min();
  for (const auto* half : {&r.z, &r.x})
    for (const RationalPoly& p : *half)
      if (!p.is_zero()) hi = std::max(hi, p.num().deg());
  return hi;
}

// Room the sliding rules need on the left of a row's support.
int left_margin(const Circuit& c) {
  int m = 0;
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::InfDepth) m = std::max(m, (g.time_reversed ? g.f.reverse() : g.f).span());
  return m;
}

bool in_row_space(const PolyMatrix& basis, const PolyMatrix& rows) {
  if (rows.rows() == 0) return true;
  return rank(PolyMatrix::vstack(basis, rows)) == rank(basis);
}

CheckResult check_commute(const QuantumCheckMatrix& encoded, int frames) {
  CheckResult res{"commute", true, ""};
  for (std::size_t i = 0; i < encoded.rows() && res.passed; ++i)
    for (std::size_t j = i; j < encoded.rows(); ++j)
      if (!shifted_symplectic(encoded.row(i), encoded.row(j)).is_zero()) {
        res.passed = false;
        res.detail = "rows " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " anticommute";
        break;
      }
  if (!res.passed) return res;
  const PolyMatrix cleared = clear_denominators(encoded.stabilizer());
  const std::size_t cols = encoded.cols();
  const QuantumCheckMatrix meas(cleared.block(0, 0, encoded.rows(), cols), cleared.block(0, cols, encoded.rows(), cols));
  const BinarySymplecticWindow win = expand(meas, frames, 0);
  for (std::size_t a = 0; a < win.rows().size(); ++a)
    for (std::size_t b = a + 1; b < win.rows().size(); ++b)
      if (symplectic(win.rows()[a], win.rows()[b])) {
        res.passed = false;
        res.detail = "window rows " + std::to_string(a) + " and " + std::to_string(b) + " anticommute";
        return res;
      }
  res.detail = std::to_string(win.rows().size()) + " window rows";
  return res;
}

CheckResult check_equivalent(const CodeSpec& spec, const QuantumCheckMatrix& encoded) {
  const QuantumCheckMatrix alice = encoded.drop_leading_cols(spec.c);
  const std::size_t n = spec.n;
  const PolyMatrix& h1 = spec.record.input.h1;
  const PolyMatrix& h2 = spec.record.input.h2;
  PolyMatrix want(h1.rows() + h2.rows(), 2 * n);
  want.set_block(0, 0, h1);
  want.set_block(h1.rows(), n, h2);
  const bool ok = rref(alice.stabilizer()) == rref(want);
  return {"equivalent", ok, ok ? "" : "row spaces differ"};
}

CheckResult check_roundtrip(const CodeSpec& spec, const QuantumCheckMatrix& decoded) {
  CheckResult res{"roundtrip", true, ""};
  if (decoded.info_rows() != spec.expected_info_z.rows()) return {"roundtrip", false, "logical row count changed"};
  const PolyMatrix diff = decoded.logical() + PolyMatrix::hstack(spec.expected_info_z, spec.expected_info_x);
  const PolyMatrix stab = decoded.stabilizer();
  for (std::size_t i = 0; i < diff.rows(); ++i)
    if (!in_row_space(stab, diff.block(i, 0, 1, diff.cols()))) {
      res.passed = false;
      res.detail = "logical row " + std::to_string(i + 1) + " decodes to " + decoded.info_row(i).str();
      return res;
    }
  return res;
}

CheckResult check_simulate(const CodeSpec& spec, const QuantumCheckMatrix& encoded, const QuantumCheckMatrix& decoded,
                           int window, int scratch) {
  const int frames = window + scratch;
  const std::size_t cols = spec.start.cols();
  const std::size_t nstab = spec.start.rows();
  const std::size_t total = nstab + spec.start.info_rows();
  auto pick = [&](const QuantumCheckMatrix& m, std::size_t r) { return r < nstab ? m.row(r) : m.info_row(r - nstab); };

  // Lowest frame each row reaches anywhere in the two circuits; highest
  // frame of the rows that get compared.
  std::vector<int> lo(total, std::numeric_limits<int>::max());
  std::vector<int> hi(total, std::numeric_limits<int>::min());
  QuantumCheckMatrix state = spec.start;
  auto note = [&] {
    for (std::size_t r = 0; r < total; ++r) {
      const CheckRow row = pick(state, r);
      if (!row.is_zero()) lo[r] = std::min(lo[r], row_lo(row));
    }
  };
  note();
  for (const Circuit* c : {&spec.encoder, &spec.decoder})
    for (const Gate& g : c->gates) {
      apply_gate_inplace(state, g);
      note();
    }
  for (const QuantumCheckMatrix* m : {&spec.start, &encoded, &decoded})
    for (std::size_t r = 0; r < total; ++r) {
      const CheckRow row = pick(*m, r);
      if (!row.is_zero()) hi[r] = std::max(hi[r], row_hi(row));
    }
  const int margin = std::max(left_margin(spec.encoder), left_margin(spec.decoder));

  BinarySymplecticWindow sim(cols, window, scratch), enc(cols, window, scratch), dec(cols, window, scratch);
  for (std::size_t r = 0; r < total; ++r) {
    const CheckRow row = pick(spec.start, r);
    if (row.is_zero()) continue;
    const int first = margin - lo[r];
    const int last = frames - 1 - hi[r];
    if (first > last)
      throw WindowTooSmall("row " + std::to_string(r + 1) + " needs more than " + std::to_string(frames) + " frames");
    for (int s = first; s <= last; ++s) {
      sim.add_row(row, s, r, r >= nstab);
      enc.add_row(pick(encoded, r), s, r, r >= nstab);
      dec.add_row(pick(decoded, r), s, r, r >= nstab);
    }
  }
  sim = run_circuit(sim, spec.encoder);
  long bad = first_mismatch(sim, enc);
  if (bad >= 0)
    return {"simulate", false, "encoder: window row " + std::to_string(bad) + " disagrees with the algebra"};
  sim = run_circuit(sim, spec.decoder);
  bad = first_mismatch(sim, dec);
  if (bad >= 0)
    return {"simulate", false, "decoder: window row " + std::to_string(bad) + " disagrees with the algebra"};
  std::size_t clean = 0;
  for (std::size_t i = 0; i < sim.width(); ++i) clean += !sim.z_taint()[i] && !sim.x_taint()[i];
  if (clean == 0) return {"simulate", false, "truncation reaches every position of the window"};
  return {"simulate", true,
          std::to_string(sim.rows().size()) + " window rows, " + std::to_string(clean) + "/" +
              std::to_string(sim.width()) + " untruncated positions"};
}

}  // namespace

VerificationReport verify_code(const CodeSpec& spec, int window, int scratch) {
  if (window < 1) throw WindowTooSmall("window must hold at least one frame");
  if (scratch < 0) scratch = default_scratch(spec);
  VerificationReport rep;
  rep.window = window;
  rep.scratch = scratch;
  const QuantumCheckMatrix encoded = apply_circuit(spec.start, spec.encoder);
  const QuantumCheckMatrix decoded = apply_circuit(encoded, spec.decoder);
  rep.checks.push_back(check_commute(encoded, window + scratch));
  rep.checks.push_back(check_equivalent(spec, encoded));
  rep.checks.push_back(check_roundtrip(spec, decoded));
  rep.checks.push_back(check_simulate(spec, encoded, decoded, window, scratch));
  return rep;
}

}  // namespace eaqcc
