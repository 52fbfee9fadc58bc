#include "eaqcc/simulate.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "eaqcc/errors.hpp"

namespace eaqcc {

BinarySymplecticWindow::BinarySymplecticWindow(std::size_t n, int window, int scratch)
    : n_(n), window_(window), scratch_(scratch) {
  if (window < 1) throw WindowTooSmall("window must hold at least one frame");
  if (scratch < 0) throw std::invalid_argument("negative scratch");
  z_taint_.assign(width(), 0);
  x_taint_.assign(width(), 0);
}

void BinarySymplecticWindow::add_row(const CheckRow& row, int shift, std::size_t source, bool logical) {
  if (row.n() != n_) throw std::invalid_argument("row width does not match the window");
  WindowRow w;
  w.z.assign(width(), 0);
  w.x.assign(width(), 0);
  w.shift = shift;
  w.source = source;
  w.logical = logical;
  const int lo = -shift;
  const int hi = frames() - 1 - shift;
  for (std::size_t q = 0; q < n_; ++q) {
    for (int e : series_expand(row.z[q], lo, hi).exponents()) w.z[index(e + shift, q)] = 1;
    for (int e : series_expand(row.x[q], lo, hi).exponents()) w.x[index(e + shift, q)] = 1;
  }
  rows_.push_back(std::move(w));
}

void BinarySymplecticWindow::cnot_bits(std::size_t r, int fc, std::size_t c, int ft, std::size_t t) {
  WindowRow& w = rows_[r];
  w.x[index(ft, t)] ^= w.x[index(fc, c)];
  w.z[index(fc, c)] ^= w.z[index(ft, t)];
}

namespace {

bool inside(int f, int frames) { return f >= 0 && f < frames; }

}  // namespace

// Truncation bookkeeping. Frames past the end hold unknown values; frames
// before 0 are assumed empty, which the callers guarantee by placement.
void BinarySymplecticWindow::taint_gate(const Gate& g) {
  const int F = frames();
  auto zt = [&](int f, std::size_t q) -> std::uint8_t { return f >= F ? 1 : (f < 0 ? 0 : z_taint_[index(f, q)]); };
  auto xt = [&](int f, std::size_t q) -> std::uint8_t { return f >= F ? 1 : (f < 0 ? 0 : x_taint_[index(f, q)]); };
  auto mark_z = [&](int f, std::size_t q, std::uint8_t v) {
    if (inside(f, F) && v) z_taint_[index(f, q)] = 1;
  };
  auto mark_x = [&](int f, std::size_t q, std::uint8_t v) {
    if (inside(f, F) && v) x_taint_[index(f, q)] = 1;
  };
  switch (g.kind) {
    case GateKind::CNOT:
      for (int f = -std::abs(g.delay); f < F + std::abs(g.delay); ++f) {
        const int ft = f + g.delay;
        if (!inside(f, F) && !inside(ft, F)) continue;
        mark_x(ft, g.b, xt(f, g.a));
        mark_z(f, g.a, zt(ft, g.b));
      }
      return;
    case GateKind::H:
      for (int f = 0; f < F; ++f) std::swap(z_taint_[index(f, g.a)], x_taint_[index(f, g.a)]);
      return;
    case GateKind::Phase:
      for (int f = 0; f < F; ++f) z_taint_[index(f, g.a)] |= x_taint_[index(f, g.a)];
      return;
    case GateKind::CPhase:
    case GateKind::CPhaseSelf:
      for (int f = -std::abs(g.delay); f < F + std::abs(g.delay); ++f) {
        const int fj = f + g.delay;
        if (!inside(f, F) && !inside(fj, F)) continue;
        const std::uint8_t xi = xt(f, g.a), xj = xt(fj, g.b);
        mark_z(fj, g.b, xi);
        mark_z(f, g.a, xj);
      }
      return;
    case GateKind::InfDepth: {
      const SlidingWindowRule rule = rule_for(g);
      const std::vector<int> taps = rule.taps();
      const int max_tap = taps.empty() ? 0 : taps.back();
      for (int f = 0; f < F + max_tap; ++f)
        for (int i : taps) {
          mark_x(f, g.a, xt(f - i, g.a));
          mark_z(f - i, g.a, zt(f, g.a));
        }
      std::vector<std::uint8_t> nz(static_cast<std::size_t>(F)), nx(static_cast<std::size_t>(F));
      for (int f = 0; f < F; ++f) {
        nz[static_cast<std::size_t>(f)] = zt(f - rule.delay, g.a);
        nx[static_cast<std::size_t>(f)] = xt(f - rule.delay, g.a);
      }
      for (int f = 0; f < F; ++f) {
        z_taint_[index(f, g.a)] = nz[static_cast<std::size_t>(f)];
        x_taint_[index(f, g.a)] = nx[static_cast<std::size_t>(f)];
      }
      return;
    }
  }
}

void BinarySymplecticWindow::apply(const Gate& g) {
  if (g.a >= n_ || g.b >= n_) throw GateError("gate " + g.str() + " outside the window's qubits");
  if (g.reach() >= frames()) throw WindowTooSmall("gate " + g.str() + " reaches past a window of " +
                                                  std::to_string(frames()) + " frames");
  taint_gate(g);
  const int F = frames();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    WindowRow& w = rows_[r];
    switch (g.kind) {
      case GateKind::CNOT:
        for (int f = 0; f < F; ++f)
          if (inside(f + g.delay, F)) cnot_bits(r, f, g.a, f + g.delay, g.b);
        break;
      case GateKind::H:
        for (int f = 0; f < F; ++f) std::swap(w.z[index(f, g.a)], w.x[index(f, g.a)]);
        break;
      case GateKind::Phase:
        for (int f = 0; f < F; ++f) w.z[index(f, g.a)] ^= w.x[index(f, g.a)];
        break;
      case GateKind::CPhase:
      case GateKind::CPhaseSelf:
        // X is untouched, so the two updates can read it in place
        for (int f = 0; f < F; ++f) {
          const int fj = f + g.delay;
          if (!inside(fj, F)) continue;
          w.z[index(fj, g.b)] ^= w.x[index(f, g.a)];
          w.z[index(f, g.a)] ^= w.x[index(fj, g.b)];
        }
        break;
      case GateKind::InfDepth: {
        const SlidingWindowRule rule = rule_for(g);
        const std::vector<int> taps = rule.taps();
        for (int f = 0; f < F; ++f)
          for (int i : taps)
            if (f - i >= 0) cnot_bits(r, f - i, g.a, f, g.a);
        std::vector<std::uint8_t> nz(static_cast<std::size_t>(F), 0), nx(static_cast<std::size_t>(F), 0);
        for (int f = 0; f < F; ++f) {
          const int from = f - rule.delay;
          if (!inside(from, F)) continue;
          nz[static_cast<std::size_t>(f)] = w.z[index(from, g.a)];
          nx[static_cast<std::size_t>(f)] = w.x[index(from, g.a)];
        }
        for (int f = 0; f < F; ++f) {
          w.z[index(f, g.a)] = nz[static_cast<std::size_t>(f)];
          w.x[index(f, g.a)] = nx[static_cast<std::size_t>(f)];
        }
        break;
      }
    }
  }
}

std::string BinarySymplecticWindow::row_str(std::size_t r) const {
  const WindowRow& w = rows_.at(r);
  std::string out;
  for (int f = 0; f < frames(); ++f) {
    if (f != 0) out += '|';
    for (std::size_t q = 0; q < n_; ++q) {
      const unsigned bits = w.x[index(f, q)] | (w.z[index(f, q)] << 1);
      out += to_char(static_cast<Pauli>(bits));
    }
  }
  return out;
}

namespace {

// Support [lo, hi] of the polynomial parts; rational entries extend hi to
// infinity. Returns false for the zero row.
bool row_support(const CheckRow& row, int& lo, int& hi, bool& infinite) {
  lo = std::numeric_limits<int>::max();
  hi = std::numeric_limits<int>::min();
  infinite = false;
  for (const auto* half : {&row.z, &row.x})
    for (const RationalPoly& p : *half) {
      if (p.is_zero()) continue;
      lo = std::min(lo, p.num().del());
      hi = std::max(hi, p.num().deg());
      if (!p.is_polynomial()) infinite = true;
    }
  return lo != std::numeric_limits<int>::max();
}

void expand_rows(BinarySymplecticWindow& win, const QuantumCheckMatrix& qcm, bool logical) {
  const std::size_t count = logical ? qcm.info_rows() : qcm.rows();
  for (std::size_t r = 0; r < count; ++r) {
    const CheckRow row = logical ? qcm.info_row(r) : qcm.row(r);
    int lo, hi;
    bool infinite;
    if (!row_support(row, lo, hi, infinite)) continue;
    if (!infinite && hi - lo + 1 > win.frames())
      throw WindowTooSmall("row " + std::to_string(r + 1) + " spans " + std::to_string(hi - lo + 1) +
                           " frames, window has " + std::to_string(win.frames()));
    const int last = infinite ? win.frames() - 1 - lo : win.frames() - 1 - hi;
    for (int t = -lo; t <= last; ++t) win.add_row(row, t, r, logical);
  }
}

}  // namespace

BinarySymplecticWindow expand(const QuantumCheckMatrix& qcm, int window, int scratch, bool include_info) {
  BinarySymplecticWindow win(qcm.cols(), window, scratch);
  expand_rows(win, qcm, false);
  if (include_info) expand_rows(win, qcm, true);
  return win;
}

BinarySymplecticWindow run_circuit(BinarySymplecticWindow win, const Circuit& circuit) {
  for (const Gate& g : circuit.gates) win.apply(g);
  return win;
}

bool symplectic(const WindowRow& a, const WindowRow& b) {
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < a.z.size(); ++i) acc ^= (a.z[i] & b.x[i]) ^ (a.x[i] & b.z[i]);
  return acc != 0;
}

std::vector<std::uint8_t> syndrome(const BinarySymplecticWindow& win, const ErrorPattern& e) {
  WindowRow err;
  err.z.assign(win.width(), 0);
  err.x.assign(win.width(), 0);
  for (const auto& [frame, q, p] : e.entries) {
    if (!inside(frame, win.frames()) || q >= win.n()) throw std::out_of_range("error outside the window");
    const auto bits = static_cast<unsigned>(p);
    err.x[win.index(frame, q)] ^= bits & 1U;
    err.z[win.index(frame, q)] ^= (bits >> 1) & 1U;
  }
  std::vector<std::uint8_t> out;
  out.reserve(win.rows().size());
  for (const WindowRow& r : win.rows()) out.push_back(symplectic(err, r));
  return out;
}

long first_mismatch(const BinarySymplecticWindow& sim, const BinarySymplecticWindow& alg) {
  if (sim.rows().size() != alg.rows().size() || sim.width() != alg.width())
    throw std::invalid_argument("windows differ in shape");
  for (std::size_t r = 0; r < sim.rows().size(); ++r) {
    const WindowRow& a = sim.rows()[r];
    const WindowRow& b = alg.rows()[r];
    for (std::size_t i = 0; i < sim.width(); ++i) {
      if (!sim.z_taint()[i] && a.z[i] != b.z[i]) return static_cast<long>(r);
      if (!sim.x_taint()[i] && a.x[i] != b.x[i]) return static_cast<long>(r);
    }
  }
  return -1;
}

}  // namespace eaqcc
