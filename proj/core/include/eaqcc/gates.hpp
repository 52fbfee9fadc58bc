#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eaqcc/poly.hpp"
#include "eaqcc/qcm.hpp"

namespace eaqcc {

enum class GateKind { CNOT, H, Phase, CPhase, CPhaseSelf, InfDepth };

// Shift-invariant gate acting on every frame. Qubit indices are 0-based
// global columns (receiver columns first); text form is 1-based.
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t a = 0;  // control, or the only qubit
  std::size_t b = 0;  // target
  int delay = 0;
  LaurentPoly f;  // InfDepth only
  bool time_reversed = false;
  // False for receiver-side gates that also touch the receiver's columns.
  bool alice_only = true;
  std::string note;

  static Gate cnot(std::size_t control, std::size_t target, int delay = 0);
  static Gate h(std::size_t q);
  static Gate phase(std::size_t q);
  static Gate cphase(std::size_t i, std::size_t j, int delay = 0);
  static Gate cphase_self(std::size_t i, int delay);
  static Gate inf(std::size_t q, LaurentPoly f, bool time_reversed = false);

  Gate& receiver() {
    alice_only = false;
    return *this;
  }
  Gate& with_note(std::string n) {
    note = std::move(n);
    return *this;
  }

  bool is_finite_depth() const { return kind != GateKind::InfDepth; }
  // Largest |frame offset| the gate reaches.
  int reach() const;

  // Equality ignores the provenance note.
  bool operator==(const Gate& o) const {
    return kind == o.kind && a == o.a && b == o.b && delay == o.delay && f == o.f &&
           time_reversed == o.time_reversed && alice_only == o.alice_only;
  }

  // e.g. "CNOT 2 3 delay=1", "H 2", "INF 3 f=1+D+D^2"
  std::string str() const;
  static Gate parse(std::string_view line);
};

enum class Direction { Encode, Decode };

struct Circuit {
  std::vector<Gate> gates;
  Direction direction = Direction::Encode;

  std::size_t size() const { return gates.size(); }
  std::size_t count_infinite_depth() const;
  // One gate per line; provenance notes appended as "# note".
  std::string str(bool with_notes = false) const;
  // Blank lines and '#' comments are skipped.
  static Circuit parse(std::string_view text, Direction dir = Direction::Encode);
};

// Column-operation semantics on the stabilizer and logical rows. Throws
// GateError for out-of-range indices, for control == target, and for
// transmitter gates that address receiver columns.
void apply_gate_inplace(QuantumCheckMatrix& m, const Gate& g);
QuantumCheckMatrix apply_gate(QuantumCheckMatrix m, const Gate& g);
QuantumCheckMatrix apply_circuit(QuantumCheckMatrix m, const Circuit& c);

// One CNOT(i -> j, l) per term D^l of f.
std::vector<Gate> column_poly_to_cnots(const LaurentPoly& f, std::size_t i, std::size_t j);

// Sliding-window realization of multiplying one X column by 1/f.
//
// Window positions are 1-based frames of a single qubit. Each pair (c, t)
// in cnot_pattern is a CNOT from window position c to position t; the
// pattern is applied once per frame, sliding forward, and the column is
// then shifted by `delay` frames.
struct SlidingWindowRule {
  int window_size = 1;
  std::vector<std::pair<int, int>> cnot_pattern;
  int scratch_frames = 0;
  int delay = 0;
  LaurentPoly f;  // the polynomial realized as 1/f on X

  // Frame offsets i >= 1 such that frame t receives a CNOT from frame t - i.
  std::vector<int> taps() const;
};

SlidingWindowRule synthesize_infinite_depth(const LaurentPoly& f);
// Realizes 1/f(D^-1) on X: the rule for D^m f(D^-1) followed by an m-frame
// delay, m = deg(f) - del(f).
SlidingWindowRule time_reversed_rule(const LaurentPoly& f);
SlidingWindowRule rule_for(const Gate& g);

// Reverses a finite-depth circuit. Every finite-depth gate is its own
// inverse on check matrices. Runs of CNOTs with one control and target are
// emitted in ascending delay order (they commute).
Circuit invert_circuit(const Circuit& c);

}  // namespace eaqcc
