#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "eaqcc/errors.hpp"
#include "eaqcc/simulate.hpp"
#include "support/gen.hpp"

using eaqcc::BinarySymplecticWindow;
using eaqcc::CheckRow;
using eaqcc::Circuit;
using eaqcc::Gate;
using eaqcc::LaurentPoly;
using eaqcc::Pauli;
using eaqcc::PolyMatrix;
using eaqcc::QuantumCheckMatrix;
using eaqcc::RationalPoly;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }
PolyMatrix M(const char* s) { return PolyMatrix::parse(s); }

int min_del(const CheckRow& r) {
  int lo = std::numeric_limits<int>::max();
  for (const auto* half : {&r.z, &r.x})
    for (const auto& p : *half)
      if (!p.is_zero()) lo = std::min(lo, p.num().del());
  return lo;
}

int max_deg(const CheckRow& r) {
  int hi = std::numeric_limits<int>::min();
  for (const auto* half : {&r.z, &r.x})
    for (const auto& p : *half)
      if (!p.is_zero()) hi = std::max(hi, p.num().deg());
  return hi;
}

int left_margin(const Gate& g) {
  if (g.kind != eaqcc::GateKind::InfDepth) return 0;
  return (g.time_reversed ? g.f.reverse() : g.f).span();
}

Gate random_gate(eaqcc::testing::Gen& g, std::size_t n) {
  const auto q = [&] { return static_cast<std::size_t>(g.uniform(0, static_cast<int>(n) - 1)); };
  for (;;) {
    const int kind = g.uniform(0, 5);
    const std::size_t a = q(), b = q();
    const int k = g.uniform(-3, 3);
    switch (kind) {
      case 0:
        if (a != b) return Gate::cnot(a, b, k);
        break;
      case 1:
        return Gate::h(a);
      case 2:
        return Gate::phase(a);
      case 3:
        if (a != b) return Gate::cphase(a, b, k);
        break;
      case 4:
        if (k != 0) return Gate::cphase_self(a, k);
        break;
      default:
        return Gate::inf(a, g.delay_free(g.uniform(1, 3)).shifted(g.uniform(0, 1)), g.coin());
    }
  }
}

}  // namespace

TEST(Expand, RateOneThirdGenerators) {
  const QuantumCheckMatrix h(M("0, D, D\n1+D, 1+D, 1"), M("1+D, 1, 1+D\n0, D, D"));
  const BinarySymplecticWindow w = eaqcc::expand(h, 4, 0);
  ASSERT_EQ(w.rows().size(), 6U);
  EXPECT_EQ(w.row_str(0), "XXX|XZY|III|III");
  EXPECT_EQ(w.row_str(3), "ZZZ|ZYX|III|III");
  EXPECT_EQ(w.row_str(5), "III|III|ZZZ|ZYX");
  EXPECT_TRUE(eaqcc::expand(QuantumCheckMatrix(PolyMatrix(2, 3), PolyMatrix(2, 3)), 4, 0).rows().empty());
  EXPECT_THROW(eaqcc::expand(h, 1, 0), eaqcc::WindowTooSmall);
}

TEST(Expand, RepeatingFraction) {
  QuantumCheckMatrix m(PolyMatrix(1, 1), PolyMatrix{{RationalPoly(P("1"), P("1+D"))}});
  BinarySymplecticWindow w(1, 6, 0);
  w.add_row(m.row(0), 0, 0);
  EXPECT_EQ(w.row_str(0), "X|X|X|X|X|X");
}

TEST(RunCircuit, InfiniteDepthSeries) {
  BinarySymplecticWindow w(1, 12, 0);
  CheckRow x(1);
  x.x[0] = P("1");
  w.add_row(x, 0, 0);
  Circuit c;
  c.gates = {Gate::inf(0, P("1+D+D^3"))};
  w = eaqcc::run_circuit(w, c);
  LaurentPoly got;
  for (int f = 0; f < 12; ++f)
    if (w.rows()[0].x[w.index(f, 0)]) got += LaurentPoly::monomial(f);
  EXPECT_EQ(got, P("1+D+D^2+D^4+D^7+D^8+D^9+D^11"));
  for (int f = 0; f < 12; ++f) EXPECT_FALSE(w.x_taint()[w.index(f, 0)]);
  // the Z image f(D^-1) ends in the last three frames, which are tainted
  for (int f = 9; f < 12; ++f) EXPECT_TRUE(w.z_taint()[w.index(f, 0)]);
  EXPECT_FALSE(w.z_taint()[w.index(8, 0)]);
}

// The four-qubit rule table for 1+D+D^3 in standard form: Z4 -> Z1 Z3 Z4,
// X1 -> X1 X4, X3 -> X3 X4, all other single-qubit Paulis fixed.
TEST(RunCircuit, SlidingRuleTable) {
  const auto rule = eaqcc::synthesize_infinite_depth(P("1+D+D^3"));
  Circuit block;
  for (const auto& [c, t] : rule.cnot_pattern)
    block.gates.push_back(Gate::cnot(static_cast<std::size_t>(c - 1), static_cast<std::size_t>(t - 1)));
  const char* in[8][2] = {{"ZIII", "ZIII"}, {"IZII", "IZII"}, {"IIZI", "IIZI"}, {"IIIZ", "ZIZZ"},
                          {"XIII", "XIIX"}, {"IXII", "IXII"}, {"IIXI", "IIXX"}, {"IIIX", "IIIX"}};
  for (const auto& [from, to] : in) {
    BinarySymplecticWindow w(4, 1, 0);
    w.add_row(eaqcc::p2b(eaqcc::PauliFrameStream::parse(from)), 0, 0);
    w = eaqcc::run_circuit(w, block);
    EXPECT_EQ(w.row_str(0), to) << from;
  }
}

TEST(RunCircuit, EmptyCircuitAndReach) {
  const QuantumCheckMatrix h(M("1+D, 1"), M("0, D"));
  const BinarySymplecticWindow w = eaqcc::expand(h, 5, 0);
  const BinarySymplecticWindow same = eaqcc::run_circuit(w, Circuit{});
  EXPECT_EQ(eaqcc::first_mismatch(same, w), -1);
  Circuit far;
  far.gates = {Gate::cnot(0, 1, 9)};
  EXPECT_THROW(eaqcc::run_circuit(w, far), eaqcc::WindowTooSmall);
}

TEST(Syndrome, Basics) {
  const QuantumCheckMatrix css(M("1+D^2, 1+D+D^2\n0, 0"), M("0, 0\n1+D^2, 1+D+D^2"));
  const BinarySymplecticWindow w = eaqcc::expand(css, 8, 0);
  const auto s = eaqcc::syndrome(w, {{{4, 0, Pauli::X}}});
  // X on (frame 4, qubit 1) meets the Z rows at shifts 2 and 4 only
  std::vector<int> hit;
  for (std::size_t r = 0; r < s.size(); ++r)
    if (s[r]) hit.push_back(w.rows()[r].shift);
  EXPECT_EQ(hit, (std::vector<int>{2, 4}));
  // a stabilizer element has trivial syndrome
  const QuantumCheckMatrix h(M("0, D, D\n1+D, 1+D, 1"), M("1+D, 1, 1+D\n0, D, D"));
  const BinarySymplecticWindow hw = eaqcc::expand(h, 8, 0);
  eaqcc::ErrorPattern stab;
  for (int f = 0; f < 8; ++f)
    for (std::size_t q = 0; q < 3; ++q) {
      const unsigned bits = hw.rows()[2].x[hw.index(f, q)] | (hw.rows()[2].z[hw.index(f, q)] << 1);
      if (bits) stab.entries.emplace_back(f, q, static_cast<Pauli>(bits));
    }
  ASSERT_FALSE(stab.entries.empty());
  for (auto b : eaqcc::syndrome(hw, stab)) EXPECT_EQ(b, 0);
}

TEST(Syndrome, WindowProductsMatchPolynomial) {
  const QuantumCheckMatrix h(M("0, D, D\n1+D, 1+D, 1"), M("1+D, 1, 1+D\n0, D, D"));
  const BinarySymplecticWindow w = eaqcc::expand(h, 6, 0);
  for (const auto& a : w.rows())
    for (const auto& b : w.rows()) {
      const RationalPoly p = eaqcc::shifted_symplectic(h.row(a.source), h.row(b.source));
      EXPECT_EQ(eaqcc::symplectic(a, b), p.num().coeff(b.shift - a.shift));
    }
}

// Property 5d: simulating a gate on the expanded rows equals expanding the
// algebraically transformed rows, away from the truncated right edge.
TEST(SimulateProperty, RunCircuitMatchesApplyGate) {
  eaqcc::testing::Gen g(51);
  std::size_t compared = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(g.uniform(1, 3));
    QuantumCheckMatrix m(g.matrix(2, n, 0, 2, 0.4), g.matrix(2, n, 0, 2, 0.4));
    Circuit c;
    for (int k = g.uniform(1, 3); k > 0; --k) {
      const Gate gate = random_gate(g, n);
      if (gate.a != gate.b || gate.kind != eaqcc::GateKind::CNOT) c.gates.push_back(gate);
    }
    // trace of every row through the circuit
    std::vector<QuantumCheckMatrix> trace{m};
    for (const Gate& gate : c.gates) trace.push_back(eaqcc::apply_gate(trace.back(), gate));
    int margin = 0;
    for (const Gate& gate : c.gates) margin = std::max(margin, left_margin(gate));
    const int W = 24;
    BinarySymplecticWindow sim(n, W, 0), alg(n, W, 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m.row(r).is_zero()) continue;
      int lo = std::numeric_limits<int>::max();
      for (const auto& t : trace)
        if (!t.row(r).is_zero()) lo = std::min(lo, min_del(t.row(r)));
      const int first = margin - lo;
      for (int s = first; s <= first + 3 && s + max_deg(m.row(r)) < W; ++s) {
        sim.add_row(m.row(r), s, r);
        alg.add_row(trace.back().row(r), s, r);
      }
    }
    sim = eaqcc::run_circuit(sim, c);
    ASSERT_EQ(eaqcc::first_mismatch(sim, alg), -1) << c.str() << m.str();
    compared += sim.rows().size();
  }
  EXPECT_GT(compared, 1000U);
}

// Property 5e
TEST(SimulateProperty, SyndromeLinearity) {
  eaqcc::testing::Gen g(52);
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(g.uniform(1, 3));
    const QuantumCheckMatrix m(g.matrix(2, n, 0, 2, 0.5), g.matrix(2, n, 0, 2, 0.5));
    const BinarySymplecticWindow w = eaqcc::expand(m, 8, 0);
    auto random_error = [&] {
      eaqcc::ErrorPattern e;
      for (int k = g.uniform(0, 4); k > 0; --k)
        e.entries.emplace_back(g.uniform(0, 7), static_cast<std::size_t>(g.uniform(0, static_cast<int>(n) - 1)),
                               static_cast<Pauli>(g.uniform(1, 3)));
      return e;
    };
    const eaqcc::ErrorPattern e1 = random_error(), e2 = random_error();
    eaqcc::ErrorPattern sum = e1;
    sum.entries.insert(sum.entries.end(), e2.entries.begin(), e2.entries.end());
    const auto s1 = eaqcc::syndrome(w, e1), s2 = eaqcc::syndrome(w, e2), s = eaqcc::syndrome(w, sum);
    for (std::size_t r = 0; r < s.size(); ++r) ASSERT_EQ(s[r], s1[r] ^ s2[r]);
  }
}
