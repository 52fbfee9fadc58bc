#include <gtest/gtest.h>

#include "eaqcc/construct.hpp"
#include "eaqcc/errors.hpp"
#include "eaqcc/verify.hpp"
#include "support/gen.hpp"

using eaqcc::CodeClass;
using eaqcc::CodeSpec;
using eaqcc::GateKind;
using eaqcc::LaurentPoly;
using eaqcc::PolyMatrix;
using eaqcc::QuantumCheckMatrix;
using eaqcc::ValidationError;
using eaqcc::ValidationKind;

namespace {

PolyMatrix M(const char* s) { return PolyMatrix::parse(s); }
LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

const char* kEx1 = "1+D^2, 1+D+D^2";
const char* kEx2 = "1, 1+D";
// Class 2 without the special form: one ebit with invariant factor 1+D+D^2.
const char* kC2h1 = "1+D+D^2, D+D^2, 1+D+D^2; 1, 1, 0";
const char* kC2h2 = "1, 0, 0; D+D^2, 0, 1";

ValidationKind rejection(const char* h1, const char* h2) {
  try {
    eaqcc::validate_inputs(M(h1), M(h2));
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted " << h1;
  return ValidationKind::Diagnostic;
}

void expect_state(const QuantumCheckMatrix& s, const char* z, const char* x) {
  EXPECT_EQ(s.z, M(z));
  EXPECT_EQ(s.x, M(x));
}

void expect_info(const QuantumCheckMatrix& s, const char* z, const char* x) {
  EXPECT_EQ(s.info_z, M(z));
  EXPECT_EQ(s.info_x, M(x));
}

std::size_t count_inf(const eaqcc::Circuit& c) { return c.count_infinite_depth(); }

// Delay-free gcd of a row: the single invariant factor of a one-row matrix.
LaurentPoly row_gcd(const PolyMatrix& h) {
  LaurentPoly g;
  for (std::size_t j = 0; j < h.cols(); ++j)
    if (!h(0, j).is_zero()) g = g.is_zero() ? h(0, j).num().delay_free() : eaqcc::gcd(g, h(0, j).num());
  return g;
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_NO_THROW(eaqcc::validate_inputs(M(kEx1), M(kEx1)));
  EXPECT_NO_THROW(eaqcc::validate_inputs(M(kEx2), M(kEx2)));
  EXPECT_EQ(rejection("1+D, 1+D", "1+D, 1+D"), ValidationKind::CatastrophicInput);
  EXPECT_EQ(rejection("D, D+D^2", "1, 1"), ValidationKind::NotDelayFree);
  EXPECT_EQ(rejection("D^-1, 1", "1, 1"), ValidationKind::NotDelayFree);
  EXPECT_EQ(rejection("1, 1; 1, 1", "1, 1"), ValidationKind::RankDeficient);
  EXPECT_EQ(rejection("1, 1", "1, 1, 1"), ValidationKind::DimensionMismatch);
  EXPECT_EQ(rejection("1/(1+D), 1", "1, 1"), ValidationKind::Diagnostic);
}

TEST(Validate, CatastrophicNamesFactor) {
  try {
    eaqcc::validate_inputs(M("1+D, 1+D"), M(kEx1));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::CatastrophicInput);
    EXPECT_NE(e.detail().find("1+D"), std::string::npos) << e.detail();
  }
  try {
    eaqcc::validate_inputs(M(kEx1), M("1+D^3, 1+D+D^2+D^3"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(e.detail().find("H2"), std::string::npos) << e.detail();
    EXPECT_NE(e.detail().find("1+D"), std::string::npos) << e.detail();
  }
}

TEST(ValidateProperty, OneRowMatchesGcd) {
  eaqcc::testing::Gen g(41);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = g.uniform(2, 4);
    PolyMatrix h = g.matrix(1, n, 0, 4);
    if (g.coin(0.2))
      for (std::size_t j = 0; j < n; ++j) h(0, j) = h(0, j) * eaqcc::RationalPoly(LaurentPoly::monomial(1));
    const bool zero = h == PolyMatrix(1, n);
    int lo = 1 << 20;
    for (std::size_t j = 0; j < n; ++j)
      if (!h(0, j).is_zero()) lo = std::min(lo, h(0, j).num().del());
    try {
      eaqcc::validate_inputs(h, h);
      ASSERT_FALSE(zero);
      ASSERT_EQ(lo, 0) << h.str();
      ASSERT_EQ(row_gcd(h), LaurentPoly::one()) << h.str();
    } catch (const ValidationError& e) {
      if (zero) {
        ASSERT_EQ(e.kind(), ValidationKind::RankDeficient);
      } else if (lo != 0) {
        ASSERT_EQ(e.kind(), ValidationKind::NotDelayFree) << h.str();
      } else {
        ASSERT_EQ(e.kind(), ValidationKind::CatastrophicInput) << h.str();
        ASSERT_NE(row_gcd(h), LaurentPoly::one());
        ASSERT_NE(e.detail().find(row_gcd(h).str()), std::string::npos) << e.detail();
      }
    }
  }
}

TEST(EbitCount, Examples) {
  EXPECT_EQ(eaqcc::ebit_count(M(kEx1), M(kEx1)), 1u);
  EXPECT_EQ(eaqcc::ebit_count(M(kEx2), M(kEx2)), 1u);
  EXPECT_EQ(eaqcc::ebit_count(M("1+D, 1+D, 1, 1"), M("1+D, 1+D, 1, 1")), 0u);
  EXPECT_EQ(eaqcc::ebit_count(M(kC2h1), M(kC2h2)), 2u);
  // H H^T(D^-1) for the first example is exactly 1
  const PolyMatrix h = M(kEx1);
  EXPECT_EQ(h * h.transpose_reverse(), M("1"));
}

TEST(Classify, Examples) {
  const auto r1 = eaqcc::classify(M(kEx1), M(kEx1));
  EXPECT_EQ(r1.code_class, CodeClass::Class1);
  EXPECT_EQ(r1.c, 1u);
  EXPECT_EQ(r1.E, M("1"));
  EXPECT_EQ(r1.F, M("D+D^2"));

  const auto r2 = eaqcc::classify(M(kEx2), M(kEx2));
  EXPECT_EQ(r2.code_class, CodeClass::Class2Special);
  EXPECT_EQ(r2.s, 0u);
  EXPECT_EQ(r2.E, M("D^-1+1+D"));
  EXPECT_EQ(r2.F, M("1+D"));
  ASSERT_EQ(r2.gamma.size(), 1u);
  EXPECT_EQ(r2.gamma[0], P("1+D+D^2"));

  const auto r3 = eaqcc::classify(M(kC2h1), M(kC2h2));
  EXPECT_EQ(r3.code_class, CodeClass::Class2);
  EXPECT_EQ(r3.c, 2u);
  EXPECT_EQ(r3.s, 1u);
  // independent check: the Smith form of E has invariant factors 1, 1+D+D^2
  const auto sf = eaqcc::smith_form(r3.E);
  EXPECT_EQ(sf.gamma[0].delay_free(), P("1"));
  EXPECT_EQ(sf.gamma[1].delay_free(), P("1+D+D^2"));

  const auto r4 = eaqcc::classify(M("1+D, 1+D, 1, 1"), M("1+D, 1+D, 1, 1"));
  EXPECT_EQ(r4.code_class, CodeClass::Class1);
  EXPECT_EQ(r4.c, 0u);
}

TEST(Classify, GeneralStageLeavesIdentity) {
  for (const auto& [a, b] : {std::pair{kEx1, kEx1}, {kEx2, kEx2}, {kC2h1, kC2h2}}) {
    const auto rec = eaqcc::decompose_general(M(a), M(b));
    const PolyMatrix x = rec.work.x.block(rec.r, 0, rec.m, rec.input.n);
    EXPECT_EQ(x.block(0, 0, rec.m, rec.m), PolyMatrix::identity(rec.m));
    EXPECT_EQ(rec.work.z.block(rec.r, 0, rec.m, rec.input.n), PolyMatrix(rec.m, rec.input.n));
  }
}

TEST(Build, Example1Trace) {
  const CodeSpec s = eaqcc::build_code(M(kEx1), M(kEx1));
  EXPECT_EQ(s.code_class, CodeClass::Class1);
  EXPECT_EQ(eaqcc::code_params(s).str(), "[[2,1;1]]");
  EXPECT_EQ(count_inf(s.encoder), 0u);
  EXPECT_EQ(count_inf(s.decoder), 0u);
  ASSERT_EQ(s.encoder_trace.size(), 9u);
  const auto& t = s.encoder_trace;
  expect_state(t[0].state, "1, 1, 0; 0, 0, 0", "0, 0, 0; 1, 1, 0");
  expect_state(t[2].state, "1, 1, 0; 0, 0, 0", "0, 0, 0; 1, 1, D+D^2");
  expect_state(t[4].state, "1, 0, 0; 0, 1, D+D^2", "0, 1, 0; 1, 0, 0");
  expect_state(t[5].state, "1, 0, 0; 0, D, D+D^2", "0, 1, D; 1, 0, 0");
  expect_state(t[6].state, "1, 0, 0; 0, D, 1+D+D^2", "0, 1+D^2, D; 1, 0, 0");
  expect_state(t[7].state, "1, 0, 0; 0, 1+D^2, 1+D+D^2", "0, 1+D^2, 1+D+D^2; 1, 0, 0");
  EXPECT_EQ(t[8].label, "row permutation");
  expect_state(t[8].state, "0, 1+D^2, 1+D+D^2; 1, 0, 0", "1, 0, 0; 0, 1+D^2, 1+D+D^2");
  expect_state(s.final_stabilizer, "0, 1+D^2, 1+D+D^2; 1, 0, 0", "1, 0, 0; 0, 1+D^2, 1+D+D^2");
  // decoding returns the unencoded stream
  expect_state(s.decoder_trace.back().state, "1, 1, 0; 0, 0, 0", "0, 0, 0; 1, 1, 0");
  expect_info(s.decoder_trace.back().state, "0, 0, 0; 0, 0, 1", "0, 0, 1; 0, 0, 0");
}

TEST(Build, Example2Trace) {
  const CodeSpec s = eaqcc::build_code(M(kEx2), M(kEx2));
  EXPECT_EQ(s.code_class, CodeClass::Class2Special);
  EXPECT_EQ(eaqcc::code_params(s).str(), "[[2,1;1]]");
  ASSERT_EQ(count_inf(s.encoder), 1u);
  EXPECT_EQ(count_inf(s.decoder), 0u);
  for (const auto& g : s.encoder.gates)
    if (g.kind == GateKind::InfDepth) {
      EXPECT_EQ(g.f, P("1+D+D^2"));
      EXPECT_FALSE(g.time_reversed);
    }
  const auto& t = s.encoder_trace;
  expect_state(t[0].state, "1, 1, 0; 0, 0, 0", "0, 0, 0; 1, 1, 0");
  expect_info(t[0].state, "0, 0, 0; 0, 0, 1", "0, 0, 1; 0, 0, 0");
  expect_state(t[2].state, "1, 0, 0; 0, 1, 0", "0, 1, 1; 1, 0, 0");
  expect_info(t[2].state, "0, 0, 0; 0, 1, 1", "0, 0, 1; 0, 0, 0");
  expect_state(t[5].state, "1, 1, 1/(1+D+D^2); 0, 0, 0", "0, 0, 0; 1, 1, 0");
  expect_info(t[5].state, "0, 0, 1/(1+D+D^2); 0, 0, 0", "0, 0, 0; 0, 1, 1+D^-1+D^-2");
  EXPECT_EQ(t.back().label, "inverse row operations");
  expect_state(t.back().state, "D^-1, 1/(1+D+D^2), (1+D)/(1+D+D^2); 0, 0, 0", "0, 0, 0; 1, 1, 1+D");
  // first logical entry: (D^-1+1)/(1+D+D^2), not the printed (D^-1+D^-2)/(1+D+D^2)
  expect_info(t.back().state, "0, (D^-1+1)/(1+D+D^2), 1/(1+D+D^2); 0, 0, 0", "0, 0, 0; 0, D^-1+D^-2, D^-1");

  // the receiver undoes the finite-depth part first
  const auto& d = s.decoder_trace;
  ASSERT_GE(d.size(), 8u);
  expect_state(d[7].state, "1, 1, 1/(1+D+D^2); 0, 0, 0", "0, 0, 0; 1, 1, 0");
  expect_info(d[7].state, "0, 0, 1/(1+D+D^2); 0, 0, 0", "0, 0, 0; 0, 1, 1+D^-1+D^-2");
  expect_state(s.decoded, "0, 0, 0; 0, 0, 0", "0, 0, 1/(1+D+D^2); 1, 0, 0");
  expect_info(s.decoded, "0, 0, 0; 0, 1, 0", "0, 1, 1/(1+D+D^2); 0, 0, 0");
  EXPECT_EQ(s.frame_offsets, std::vector<int>{0});
  // first row times 1+D+D^2, up to a frame shift
  EXPECT_EQ(s.measurable.z, M("D^-1+1+D, 1, 1+D; 0, 0, 0"));
}

TEST(Build, Class2UsesTimeReversedOnly) {
  const CodeSpec s = eaqcc::build_code(M(kC2h1), M(kC2h2));
  EXPECT_EQ(s.code_class, CodeClass::Class2);
  EXPECT_EQ(eaqcc::code_params(s).str(), "[[3,1;2]]");
  ASSERT_EQ(count_inf(s.encoder), 1u);
  EXPECT_EQ(count_inf(s.decoder), 0u);
  for (const auto& g : s.encoder.gates)
    if (g.kind == GateKind::InfDepth) {
      EXPECT_TRUE(g.time_reversed);
      EXPECT_EQ(g.f, P("1+D+D^2"));
    }
  EXPECT_TRUE(eaqcc::verify_code(s, 24).passed());
}

TEST(Build, OrthogonalPairNeedsNoEbits) {
  const CodeSpec s = eaqcc::build_code(M("1+D, 1+D, 1, 1"), M("1+D, 1+D, 1, 1"));
  EXPECT_EQ(eaqcc::code_params(s).str(), "[[4,2;0]]");
  EXPECT_EQ(s.start.bob_cols, 0u);
  EXPECT_EQ(count_inf(s.encoder), 0u);
  EXPECT_TRUE(eaqcc::verify_code(s, 16).passed());
}

TEST(Build, WrongClassRejected) {
  const auto rec = eaqcc::classify(M(kEx1), M(kEx1));
  try {
    eaqcc::build_class2(rec);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::ClassMismatch);
  }
  EXPECT_THROW(eaqcc::build_class1(eaqcc::classify(M(kEx2), M(kEx2))), ValidationError);
}

TEST(Params, Rates) {
  const auto p = eaqcc::code_params(eaqcc::build_code(M(kEx1), M(kEx1)));
  EXPECT_EQ(p.n, 2u);
  EXPECT_EQ(p.k, 1u);
  EXPECT_EQ(p.c, 1u);
  EXPECT_EQ(p.ea_rate.str(), "1/2");
  EXPECT_EQ(p.tradeoff_k.str(), "1/2");
  EXPECT_EQ(p.tradeoff_c.str(), "1/2");
  EXPECT_EQ(p.catalytic.str(), "0");
  const auto q = eaqcc::code_params(eaqcc::build_code(M("1+D, 1+D, 1, 1"), M("1+D, 1+D, 1, 1")));
  EXPECT_EQ(q.catalytic.str(), "1/2");
  EXPECT_EQ(q.tradeoff_c.str(), "0");
}

TEST(Build, Deterministic) {
  const CodeSpec a = eaqcc::build_code(M(kEx2), M(kEx2));
  const CodeSpec b = eaqcc::build_code(M(kEx2), M(kEx2));
  EXPECT_EQ(a.encoder.str(true), b.encoder.str(true));
  EXPECT_EQ(a.decoder.str(true), b.decoder.str(true));
  EXPECT_EQ(a.final_stabilizer, b.final_stabilizer);
}

// Random valid pairs: every built code satisfies the parameter law and
// passes verification over 32 frames.
TEST(BuildProperty, RandomPairs) {
  eaqcc::testing::Gen g(42);
  int built = 0, attempts = 0;
  int classes[3] = {0, 0, 0};
  while (built < 1000) {
    ASSERT_LT(++attempts, 200000);
    const std::size_t n = g.uniform(2, 4);
    const std::size_t r1 = g.uniform(1, n - 1), r2 = g.uniform(1, n - 1);
    const PolyMatrix h1 = g.matrix(r1, n, 0, 2), h2 = g.coin(0.3) ? h1 : g.matrix(r2, n, 0, 2);
    try {
      eaqcc::validate_inputs(h1, h2);
    } catch (const ValidationError&) {
      continue;
    }
    const CodeSpec s = eaqcc::build_code(h1, h2);
    ++built;
    ++classes[static_cast<int>(s.code_class)];
    const std::size_t c = eaqcc::ebit_count(h1, h2);
    ASSERT_EQ(s.c, c);
    ASSERT_EQ(s.start.bob_cols, c);
    ASSERT_EQ(s.k, s.k1 + s.k2 + c - n);
    ASSERT_EQ(s.info_cols.size(), s.k);
    // information columns are idle in the unencoded stabilizer
    for (std::size_t col : s.info_cols)
      for (std::size_t i = 0; i < s.start.rows(); ++i) {
        ASSERT_TRUE(s.start.z(i, col).is_zero());
        ASSERT_TRUE(s.start.x(i, col).is_zero());
      }
    ASSERT_EQ(count_inf(s.decoder), 0u);
    if (s.code_class == CodeClass::Class1) ASSERT_EQ(count_inf(s.encoder), 0u);
    for (std::size_t i = 0; i < s.measurable.rows(); ++i)
      for (std::size_t j = 0; j < s.measurable.cols(); ++j) {
        ASSERT_TRUE(s.measurable.z(i, j).is_polynomial());
        ASSERT_TRUE(s.measurable.x(i, j).is_polynomial());
      }
    const auto rep = eaqcc::verify_code(s, 32);
    ASSERT_TRUE(rep.check("commute").passed) << h1.str() << "\n" << h2.str();
    ASSERT_TRUE(rep.check("equivalent").passed) << h1.str() << "\n" << h2.str();
    ASSERT_TRUE(rep.check("roundtrip").passed) << h1.str() << "\n" << h2.str();
    ASSERT_TRUE(rep.check("simulate").passed) << h1.str() << "\n" << h2.str() << rep.str();
  }
  EXPECT_GT(classes[0], 0);
  EXPECT_GT(classes[1], 0);
  EXPECT_GT(classes[2], 0);
}
