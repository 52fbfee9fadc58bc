#include <gtest/gtest.h>

#include <functional>

#include "eaqcc/errors.hpp"
#include "eaqcc/polymat.hpp"
#include "support/gen.hpp"

using eaqcc::ElemOp;
using eaqcc::LaurentPoly;
using eaqcc::PolyMatrix;
using eaqcc::RationalPoly;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

bool is_unit(const RationalPoly& r) { return r.is_polynomial() && r.num().is_unit(); }

// Laplace expansion, polynomial entries only.
LaurentPoly minor_det(const PolyMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]).as_poly();
  LaurentPoly acc;
  std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (m(rows[0], cols[j]).is_zero()) continue;
    std::vector<std::size_t> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != j) sub_cols.push_back(cols[k]);
    acc += m(rows[0], cols[j]).as_poly() * minor_det(m, sub_rows, sub_cols);
  }
  return acc;
}

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

// Invariant factors from determinantal divisors: gamma_k = d_k / d_{k-1},
// d_k the delay-free gcd of all k x k minors.
std::vector<LaurentPoly> minors_oracle(const PolyMatrix& m) {
  std::vector<LaurentPoly> out;
  LaurentPoly prev = LaurentPoly::one();
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    LaurentPoly d;
    subsets(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      subsets(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        const LaurentPoly v = minor_det(m, rs, cs);
        if (!v.is_zero()) d = d.is_zero() ? v.delay_free() : eaqcc::gcd(d, v);
      });
    });
    if (d.is_zero()) break;
    out.push_back(eaqcc::poly_divmod(d, prev).quotient);
    prev = d;
  }
  return out;
}

void expect_valid_smith(const PolyMatrix& m) {
  const auto s = eaqcc::smith_form(m);
  ASSERT_EQ(s.A * s.diagonal(m.rows(), m.cols()) * s.B, m) << m.str();
  ASSERT_TRUE(is_unit(eaqcc::det(s.A)));
  ASSERT_TRUE(is_unit(eaqcc::det(s.B)));
  ASSERT_TRUE(s.A.is_polynomial());
  ASSERT_TRUE(s.B.is_polynomial());
  for (std::size_t i = 0; i < s.gamma.size(); ++i) {
    ASSERT_EQ(s.gamma[i].del(), 0);
    if (i + 1 < s.gamma.size()) ASSERT_TRUE(eaqcc::divides(s.gamma[i], s.gamma[i + 1]));
  }
  PolyMatrix replay = m;
  for (const auto& step : s.op_log) {
    if (step.on_rows)
      eaqcc::row_op_inplace(replay, step.op);
    else
      eaqcc::col_op_inplace(replay, step.op);
  }
  ASSERT_EQ(replay, s.diagonal(m.rows(), m.cols()));
}

PolyMatrix random_unimodular(eaqcc::testing::Gen& g, std::size_t n) {
  PolyMatrix u = PolyMatrix::identity(n);
  for (int i = 0; i < 6; ++i) {
    const int kind = g.uniform(0, 2);
    const auto a = static_cast<std::size_t>(g.uniform(0, static_cast<int>(n) - 1));
    const auto b = static_cast<std::size_t>(g.uniform(0, static_cast<int>(n) - 1));
    if (kind == 0)
      eaqcc::row_op_inplace(u, ElemOp::swap(a, b));
    else if (kind == 1 && a != b)
      eaqcc::row_op_inplace(u, ElemOp::add_mul(a, b, g.poly(-2, 2)));
    else
      eaqcc::row_op_inplace(u, ElemOp::scale_unit(a, g.uniform(-2, 2)));
  }
  return u;
}

}  // namespace

TEST(PolyMatrix, ParseAndPrint) {
  const PolyMatrix m = PolyMatrix::parse("# header\n1+D^2, 1+D+D^2  # trailing\n\n0, 1/(1+D)\n");
  ASSERT_EQ(m.rows(), 2U);
  ASSERT_EQ(m.cols(), 2U);
  EXPECT_EQ(m.str(), "1+D^2, 1+D+D^2\n0, 1/(1+D)");
  EXPECT_EQ(PolyMatrix::parse("1, 0; 0, 1"), PolyMatrix::identity(2));
  EXPECT_EQ(PolyMatrix::parse(m.str()), m);
}

TEST(PolyMatrix, ParseErrors) {
  try {
    PolyMatrix::parse("1, D\n1, D^x\n");
    FAIL();
  } catch (const eaqcc::ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 3);
  }
  EXPECT_THROW(PolyMatrix::parse("1, D\n1\n"), eaqcc::ParseError);
  EXPECT_THROW(PolyMatrix::parse("# nothing\n"), eaqcc::ParseError);
}

TEST(Smith, Identity) {
  const auto s = eaqcc::smith_form(PolyMatrix::identity(3));
  EXPECT_EQ(s.gamma, std::vector<LaurentPoly>(3, LaurentPoly::one()));
  EXPECT_EQ(s.A, PolyMatrix::identity(3));
  EXPECT_EQ(s.B, PolyMatrix::identity(3));
}

TEST(Smith, NoncatastrophicRow) {
  const PolyMatrix h = PolyMatrix::parse("1+D^2, 1+D+D^2");
  const auto s = eaqcc::smith_form(h);
  EXPECT_EQ(s.gamma, std::vector<LaurentPoly>{P("1")});
  expect_valid_smith(h);
  // column ops: col1 += col0, col0 += D col1, col1 += D col0
  std::vector<std::string> ops;
  for (const auto& st : s.op_log) ops.push_back((st.on_rows ? "r " : "c ") + st.op.str());
  EXPECT_EQ(ops, (std::vector<std::string>{"c 1 += (1)*0", "c 0 += (D)*1", "c 1 += (D)*0"}));
}

TEST(Smith, DiagonalMatchesMinorsOracle) {
  const PolyMatrix m{{P("1+D"), P("0")}, {P("0"), P("D")}};
  const auto s = eaqcc::smith_form(m);
  EXPECT_EQ(s.gamma, minors_oracle(m));
  EXPECT_EQ(s.gamma, (std::vector<LaurentPoly>{P("1"), P("1+D")}));
  expect_valid_smith(m);
}

TEST(Smith, RejectsRational) {
  EXPECT_THROW(eaqcc::smith_form(PolyMatrix{{RationalPoly(P("1"), P("1+D"))}}), std::invalid_argument);
}

TEST(Rank, Examples) {
  const PolyMatrix h1 = PolyMatrix::parse("1+D^2, 1+D+D^2");
  const PolyMatrix p1 = h1 * h1.transpose_reverse();
  EXPECT_EQ(p1, PolyMatrix{{P("1")}});
  EXPECT_EQ(eaqcc::rank(p1), 1U);
  EXPECT_EQ(eaqcc::rank(PolyMatrix(3, 2)), 0U);
  const PolyMatrix h2 = PolyMatrix::parse("1, 1+D");
  const PolyMatrix p2 = h2 * h2.transpose_reverse();
  EXPECT_EQ(p2, PolyMatrix{{P("D^-1+1+D")}});
  EXPECT_EQ(eaqcc::rank(p2), 1U);
}

TEST(PolyMatrix, TransposeReverse) {
  const PolyMatrix h = PolyMatrix::parse("1+D^2, 1+D+D^2");
  EXPECT_EQ(h.transpose_reverse(), PolyMatrix::parse("1+D^-2\n1+D^-1+D^-2"));
  EXPECT_EQ(h.transpose_reverse().transpose_reverse(), h);
  EXPECT_EQ(h * PolyMatrix::identity(2), h);
  EXPECT_THROW((void)(h * h), std::invalid_argument);
}

TEST(ElemOps, Examples) {
  EXPECT_EQ(eaqcc::apply_row_op(PolyMatrix::parse("1\n0"), ElemOp::add_mul(1, 0, P("D"))), PolyMatrix::parse("1\nD"));
  EXPECT_EQ(eaqcc::apply_row_op(PolyMatrix::parse("1+D^-1"), ElemOp::scale_unit(0, 1)), PolyMatrix::parse("D+1"));
  EXPECT_EQ(eaqcc::apply_row_op(PolyMatrix::parse("1/(1+D+D^2)"), ElemOp::scale(0, P("1+D+D^2"))),
            PolyMatrix::parse("1"));
  EXPECT_THROW(eaqcc::apply_row_op(PolyMatrix::parse("1"), ElemOp::scale(0, RationalPoly())), std::invalid_argument);
  EXPECT_THROW(eaqcc::apply_row_op(PolyMatrix::parse("1"), ElemOp::swap(0, 1)), std::out_of_range);
  EXPECT_THROW(eaqcc::apply_col_op(PolyMatrix::parse("1"), ElemOp::add_mul(0, 3, P("1"))), std::out_of_range);
}

TEST(FieldOps, RrefDetInverse) {
  const PolyMatrix m = PolyMatrix::parse("1, 1+D\nD, D+D^2");
  EXPECT_EQ(eaqcc::rref(m), PolyMatrix::parse("1, 1+D"));
  EXPECT_TRUE(eaqcc::det(m).is_zero());
  const PolyMatrix u = PolyMatrix::parse("1, D\n0, 1+D");
  EXPECT_EQ(eaqcc::det(u), RationalPoly(P("1+D")));
  EXPECT_EQ(u * eaqcc::inverse(u), PolyMatrix::identity(2));
  EXPECT_THROW(eaqcc::inverse(m), std::domain_error);
  std::vector<LaurentPoly> mult;
  EXPECT_EQ(eaqcc::clear_denominators(PolyMatrix::parse("1/(1+D), 1/(1+D+D^2)"), &mult),
            PolyMatrix::parse("1+D+D^2, 1+D"));
  EXPECT_EQ(mult, std::vector<LaurentPoly>{P("1+D^3")});
}

TEST(SmithProperty, ReconstructionAndOracle) {
  eaqcc::testing::Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const auto r = static_cast<std::size_t>(g.uniform(1, 3));
    const auto c = static_cast<std::size_t>(g.uniform(1, 3));
    const bool laurent = g.coin(0.3);
    const PolyMatrix m = g.matrix(r, c, laurent ? -2 : 0, 3, 0.4);
    expect_valid_smith(m);
    if (::testing::Test::HasFatalFailure()) return;
    const auto s = eaqcc::smith_form(m);
    ASSERT_EQ(s.gamma, minors_oracle(m)) << m.str();
    ASSERT_EQ(s.rank(), eaqcc::rank(m));
  }
}

TEST(SmithProperty, UnimodularSandwich) {
  eaqcc::testing::Gen g(22);
  for (int i = 0; i < 1000; ++i) {
    const auto r = static_cast<std::size_t>(g.uniform(1, 3));
    const auto c = static_cast<std::size_t>(g.uniform(1, 3));
    const PolyMatrix m = g.matrix(r, c, 0, 3, 0.4);
    const PolyMatrix sandwiched = random_unimodular(g, r) * m * random_unimodular(g, c);
    ASSERT_EQ(eaqcc::smith_form(m).gamma, eaqcc::smith_form(sandwiched).gamma);
    ASSERT_EQ(eaqcc::rank(m), eaqcc::rank(sandwiched));
    ASSERT_EQ(eaqcc::rank(m), eaqcc::rank(m.transpose_reverse()));
  }
}
