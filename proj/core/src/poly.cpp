#include "eaqcc/poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

#include "eaqcc/errors.hpp"

namespace eaqcc {

namespace {

std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

bool bit_at(const std::vector<std::uint64_t>& w, std::size_t i) { return (w[i / 64] >> (i % 64)) & 1U; }

void flip_bit(std::vector<std::uint64_t>& w, std::size_t i) { w[i / 64] ^= std::uint64_t{1} << (i % 64); }

// dst ^= src << shift. dst must already be wide enough for the result.
void xor_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::uint64_t v = src[i];
    if (v == 0) continue;
    dst[i + ws] ^= v << bs;
    if (bs != 0) {
      const std::uint64_t hi = v >> (64 - bs);
      if (hi != 0) dst[i + ws + 1] ^= hi;
    }
  }
}

std::vector<std::uint64_t> shr(const std::vector<std::uint64_t>& w, std::size_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  std::vector<std::uint64_t> out(w.size() > ws ? w.size() - ws : 0, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t v = w[i + ws] >> bs;
    if (bs != 0 && i + ws + 1 < w.size()) v |= w[i + ws + 1] << (64 - bs);
    out[i] = v;
  }
  return out;
}

class Scanner {
 public:
  explicit Scanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, column()); }

  int integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > 1'000'000) fail("exponent out of range");
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  // sum := term ('+' term)* ; term := '1' | '0' | 'D' ('^' int)?
  LaurentPoly sum() {
    LaurentPoly acc;
    do {
      const char c = peek();
      if (c == '1') {
        ++pos_;
        acc += LaurentPoly::one();
      } else if (c == '0') {
        ++pos_;
      } else if (c == 'D') {
        ++pos_;
        int e = 1;
        if (accept('^')) {
          if (accept('{')) {
            e = integer();
            if (!accept('}')) fail("expected '}'");
          } else {
            e = integer();
          }
        }
        acc += LaurentPoly::monomial(e);
      } else {
        fail(c == '\0' ? "unexpected end of polynomial" : std::string("unexpected character '") + c + "'");
      }
    } while (accept('+'));
    return acc;
  }

  LaurentPoly grouped() {
    if (accept('(')) {
      LaurentPoly p = sum();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    return sum();
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::monomial(int e) {
  LaurentPoly p;
  p.words_ = {1};
  p.lo_ = e;
  return p;
}

LaurentPoly LaurentPoly::from_exponents(const std::vector<int>& exps) {
  if (exps.empty()) return {};
  const int lo = *std::min_element(exps.begin(), exps.end());
  const int hi = *std::max_element(exps.begin(), exps.end());
  LaurentPoly p;
  p.words_.assign(words_for(static_cast<std::size_t>(hi - lo) + 1), 0);
  for (int e : exps) flip_bit(p.words_, static_cast<std::size_t>(e - lo));
  p.lo_ = lo;
  p.trim();
  return p;
}

LaurentPoly LaurentPoly::parse(std::string_view text) {
  Scanner sc(text);
  LaurentPoly p = sc.sum();
  if (!sc.done()) sc.fail("trailing characters after polynomial");
  return p;
}

void LaurentPoly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
  if (words_.empty()) {
    lo_ = 0;
    return;
  }
  std::size_t wi = 0;
  while (words_[wi] == 0) ++wi;
  const std::size_t tz = wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
  if (tz != 0) {
    words_ = shr(words_, tz);
    lo_ += static_cast<int>(tz);
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }
}

std::size_t LaurentPoly::nbits() const {
  if (words_.empty()) return 0;
  return (words_.size() - 1) * 64 + (64 - static_cast<std::size_t>(std::countl_zero(words_.back())));
}

bool LaurentPoly::is_unit() const { return words_.size() == 1 && words_[0] == 1; }

int LaurentPoly::deg() const {
  if (is_zero()) throw std::domain_error("deg of the zero polynomial");
  return lo_ + static_cast<int>(nbits()) - 1;
}

int LaurentPoly::del() const {
  if (is_zero()) throw std::domain_error("del of the zero polynomial");
  return lo_;
}

bool LaurentPoly::coeff(int e) const {
  if (is_zero() || e < lo_) return false;
  const auto i = static_cast<std::size_t>(e - lo_);
  return i < nbits() && bit_at(words_, i);
}

std::vector<int> LaurentPoly::exponents() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t v = words_[w];
    while (v != 0) {
      const int b = std::countr_zero(v);
      out.push_back(lo_ + static_cast<int>(w * 64) + b);
      v &= v - 1;
    }
  }
  return out;
}

std::size_t LaurentPoly::weight() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.lo_ += k;
  return p;
}

LaurentPoly LaurentPoly::reverse() const {
  if (is_zero()) return {};
  std::vector<int> e = exponents();
  for (int& x : e) x = -x;
  return from_exponents(e);
}

LaurentPoly LaurentPoly::delay_free() const {
  if (is_zero()) return {};
  return shifted(-lo_);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  const int base = std::min(lo_, other.lo_);
  const int top = std::max(deg(), other.deg());
  std::vector<std::uint64_t> res(words_for(static_cast<std::size_t>(top - base) + 1), 0);
  xor_shifted(res, words_, static_cast<std::size_t>(lo_ - base));
  xor_shifted(res, other.words_, static_cast<std::size_t>(other.lo_ - base));
  words_ = std::move(res);
  lo_ = base;
  trim();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const LaurentPoly& small = a.weight() <= b.weight() ? a : b;
  const LaurentPoly& big = &small == &a ? b : a;
  LaurentPoly p;
  p.words_.assign(words_for(a.nbits() + b.nbits() - 1), 0);
  for (std::size_t w = 0; w < small.words_.size(); ++w) {
    std::uint64_t v = small.words_[w];
    while (v != 0) {
      const int bit = std::countr_zero(v);
      xor_shifted(p.words_, big.words_, w * 64 + static_cast<std::size_t>(bit));
      v &= v - 1;
    }
  }
  p.lo_ = a.lo_ + b.lo_;
  p.trim();
  return p;
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e : exponents()) {
    if (!out.empty()) out += '+';
    if (e == 0) {
      out += '1';
    } else if (e == 1) {
      out += 'D';
    } else {
      out += "D^" + std::to_string(e);
    }
  }
  return out;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = std::hash<int>{}(lo_);
  for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

PolyDivision poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (!a.is_polynomial() || !b.is_polynomial()) throw std::domain_error("poly_divmod needs del >= 0");
  PolyDivision out;
  out.remainder = a;
  const int db = b.deg();
  std::vector<int> q;
  while (!out.remainder.is_zero() && out.remainder.deg() >= db) {
    const int s = out.remainder.deg() - db;
    q.push_back(s);
    out.remainder += b.shifted(s);
  }
  out.quotient = LaurentPoly::from_exponents(q);
  return out;
}

PolyDivision laurent_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return {};
  PolyDivision d = poly_divmod(a.delay_free(), b.delay_free());
  d.quotient = d.quotient.shifted(a.del() - b.del());
  d.remainder = d.remainder.shifted(a.del());
  return d;
}

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  LaurentPoly x = a.delay_free();
  LaurentPoly y = b.delay_free();
  while (!y.is_zero()) {
    LaurentPoly r = poly_divmod(x, y).remainder;
    x = std::move(y);
    y = r.delay_free();
  }
  return x;
}

bool divides(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) throw std::domain_error("divisibility by zero");
  if (b.is_zero()) return true;
  return poly_divmod(b.delay_free(), a.delay_free()).remainder.is_zero();
}

int order_of_d(const LaurentPoly& f) {
  const LaurentPoly g = f.delay_free();
  if (g.is_zero() || g.deg() < 1) return 0;
  const int d = g.deg();
  const long limit = (d < 30) ? (1L << d) : (1L << 30);
  LaurentPoly x = LaurentPoly::monomial(1);
  for (long i = 1; i <= limit; ++i) {
    if (x.is_one()) return static_cast<int>(i);
    x = poly_divmod(x.shifted(1), g).remainder;
  }
  return 0;
}

RationalPoly::RationalPoly(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void RationalPoly::canonicalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentPoly::one();
    return;
  }
  const int e = den_.del();
  den_ = den_.shifted(-e);
  num_ = num_.shifted(-e);
  if (den_.is_one()) return;
  const LaurentPoly g = gcd(num_, den_);
  if (!g.is_one()) {
    const int nd = num_.del();
    num_ = poly_divmod(num_.delay_free(), g).quotient.shifted(nd);
    den_ = poly_divmod(den_, g).quotient;
  }
}

const LaurentPoly& RationalPoly::as_poly() const {
  if (!is_polynomial()) throw std::domain_error("entry " + str() + " is not a Laurent polynomial");
  return num_;
}

RationalPoly RationalPoly::reverse() const { return {num_.reverse(), den_.reverse()}; }

RationalPoly RationalPoly::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return {den_, num_};
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    *this = RationalPoly(num_ + other.num_, den_);
  } else {
    *this = RationalPoly(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
  }
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& other) {
  if (is_zero() || other.is_zero()) return *this = RationalPoly();
  if (is_polynomial() && other.is_polynomial()) {
    num_ = num_ * other.num_;
    return *this;
  }
  *this = RationalPoly(num_ * other.num_, den_ * other.den_);
  return *this;
}

std::string RationalPoly::str() const {
  if (is_polynomial()) return num_.str();
  const std::string n = num_.weight() == 1 ? num_.str() : "(" + num_.str() + ")";
  return n + "/(" + den_.str() + ")";
}

RationalPoly RationalPoly::parse(std::string_view text) {
  Scanner sc(text);
  LaurentPoly num = sc.grouped();
  if (sc.accept('/')) {
    const int col = sc.column();
    LaurentPoly den = sc.grouped();
    if (!sc.done()) sc.fail("trailing characters after rational function");
    if (den.is_zero()) throw ParseError("zero denominator", 0, col);
    return {std::move(num), std::move(den)};
  }
  if (!sc.done()) sc.fail("trailing characters after polynomial");
  return {std::move(num)};
}

LaurentPoly series_expand(const RationalPoly& r, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("series_expand needs lo <= hi");
  if (r.is_zero()) return {};
  const LaurentPoly& den = r.den();
  if (!den.coeff(0)) throw std::domain_error("denominator without constant term");
  const int start = r.num().del();
  if (hi < start) return {};
  // s holds the ascending expansion of 1/den.
  const auto len = static_cast<std::size_t>(hi - start) + 1;
  std::vector<char> s(len, 0);
  std::vector<int> taps = den.exponents();
  taps.erase(taps.begin());
  s[0] = 1;
  for (std::size_t i = 1; i < len; ++i) {
    char v = 0;
    for (int t : taps) {
      if (static_cast<std::size_t>(t) > i) break;
      v ^= s[i - static_cast<std::size_t>(t)];
    }
    s[i] = v;
  }
  std::vector<char> out(static_cast<std::size_t>(hi - lo) + 1, 0);
  for (int a : r.num().exponents()) {
    for (int e = std::max(lo, a); e <= hi; ++e) {
      if (s[static_cast<std::size_t>(e - a)]) out[static_cast<std::size_t>(e - lo)] ^= 1;
    }
  }
  std::vector<int> exps;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i]) exps.push_back(lo + static_cast<int>(i));
  return LaurentPoly::from_exponents(exps);
}

}  // namespace eaqcc
