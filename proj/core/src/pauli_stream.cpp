#include "eaqcc/pauli_stream.hpp"

#include <algorithm>
#include <stdexcept>

#include "eaqcc/errors.hpp"

namespace eaqcc {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I:
      return 'I';
    case Pauli::X:
      return 'X';
    case Pauli::Z:
      return 'Z';
    case Pauli::Y:
      return 'Y';
  }
  return '?';
}

bool anticommute(Pauli a, Pauli b) { return a != Pauli::I && b != Pauli::I && a != b; }

PauliFrameStream::PauliFrameStream(std::size_t n, int start_frame, std::vector<std::vector<Pauli>> frames)
    : n_(n), start_(start_frame), frames_(std::move(frames)) {
  for (const auto& f : frames_)
    if (f.size() != n_) throw std::invalid_argument("frame width mismatch");
  trim();
}

void PauliFrameStream::trim() {
  auto is_id = [](const std::vector<Pauli>& f) {
    return std::all_of(f.begin(), f.end(), [](Pauli p) { return p == Pauli::I; });
  };
  std::size_t lead = 0;
  while (lead < frames_.size() && is_id(frames_[lead])) ++lead;
  if (lead == frames_.size()) {
    frames_.clear();
    start_ = 0;
    return;
  }
  while (is_id(frames_.back())) frames_.pop_back();
  frames_.erase(frames_.begin(), frames_.begin() + static_cast<std::ptrdiff_t>(lead));
  start_ += static_cast<int>(lead);
}

PauliFrameStream PauliFrameStream::parse(std::string_view text, int start_frame) {
  std::vector<std::vector<Pauli>> frames(1);
  int col = 0;
  for (char ch : text) {
    ++col;
    switch (ch) {
      case 'I':
        frames.back().push_back(Pauli::I);
        break;
      case 'X':
        frames.back().push_back(Pauli::X);
        break;
      case 'Y':
        frames.back().push_back(Pauli::Y);
        break;
      case 'Z':
        frames.back().push_back(Pauli::Z);
        break;
      case '|':
        frames.emplace_back();
        break;
      case ' ':
      case '\t':
        break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "' in Pauli stream", 0, col);
    }
  }
  const std::size_t n = frames.front().size();
  for (const auto& f : frames)
    if (f.size() != n) throw ParseError("frames of unequal width", 0, col);
  return {n, start_frame, std::move(frames)};
}

Pauli PauliFrameStream::at(int frame, std::size_t qubit) const {
  const int i = frame - start_;
  if (i < 0 || i >= static_cast<int>(frames_.size()) || qubit >= n_) return Pauli::I;
  return frames_[static_cast<std::size_t>(i)][qubit];
}

std::size_t PauliFrameStream::weight() const {
  std::size_t w = 0;
  for (const auto& f : frames_)
    for (Pauli p : f) w += p != Pauli::I;
  return w;
}

PauliFrameStream PauliFrameStream::shifted(int frames) const {
  PauliFrameStream s = *this;
  if (!s.frames_.empty()) s.start_ += frames;
  return s;
}

std::string PauliFrameStream::str() const {
  if (frames_.empty()) return std::string(n_, 'I');
  std::string out;
  for (std::size_t t = 0; t < frames_.size(); ++t) {
    if (t != 0) out += '|';
    for (Pauli p : frames_[t]) out += to_char(p);
  }
  return out;
}

CheckRow::CheckRow(std::vector<RationalPoly> zz, std::vector<RationalPoly> xx) : z(std::move(zz)), x(std::move(xx)) {
  if (z.size() != x.size()) throw std::invalid_argument("z and x halves differ in length");
}

bool CheckRow::is_zero() const {
  auto zero = [](const RationalPoly& p) { return p.is_zero(); };
  return std::all_of(z.begin(), z.end(), zero) && std::all_of(x.begin(), x.end(), zero);
}

bool CheckRow::is_polynomial() const {
  auto poly = [](const RationalPoly& p) { return p.is_polynomial(); };
  return std::all_of(z.begin(), z.end(), poly) && std::all_of(x.begin(), x.end(), poly);
}

std::string CheckRow::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < z.size(); ++i) out += (i ? ", " : "") + z[i].str();
  out += " | ";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + x[i].str();
  return out + ")";
}

CheckRow p2b(const PauliFrameStream& stream) {
  const std::size_t n = stream.n();
  std::vector<std::vector<int>> ze(n), xe(n);
  for (std::size_t t = 0; t < stream.frames().size(); ++t) {
    const int e = stream.start_frame() + static_cast<int>(t);
    for (std::size_t q = 0; q < n; ++q) {
      const auto bits = static_cast<unsigned>(stream.frames()[t][q]);
      if (bits & 1U) xe[q].push_back(e);
      if (bits & 2U) ze[q].push_back(e);
    }
  }
  CheckRow row(n);
  for (std::size_t q = 0; q < n; ++q) {
    row.z[q] = LaurentPoly::from_exponents(ze[q]);
    row.x[q] = LaurentPoly::from_exponents(xe[q]);
  }
  return row;
}

PauliFrameStream b2p(const CheckRow& row, int lo, int hi) {
  const std::size_t n = row.n();
  if (hi < lo) return {n, 0, {}};
  std::vector<std::vector<Pauli>> frames(static_cast<std::size_t>(hi - lo) + 1, std::vector<Pauli>(n, Pauli::I));
  for (std::size_t q = 0; q < n; ++q) {
    const LaurentPoly zs = series_expand(row.z[q], lo, hi);
    const LaurentPoly xs = series_expand(row.x[q], lo, hi);
    for (int e : xs.exponents())
      frames[static_cast<std::size_t>(e - lo)][q] =
          static_cast<Pauli>(static_cast<unsigned>(frames[static_cast<std::size_t>(e - lo)][q]) | 1U);
    for (int e : zs.exponents())
      frames[static_cast<std::size_t>(e - lo)][q] =
          static_cast<Pauli>(static_cast<unsigned>(frames[static_cast<std::size_t>(e - lo)][q]) | 2U);
  }
  return {n, lo, std::move(frames)};
}

RationalPoly shifted_symplectic(const CheckRow& h1, const CheckRow& h2) {
  if (h1.n() != h2.n()) throw std::invalid_argument("shifted symplectic product of rows with different widths");
  RationalPoly acc;
  for (std::size_t q = 0; q < h1.n(); ++q) {
    if (!h1.z[q].is_zero() && !h2.x[q].is_zero()) acc += h1.z[q].reverse() * h2.x[q];
    if (!h1.x[q].is_zero() && !h2.z[q].is_zero()) acc += h1.x[q].reverse() * h2.z[q];
  }
  return acc;
}

bool anticommute_parity(const PauliFrameStream& h1, const PauliFrameStream& h2, int shift) {
  if (h1.n() != h2.n()) throw std::invalid_argument("stream width mismatch");
  if (h1.is_identity() || h2.is_identity()) return false;
  const PauliFrameStream s = h1.shifted(shift);
  const int lo = std::max(s.start_frame(), h2.start_frame());
  const int hi = std::min(s.start_frame() + static_cast<int>(s.frames().size()),
                          h2.start_frame() + static_cast<int>(h2.frames().size()));
  bool parity = false;
  for (int t = lo; t < hi; ++t)
    for (std::size_t q = 0; q < h1.n(); ++q) parity ^= anticommute(s.at(t, q), h2.at(t, q));
  return parity;
}

bool commute_oracle(const CheckRow& h1, const CheckRow& h2, int max_shift) {
  if (!h1.is_polynomial() || !h2.is_polynomial()) throw std::invalid_argument("commute_oracle needs polynomial rows");
  auto span_of = [](const CheckRow& r, int& lo, int& hi) {
    lo = 0;
    hi = -1;
    bool any = false;
    for (const auto* half : {&r.z, &r.x})
      for (const auto& p : *half) {
        if (p.is_zero()) continue;
        lo = any ? std::min(lo, p.num().del()) : p.num().del();
        hi = any ? std::max(hi, p.num().deg()) : p.num().deg();
        any = true;
      }
  };
  int lo1, hi1, lo2, hi2;
  span_of(h1, lo1, hi1);
  span_of(h2, lo2, hi2);
  const PauliFrameStream s1 = b2p(h1, lo1, hi1);
  const PauliFrameStream s2 = b2p(h2, lo2, hi2);
  for (int l = -max_shift; l <= max_shift; ++l)
    if (anticommute_parity(s1, s2, l)) return false;
  return true;
}

}  // namespace eaqcc
