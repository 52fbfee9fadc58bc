#include "eaqcc/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "eaqcc/errors.hpp"

namespace eaqcc {

Gate Gate::cnot(std::size_t control, std::size_t target, int delay) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.a = control;
  g.b = target;
  g.delay = delay;
  return g;
}

Gate Gate::h(std::size_t q) {
  Gate g;
  g.kind = GateKind::H;
  g.a = g.b = q;
  return g;
}

Gate Gate::phase(std::size_t q) {
  Gate g;
  g.kind = GateKind::Phase;
  g.a = g.b = q;
  return g;
}

Gate Gate::cphase(std::size_t i, std::size_t j, int delay) {
  Gate g;
  g.kind = GateKind::CPhase;
  g.a = i;
  g.b = j;
  g.delay = delay;
  return g;
}

Gate Gate::cphase_self(std::size_t i, int delay) {
  Gate g;
  g.kind = GateKind::CPhaseSelf;
  g.a = g.b = i;
  g.delay = delay;
  return g;
}

Gate Gate::inf(std::size_t q, LaurentPoly f, bool time_reversed) {
  Gate g;
  g.kind = GateKind::InfDepth;
  g.a = g.b = q;
  g.f = std::move(f);
  g.time_reversed = time_reversed;
  return g;
}

int Gate::reach() const {
  if (kind == GateKind::InfDepth) return f.is_zero() ? 0 : std::max(std::abs(f.deg()), std::abs(f.del()));
  return std::abs(delay);
}

std::string Gate::str() const {
  const std::string qa = std::to_string(a + 1);
  const std::string qb = std::to_string(b + 1);
  std::string s;
  switch (kind) {
    case GateKind::CNOT:
      s = "CNOT " + qa + " " + qb + " delay=" + std::to_string(delay);
      break;
    case GateKind::H:
      s = "H " + qa;
      break;
    case GateKind::Phase:
      s = "P " + qa;
      break;
    case GateKind::CPhase:
      s = "CZ " + qa + " " + qb + " delay=" + std::to_string(delay);
      break;
    case GateKind::CPhaseSelf:
      s = "CZS " + qa + " delay=" + std::to_string(delay);
      break;
    case GateKind::InfDepth:
      s = "INF " + qa + " f=" + f.str();
      if (time_reversed) s += " reversed";
      break;
  }
  if (!alice_only) s += " side=receiver";
  return s;
}

namespace {

std::size_t parse_qubit(const std::string& tok) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0' || v < 1) throw ParseError("bad qubit index '" + tok + "'", 0, 0);
  return static_cast<std::size_t>(v - 1);
}

int parse_delay(const std::string& tok) {
  if (tok.rfind("delay=", 0) != 0) throw ParseError("expected delay=<int>, got '" + tok + "'", 0, 0);
  const std::string v = tok.substr(6);
  char* end = nullptr;
  const long d = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0') throw ParseError("bad delay '" + v + "'", 0, 0);
  return static_cast<int>(d);
}

}  // namespace

Gate Gate::parse(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty()) throw ParseError("empty gate line", 0, 1);
  bool receiver = false;
  bool reversed = false;
  std::vector<std::string> args;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    if (tok[i] == "side=receiver")
      receiver = true;
    else if (tok[i] == "reversed")
      reversed = true;
    else
      args.push_back(tok[i]);
  }
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ParseError("wrong operand count for " + tok[0], 0, 1);
  };
  Gate g;
  const std::string& op = tok[0];
  if (op == "CNOT") {
    need(3);
    g = cnot(parse_qubit(args[0]), parse_qubit(args[1]), parse_delay(args[2]));
  } else if (op == "H") {
    need(1);
    g = h(parse_qubit(args[0]));
  } else if (op == "P") {
    need(1);
    g = phase(parse_qubit(args[0]));
  } else if (op == "CZ") {
    need(3);
    g = cphase(parse_qubit(args[0]), parse_qubit(args[1]), parse_delay(args[2]));
  } else if (op == "CZS") {
    need(2);
    g = cphase_self(parse_qubit(args[0]), parse_delay(args[1]));
  } else if (op == "INF") {
    need(2);
    if (args[1].rfind("f=", 0) != 0) throw ParseError("expected f=<poly>", 0, 1);
    g = inf(parse_qubit(args[0]), LaurentPoly::parse(args[1].substr(2)), reversed);
  } else {
    throw ParseError("unknown gate '" + op + "'", 0, 1);
  }
  if (reversed && g.kind != GateKind::InfDepth) throw ParseError("'reversed' applies to INF only", 0, 1);
  if (receiver) g.receiver();
  return g;
}

std::size_t Circuit::count_infinite_depth() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return !g.is_finite_depth(); }));
}

std::string Circuit::str(bool with_notes) const {
  std::string out;
  for (const Gate& g : gates) {
    out += g.str();
    if (with_notes && !g.note.empty()) out += "  # " + g.note;
    out += '\n';
  }
  return out;
}

Circuit Circuit::parse(std::string_view text, Direction dir) {
  Circuit c;
  c.direction = dir;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    std::string note;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      note = std::string(line.substr(hash + 1));
      note.erase(0, note.find_first_not_of(' '));
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      c.gates.push_back(Gate::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, e.column());
    }
    c.gates.back().note = note;
  }
  return c;
}

namespace {

void check_index(const QuantumCheckMatrix& m, const Gate& g, std::size_t q) {
  if (q >= m.cols()) throw GateError("gate " + g.str() + " addresses column " + std::to_string(q + 1) + " of " +
                                     std::to_string(m.cols()));
  if (g.alice_only && q < m.bob_cols)
    throw GateError("gate " + g.str() + " addresses receiver column " + std::to_string(q + 1));
}

// dst column += mult * src column, in one half of both row sets.
void col_add(PolyMatrix& half, std::size_t dst, std::size_t src, const RationalPoly& mult) {
  for (std::size_t r = 0; r < half.rows(); ++r)
    if (!half(r, src).is_zero()) half(r, dst) += mult * half(r, src);
}

void col_scale(PolyMatrix& half, std::size_t q, const RationalPoly& mult) {
  for (std::size_t r = 0; r < half.rows(); ++r)
    if (!half(r, q).is_zero()) half(r, q) *= mult;
}

void apply_to(PolyMatrix& z, PolyMatrix& x, const Gate& g) {
  switch (g.kind) {
    case GateKind::CNOT:
      col_add(x, g.b, g.a, LaurentPoly::monomial(g.delay));
      col_add(z, g.a, g.b, LaurentPoly::monomial(-g.delay));
      return;
    case GateKind::H:
      for (std::size_t r = 0; r < z.rows(); ++r) std::swap(z(r, g.a), x(r, g.a));
      return;
    case GateKind::Phase:
      for (std::size_t r = 0; r < z.rows(); ++r) z(r, g.a) += x(r, g.a);
      return;
    case GateKind::CPhase:
      // both updates read X, which neither modifies
      for (std::size_t r = 0; r < z.rows(); ++r) {
        const RationalPoly xi = x(r, g.a), xj = x(r, g.b);
        z(r, g.b) += xi * LaurentPoly::monomial(g.delay);
        z(r, g.a) += xj * LaurentPoly::monomial(-g.delay);
      }
      return;
    case GateKind::CPhaseSelf:
      for (std::size_t r = 0; r < z.rows(); ++r)
        z(r, g.a) += x(r, g.a) * (LaurentPoly::monomial(g.delay) + LaurentPoly::monomial(-g.delay));
      return;
    case GateKind::InfDepth: {
      const LaurentPoly f = g.time_reversed ? g.f.reverse() : g.f;
      col_scale(x, g.a, RationalPoly(LaurentPoly::one(), f));
      col_scale(z, g.a, f.reverse());
      return;
    }
  }
}

}  // namespace

void apply_gate_inplace(QuantumCheckMatrix& m, const Gate& g) {
  check_index(m, g, g.a);
  check_index(m, g, g.b);
  if ((g.kind == GateKind::CNOT || g.kind == GateKind::CPhase) && g.a == g.b)
    throw GateError("gate " + g.str() + " has equal control and target");
  if (g.kind == GateKind::CPhaseSelf && g.delay == 0)
    throw GateError("self controlled-phase needs a non-zero delay");
  if (g.kind == GateKind::InfDepth && g.f.is_zero()) throw GateError("infinite-depth gate with f = 0");
  apply_to(m.z, m.x, g);
  apply_to(m.info_z, m.info_x, g);
}

QuantumCheckMatrix apply_gate(QuantumCheckMatrix m, const Gate& g) {
  apply_gate_inplace(m, g);
  return m;
}

QuantumCheckMatrix apply_circuit(QuantumCheckMatrix m, const Circuit& c) {
  for (const Gate& g : c.gates) apply_gate_inplace(m, g);
  return m;
}

std::vector<Gate> column_poly_to_cnots(const LaurentPoly& f, std::size_t i, std::size_t j) {
  if (f.is_zero()) throw GateError("column operation with a zero multiplier");
  std::vector<Gate> out;
  for (int l : f.exponents()) out.push_back(Gate::cnot(i, j, l));
  return out;
}

std::vector<int> SlidingWindowRule::taps() const {
  std::vector<int> out;
  for (const auto& [c, t] : cnot_pattern) out.push_back(t - c);
  std::sort(out.begin(), out.end());
  return out;
}

SlidingWindowRule synthesize_infinite_depth(const LaurentPoly& f) {
  if (f.is_zero()) throw GateError("infinite-depth synthesis of f = 0");
  const LaurentPoly g = f.delay_free();
  SlidingWindowRule rule;
  rule.f = f;
  rule.window_size = g.deg() + 1;
  // Solving the target's Z image D^m g(D^-1) = sum over supp(g) of D^(m-i)
  // gives one CNOT into the newest frame from each offset i >= 1.
  for (int i : g.exponents())
    if (i >= 1) rule.cnot_pattern.emplace_back(rule.window_size - i, rule.window_size);
  std::sort(rule.cnot_pattern.begin(), rule.cnot_pattern.end());
  rule.scratch_frames = g.deg();
  rule.delay = -f.del();
  return rule;
}

SlidingWindowRule time_reversed_rule(const LaurentPoly& f) {
  if (f.is_zero()) throw GateError("infinite-depth synthesis of f = 0");
  return synthesize_infinite_depth(f.reverse());
}

SlidingWindowRule rule_for(const Gate& g) {
  if (g.kind != GateKind::InfDepth) throw GateError("rule_for needs an infinite-depth gate");
  return g.time_reversed ? time_reversed_rule(g.f) : synthesize_infinite_depth(g.f);
}

Circuit invert_circuit(const Circuit& c) {
  Circuit out;
  out.direction = c.direction == Direction::Encode ? Direction::Decode : Direction::Encode;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    if (!it->is_finite_depth()) throw GateError("cannot invert infinite-depth gate " + it->str());
    out.gates.push_back(*it);
  }
  auto same_pair = [](const Gate& x, const Gate& y) {
    return x.kind == GateKind::CNOT && y.kind == GateKind::CNOT && x.a == y.a && x.b == y.b &&
           x.alice_only == y.alice_only;
  };
  for (std::size_t i = 0; i < out.gates.size();) {
    std::size_t j = i + 1;
    while (j < out.gates.size() && same_pair(out.gates[i], out.gates[j])) ++j;
    std::stable_sort(out.gates.begin() + static_cast<std::ptrdiff_t>(i), out.gates.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const Gate& x, const Gate& y) { return x.delay < y.delay; });
    i = j;
  }
  return out;
}

}  // namespace eaqcc
