#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eaqcc/gates.hpp"
#include "eaqcc/polymat.hpp"
#include "eaqcc/qcm.hpp"

namespace eaqcc {

enum class CodeClass { Class1, Class2, Class2Special };

const char* to_string(CodeClass c);

struct ValidatedPair {
  PolyMatrix h1;
  PolyMatrix h2;
  std::size_t n = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
};

// Checks shape, polynomial entries, delay-freeness, full row rank and unit
// invariant factors. Throws ValidationError.
ValidatedPair validate_inputs(const PolyMatrix& h1, const PolyMatrix& h2);

// rank(H1 * H2^T(D^-1)).
std::size_t ebit_count(const PolyMatrix& h1, const PolyMatrix& h2);

// Working state of the decomposition. The check matrix has transmitter
// columns only; rows 0..r-1 come from H1 (Z type), rows r..r+m-1 from H2.
// Gates and row operations are in the order they were applied, with local
// column indices.
struct DecompositionRecord {
  ValidatedPair input;
  std::size_t r = 0;  // n - k1
  std::size_t m = 0;  // n - k2
  std::size_t c = 0;
  std::size_t s = 0;
  CodeClass code_class = CodeClass::Class1;

  // Blocks of [[E F | 0 0], [0 0 | I 0]] after the general stage.
  PolyMatrix E;
  PolyMatrix F;
  // Invariant factors of E, normalized to del = 0.
  std::vector<LaurentPoly> gamma;
  // Class2Special: F + E*Q has unit invariant factors.
  PolyMatrix Q;
  // Class2: lower triangular block coupling the non-unit ebits to the
  // information columns.
  PolyMatrix L;
  // Class2Special: exponent e_i of the D^e_i left beside each gamma_i.
  std::vector<int> gamma2_exps;

  QuantumCheckMatrix work;
  std::vector<Gate> gates;
  std::vector<ElemOp> row_ops;
};

// General stage: Smith forms of H1 and H2, H2's column operations as CNOTs.
DecompositionRecord decompose_general(const PolyMatrix& h1, const PolyMatrix& h2);

// decompose_general plus the class decision (and, for Class2Special, Q).
DecompositionRecord classify(const PolyMatrix& h1, const PolyMatrix& h2);

struct TraceStep {
  std::string label;
  QuantumCheckMatrix state;
};

struct Fraction {
  long num = 0;
  long den = 1;
  std::string str() const;
  bool operator==(const Fraction&) const = default;
};

struct CodeSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t c = 0;
  std::size_t s = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  CodeClass code_class = CodeClass::Class1;
  DecompositionRecord record;

  // Unencoded stream: ebits, ancillas, information qubits (logical X then
  // logical Z per qubit).
  QuantumCheckMatrix start;
  Circuit encoder;
  Circuit decoder;
  // State after every encoder gate, then the row steps that bring the
  // transmitter part back to the input check matrix.
  std::vector<TraceStep> encoder_trace;
  // Starts from the encoder output before any row steps.
  std::vector<TraceStep> decoder_trace;

  QuantumCheckMatrix encoded;  // encoder gates only
  QuantumCheckMatrix final_stabilizer;
  QuantumCheckMatrix measurable;
  QuantumCheckMatrix decoded;

  // Logical rows expected after decoding, modulo the decoded stabilizer.
  PolyMatrix expected_info_z;
  PolyMatrix expected_info_x;
  std::vector<std::size_t> info_cols;  // global column of each input qubit
  std::vector<int> frame_offsets;      // per input qubit
};

CodeSpec build_class1(const DecompositionRecord& record);
// Handles Class2 and Class2Special.
CodeSpec build_class2(const DecompositionRecord& record);
// validate, classify and build.
CodeSpec build_code(const PolyMatrix& h1, const PolyMatrix& h2);

struct CodeParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t c = 0;
  Fraction ea_rate;
  Fraction tradeoff_k;
  Fraction tradeoff_c;
  Fraction catalytic;
  std::string str() const;  // "[[n,k;c]]"
};

CodeParams code_params(const CodeSpec& spec);

}  // namespace eaqcc
