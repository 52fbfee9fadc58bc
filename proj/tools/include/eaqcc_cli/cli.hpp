#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "eaqcc/construct.hpp"
#include "eaqcc/verify.hpp"

namespace eaqcc::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitVerification = 4;

// --h1 / --h2 value: a readable file path, otherwise inline matrix text.
PolyMatrix load_matrix(const std::string& arg);

struct ReportOptions {
  bool trace = false;
};

std::string params_text(const CodeSpec& spec);
std::string build_text(const CodeSpec& spec, const ReportOptions& opts);
std::string verify_text(const VerificationReport& rep);

Json params_json(const CodeSpec& spec);
Json build_json(const CodeSpec& spec, const ReportOptions& opts);
Json verify_json(const VerificationReport& rep);

struct Example {
  std::string name;
  std::string h1;
  std::string h2;
  int window = 32;
};

const std::vector<Example>& bundled_examples();

// Text and JSON reports for one bundled example, as stored under tests/golden.
std::string example_text(const Example& ex);
std::string example_json(const Example& ex);

// Writes <name>.txt and <name>.json for every bundled example.
void write_examples(const std::filesystem::path& dir);

// Full command line, including argv[0]. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eaqcc::cli
