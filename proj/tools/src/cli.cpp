#include "eaqcc_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "eaqcc/errors.hpp"

namespace eaqcc::cli {

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string indent(const std::string& text, const std::string& pad = "  ") {
  std::string out;
  for (const std::string& l : lines(text)) out += pad + l + "\n";
  return out;
}

Json matrix_json(const PolyMatrix& m) { return m.rows() == 0 ? Json::array() : Json(lines(m.str())); }

Json state_json(const QuantumCheckMatrix& q) {
  Json j;
  j["bob_cols"] = q.bob_cols;
  j["z"] = matrix_json(q.z);
  j["x"] = matrix_json(q.x);
  j["info_z"] = matrix_json(q.info_z);
  j["info_x"] = matrix_json(q.info_x);
  return j;
}

Json circuit_json(const Circuit& c) {
  Json j = Json::array();
  for (const Gate& g : c.gates) j.push_back(g.str());
  return j;
}

Json trace_json(const std::vector<TraceStep>& steps) {
  Json j = Json::array();
  for (const TraceStep& s : steps) j.push_back({{"label", s.label}, {"state", state_json(s.state)}});
  return j;
}

std::string state_text(const QuantumCheckMatrix& q) {
  std::string out = indent(q.str());
  if (q.has_info()) out += "  logical\n" + indent(q.info_str(), "    ");
  return out;
}

std::string circuit_text(const std::string& name, const Circuit& c) {
  std::string out = name + ": " + std::to_string(c.size()) + " gates, " + std::to_string(c.count_infinite_depth()) +
                    " infinite-depth\n";
  return out + indent(c.str(true));
}

std::string trace_text(const std::string& name, const std::vector<TraceStep>& steps) {
  std::string out = name + ":\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += "[" + std::to_string(i) + "] " + steps[i].label + "\n";
    out += state_text(steps[i].state);
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

PolyMatrix load_matrix(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return PolyMatrix::parse(read_file(arg));
  return PolyMatrix::parse(arg);
}

std::string params_text(const CodeSpec& spec) {
  const CodeParams p = code_params(spec);
  std::string out;
  out += "code: " + p.str() + "\n";
  out += "class: " + std::string(to_string(spec.code_class)) + "\n";
  out += "n=" + std::to_string(p.n) + " k=" + std::to_string(p.k) + " c=" + std::to_string(p.c) +
         " k1=" + std::to_string(spec.k1) + " k2=" + std::to_string(spec.k2) + " s=" + std::to_string(spec.s) + "\n";
  out += "entanglement-assisted rate: " + p.ea_rate.str() + "\n";
  out += "trade-off rate: (" + p.tradeoff_k.str() + ", " + p.tradeoff_c.str() + ")\n";
  out += "catalytic rate: " + p.catalytic.str() + "\n";
  return out;
}

std::string build_text(const CodeSpec& spec, const ReportOptions& opts) {
  std::string out = params_text(spec);
  out += "\n" + circuit_text("encoder", spec.encoder);
  out += "\n" + circuit_text("decoder", spec.decoder);
  out += "\nfinal stabilizer:\n" + indent(spec.final_stabilizer.str());
  out += "\nmeasurable stabilizer:\n" + indent(spec.measurable.str());
  out += "\ninformation qubits:\n";
  for (std::size_t i = 0; i < spec.info_cols.size(); ++i)
    out += "  " + std::to_string(i + 1) + ": column " + std::to_string(spec.info_cols[i] + 1) + ", frame offset " +
           std::to_string(spec.frame_offsets[i]) + "\n";
  if (opts.trace) {
    out += "\n" + trace_text("encoder trace", spec.encoder_trace);
    out += "\n" + trace_text("decoder trace", spec.decoder_trace);
  }
  return out;
}

std::string verify_text(const VerificationReport& rep) { return rep.str() + (rep.passed() ? "PASS\n" : "FAIL\n"); }

Json params_json(const CodeSpec& spec) {
  const CodeParams p = code_params(spec);
  return {{"code", p.str()},
          {"class", to_string(spec.code_class)},
          {"n", p.n},
          {"k", p.k},
          {"c", p.c},
          {"k1", spec.k1},
          {"k2", spec.k2},
          {"s", spec.s},
          {"ea_rate", p.ea_rate.str()},
          {"tradeoff_rate", {p.tradeoff_k.str(), p.tradeoff_c.str()}},
          {"catalytic_rate", p.catalytic.str()}};
}

Json build_json(const CodeSpec& spec, const ReportOptions& opts) {
  Json j;
  j["params"] = params_json(spec);
  j["h1"] = matrix_json(spec.record.input.h1);
  j["h2"] = matrix_json(spec.record.input.h2);
  j["start"] = state_json(spec.start);
  j["encoder"] = circuit_json(spec.encoder);
  j["decoder"] = circuit_json(spec.decoder);
  j["final_stabilizer"] = state_json(spec.final_stabilizer);
  j["measurable"] = state_json(spec.measurable);
  j["decoded"] = state_json(spec.decoded);
  Json info = Json::array();
  for (std::size_t i = 0; i < spec.info_cols.size(); ++i)
    info.push_back({{"column", spec.info_cols[i] + 1}, {"frame_offset", spec.frame_offsets[i]}});
  j["information_qubits"] = info;
  if (opts.trace) {
    j["encoder_trace"] = trace_json(spec.encoder_trace);
    j["decoder_trace"] = trace_json(spec.decoder_trace);
  }
  return j;
}

Json verify_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const CheckResult& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"window", rep.window}, {"scratch", rep.scratch}, {"passed", rep.passed()}, {"checks", checks}};
}

const std::vector<Example>& bundled_examples() {
  static const std::vector<Example> ex = {
      {"example1", "1+D^2, 1+D+D^2", "1+D^2, 1+D+D^2", 12},
      {"example2", "1, 1+D", "1, 1+D", 16},
  };
  return ex;
}

std::string example_text(const Example& ex) {
  const CodeSpec spec = build_code(PolyMatrix::parse(ex.h1), PolyMatrix::parse(ex.h2));
  std::string out = "H1: " + ex.h1 + "\nH2: " + ex.h2 + "\n\n";
  out += build_text(spec, {.trace = true});
  out += "\nverification:\n" + verify_text(verify_code(spec, ex.window));
  return out;
}

std::string example_json(const Example& ex) {
  const CodeSpec spec = build_code(PolyMatrix::parse(ex.h1), PolyMatrix::parse(ex.h2));
  Json j;
  j["schema"] = 1;
  j["command"] = "examples";
  j["example"] = ex.name;
  j["build"] = build_json(spec, {.trace = true});
  j["verification"] = verify_json(verify_code(spec, ex.window));
  return j.dump(2) + "\n";
}

void write_examples(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const Example& ex : bundled_examples()) {
    std::ofstream(dir / (ex.name + ".txt"), std::ios::binary) << example_text(ex);
    std::ofstream(dir / (ex.name + ".json"), std::ios::binary) << example_json(ex);
  }
}

namespace {

struct Config {
  std::string h1;
  std::string h2;
  int window = 32;
  int scratch = -1;
  std::string format = "text";
  bool trace = false;
  std::string out_dir;
};

void emit_error(std::ostream& err, const Config& cfg, const std::string& kind, const std::string& message,
                const Json& extra = Json::object()) {
  if (cfg.format == "json") {
    Json j;
    j["schema"] = 1;
    j["error"] = {{"kind", kind}, {"message", message}};
    for (const auto& [k, v] : extra.items()) j["error"][k] = v;
    err << j.dump(2) << "\n";
  } else {
    err << "error: " << message << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Entanglement-assisted quantum convolutional code construction"};
  app.require_subcommand(1);

  auto add_inputs = [&cfg](CLI::App* sub) {
    sub->add_option("--h1", cfg.h1, "first check matrix (file or inline)")->required();
    sub->add_option("--h2", cfg.h2, "second check matrix (file or inline); defaults to --h1");
  };
  auto add_format = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_window = [&cfg](CLI::App* sub) {
    sub->add_option("--window", cfg.window, "frames in the verification window");
    sub->add_option("--scratch", cfg.scratch, "leading scratch frames (default from the circuit)");
  };

  CLI::App* build = app.add_subcommand("build", "construct the code and its circuits");
  add_inputs(build);
  add_format(build);
  build->add_flag("--trace", cfg.trace, "include the state after every step");
  CLI::App* verify = app.add_subcommand("verify", "construct and verify the code");
  add_inputs(verify);
  add_format(verify);
  add_window(verify);
  CLI::App* params = app.add_subcommand("params", "print [[n,k;c]] and the rates");
  add_inputs(params);
  add_format(params);
  CLI::App* examples = app.add_subcommand("examples", "rebuild and verify the bundled examples");
  examples->add_option("--out", cfg.out_dir, "write golden reports to this directory");
  add_format(examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  const bool json = cfg.format == "json";
  try {
    if (examples->parsed()) {
      if (!cfg.out_dir.empty()) {
        write_examples(cfg.out_dir);
        for (const Example& ex : bundled_examples()) out << "wrote " << ex.name << ".txt, " << ex.name << ".json\n";
      } else {
        for (const Example& ex : bundled_examples()) out << (json ? example_json(ex) : example_text(ex));
      }
      for (const Example& ex : bundled_examples()) {
        const CodeSpec spec = build_code(PolyMatrix::parse(ex.h1), PolyMatrix::parse(ex.h2));
        if (!verify_code(spec, ex.window).passed()) return kExitVerification;
      }
      return kExitOk;
    }

    const PolyMatrix h1 = load_matrix(cfg.h1);
    const PolyMatrix h2 = cfg.h2.empty() ? h1 : load_matrix(cfg.h2);
    const CodeSpec spec = build_code(h1, h2);
    Json j;
    j["schema"] = 1;
    if (params->parsed()) {
      j["command"] = "params";
      j["params"] = params_json(spec);
      out << (json ? j.dump(2) + "\n" : params_text(spec));
      return kExitOk;
    }
    if (build->parsed()) {
      j["command"] = "build";
      j["build"] = build_json(spec, {.trace = cfg.trace});
      out << (json ? j.dump(2) + "\n" : build_text(spec, {.trace = cfg.trace}));
      return kExitOk;
    }
    const VerificationReport rep = verify_code(spec, cfg.window, cfg.scratch);
    j["command"] = "verify";
    j["params"] = params_json(spec);
    j["verification"] = verify_json(rep);
    out << (json ? j.dump(2) + "\n" : params_text(spec) + verify_text(rep));
    return rep.passed() ? kExitOk : kExitVerification;
  } catch (const ParseError& e) {
    const std::string where = "line " + std::to_string(e.line()) + ", column " + std::to_string(e.column());
    emit_error(err, cfg, "ParseError", "parse error at " + where + ": " + e.what(),
               {{"line", e.line()}, {"column", e.column()}});
    return kExitParse;
  } catch (const ValidationError& e) {
    emit_error(err, cfg, to_string(e.kind()), e.what(), {{"detail", e.detail()}});
    return kExitValidation;
  } catch (const WindowTooSmall& e) {
    emit_error(err, cfg, "WindowTooSmall", std::string("WindowTooSmall: ") + e.what());
    return kExitVerification;
  }
}

}  // namespace eaqcc::cli
