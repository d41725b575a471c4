// Command-line front end: prove / check / extract / translate / eval / normalize.
//
// Exit codes: 0 success; 1 parse, file, or usage error; 2 the evidence or
// proof is rejected (no rule matches, stuck evidence, checker rejection,
// counterexample found); 3 fuel exhausted.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "e2p/derive.hpp"
#include "e2p/friedman.hpp"
#include "e2p/proof.hpp"
#include "e2p/semantics.hpp"

using namespace e2p;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitRejected = 2;
constexpr int kExitFuel = 3;

struct CliError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitParse, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitParse, "cannot write " + path};
  out << content;
}

long default_fuel() {
  if (const char* env = std::getenv("E2P_FUEL")) {
    try {
      long v = std::stol(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 100000;
}

Formula load_formula(const std::string& path) {
  try {
    return parse_formula(read_file(path));
  } catch (const ParseError& e) {
    throw CliError{kExitParse, path + ": " + e.what() + " at offset " + std::to_string(e.pos)};
  } catch (const std::runtime_error& e) {
    throw CliError{kExitParse, path + ": " + e.what()};
  }
}

Term load_term(const std::string& path) {
  try {
    return parse_term(read_file(path));
  } catch (const ParseError& e) {
    throw CliError{kExitParse, path + ": " + e.what() + " at offset " + std::to_string(e.pos)};
  }
}

ProofFile load_proof(const std::string& path) {
  try {
    return parse_proof_file(read_file(path));
  } catch (const ParseError& e) {
    throw CliError{kExitParse, path + ": " + e.what() + " at offset " + std::to_string(e.pos)};
  } catch (const std::runtime_error& e) {
    throw CliError{kExitParse, path + ": " + e.what()};
  }
}

LogicMode parse_logic(const std::string& s) {
  if (s == "minimal") return LogicMode::Minimal;
  if (s == "intuitionistic") return LogicMode::Intuitionistic;
  throw CliError{kExitParse, "unknown logic '" + s + "'"};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

int run_drive(const Formula& ml_goal, const Term& evd, const DriveOptions& opts,
              const Formula& file_goal, bool intuitionistic, const std::string& out_path) {
  DriveOutcome out = prove_from_evidence(ml_goal, evd, opts);
  switch (out.status) {
    case DriveStatus::Proved: break;
    case DriveStatus::InvalidInput: throw CliError{kExitParse, out.message};
    case DriveStatus::FuelExhausted: throw CliError{kExitFuel, out.message};
    case DriveStatus::NoRuleMatches:
    case DriveStatus::StuckEvidence: {
      std::string msg = out.message;
      if (out.failed_at)
        msg += "\n  in structure: " + to_string(out.failed_at->context) +
               " |- " + to_string(out.failed_at->goal) + ", " + to_string(out.failed_at->evidence);
      throw CliError{kExitRejected, msg};
    }
  }
  Proof proof = *out.proof;
  if (intuitionistic) proof = il_proof_from_translation(file_goal, proof);
  LogicMode mode = intuitionistic ? LogicMode::Intuitionistic : LogicMode::Minimal;
  if (auto bad = check_proof(file_goal, proof, mode))
    throw CliError{kExitRejected, "internal: produced proof rejected: " + bad->render()};
  emit(to_string(ProofFile{file_goal, proof}), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"converts BHK evidence terms for first-order minimal logic into "
               "checkable sequent proofs"};
  app.require_subcommand(1);

  std::string formula_path, evidence_path, proof_path, out_path;
  std::string logic = "minimal";
  std::string atom_name = "bot";
  long fuel = default_fuel();
  bool pre_normalize = false, trace = false;
  int kmax = 2, atomcard = 2;

  auto* prove = app.add_subcommand("prove", "build a proof from a formula and evidence");
  prove->add_option("formula", formula_path, "formula file")->required();
  prove->add_option("evidence", evidence_path, "evidence term file")->required();
  prove->add_option("--fuel", fuel, "step budget");
  prove->add_option("--logic", logic, "minimal|intuitionistic");
  prove->add_flag("--pre-normalize", pre_normalize, "fully normalize evidence first");
  prove->add_option("--out", out_path, "output proof file (stdout if omitted)");
  prove->add_flag("--trace", trace, "stream derivation steps to stderr");

  auto* check = app.add_subcommand("check", "check a proof file");
  check->add_option("proof", proof_path, "proof file")->required();
  check->add_option("--logic", logic, "minimal|intuitionistic");

  auto* extract = app.add_subcommand("extract", "extract evidence from a proof file");
  extract->add_option("proof", proof_path, "proof file")->required();
  extract->add_option("--logic", logic, "minimal|intuitionistic");
  extract->add_option("--out", out_path, "output evidence file (stdout if omitted)");

  auto* translate = app.add_subcommand("translate", "apply the A-translation to a formula");
  translate->add_option("formula", formula_path, "formula file")->required();
  translate->add_option("--atom", atom_name, "atom name, or 'False'");
  translate->add_option("--out", out_path, "output file (stdout if omitted)");

  auto* eval = app.add_subcommand("eval", "check evidence against all small finitary structures");
  eval->add_option("formula", formula_path, "formula file")->required();
  eval->add_option("--evidence", evidence_path, "evidence term file")->required();
  eval->add_option("--kmax", kmax, "max domain size");
  eval->add_option("--atomcard", atomcard, "max tokens per atom cell");
  eval->add_option("--fuel", fuel, "evaluation budget per check");

  auto* normalize_cmd = app.add_subcommand("normalize", "fully normalize an evidence term");
  normalize_cmd->add_option("evidence", evidence_path, "evidence term file")->required();
  normalize_cmd->add_option("--fuel", fuel, "step budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }

  try {
    if (prove->parsed()) {
      Formula goal = load_formula(formula_path);
      Term evd = load_term(evidence_path);
      LogicMode mode = parse_logic(logic);

      DriveOptions opts;
      opts.fuel = fuel;
      opts.pre_normalize = pre_normalize;
      if (trace) {
        opts.trace = [](long n, RuleId r, const EvidenceStructure& s) {
          std::cerr << "STEP " << n << " rule=" << rule_name(r) << " goal=" << to_string(s.goal)
                    << " evd-head=" << kind_name(s.evidence.kind()) << "\n";
        };
      }

      if (mode == LogicMode::Minimal) {
        if (!is_minimal(goal))
          throw CliError{kExitParse, "goal is not minimal; use --logic intuitionistic"};
        return run_drive(goal, evd, opts, goal, false, out_path);
      }
      Language lang = language_of(goal);
      if (lang.relations.count(atom_name))
        throw CliError{kExitParse, "goal already uses the placeholder atom '" + atom_name + "'"};
      Formula translated = a_translate(goal, Formula::atom(atom_name));
      return run_drive(translated, evd, opts, goal, true, out_path);
    }

    if (check->parsed()) {
      ProofFile pf = load_proof(proof_path);
      if (auto bad = check_proof(pf.goal, pf.proof, parse_logic(logic)))
        throw CliError{kExitRejected, "rejected: " + bad->render()};
      std::cout << "ok: " << to_string(pf.goal) << "\n";
      return kExitOk;
    }

    if (extract->parsed()) {
      ProofFile pf = load_proof(proof_path);
      if (auto bad = check_proof(pf.goal, pf.proof, parse_logic(logic)))
        throw CliError{kExitRejected, "rejected: " + bad->render()};
      emit(to_string(extract_evidence(pf.proof)) + "\n", out_path);
      return kExitOk;
    }

    if (translate->parsed()) {
      Formula goal = load_formula(formula_path);
      Formula a = atom_name == "False" ? Formula::falsec() : Formula::atom(atom_name);
      emit(to_string(a_translate(goal, a)) + "\n", out_path);
      return kExitOk;
    }

    if (eval->parsed()) {
      Formula goal = load_formula(formula_path);
      Term evd = load_term(evidence_path);
      if (!is_minimal(goal) || !is_closed(goal))
        throw CliError{kExitParse, "eval needs a closed minimal formula"};
      ValidityReport rep = sample_uniform_validity(goal, evd, kmax, atomcard, fuel);
      switch (rep.kind) {
        case ValidityReport::Kind::AllMember:
          std::cout << "all-member over " << rep.structures_checked << " structures\n";
          return kExitOk;
        case ValidityReport::Kind::Counterexample:
          throw CliError{kExitRejected, "counterexample: " + rep.counterexample->render()};
        case ValidityReport::Kind::Inconclusive:
          throw CliError{kExitFuel, "inconclusive: evaluation budget exhausted"};
      }
      return kExitOk;
    }

    if (normalize_cmd->parsed()) {
      Term evd = load_term(evidence_path);
      NormalizeResult r = normalize(evd, fuel);
      if (!r.complete)
        throw CliError{kExitFuel, "normalization exhausted " + std::to_string(fuel) + " steps"};
      std::cout << to_string(r.term) << "\n";
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
