#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vdw/ap.hpp"
#include "vdw/bounds.hpp"
#include "vdw/certify.hpp"
#include "vdw/dimacs.hpp"
#include "vdw/dpll.hpp"
#include "vdw/encoder.hpp"
#include "vdw/walk.hpp"

namespace {

using namespace vdw;

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitFormat = 65;
constexpr int kExitInternal = 70;

struct WalkFlags {
  std::uint64_t seed = 1;
  double noise = 0.3;
  std::int64_t max_flips = 2'000'000;
  int restarts = 20;
  std::string neighborhood = "block-move";
  int jobs = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--noise", noise, "random-move probability");
    cmd->add_option("--max-flips", max_flips, "flips per restart");
    cmd->add_option("--restarts", restarts, "independent restarts");
    cmd->add_option("--neighborhood", neighborhood, "move set")
        ->check(CLI::IsMember({"flip", "block-move"}));
    cmd->add_option("--jobs", jobs, "parallel restart workers");
  }

  WalkConfig config(std::optional<double> timeout, bool quiet) const {
    WalkConfig cfg;
    cfg.seed = seed;
    cfg.noise = noise;
    cfg.max_flips = max_flips;
    cfg.restarts = restarts;
    cfg.neighborhood = neighborhood == "flip" ? WalkConfig::Neighborhood::flip
                                              : WalkConfig::Neighborhood::block_move;
    cfg.jobs = jobs;
    cfg.timeout_seconds = timeout;
    cfg.progress = quiet ? nullptr : &std::cout;
    return cfg;
  }
};

/// Decodes a model of the vdW theory, re-verifies it, writes the
/// certificate file, and prints it. Returns the certificate path.
std::string emit_certificate(const Params& p, const Assignment& model,
                             const std::string& origin, std::string path, bool quiet) {
  Partition part = decode_model(model, p);
  Certificate cert{p, part, origin};
  VerifyReport report = verify(cert);
  if (!report.valid) throw std::logic_error("solver model failed verification");
  if (path.empty()) {
    path = "w" + std::to_string(p.k) + "_" + std::to_string(p.l) + "_m" +
           std::to_string(p.m) + ".cert";
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file " + path, 0);
  write_certificate(cert, out);
  if (!quiet) {
    write_certificate(cert, std::cout);
    std::cout << "certificate: " << path << '\n';
  }
  return path;
}

int run_encode(const Params& p, const std::string& format, SymmetryMode symmetry,
               const std::string& out_path) {
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ParseError("cannot open output file " + out_path, 0);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (format == "cnf") {
    write_dimacs(encode_cnf(p, symmetry), out);
  } else {
    write_xdimacs(encode_ps(p, symmetry), out);
  }
  return 0;
}

int report_dpll(const SolveResult& r, bool quiet) {
  if (!quiet) {
    std::cout << "# decisions=" << r.stats.decisions
              << " propagations=" << r.stats.propagations
              << " max_depth=" << r.stats.max_depth << '\n';
  }
  return r.verdict == Verdict::sat     ? kExitSat
         : r.verdict == Verdict::unsat ? kExitUnsat
                                       : kExitUnknown;
}

void print_model_line(const Assignment& model) {
  std::cout << "v";
  for (Var v = 1; v <= model.num_vars(); ++v) {
    std::cout << ' ' << (model.value(v) ? v : -v);
  }
  std::cout << " 0\n";
}

int run_solve_file(const std::string& engine, const std::string& path,
                   const std::string& format, std::optional<double> timeout,
                   const WalkFlags& walk_flags, const std::string& out_path,
                   bool quiet) {
  if (!out_path.empty()) {
    std::cerr << "error: -o needs a built instance (--k/--l/--m); a raw theory"
                 " has no partition to decode\n";
    return kExitUsage;
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path, 0);

  if (engine == "dpll") {
    if (format == "ccnf") {
      std::cerr << "error: the complete engine reads plain cnf only\n";
      return kExitUsage;
    }
    ResourceBudget budget;
    budget.seconds = timeout;
    SolveResult r = solve_complete(read_dimacs(in), budget);
    int code = report_dpll(r, quiet);
    if (r.verdict == Verdict::sat && !quiet) print_model_line(*r.model);
    std::cout << (r.verdict == Verdict::sat     ? "SAT"
                  : r.verdict == Verdict::unsat ? "UNSAT"
                                                : "UNKNOWN")
              << '\n';
    return code;
  }

  CTheory theory = format == "cnf" ? to_ctheory(read_dimacs(in)) : read_xdimacs(in);
  WalkResult r = solve_local(theory, walk_flags.config(timeout, quiet));
  if (r.verdict == Verdict::sat) {
    if (!quiet) print_model_line(*r.model);
    std::cout << "SAT seed=" << r.winning_seed << " flips=" << r.flips << '\n';
    return kExitSat;
  }
  std::cout << "UNKNOWN\n";
  return kExitUnknown;
}

int run_solve_params(const std::string& engine, const Params& p, SymmetryMode symmetry,
                     std::optional<double> timeout, const WalkFlags& walk_flags,
                     const std::string& out_path, bool quiet) {
  if (engine == "dpll") {
    ResourceBudget budget;
    budget.seconds = timeout;
    SolveResult r = solve_complete(encode_cnf(p, symmetry), budget);
    int code = report_dpll(r, quiet);
    if (r.verdict == Verdict::sat) {
      emit_certificate(p, *r.model, "found by the complete engine", out_path, quiet);
    }
    std::cout << (r.verdict == Verdict::sat     ? "SAT"
                  : r.verdict == Verdict::unsat ? "UNSAT"
                                                : "UNKNOWN")
              << '\n';
    return code;
  }

  WalkResult r = solve_local(encode_ps(p, symmetry), walk_flags.config(timeout, quiet));
  if (r.verdict == Verdict::sat) {
    emit_certificate(p, *r.model, "found by local search", out_path, quiet);
    std::cout << "SAT seed=" << r.winning_seed << " flips=" << r.flips << '\n';
    return kExitSat;
  }
  std::cout << "UNKNOWN\n";
  return kExitUnknown;
}

int run_verify(const std::string& cert_path, std::optional<int> l_override, bool quiet) {
  std::ifstream in(cert_path);
  if (!in) throw ParseError("cannot open certificate " + cert_path, 0);
  Certificate cert = parse_certificate(in);
  if (l_override) {
    cert = Certificate{Params(cert.params.k, *l_override, cert.params.m), cert.partition,
                       cert.origin};
  }
  VerifyReport report = verify(cert);
  if (quiet) {
    std::cout << report.summary() << '\n';
  } else {
    report.render(std::cout);
  }
  return report.valid ? kExitSat : kExitUnsat;
}

int run_search(int k, int l, bool lower, int start, SymmetryMode symmetry,
               std::optional<double> timeout, const WalkFlags& walk_flags, bool gallop,
               std::string out_dir, bool quiet) {
  SearchIO io;
  io.diagnostics = quiet ? nullptr : &std::cout;
  if (out_dir.empty()) {
    out_dir = "runs/" + std::string(lower ? "lower" : "exact") + "-k" + std::to_string(k) +
              "-l" + std::to_string(l);
  }
  io.out_dir = out_dir;

  if (!lower) {
    ResourceBudget budget;
    budget.seconds = timeout;
    ExactResult res = search_exact(k, l, symmetry, budget, io, gallop);
    if (res.complete()) {
      std::cout << "W(" << k << "," << l << ") = " << *res.value << '\n';
    } else {
      std::cout << "W(" << k << "," << l << ") > " << res.lower_bound
                << " (budget exhausted)\n";
    }
    if (!res.witness_path.empty()) std::cout << "certificate: " << res.witness_path << '\n';
    return res.complete() ? kExitSat : kExitUnknown;
  }

  WalkConfig cfg = walk_flags.config(timeout, quiet);
  LowerBoundResult res = search_lower_bound(k, l, start, cfg, io);
  if (!res.best_m) {
    std::cout << "no witness found at m=" << start << '\n';
    return kExitUnknown;
  }
  std::cout << "W(" << k << "," << l << ") > " << *res.best_m << '\n';
  if (!res.witness_path.empty()) std::cout << "certificate: " << res.witness_path << '\n';
  return kExitSat;
}

int run_bounds(int k, int l) {
  TheoreticalBounds tb = theoretical_bounds(k, l);
  std::cout << "Erdos-Rado: W(" << k << "," << l << ") > " << tb.erdos_rado << " ("
            << tb.erdos_rado_value << ")\n";
  if (tb.berlekamp) {
    std::cout << "Berlekamp: W(" << k << "," << l << ") > " << *tb.berlekamp << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"van der Waerden number encoder, solvers and bound search"};
  app.require_subcommand(1);

  int k = 0, l = 0, m = 0;
  std::string format, symmetry = "none", out_path, input_path, cert_path, engine;
  std::optional<double> timeout;
  std::optional<int> l_override;
  int start = 0;
  bool quiet = false, exact = false, lower = false, gallop = false;
  std::string out_dir;
  WalkFlags walk_flags;

  app.add_flag("--quiet", quiet, "print only the machine-readable summary");

  CLI::App* enc = app.add_subcommand("encode", "write a vdW theory in DIMACS form");
  enc->add_option("--k", k, "number of blocks")->required();
  enc->add_option("--l", l, "progression length")->required();
  enc->add_option("--m", m, "segment length")->required();
  enc->add_option("--format", format, "cnf or ccnf")
      ->check(CLI::IsMember({"cnf", "ccnf"}))
      ->default_val("cnf");
  enc->add_option("--symmetry", symmetry, "none, fix-first or lex")
      ->check(CLI::IsMember({"none", "fix-first", "lex"}));
  enc->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "decide one instance");
  solve->add_option("--engine", engine, "dpll or walk")
      ->check(CLI::IsMember({"dpll", "walk"}))
      ->required();
  solve->add_option("--k", k, "number of blocks");
  solve->add_option("--l", l, "progression length");
  solve->add_option("--m", m, "segment length");
  solve->add_option("-i,--input", input_path, "read a DIMACS theory instead");
  solve->add_option("--format", format, "cnf or ccnf")
      ->check(CLI::IsMember({"cnf", "ccnf"}));
  solve->add_option("--symmetry", symmetry, "symmetry clauses for built instances")
      ->check(CLI::IsMember({"none", "fix-first", "lex"}));
  solve->add_option("--timeout", timeout, "wall-clock seconds");
  solve->add_option("-o,--output", out_path, "certificate file path");
  walk_flags.attach(solve);

  CLI::App* ver = app.add_subcommand("verify", "check a certificate file");
  ver->add_option("--cert", cert_path, "certificate file")->required();
  ver->add_option("--l", l_override, "override the progression length");

  CLI::App* search = app.add_subcommand("search", "compute W(k,l) or a lower bound");
  search->add_option("--k", k, "number of blocks")->required();
  search->add_option("--l", l, "progression length")->required();
  search->add_flag("--exact", exact, "complete search (default)");
  search->add_flag("--lower", lower, "local-search lower bound");
  search->add_option("--start", start, "first m for --lower");
  search->add_option("--symmetry", symmetry, "symmetry clauses for --exact")
      ->check(CLI::IsMember({"none", "fix-first", "lex"}));
  search->add_flag("--gallop", gallop, "probe with doubling gaps, then bisect");
  search->add_option("--timeout", timeout, "wall-clock seconds per m");
  search->add_option("--out-dir", out_dir, "manifest and certificate directory");
  walk_flags.attach(search);

  CLI::App* bounds = app.add_subcommand("bounds", "theoretical lower bounds");
  bounds->add_option("--k", k, "number of blocks")->required();
  bounds->add_option("--l", l, "progression length")->required();

  // Lets --quiet appear after the subcommand name as well as before it.
  for (CLI::App* sub : {enc, solve, ver, search, bounds}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (enc->parsed()) {
      return run_encode(Params(k, l, m), format, symmetry_from_string(symmetry), out_path);
    }
    if (solve->parsed()) {
      const bool have_params = solve->count("--k") && solve->count("--l") && solve->count("--m");
      if (have_params == !input_path.empty()) {
        std::cerr << "error: give either --k/--l/--m or --input, not both\n";
        return kExitUsage;
      }
      if (format.empty()) format = engine == "dpll" ? "cnf" : "ccnf";
      if (!input_path.empty()) {
        return run_solve_file(engine, input_path, format, timeout, walk_flags,
                              out_path, quiet);
      }
      return run_solve_params(engine, Params(k, l, m), symmetry_from_string(symmetry),
                              timeout, walk_flags, out_path, quiet);
    }
    if (ver->parsed()) {
      return run_verify(cert_path, l_override, quiet);
    }
    if (search->parsed()) {
      if (exact && lower) {
        std::cerr << "error: --exact and --lower are mutually exclusive\n";
        return kExitUsage;
      }
      if (lower && !search->count("--start")) {
        std::cerr << "error: --lower requires --start\n";
        return kExitUsage;
      }
      return run_search(k, l, lower, start, symmetry_from_string(symmetry), timeout,
                        walk_flags, gallop, out_dir, quiet);
    }
    if (bounds->parsed()) {
      Params(k, l, 1);
      return run_bounds(k, l);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
