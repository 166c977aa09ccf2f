#include "vdw/bounds.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace vdw {

namespace {

/// Collects key=value lines and writes them as the run manifest.
class RunManifest {
 public:
  void add(const std::string& key, const std::string& value) {
    lines_.push_back(key + "=" + value);
  }
  void add(const std::string& key, std::int64_t value) {
    add(key, std::to_string(value));
  }

  std::string write(const std::string& out_dir) const {
    if (out_dir.empty()) return {};
    std::filesystem::create_directories(out_dir);
    std::filesystem::path path = std::filesystem::path(out_dir) / "manifest.txt";
    std::ofstream out(path);
    for (const std::string& line : lines_) out << line << '\n';
    return path.string();
  }

 private:
  std::vector<std::string> lines_;
};

std::string write_witness(const Certificate& cert, const std::string& out_dir) {
  if (out_dir.empty()) return {};
  std::filesystem::create_directories(out_dir);
  std::filesystem::path path =
      std::filesystem::path(out_dir) / ("w" + std::to_string(cert.params.k) + "_" +
                                        std::to_string(cert.params.l) + "_m" +
                                        std::to_string(cert.params.m) + ".cert");
  std::ofstream out(path);
  write_certificate(cert, out);
  return path.string();
}

void diag(const SearchIO& io, const std::string& line) {
  if (io.diagnostics) *(io.diagnostics) << "# " << line << '\n';
}

Certificate trivial_witness(int k, int l) {
  Partition partition;
  partition.m = k;
  partition.blocks.resize(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) partition.blocks[static_cast<std::size_t>(i) - 1] = {i};
  return Certificate{Params(k, l, k), partition, "singleton partition"};
}

/// Solves one m with the complete engine, checks any model, and
/// records the outcome. Returns the verdict; fills *witness on Sat.
Verdict probe_exact(int k, int l, int m, SymmetryMode symmetry,
                    const ResourceBudget& budget, RunManifest& manifest,
                    const SearchIO& io, Certificate* witness) {
  Params p(k, l, m);
  SolveResult r = solve_complete(encode_cnf(p, symmetry), budget);
  const char* verdict = r.verdict == Verdict::sat     ? "sat"
                        : r.verdict == Verdict::unsat ? "unsat"
                                                      : "unknown";
  manifest.add("step." + std::to_string(m) + ".verdict", verdict);
  manifest.add("step." + std::to_string(m) + ".decisions", r.stats.decisions);
  diag(io, "m=" + std::to_string(m) + " " + verdict +
               " decisions=" + std::to_string(r.stats.decisions));
  if (r.verdict != Verdict::sat) return r.verdict;

  Partition part = decode_model(*r.model, p);
  Certificate cert{p, part, "complete search witness"};
  if (!verify(cert).valid) {
    throw std::logic_error("engine returned a model that fails verification");
  }
  *witness = std::move(cert);
  return Verdict::sat;
}

}  // namespace

ExactResult search_exact(int k, int l, SymmetryMode symmetry, const ResourceBudget& budget,
                         const SearchIO& io, bool gallop) {
  Params(k, l, 1);  // validates k and l

  RunManifest manifest;
  manifest.add("kind", "exact");
  manifest.add("k", k);
  manifest.add("l", l);
  manifest.add("engine", "dpll");
  manifest.add("symmetry", to_string(symmetry));
  manifest.add("gallop", gallop ? "true" : "false");
  if (budget.seconds) manifest.add("budget.seconds", std::to_string(*budget.seconds));
  if (budget.max_decisions) manifest.add("budget.max_decisions", *budget.max_decisions);

  ExactResult result;
  Certificate best = trivial_witness(k, l);
  result.lower_bound = k;

  if (!gallop) {
    for (int m = k + 1;; ++m) {
      Certificate cert = best;
      Verdict v = probe_exact(k, l, m, symmetry, budget, manifest, io, &cert);
      if (v == Verdict::unknown) break;
      if (v == Verdict::unsat) {
        result.value = m;
        break;
      }
      best = std::move(cert);
      result.lower_bound = m;
    }
  } else {
    int lo = k;        // verified satisfiable (or the trivial base)
    int hi = -1;       // proven unsatisfiable
    for (int m = k + 1; hi < 0; m = k + 2 * (m - k)) {
      Certificate cert = best;
      Verdict v = probe_exact(k, l, m, symmetry, budget, manifest, io, &cert);
      if (v == Verdict::unknown) break;
      if (v == Verdict::unsat) {
        hi = m;
      } else {
        best = std::move(cert);
        lo = m;
        result.lower_bound = m;
      }
    }
    while (hi > 0 && hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      Certificate cert = best;
      Verdict v = probe_exact(k, l, mid, symmetry, budget, manifest, io, &cert);
      if (v == Verdict::unknown) {
        hi = -1;
        break;
      }
      if (v == Verdict::unsat) {
        hi = mid;
      } else {
        best = std::move(cert);
        lo = mid;
        result.lower_bound = std::max(result.lower_bound, mid);
      }
    }
    if (hi > 0) result.value = hi;
  }

  result.witness = std::move(best);
  result.witness_path = write_witness(*result.witness, io.out_dir);
  if (result.value) {
    manifest.add("result.value", *result.value);
  } else {
    manifest.add("result.value", "unknown");
  }
  manifest.add("result.lower_bound", result.lower_bound);
  if (!result.witness_path.empty()) manifest.add("result.certificate", result.witness_path);
  result.manifest_path = manifest.write(io.out_dir);
  return result;
}

LowerBoundResult search_lower_bound(int k, int l, int start_m, const WalkConfig& config,
                                    const SearchIO& io) {
  Params(k, l, 1);
  if (start_m <= k) {
    throw std::invalid_argument("start_m must exceed k");
  }

  RunManifest manifest;
  manifest.add("kind", "lower-bound");
  manifest.add("k", k);
  manifest.add("l", l);
  manifest.add("start_m", start_m);
  manifest.add("engine", "walk");
  manifest.add("rng", "mt19937_64");
  manifest.add("seed", static_cast<std::int64_t>(config.seed));
  manifest.add("noise", std::to_string(config.noise));
  manifest.add("max_flips", config.max_flips);
  manifest.add("restarts", config.restarts);
  manifest.add("neighborhood",
               config.neighborhood == WalkConfig::Neighborhood::flip ? "flip" : "block-move");

  LowerBoundResult result;
  result.start_m = start_m;
  std::optional<Partition> previous;

  for (int m = start_m;; ++m) {
    Params p(k, l, m);
    WalkConfig cfg = config;
    if (previous) {
      Assignment warm(p.m * p.k);
      for (int b = 1; b <= p.k; ++b) {
        for (int e : previous->blocks[static_cast<std::size_t>(b) - 1]) {
          warm.set(var_of(e, b, p), true);
        }
      }
      cfg.warm_start = std::move(warm);  // element m is left to the engine
    }
    WalkResult r = solve_local(encode_ps(p, SymmetryMode::none), cfg);
    const std::string step = "step." + std::to_string(m);
    if (r.verdict != Verdict::sat) {
      manifest.add(step + ".verdict", "unknown");
      diag(io, "m=" + std::to_string(m) + " unknown after " +
                   std::to_string(r.restarts_tried) + " restarts");
      break;
    }
    manifest.add(step + ".verdict", "sat");
    manifest.add(step + ".seed", static_cast<std::int64_t>(r.winning_seed));
    manifest.add(step + ".flips", r.flips);
    diag(io, "m=" + std::to_string(m) + " sat seed=" + std::to_string(r.winning_seed) +
                 " flips=" + std::to_string(r.flips));

    Partition part = decode_model(*r.model, p);
    Certificate cert{p, part, "local search witness"};
    if (!verify(cert).valid) {
      throw std::logic_error("engine returned a model that fails verification");
    }
    result.best_m = m;
    result.witness = std::move(cert);
    previous = std::move(part);
  }

  if (result.witness) {
    result.witness_path = write_witness(*result.witness, io.out_dir);
    manifest.add("result.best_m", *result.best_m);
    if (!result.witness_path.empty()) {
      manifest.add("result.certificate", result.witness_path);
    }
  } else {
    manifest.add("result.best_m", "none");
  }
  result.manifest_path = manifest.write(io.out_dir);
  return result;
}

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TheoreticalBounds theoretical_bounds(int k, int l) {
  Params(k, l, 1);
  TheoreticalBounds out;
  out.erdos_rado_value =
      std::sqrt(2.0 * (l - 1) * std::pow(static_cast<double>(k), l - 1));
  out.erdos_rado = static_cast<std::int64_t>(std::floor(out.erdos_rado_value));
  if (k == 2 && l - 1 < 62 && is_prime(l - 1)) {
    out.berlekamp = static_cast<std::int64_t>(l - 1) << (l - 1);
  }
  return out;
}

}  // namespace vdw
