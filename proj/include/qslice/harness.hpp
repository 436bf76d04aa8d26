#pragma once

#include "qslice/json_io.hpp"
#include "qslice/paths.hpp"

#include <functional>
#include <set>

namespace qslice {

enum class GenMode { Lagrangian, General, Flag };
std::string mode_name(GenMode m);
GenMode parse_mode(std::string_view s);

/// Invariant names in report order.
const std::vector<std::string>& invariant_names();

struct CaseSpec {
  DimData dims;
  GenMode mode = GenMode::General;
  std::vector<std::uint64_t> seeds;
  std::set<std::string> invariants;  // empty selects all
  int equivariance_draws = 20;
  int equivariance_seeds = -1;  // samples that get the equivariance check; -1 means all
  int sandwich_degree = 3;
  int path_pairs = 2;  // random multiplicativity pairs per sample
  int rank_budget = 2;

  bool selected(const std::string& name) const { return invariants.empty() || invariants.count(name) > 0; }
  std::string key() const;
  std::string sample_key(std::uint64_t seed) const;
};

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct Failure {
  std::string invariant;
  std::string sample;  // replayable key
  std::string detail;
  Json data;  // the offending ADHM point, when one exists
};

struct CaseReport {
  std::string key;
  CaseSpec spec;
  std::map<std::string, Tally> tallies;
  std::vector<Failure> failures;  // first few only, tallies count all
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::string skip_reason;
  std::size_t stable = 0;
  std::size_t unstable = 0;
  double millis = 0;

  bool passed() const;
  Json to_json(bool timings) const;
};

struct Report {
  std::vector<CaseReport> cases;  // sorted by key
  std::map<int, std::string> coefficient_digests;

  bool passed() const;
  std::map<std::string, Tally> totals() const;
  /// Byte-identical across runs with timings off.
  Json to_json(bool timings = false) const;
};

/// n in [n_min, n_max], d_i in {0..d_max}, v_i in {0..v_max}, N = sum i d_i <= n_cap,
/// nonempty cases only, one CaseSpec per mode.
struct MatrixBounds {
  int n_min = 2, n_max = 5, d_max = 2, v_max = 3, n_cap = 14;
};
std::vector<CaseSpec> default_matrix(const CaseSpec& prototype, const std::vector<GenMode>& modes,
                                     const MatrixBounds& bounds = {});

/// {"cases": [...], "default_matrix": bool | bounds, "defaults": {...}}; throws ParseError.
std::vector<CaseSpec> suite_from_json(const Json& j);

/// Case jobs run on a pool of QSLICE_THREADS workers (or hardware concurrency).
Report run_suite(const std::vector<CaseSpec>& cases, int threads = 0);
Report run_suite_file(const std::string& path);
CaseReport run_case(const CaseSpec& spec);

/// "n=3|d=1,1|v=1,1|mode=general|seed=7" back to a single-seed case; throws ParseError.
CaseSpec case_from_key(std::string_view key);
CaseReport replay(std::string_view key);

/// The data point behind (dims, mode, seed); throws Unsatisfiable when the generator cannot produce one.
ADHMData generate(const DimData& dims, GenMode mode, std::uint64_t seed, int rank_budget = 2);

int thread_count(int requested = 0);

struct CombBounds {
  int n_min = 2, n_max = 4, d_max = 3, v_abs = 4;
};
struct CombPredicates {
  std::function<bool(const DimData&)> quiver = quiver_nonempty;
  std::function<bool(const std::vector<int>&, const std::vector<int>&)> slice = slice_nonempty;
};
struct CombReport {
  std::size_t cases = 0;
  std::size_t nonempty = 0;
  std::size_t disagreements = 0;
  std::vector<std::string> examples;  // first few disagreeing keys

  bool passed() const { return disagreements == 0; }
  Json to_json() const;
};
/// Every (d, v) in bounds: emptiness criteria agree, and dimensions agree when nonempty.
CombReport exhaustive_comb_scan(const CombBounds& bounds, const CombPredicates& preds = {});

/// Random admissible path with up to max_segments B-path segments of degree <= 2.
AdmissiblePath random_admissible_path(Rng& rng, int n, int max_segments, int max_power = 1);

}  // namespace qslice
