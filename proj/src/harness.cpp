#include "qslice/harness.hpp"

#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace qslice {

namespace {

constexpr std::size_t kKeptFailures = 5;

const std::vector<std::string> kInvariants = {
    "admissible", "embedding", "generic_solver", "roundtrip", "stability", "stability_oracles",
    "equivariance", "slice", "filtration", "paths", "flag",
};

bool is_flag_case(const DimData& dd) {
  for (int i = 2; i <= dd.n - 1; ++i)
    if (dd.d_at(i) != 0) return false;
  return true;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
  return s;
}

// Records checks of one sample into a case report.
class Recorder {
 public:
  Recorder(CaseReport& report, std::string sample, const ADHMData* z) : report_(report), sample_(std::move(sample)), z_(z) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    Tally& t = report_.tallies[name];
    ++t.checked;
    if (ok) return;
    ++t.failed;
    if (report_.failures.size() < kKeptFailures)
      report_.failures.push_back({name, sample_, detail.empty() ? "check failed" : detail, z_ ? to_json(*z_) : Json()});
  }

  // Runs f, turning a thrown library error into a failed check.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  }

 private:
  CaseReport& report_;
  std::string sample_;
  const ADHMData* z_;
};

void check_paths(const CaseSpec& spec, const ADHMData& z, std::uint64_t seed, Recorder& rec) {
  const int n = z.n();
  bool theta_ok = true;
  std::string where;
  for (int i = 1; i <= n - 1 && theta_ok; ++i)
    for (const BPath& alpha : bpaths_from(n, i, spec.sandwich_degree)) {
      for (const BPath& alpha_prime : bpaths_to(n, i, spec.sandwich_degree - alpha.degree()))
        if (!theta_residual(i, alpha, alpha_prime, z).is_zero()) {
          theta_ok = false;
          where = "theta residual at vertex " + std::to_string(i);
          break;
        }
      if (!theta_ok) break;
    }
  rec.check("paths", theta_ok, where);

  const auto gens = generators_P(n);
  const auto sig = invariant_signature(z);
  bool gens_ok = gens.size() == sig.size();
  for (std::size_t k = 0; gens_ok && k < gens.size(); ++k) gens_ok = eval_admissible(gens[k], z) == sig[k];
  rec.check("paths", gens_ok, "generator evaluation differs from the quiver composite");

  Rng rng(seed, 0x400);
  for (int pair = 0; pair < spec.path_pairs; ++pair) {
    const AdmissiblePath p = random_admissible_path(rng, n, 2);
    AdmissiblePath q = random_admissible_path(rng, n, 2);
    while (q.target() != p.source()) q = random_admissible_path(rng, n, 2);
    AdmissiblePolynomial f = AdmissiblePolynomial::of(p, Rational(rng.uniform(1, 3)));
    auto bumped = p.terms();
    bumped.front().power += 1;
    f.add(AdmissiblePath(bumped, p.segments()), Rational(rng.uniform(-3, -1)));
    const AdmissiblePolynomial g = AdmissiblePolynomial::of(q, Rational(rng.uniform(-2, 2)));
    rec.check("paths", eval_polynomial(multiply(f, g), z) == eval_polynomial(f, z) * eval_polynomial(g, z),
              "evaluation is not multiplicative on " + to_string(p) + " and " + to_string(q));
  }
}

void check_flag(const ADHMData& z, const TildeData& t, Recorder& rec) {
  const FlagPair p = flag_of_data(z);
  const ADHMData back = data_of_flag(p);
  rec.check("flag", act(flag_roundtrip_gauge(z), back) == z, "data_of_flag(flag_of_data(z)) is not gauge equivalent to z");
  const FlagPair again = flag_of_data(back);
  rec.check("flag", again.u == p.u && again.flag.same_as(p.flag), "flag_of_data(data_of_flag(p)) differs from p");
  rec.check("flag", slice_point(t) == p.u, "slice point differs from delta_1 gamma_1");
}

void run_sample(const CaseSpec& spec, std::size_t index, std::uint64_t seed, CaseReport& report) {
  ADHMData z;
  try {
    z = generate(spec.dims, spec.mode, seed, spec.rank_budget);
  } catch (const Error& e) {
    if (e.code() != Errc::Unsatisfiable && e.code() != Errc::InvalidArgument) throw;
    ++report.skipped;
    if (report.skip_reason.empty()) report.skip_reason = e.what();
    return;
  }
  ++report.samples;
  Recorder rec(report, spec.sample_key(seed), &z);
  if (spec.selected("admissible")) rec.check("admissible", check_admissible(z));
  if (!check_admissible(z)) return;

  TildeData t;
  try {
    t = phi(z);
  } catch (const std::exception& e) {
    rec.check("embedding", false, e.what());
    return;
  }
  const bool stable = check_stable_criterion(z);
  ++(stable ? report.stable : report.unstable);

  if (spec.selected("embedding")) {
    const auto tr = check_transversal(t);
    rec.check("embedding", tr.ok(), tr.first_violation);
  }
  if (spec.selected("generic_solver"))
    rec.guarded("generic_solver", [&] { rec.check("generic_solver", phi(z, Solver::Generic) == t, "solvers disagree"); });
  if (spec.selected("roundtrip"))
    rec.guarded("roundtrip", [&] {
      const ADHMData back = phi_inverse(t);
      rec.check("roundtrip", back == z, "phi_inverse(phi(z)) != z");
      rec.check("roundtrip", phi(back) == t, "phi(phi_inverse(t)) != t");
    });
  if (spec.selected("stability"))
    rec.guarded("stability", [&] { rec.check("stability", tilde_stability(t) == stable, "stability does not transfer"); });
  if (spec.selected("stability_oracles"))
    rec.check("stability_oracles", check_stable_definition(z) == stable, "stability criterion and definition disagree");
  if (spec.selected("equivariance") && (spec.equivariance_seeds < 0 || index < static_cast<std::size_t>(spec.equivariance_seeds)))
    rec.guarded("equivariance", [&] {
      for (int k = 0; k < spec.equivariance_draws; ++k) {
        Rng rng(seed, 0x300 + static_cast<std::uint64_t>(k));
        const GLVElement g = GLVElement::random(rng, z.dims);
        rec.check("equivariance", phi(act(g, z)) == act_tilde(embed_group(g, t.layout), t),
                  "phi(g.z) != g.phi(z) for draw " + std::to_string(k));
      }
    });
  if (spec.selected("slice"))
    rec.guarded("slice", [&] {
      const auto sp = inspect_slice_point(t);
      rec.check("slice", sp.nilpotent, "slice point is not nilpotent");
      rec.check("slice", sp.in_slice, "[u - x, y] != 0");
      if (stable && sp.jordan)
        rec.check("slice", dominated_by(*sp.jordan, lambda_of(a_of(z.dims))),
                  "jordan type " + sp.jordan->to_string() + " is not dominated by lambda_a");
    });
  if (spec.selected("filtration")) rec.guarded("filtration", [&] { rec.check("filtration", filtration_check(t)); });
  if (spec.selected("paths")) rec.guarded("paths", [&] { check_paths(spec, z, seed, rec); });
  if (spec.selected("flag") && stable && is_flag_case(z.dims)) rec.guarded("flag", [&] { check_flag(z, t, rec); });
}

// Phi(0) lands on x, whose Jordan type is 1^{d_1} ... (n-1)^{d_{n-1}}.
void check_zero_point(const CaseSpec& spec, CaseReport& report) {
  if (!spec.selected("slice")) return;
  Recorder rec(report, spec.key() + "|zero", nullptr);
  rec.guarded("slice", [&] {
    const TildeData t = phi(ADHMData::zero(spec.dims));
    const Matrix x = sl2_of_level(t.layout, 0).x;
    rec.check("slice", slice_point(t) == x, "phi(0) does not land on x");
    rec.check("slice", jordan_type(x) == x_type(spec.dims.d), "jordan type of x is not 1^d_1 ... (n-1)^d_(n-1)");
  });
}

std::vector<std::uint64_t> seeds_from_json(const Json& j) {
  if (j.is_number_integer()) {
    std::vector<std::uint64_t> s(j.get<std::size_t>());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = k;
    return s;
  }
  if (j.is_array()) return j.get<std::vector<std::uint64_t>>();
  throw Error(Errc::ParseError, "'seeds' must be a count or a list");
}

void apply_options(const Json& j, CaseSpec& spec) {
  if (j.contains("mode")) spec.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("seeds")) spec.seeds = seeds_from_json(j.at("seeds"));
  if (j.contains("invariants")) {
    spec.invariants.clear();
    for (const auto& name : j.at("invariants").get<std::vector<std::string>>()) {
      if (std::find(kInvariants.begin(), kInvariants.end(), name) == kInvariants.end())
        throw Error(Errc::ParseError, "unknown invariant '" + name + "'");
      spec.invariants.insert(name);
    }
  }
  if (j.contains("equivariance_draws")) spec.equivariance_draws = j.at("equivariance_draws").get<int>();
  if (j.contains("equivariance_seeds")) spec.equivariance_seeds = j.at("equivariance_seeds").get<int>();
  if (j.contains("sandwich_degree")) spec.sandwich_degree = j.at("sandwich_degree").get<int>();
  if (j.contains("path_pairs")) spec.path_pairs = j.at("path_pairs").get<int>();
  if (j.contains("rank_budget")) spec.rank_budget = j.at("rank_budget").get<int>();
}

Json tallies_json(const std::map<std::string, Tally>& tallies) {
  Json j = Json::object();
  for (const auto& [name, t] : tallies) j[name] = Json{{"checked", t.checked}, {"failed", t.failed}};
  return j;
}

}  // namespace

std::string mode_name(GenMode m) {
  switch (m) {
    case GenMode::Lagrangian: return "lagrangian";
    case GenMode::General: return "general";
    case GenMode::Flag: return "flag";
  }
  return "general";
}

GenMode parse_mode(std::string_view s) {
  if (s == "lagrangian") return GenMode::Lagrangian;
  if (s == "general") return GenMode::General;
  if (s == "flag") return GenMode::Flag;
  throw Error(Errc::ParseError, "unknown mode '" + std::string(s) + "'");
}

const std::vector<std::string>& invariant_names() { return kInvariants; }

std::string CaseSpec::key() const { return dims.key() + "|mode=" + mode_name(mode); }

std::string CaseSpec::sample_key(std::uint64_t seed) const { return key() + "|seed=" + std::to_string(seed); }

ADHMData generate(const DimData& dims, GenMode mode, std::uint64_t seed, int rank_budget) {
  switch (mode) {
    case GenMode::Lagrangian: return gen_lagrangian(dims, seed);
    case GenMode::General: {
      GeneralOptions opts;
      opts.rank_budget = rank_budget;
      return gen_general(dims, seed, opts);
    }
    case GenMode::Flag: {
      if (!is_flag_case(dims)) throw Error(Errc::Unsatisfiable, "flag mode needs d = (N, 0, ..., 0)");
      const auto a = a_of(dims);
      if (std::any_of(a.begin(), a.end(), [](int x) { return x < 0; }))
        throw Error(Errc::Unsatisfiable, "flag type a has a negative entry");
      return data_of_flag(gen_flag_pair(a, seed));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown mode");
}

bool CaseReport::passed() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const auto& kv) { return kv.second.failed == 0; });
}

Json CaseReport::to_json(bool timings) const {
  Json j{{"key", key},
         {"dims", qslice::to_json(spec.dims)},
         {"mode", mode_name(spec.mode)},
         {"passed", passed()},
         {"samples", samples},
         {"skipped", skipped},
         {"stable", stable},
         {"unstable", unstable},
         {"invariants", tallies_json(tallies)}};
  if (!skip_reason.empty()) j["skip_reason"] = skip_reason;
  Json fails = Json::array();
  for (const auto& f : failures)
    fails.push_back(Json{{"invariant", f.invariant}, {"sample", f.sample}, {"detail", f.detail}, {"data", f.data}});
  j["failures"] = std::move(fails);
  if (timings) j["millis"] = millis;
  return j;
}

bool Report::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.passed(); });
}

std::map<std::string, Tally> Report::totals() const {
  std::map<std::string, Tally> out;
  for (const auto& c : cases)
    for (const auto& [name, t] : c.tallies) {
      out[name].checked += t.checked;
      out[name].failed += t.failed;
    }
  return out;
}

Json Report::to_json(bool timings) const {
  std::size_t samples = 0, skipped = 0, stable = 0, unstable = 0;
  Json list = Json::array();
  for (const auto& c : cases) {
    samples += c.samples;
    skipped += c.skipped;
    stable += c.stable;
    unstable += c.unstable;
    list.push_back(c.to_json(timings));
  }
  Json digests = Json::object();
  for (const auto& [n, h] : coefficient_digests) digests[std::to_string(n)] = h;
  return Json{{"passed", passed()},
              {"summary",
               {{"cases", cases.size()},
                {"samples", samples},
                {"skipped", skipped},
                {"stable", stable},
                {"unstable", unstable}}},
              {"invariants", tallies_json(totals())},
              {"coefficient_digests", std::move(digests)},
              {"cases", std::move(list)}};
}

std::vector<CaseSpec> default_matrix(const CaseSpec& prototype, const std::vector<GenMode>& modes,
                                     const MatrixBounds& bounds) {
  std::vector<CaseSpec> out;
  for (int n = bounds.n_min; n <= bounds.n_max; ++n) {
    const int m = n - 1;
    DimData dd{n, std::vector<int>(static_cast<std::size_t>(m), 0), std::vector<int>(static_cast<std::size_t>(m), 0)};
    // Odometer over (d_1, v_1, ..., d_m, v_m).
    while (true) {
      if (dd.framing_total() <= bounds.n_cap && quiver_nonempty(dd))
        for (GenMode mode : modes) {
          CaseSpec c = prototype;
          c.dims = dd;
          c.mode = mode;
          out.push_back(std::move(c));
        }
      int k = 0;
      for (; k < 2 * m; ++k) {
        int& slot = (k % 2 == 0) ? dd.d[static_cast<std::size_t>(k / 2)] : dd.v[static_cast<std::size_t>(k / 2)];
        const int cap = (k % 2 == 0) ? bounds.d_max : bounds.v_max;
        if (slot < cap) {
          ++slot;
          break;
        }
        slot = 0;
      }
      if (k == 2 * m) break;
    }
  }
  return out;
}

std::vector<CaseSpec> suite_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "suite must be a JSON object");
  try {
    CaseSpec proto;
    proto.seeds = seeds_from_json(50);
    if (j.contains("defaults")) apply_options(j.at("defaults"), proto);
    std::vector<CaseSpec> out;
    if (j.contains("default_matrix")) {
      const Json& dm = j.at("default_matrix");
      MatrixBounds b;
      std::vector<GenMode> modes{GenMode::Lagrangian, GenMode::General};
      bool enabled = true;
      if (dm.is_boolean()) {
        enabled = dm.get<bool>();
      } else if (dm.is_object()) {
        b.n_min = dm.value("n_min", b.n_min);
        b.n_max = dm.value("n_max", b.n_max);
        b.d_max = dm.value("d_max", b.d_max);
        b.v_max = dm.value("v_max", b.v_max);
        b.n_cap = dm.value("n_cap", b.n_cap);
        if (dm.contains("modes")) {
          modes.clear();
          for (const auto& s : dm.at("modes").get<std::vector<std::string>>()) modes.push_back(parse_mode(s));
        }
      }
      if (enabled) out = default_matrix(proto, modes, b);
    }
    if (j.contains("cases"))
      for (const Json& c : j.at("cases")) {
        CaseSpec spec = proto;
        spec.dims = dims_from_json(c);
        apply_options(c, spec);
        out.push_back(std::move(spec));
      }
    return out;
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

CaseReport run_case(const CaseSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  CaseReport report;
  report.key = spec.key();
  report.spec = spec;
  try {
    spec.dims.validate();
    check_zero_point(spec, report);
    for (std::size_t k = 0; k < spec.seeds.size(); ++k) run_sample(spec, k, spec.seeds[k], report);
  } catch (const std::exception& e) {
    Recorder(report, spec.key(), nullptr).check("admissible", false, e.what());
  }
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int thread_count(int requested) {
  int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("QSLICE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) cap = v;
  }
  return requested > 0 ? std::min(requested, cap) : cap;
}

Report run_suite(const std::vector<CaseSpec>& cases, int threads) {
  Report report;
  report.cases.resize(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cases.size();) report.cases[k] = run_case(cases[k]);
  };
  const int pool = std::min<int>(thread_count(threads), static_cast<int>(std::max<std::size_t>(cases.size(), 1)));
  std::vector<std::thread> workers;
  for (int w = 1; w < pool; ++w) workers.emplace_back(worker);
  worker();
  for (auto& w : workers) w.join();
  std::stable_sort(report.cases.begin(), report.cases.end(),
                   [](const CaseReport& a, const CaseReport& b) { return a.key < b.key; });
  std::set<int> ns;
  for (const auto& c : cases) ns.insert(c.dims.n);
  for (int n : ns) report.coefficient_digests[n] = fnv1a_hex(to_json(coefficient_tables(n)).dump());
  return report;
}

Report run_suite_file(const std::string& path) {
  const Json j = read_json_file(path);
  const int threads = j.is_object() ? j.value("threads", 0) : 0;
  return run_suite(suite_from_json(j), threads);
}

CaseSpec case_from_key(std::string_view key) {
  auto bad = [&](const std::string& why) { return Error(Errc::ParseError, why + " in case key '" + std::string(key) + "'"); };
  std::map<std::string, std::string> fields;
  std::stringstream in{std::string(key)};
  for (std::string part; std::getline(in, part, '|');) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw bad("field without '='");
    fields[part.substr(0, eq)] = part.substr(eq + 1);
  }
  for (const char* f : {"n", "d", "v", "mode", "seed"})
    if (!fields.count(f)) throw bad(std::string("missing field '") + f + "'");
  auto ints = [&](const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw bad("bad integer '" + tok + "'");
      } catch (const std::logic_error&) {
        throw bad("bad integer '" + tok + "'");
      }
    }
    return out;
  };
  CaseSpec spec;
  const auto n = ints(fields["n"]);
  if (n.size() != 1) throw bad("bad n");
  spec.dims.n = n[0];
  spec.dims.d = ints(fields["d"]);
  spec.dims.v = ints(fields["v"]);
  spec.dims.validate();
  spec.mode = parse_mode(fields["mode"]);
  try {
    spec.seeds = {std::stoull(fields["seed"])};
  } catch (const std::logic_error&) {
    throw bad("bad seed");
  }
  return spec;
}

CaseReport replay(std::string_view key) { return run_case(case_from_key(key)); }

Json CombReport::to_json() const {
  return Json{{"passed", passed()},
              {"cases", cases},
              {"nonempty", nonempty},
              {"disagreements", disagreements},
              {"examples", examples}};
}

CombReport exhaustive_comb_scan(const CombBounds& bounds, const CombPredicates& preds) {
  CombReport rep;
  auto note = [&](const DimData& dd, const std::string& why) {
    ++rep.disagreements;
    if (rep.examples.size() < kKeptFailures) rep.examples.push_back(dd.key() + ": " + why);
  };
  for (int n = bounds.n_min; n <= bounds.n_max; ++n) {
    const auto m = static_cast<std::size_t>(n - 1);
    DimData dd{n, std::vector<int>(m, 0), std::vector<int>(m, -bounds.v_abs)};
    while (true) {
      ++rep.cases;
      const auto a = a_of(dd);
      const bool q = preds.quiver(dd);
      const bool s = preds.slice(dd.d, a);
      if (q != s) {
        note(dd, "quiver_nonempty=" + std::to_string(q) + " slice_nonempty=" + std::to_string(s));
      } else if (q) {
        ++rep.nonempty;
        const long qd = quiver_dim(dd);
        const long sd = slice_dim(dd.d, a);
        if (qd != sd) note(dd, "quiver_dim=" + std::to_string(qd) + " slice_dim=" + std::to_string(sd) + " a=" + join(a));
      }
      std::size_t k = 0;
      for (; k < 2 * m; ++k) {
        int& slot = (k % 2 == 0) ? dd.d[k / 2] : dd.v[k / 2];
        const int lo = (k % 2 == 0) ? 0 : -bounds.v_abs;
        const int hi = (k % 2 == 0) ? bounds.d_max : bounds.v_abs;
        if (slot < hi) {
          ++slot;
          break;
        }
        slot = lo;
      }
      if (k == 2 * m) break;
    }
  }
  return rep;
}

AdmissiblePath random_admissible_path(Rng& rng, int n, int max_segments, int max_power) {
  int cur = static_cast<int>(rng.uniform(1, n - 1));
  std::vector<VertexTerm> terms{{cur, static_cast<int>(rng.uniform(0, max_power))}};
  std::vector<BPath> segments;
  const int count = static_cast<int>(rng.uniform(0, max_segments));
  for (int s = 0; s < count; ++s) {
    BPath p(cur);
    const int len = static_cast<int>(rng.uniform(1, 2));
    for (int step = 0; step < len; ++step) {
      const int t = p.target();
      const bool up = t + 1 <= n - 1 && (t - 1 < 1 || rng.coin());
      if (!up && t - 1 < 1) break;
      p = BPath({up ? Arrow{true, t} : Arrow{false, t - 1}}).after(p);
    }
    cur = p.target();
    segments.push_back(p);
    terms.push_back({cur, static_cast<int>(rng.uniform(0, max_power))});
  }
  // Built source-first; the path stores the target term first.
  std::reverse(terms.begin(), terms.end());
  std::reverse(segments.begin(), segments.end());
  return AdmissiblePath(std::move(terms), std::move(segments));
}

}  // namespace qslice
