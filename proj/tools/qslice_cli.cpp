#include "qslice/errors.hpp"
#include "qslice/harness.hpp"
#include "qslice/linalg.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

using namespace qslice;

namespace {

// Exit status: 0 success, 1 a checked property failed, 2 bad input or library error.
constexpr int kFailed = 1;
constexpr int kError = 2;

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stoi(tok, &used));
    if (used != tok.size()) throw Error(Errc::ParseError, "bad integer '" + tok + "'");
  }
  return out;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") std::cout << j.dump(2) << '\n';
  else write_json_file(out, j);
}

Json embed_report(const ADHMData& z, const TildeData& t) {
  const auto tr = check_transversal(t);
  Json r{{"admissible", check_admissible(z)},
         {"transversal", tr.ok()},
         {"block_rules", tr.block_rules},
         {"commutators", tr.commutators},
         {"tilde_adhm", tr.tilde_adhm}};
  if (!tr.ok()) {
    r["first_violation"] = tr.first_violation;
    return r;
  }
  const bool stable = check_stable_criterion(z);
  r["stable"] = stable;
  r["tilde_stable"] = tilde_stability(t);
  r["filtration"] = filtration_check(t);
  const ADHMData back = phi_inverse(t);
  r["roundtrip"] = back == z && phi(back) == t;
  const auto sp = inspect_slice_point(t);
  r["slice_nilpotent"] = sp.nilpotent;
  r["in_slice"] = sp.in_slice;
  if (sp.jordan) r["jordan_type"] = to_json(*sp.jordan);
  const auto a = a_of(z.dims);
  if (std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; })) {
    const Partition la = lambda_of(a);
    r["lambda_a"] = to_json(la);
    if (sp.jordan) r["dominated_by_lambda_a"] = dominated_by(*sp.jordan, la);
  }
  return r;
}

Json comb_json(const DimData& dd) {
  const auto a = a_of(dd);
  Json j{{"n", dd.n}, {"d", dd.d}, {"v", dd.v}, {"a", a}};
  const bool q = quiver_nonempty(dd);
  const bool s = slice_nonempty(dd.d, a);
  j["quiver_nonempty"] = q;
  j["slice_nonempty"] = s;
  if (std::all_of(a.begin(), a.end(), [](int x) { return x >= 0; })) j["lambda_a"] = to_json(lambda_of(a));
  j["v_prime"] = dominant_form(dd).v_prime;
  j["x_type"] = to_json(x_type(dd.d));
  if (q) j["quiver_dim"] = quiver_dim(dd);
  if (s) j["slice_dim"] = slice_dim(dd.d, a);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with type A quiver varieties and Slodowy slices"};
  app.require_subcommand(1);
  int status = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded admissible ADHM point");
  int g_n = 0;
  std::string g_d, g_v, g_mode = "general", g_out;
  std::uint64_t g_seed = 0;
  int g_budget = 2;
  gen->add_option("--n", g_n, "Number of framing steps; vertices are 1..n-1")->required();
  gen->add_option("--d", g_d, "Framing dimensions d_1,...,d_{n-1}")->required();
  gen->add_option("--v", g_v, "Vertex dimensions v_1,...,v_{n-1}")->required();
  gen->add_option("--seed", g_seed, "Seed");
  gen->add_option("--mode", g_mode, "lagrangian, general or flag")->check(CLI::IsMember({"lagrangian", "general", "flag"}));
  gen->add_option("--rank-budget", g_budget, "Rank cap for B in general mode");
  gen->add_option("--out", g_out, "Output file (default stdout)");
  gen->callback([&] {
    DimData dd{g_n, parse_ints(g_d), parse_ints(g_v)};
    dd.validate();
    emit(to_json(generate(dd, parse_mode(g_mode), g_seed, g_budget)), g_out);
  });

  // check
  auto* check = app.add_subcommand("check", "Admissibility, stability and signature hash of an ADHM point");
  std::string c_in;
  check->add_option("--in", c_in, "ADHM JSON file")->required();
  check->callback([&] {
    const ADHMData z = adhm_from_json(read_json_file(c_in));
    const bool adm = check_admissible(z);
    Json r{{"admissible", adm}, {"signature_hash", signature_hash(z)}};
    if (adm) {
      r["stable"] = check_stable_criterion(z);
      r["stable_definition"] = check_stable_definition(z);
    }
    std::cout << r.dump(2) << '\n';
    if (!adm) status = kFailed;
  });

  // embed
  auto* embed = app.add_subcommand("embed", "Compute the transversal tilde datum of an ADHM point");
  std::string e_in, e_out, e_report, e_solver = "chain";
  embed->add_option("--in", e_in, "ADHM JSON file")->required();
  embed->add_option("--out", e_out, "Tilde JSON output (default stdout)");
  embed->add_option("--report", e_report, "Write a JSON report of every invariant");
  embed->add_option("--solver", e_solver, "chain or generic")->check(CLI::IsMember({"chain", "generic"}));
  embed->callback([&] {
    const ADHMData z = adhm_from_json(read_json_file(e_in));
    const TildeData t = phi(z, e_solver == "chain" ? Solver::Chain : Solver::Generic);
    emit(to_json(t), e_out);
    if (!e_report.empty()) {
      const Json r = embed_report(z, t);
      write_json_file(e_report, r);
      for (const auto& [k, v] : r.items())
        if (v.is_boolean() && !v.get<bool>() && k != "stable" && k != "tilde_stable") status = kFailed;
    }
  });

  // invert
  auto* invert = app.add_subcommand("invert", "Read back the ADHM point of a transversal tilde datum");
  std::string i_in, i_out;
  invert->add_option("--in", i_in, "Tilde JSON file")->required();
  invert->add_option("--out", i_out, "ADHM JSON output (default stdout)");
  invert->callback([&] {
    const TildeData t = tilde_from_json(read_json_file(i_in));
    const auto tr = check_transversal(t);
    if (!tr.ok()) {
      std::cout << Json{{"transversal", false},
                        {"block_rules", tr.block_rules},
                        {"commutators", tr.commutators},
                        {"tilde_adhm", tr.tilde_adhm},
                        {"first_violation", tr.first_violation}}
                       .dump(2)
                << '\n';
      status = kFailed;
      return;
    }
    emit(to_json(phi_inverse(t)), i_out);
  });

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Leading coefficient tables of the embedding");
  int k_n = 0;
  std::string k_out;
  coeffs->add_option("--n", k_n, "n")->required()->check(CLI::Range(2, 64));
  coeffs->add_option("--out", k_out, "Output file (default stdout)");
  coeffs->callback([&] {
    const CoeffTable tab = coefficient_tables(k_n);
    const auto pos = check_positivity(tab);
    Json j = to_json(tab);
    j["positivity"] = Json{{"ok", pos.ok}, {"checked", pos.checked}};
    if (!pos.ok) j["positivity"]["first_violation"] = pos.first_violation;
    emit(j, k_out);
    if (!pos.ok) status = kFailed;
  });

  // comb
  auto* comb = app.add_subcommand("comb", "Weight combinatorics of a dimension vector");
  std::string m_in, m_d, m_v, m_a;
  int m_n = 0;
  comb->add_option("--in", m_in, "JSON {n, d, v} or {n, d, a}");
  comb->add_option("--n", m_n, "n");
  comb->add_option("--d", m_d, "d_1,...,d_{n-1}");
  comb->add_option("--v", m_v, "v_1,...,v_{n-1}");
  comb->add_option("--a", m_a, "a_1,...,a_n (instead of --v)");
  auto* scan = comb->add_subcommand("scan", "Exhaustive agreement of the quiver and slice sides");
  CombBounds sb;
  scan->add_option("--n-min", sb.n_min, "Smallest n");
  scan->add_option("--n-max", sb.n_max, "Largest n");
  scan->add_option("--d-max", sb.d_max, "Largest d_i");
  scan->add_option("--v-abs", sb.v_abs, "Largest |v_i|");
  scan->callback([&] {
    const CombReport r = exhaustive_comb_scan(sb);
    std::cout << r.to_json().dump(2) << '\n';
    if (!r.passed()) status = kFailed;
  });
  comb->callback([&] {
    if (scan->parsed()) return;
    Json in;
    if (!m_in.empty()) {
      in = read_json_file(m_in);
    } else {
      in = Json{{"n", m_n}, {"d", parse_ints(m_d)}};
      if (!m_a.empty()) in["a"] = parse_ints(m_a);
      else in["v"] = parse_ints(m_v);
    }
    if (in.contains("a") && !in.contains("v")) in["v"] = v_of(in.at("d").get<std::vector<int>>(), in.at("a").get<std::vector<int>>());
    std::cout << comb_json(dims_from_json(in)).dump(2) << '\n';
  });

  // flag
  auto* flag = app.add_subcommand("flag", "Flag case d = (N, 0, ..., 0)");
  flag->require_subcommand(1);
  auto* fgen = flag->add_subcommand("gen", "Seeded random flag pair (u, F)");
  std::string f_a, f_out, f_in;
  std::uint64_t f_seed = 0;
  fgen->add_option("--a", f_a, "Flag type a_1,...,a_n")->required();
  fgen->add_option("--seed", f_seed, "Seed");
  fgen->add_option("--out", f_out, "Output file (default stdout)");
  fgen->callback([&] { emit(to_json(gen_flag_pair(parse_ints(f_a), f_seed)), f_out); });
  auto* fround = flag->add_subcommand("roundtrip", "Flag pair to ADHM data and back");
  fround->add_option("--in", f_in, "Flag pair JSON")->required();
  fround->callback([&] {
    const FlagPair p = flag_pair_from_json(read_json_file(f_in));
    const ADHMData z = data_of_flag(p);
    const FlagPair q = flag_of_data(z);
    const bool flag_ok = q.u == p.u && q.flag.same_as(p.flag);
    const bool data_ok = act(flag_roundtrip_gauge(z), data_of_flag(q)) == z;
    std::cout << Json{{"flag_roundtrip", flag_ok},
                      {"data_roundtrip", data_ok},
                      {"admissible", check_admissible(z)},
                      {"stable", check_stable_criterion(z)},
                      {"data", to_json(z)}}
                     .dump(2)
              << '\n';
    if (!flag_ok || !data_ok) status = kFailed;
  });

  // paths
  auto* paths = app.add_subcommand("paths", "Admissible path evaluation");
  paths->require_subcommand(1);
  auto* peval = paths->add_subcommand("eval", "Evaluate an admissible path on an ADHM point");
  std::string p_in, p_path;
  peval->add_option("--in", p_in, "ADHM JSON file")->required();
  peval->add_option("--path", p_path, "Path text, e.g. \"2 a1 1^1\" (see docs/paths.md)")->required();
  peval->callback([&] {
    const ADHMData z = adhm_from_json(read_json_file(p_in));
    const AdmissiblePath p = parse_admissible(p_path);
    std::cout << Json{{"path", to_string(p)},
                      {"source", p.source()},
                      {"target", p.target()},
                      {"degree", p.degree()},
                      {"value", to_json(eval_admissible(p, z))}}
                     .dump(2)
              << '\n';
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string v_spec, v_out;
  bool v_timings = false;
  int v_threads = 0;
  verify->add_option("--spec", v_spec, "Suite JSON file")->required();
  verify->add_option("--out", v_out, "Report file (default stdout)");
  verify->add_option("--threads", v_threads, "Worker count, capped by QSLICE_THREADS");
  verify->add_flag("--timings", v_timings, "Include per-case timings in the report");
  verify->callback([&] {
    const Json spec = read_json_file(v_spec);
    const int threads = v_threads ? v_threads : spec.value("threads", 0);
    const Report r = run_suite(suite_from_json(spec), threads);
    emit(r.to_json(v_timings), v_out);
    if (!r.passed()) status = kFailed;
  });

  // replay
  auto* rep = app.add_subcommand("replay", "Re-run every invariant on one sample");
  std::string r_key;
  rep->add_option("--case", r_key, "Sample key, e.g. \"n=3|d=1,1|v=1,1|mode=general|seed=7\"")->required();
  rep->callback([&] {
    const CaseReport r = replay(r_key);
    std::cout << r.to_json(false).dump(2) << '\n';
    if (!r.passed()) status = kFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return status;
}
