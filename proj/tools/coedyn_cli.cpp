// Command-line front end: reproducible experiments over the library's
// decision procedures.  JSON in, JSON out, human-readable summary on stdout.
// Reports are deterministic given identical configs; wall-clock timing lives
// in a separate "meta" block outside the payload.

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "coedyn/bilipschitz.hpp"
#include "coedyn/json_io.hpp"

using namespace coedyn;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  int level = 0;
  std::int64_t window = 0;
  std::string format = "text";
};

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Json j;
  in >> j;
  return j;
}

int emit(const CommonOpts& opts, const Json& payload, double elapsed_ms,
         const std::string& summary, bool ok) {
  Json envelope{{"payload", payload}, {"meta", Json{{"elapsed_ms", elapsed_ms}}}};
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    out << envelope.dump(2) << "\n";
  }
  if (opts.format == "json") {
    std::cout << envelope.dump(2) << "\n";
  } else {
    std::cout << summary;
  }
  return ok ? 0 : 1;
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cmd_coboundary(const CommonOpts& opts) {
  const Json config = load_config(opts.config_path);
  const DivisibilityChain chain = parse_chain(config.at("chain"));
  const LevelCocycle c = parse_cocycle(config.at("cocycle"));
  Stopwatch timer;

  const CoboundaryVerdict verdict = coboundary_decide_chain(c, chain);
  Json payload{{"verdict", verdict_to_json(verdict)}};
  bool ok = true;
  if (verdict.is_coboundary()) {
    const auto sol = coboundary_solve_at_level(c, chain, verdict.level);
    ok = sol.solvable;
    if (sol.solvable) {
      payload["transfer"] = transfer_to_json(sol.transfer);
      const OdometerModel model(chain, verdict.level);
      ok = cohomologous_verify(c, LevelCocycle::trivial(c.target, c.level, c.table.size()),
                               sol.transfer, model,
                               2 * static_cast<std::int64_t>(model.modulus()));
      payload["transfer_verified"] = ok;
    }
  }
  std::vector<int> levels;
  if (config.contains("levels")) levels = config.at("levels").get<std::vector<int>>();
  if (opts.level > 0) levels.push_back(opts.level);
  Json per_level = Json::array();
  for (int k : levels)
    per_level.push_back(Json{
        {"level", k},
        {"essential_values", essential_values_to_json(essential_values_closed_form(c, chain, k))}});
  payload["essential_values_at_levels"] = std::move(per_level);
  payload["essential_values_limit"] =
      essential_values_to_json(essential_values_limit(c, chain));

  std::string summary =
      verdict.is_coboundary()
          ? "CoboundaryAtLevel(" + std::to_string(verdict.level) + "), transfer verified\n"
          : "NeverCoboundary; limit essential values have size " +
                std::to_string(verdict.obstruction.values.size()) + "\n";
  return emit(opts, payload, timer.ms(), summary, ok);
}

int cmd_skew_demo(const CommonOpts& opts, bool run_search) {
  Json config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);

  const DivisibilityChain chain =
      config.contains("chain") ? parse_chain(config.at("chain")) : dyadic_chain();
  const int level = opts.level > 0 ? opts.level
                    : config.contains("level") ? config.at("level").get<int>()
                                               : 6;
  const auto F = config.contains("F")
                     ? parse_group(config.at("F"))
                     : std::make_shared<const FiniteGroupTable>(FiniteGroupTable::symmetric3());
  const OdometerModel base(chain, level);
  // Default cocycle: indicator of residue 1 sent to a prime-order element,
  // preferring a prime whose valuations stay bounded along the chain.
  LevelCocycle c = config.contains("c")
                       ? parse_cocycle(config.at("c"))
                       : LevelCocycle(F, 1, [&] {
                           int p = 0;
                           for (int q = 2; q <= F->order(); ++q) {
                             if (!is_prime(q) || F->order() % q != 0) continue;
                             if (p == 0) p = q;
                             if (!chain.sup_ord_infinite(q)) {
                               p = q;
                               break;
                             }
                           }
                           std::vector<int> t(chain.base(), F->identity());
                           if (p != 0 && t.size() > 1) t[1] = prime_order_element(*F, p);
                           return t;
                         }());
  LevelCocycle c_prime = config.contains("c_prime")
                             ? parse_cocycle(config.at("c_prime"))
                             : LevelCocycle::trivial(F, c.level, c.table.size());
  Stopwatch timer;

  const SkewSystem sys(base, F, c);
  const SkewSystem sys_prime(base, F, c_prime);

  const auto tf = transitive_and_free_check(sys);
  const auto tf_prime = transitive_and_free_check(sys_prime);
  const bool coe_ok =
      verify_coe(sys, sys_prime, opts.window > 0 ? opts.window : 0);
  // The certificate applies to whichever cocycle of the pair is nontrivial.
  const bool c_is_trivial = std::all_of(c.table.begin(), c.table.end(),
                                        [&](int v) { return v == F->identity(); });
  const auto cert = nonconjugacy_certificate(*F, c_is_trivial ? c_prime : c, chain);

  Json payload{{"transitive", tf.transitive && tf_prime.transitive},
               {"free", tf.free && tf_prime.free},
               {"coe_verified", coe_ok},
               {"certificate", certificate_to_json(cert)}};

  bool search_clear = true;
  if (run_search) {
    const auto found = exhaustive_conjugacy_search(sys, sys_prime);
    const auto found_back = exhaustive_conjugacy_search(sys_prime, sys);
    search_clear = !found.found && !found_back.found;
    payload["exhaustive_search"] =
        Json{{"candidates", found.candidates_checked + found_back.candidates_checked},
             {"conjugacy_found", !search_clear}};
  }

  const bool ok =
      tf.transitive && tf.free && tf_prime.transitive && tf_prime.free && coe_ok &&
      cert.issued() && search_clear;
  std::string summary;
  summary += std::string("transitive: ") + (tf.transitive && tf_prime.transitive ? "yes" : "no") + "\n";
  summary += std::string("free:       ") + (tf.free && tf_prime.free ? "yes" : "no") + "\n";
  summary += std::string("coe:        ") + (coe_ok ? "verified" : "FAILED") + "\n";
  summary += std::string("certificate: ") +
             (cert.issued() ? "issued (pair is coe but not conjugate)"
                            : payload["certificate"]["reason"].get<std::string>()) +
             "\n";
  if (run_search)
    summary += std::string("exhaustive search: ") +
               (search_clear ? "no conjugacy found" : "CONJUGACY FOUND") + "\n";
  return emit(opts, payload, timer.ms(), summary, ok);
}

int cmd_rigidity(const CommonOpts& opts) {
  const Json config = load_config(opts.config_path);
  const WitnessFile file = parse_witness(config);
  Stopwatch timer;

  const auto split = split_X_pm(file.witness, file.model,
                                opts.window > 0 ? opts.window : 0);
  std::uint64_t plus = 0;
  for (std::uint64_t x = 0; x < file.model.state_count(); ++x)
    if (split.plus(x)) ++plus;

  std::set<std::pair<std::int64_t, bool>> defect_values;
  for (std::uint64_t x = 0; x < file.model.state_count(); ++x)
    for (std::int64_t n = -4; n <= 4; ++n) {
      const auto a = defect_cocycle(file.witness, split, file.model, n, x);
      defect_values.insert({a.exponent, a.reflection});
    }
  Json defects = Json::array();
  for (const auto& [k, t] : defect_values) defects.push_back(Json::array({k, t ? 1 : 0}));

  const ConjugacyResult result = rigidity_extract(file.witness, file.model,
                                                  file.model_prime,
                                                  opts.window > 0 ? opts.window : 0);
  Json payload{{"partition", Json{{"plus", plus},
                                  {"minus", file.model.state_count() - plus}}},
               {"defect_values", std::move(defects)},
               {"result", conjugacy_result_to_json(result)}};
  std::string summary = "rigidity extraction: " +
                        std::string(result.verified ? "verified" : "FAILED") +
                        ", automorphism k = " + std::to_string(result.automorphism_k) +
                        "\n";
  return emit(opts, payload, timer.ms(), summary, result.verified);
}

int cmd_bilipschitz(const CommonOpts& opts) {
  const Json config = load_config(opts.config_path);
  const std::int64_t window = config.at("window").get<std::int64_t>();
  Stopwatch timer;
  Json payload;
  std::string summary;

  auto report_json = [](const BiLipschitzReport& r) {
    return Json{{"sign", r.sign}, {"constant", r.constant}, {"defect_bound", r.defect_bound}};
  };
  auto describe = [](const BiLipschitzReport& r) {
    return "f(x) = " + std::string(r.sign > 0 ? "+" : "-") + "x + " +
           std::to_string(r.constant) + " with defect <= " +
           std::to_string(r.defect_bound) + " on the window\n";
  };

  if (config.contains("values")) {
    const auto values = config.at("values").get<std::vector<std::int64_t>>();
    const auto report = bilipschitz_classify(values, window);
    payload["report"] = report_json(report);
    summary += describe(report);
  }
  if (config.contains("dihedral_values")) {
    // Samples of a self-map of the dihedral group along the pairing; the
    // classification happens on the conjugated integer map.
    std::vector<std::int64_t> conj;
    for (const auto& e : config.at("dihedral_values"))
      conj.push_back(pairing_pi_inv(parse_dihedral(e)));
    const auto report = bilipschitz_classify(conj, window);
    payload["pairing_conjugated_report"] = report_json(report);
    summary += "pairing-conjugated: " + describe(report);
  }
  if (payload.empty())
    throw std::runtime_error("bilipschitz config needs \"values\" or \"dihedral_values\"");
  return emit(opts, payload, timer.ms(), summary, true);
}

int cmd_freeness(const CommonOpts& opts) {
  std::optional<Json> config;
  if (!opts.config_path.empty()) config = load_config(opts.config_path);
  const DinftyModel model =
      config && config->contains("model")
          ? parse_model(config->at("model"))
          : build_case1_model(dyadic_chain(), opts.level > 0 ? opts.level : 3);
  Stopwatch timer;

  const FreenessReport report = topological_freeness_sweep(model);
  Json fixed = Json::array();
  for (const auto& [n, states] : report.fixed_states_per_reflection) {
    Json list = Json::array();
    for (std::uint64_t x : states) list.push_back(state_to_json(x));
    fixed.push_back(Json{{"reflection", n}, {"fixed_states", std::move(list)}});
  }
  Json stab = Json::array();
  for (std::uint64_t x = 0; x < model.state_count(); ++x) {
    const auto& st = report.stabilizers[x];
    stab.push_back(st.trivial ? Json{{"state", state_to_json(x)}, {"stabilizer", "trivial"}}
                              : Json{{"state", state_to_json(x)},
                                     {"stabilizer", "reflection"},
                                     {"n", st.reflection_exponent}});
  }
  Json payload{{"model", model_to_json(model)},
               {"free", report.free},
               {"fixed_states_per_reflection", std::move(fixed)},
               {"stabilizers", std::move(stab)}};
  std::string summary = std::string("action is ") + (report.free ? "free" : "not free") +
                        "; every nontrivial stabilizer is a single reflection class\n";
  return emit(opts, payload, timer.ms(), summary, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite models of odometer cocycles, skew products, and dihedral rigidity"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool run_search = false;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path, "JSON config path");
    if (config_required) c->required();
    sub->add_option("--out", opts.out_path, "write the JSON report here");
    sub->add_option("--level", opts.level, "model / truncation level");
    sub->add_option("--window", opts.window, "verification window override");
    sub->add_option("--format", opts.format, "stdout format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* coboundary = app.add_subcommand("coboundary", "decide the coboundary property");
  add_common(coboundary, true);
  auto* skew = app.add_subcommand("skew-demo", "orbit-equivalent but non-conjugate skew pair");
  add_common(skew, false);
  skew->add_flag("--search", run_search, "run the exhaustive small-model conjugacy search");
  auto* rigidity = app.add_subcommand("rigidity", "extract a conjugacy from a coe witness");
  add_common(rigidity, true);
  auto* bilip = app.add_subcommand("bilipschitz", "classify integer map samples");
  add_common(bilip, true);
  auto* freeness = app.add_subcommand("freeness-sweep", "per-state stabilizer classification");
  add_common(freeness, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (coboundary->parsed()) return cmd_coboundary(opts);
    if (skew->parsed()) return cmd_skew_demo(opts, run_search);
    if (rigidity->parsed()) return cmd_rigidity(opts);
    if (bilip->parsed()) return cmd_bilipschitz(opts);
    if (freeness->parsed()) return cmd_freeness(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
