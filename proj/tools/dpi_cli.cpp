// dpi: command-line front end for the pipelines and audits.
//
// Every trial command prints one JSON document {"schema": "dpi-run-v1", ...}
// holding one PipelineReport per trial, in seed order. Exit codes: 0 all
// trials pass, 1 a check failed, 2 usage error, 3 resample exhaustion.

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "dpi/interpbook.hpp"
#include "dpi/pipelines.hpp"

using namespace dpi;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExhausted = 3;

struct RunConfig {
  std::string command;
  FieldSpec field;
  uint64_t seed = 1;
  int trials = 3;
  int jobs = 1;
  std::string in, out;
  bool oracle = false;
  int verbosity = 0;
  int ambient = 3;
  std::vector<int> ci;  // k d n
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TrialFn = std::function<PipelineReport(uint64_t seed, const Field& f)>;

PointConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return PointConfig::from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw UsageError("cannot write " + cfg.out);
  out << text;
}

void log_report(const RunConfig& cfg, const json& r) {
  if (cfg.verbosity == 0) return;
  std::cerr << r.value("construction", std::string("?")) << " seed " << r.value("seed", uint64_t{0}) << ": "
            << (r.value("pass", false) ? "pass" : "FAIL") << '\n';
  if (cfg.verbosity > 1 && r.contains("stages"))
    for (const auto& s : r["stages"])
      std::cerr << "  " << (s["pass"].get<bool>() ? "ok   " : "FAIL ") << s["name"].get<std::string>() << ' '
                << s["detail"].dump() << '\n';
}

// Runs trial i with seed cfg.seed + i on up to cfg.jobs threads.
int run_trials(const RunConfig& cfg, const Field& f, const TrialFn& fn) {
  const size_t n = static_cast<size_t>(cfg.trials);
  std::vector<json> reports(n);
  std::vector<int> codes(n, kExitPass);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      const uint64_t seed = cfg.seed + i;
      try {
        const PipelineReport r = fn(seed, f);
        reports[i] = r.to_json();
        codes[i] = r.pass() ? kExitPass : kExitFail;
      } catch (const ResampleExhausted& e) {
        reports[i] = {{"seed", seed}, {"pass", false}, {"error", "resample_exhausted"}, {"message", e.what()}};
        codes[i] = kExitExhausted;
      } catch (const std::invalid_argument& e) {
        reports[i] = {{"seed", seed}, {"pass", false}, {"error", "invalid_argument"}, {"message", e.what()}};
        codes[i] = kExitUsage;
      } catch (const std::exception& e) {
        reports[i] = {{"seed", seed}, {"pass", false}, {"error", "exception"}, {"message", e.what()}};
        codes[i] = kExitFail;
      }
    }
  };
  const int jobs = std::max(1, std::min(cfg.jobs, cfg.trials));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // usage beats exhaustion beats failure
  auto rank = [](int c) { return c == kExitUsage ? 3 : c == kExitExhausted ? 2 : c == kExitFail ? 1 : 0; };
  int code = kExitPass;
  for (int c : codes)
    if (rank(c) > rank(code)) code = c;
  for (const auto& r : reports) log_report(cfg, r);
  const json doc = {{"schema", "dpi-run-v1"}, {"command", cfg.command}, {"field", f.to_json()},
                    {"seed", cfg.seed},      {"trials", cfg.trials},   {"reports", reports},
                    {"pass", code == kExitPass}};
  emit(cfg, doc.dump(2) + "\n");
  return code;
}

int single(const RunConfig& cfg, const PipelineReport& r) {
  const json j = r.to_json();
  log_report(cfg, j);
  emit(cfg, j.dump(2) + "\n");
  return r.pass() ? kExitPass : kExitFail;
}

int cmd_table1(const RunConfig& cfg) {
  const auto rows = table1();
  emit(cfg, table1_text(rows) + "\n" + json{{"schema", "dpi-table1-v1"}, {"rows", table1_json(rows)}}.dump(2) + "\n");
  return kExitPass;
}

int cmd_associate(const RunConfig& cfg) {
  if (cfg.in.empty()) throw UsageError("associate needs --in");
  const PointConfig c = read_config(cfg.in);
  PointConfig b(c.field(), 0);
  try {
    b = associate(c);
  } catch (const BadLength& e) {
    throw UsageError(e.what());
  } catch (const DegenerateConfiguration& e) {
    std::cerr << "associate: " << e.what() << '\n';
    return kExitFail;
  }
  if (!verify_association(c, b)) {
    std::cerr << "associate: no witness for the computed configuration\n";
    return kExitFail;
  }
  emit(cfg, b.to_json().dump(2) + "\n");
  return kExitPass;
}

int cmd_rnc(const RunConfig& cfg, const Field& f) {
  auto report = [](const PointConfig& c, uint64_t seed, const Field& field) {
    const RncResult r = rnc_through(c);
    PipelineReport rep("rnc", seed, field);
    rep.absorb(r.report, "");
    json params = json::array();
    for (const auto& p : r.params) params.push_back(p.to_json());
    rep.note("params", params);
    rep.note("input", c.to_json());
    return rep;
  };
  if (!cfg.in.empty()) {
    const PointConfig c = read_config(cfg.in);
    try {
      return single(cfg, report(c, cfg.seed, c.field()));
    } catch (const DegenerateConfiguration& e) {
      std::cerr << "rnc: " << e.what() << '\n';
      return kExitFail;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.ambient < 1) throw UsageError("--ambient must be positive");
  return run_trials(cfg, f, [&](uint64_t seed, const Field& field) {
    Rng rng(sub_seed(seed, 0));
    return report(random_config(cfg.ambient, static_cast<size_t>(cfg.ambient + 3), field, rng), seed, field);
  });
}

int cmd_ci(const RunConfig& cfg, const Field& f) {
  std::vector<std::array<int, 3>> cases{{1, 2, 3}, {1, 3, 3}, {2, 2, 4}};
  if (!cfg.ci.empty()) {
    if (cfg.ci.size() != 3) throw UsageError("--ci takes k d n");
    cases = {{cfg.ci[0], cfg.ci[1], cfg.ci[2]}};
    const int forms = static_cast<int>(binomial(cfg.ci[1] + cfg.ci[2], cfg.ci[2]));
    if (cfg.ci[0] < 1 || cfg.ci[0] >= forms || cfg.ci[1] < 1 || cfg.ci[2] < 1)
      throw UsageError("--ci needs 1 <= k < C(d+n, n)");
  }
  return run_trials(cfg, f, [&](uint64_t seed, const Field& field) {
    PipelineReport rep("ci_interpolation", seed, field);
    for (const auto& [k, d, n] : cases)
      rep.absorb(ci_interpolation(k, d, n, seed, field),
                 std::to_string(k) + "," + std::to_string(d) + "," + std::to_string(n) + ":");
    return rep;
  });
}

int cmd_triad(const RunConfig& cfg, const Field& f) {
  auto certify = [](const PointConfig* given, uint64_t seed, const Field& field) {
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
      Rng rng(sub_seed(seed, static_cast<uint64_t>(attempt)));
      PipelineReport rep("triad", seed, field);
      rep.set_attempts(attempt + 1);
      try {
        const PointConfig c = given ? *given : random_config(2, 13, field, rng);
        const SingularTriad st = singular_triad_for(c, rng, rep);
        rep.note("triad", st.triad.to_json());
        rep.note("residual", st.residual.to_json());
        return rep;
      } catch (const GeneralityFailure&) {
      } catch (const DegenerateBaseLocus&) {
      } catch (const CollinearTriad&) {
      } catch (const IndeterminatePoint&) {
      } catch (const DegenerateConfiguration&) {
      }
    }
    throw ResampleExhausted("triad: no usable sample");
  };
  auto with_oracle = [&](PipelineReport rep, uint64_t seed) {
    if (cfg.oracle) rep.absorb(oracle_pencil_trial(seed), "oracle:");
    return rep;
  };
  if (!cfg.in.empty()) {
    const PointConfig c = read_config(cfg.in);
    if (c.ambient() != 2 || c.size() != 13) throw UsageError("triad --in needs 13 points of P^2");
    try {
      return single(cfg, with_oracle(certify(&c, cfg.seed, c.field()), cfg.seed));
    } catch (const ResampleExhausted& e) {
      std::cerr << e.what() << '\n';
      return kExitExhausted;
    }
  }
  return run_trials(cfg, f, [&](uint64_t seed, const Field& field) {
    return with_oracle(certify(nullptr, seed, field), seed);
  });
}

int cmd_association(const RunConfig& cfg, const Field& f, int aux) {
  if (!cfg.in.empty()) {
    const PointConfig c = read_config(cfg.in);
    if (c.ambient() != 9 - aux || static_cast<int>(c.size()) != 13 - aux)
      throw UsageError(cfg.command + " --in needs " + std::to_string(13 - aux) + " points of P^" +
                       std::to_string(9 - aux));
    try {
      return single(cfg, association_literal(c, cfg.seed, aux).report);
    } catch (const ResampleExhausted& e) {
      std::cerr << e.what() << '\n';
      return kExitExhausted;
    }
  }
  return run_trials(cfg, f, [aux](uint64_t seed, const Field& field) { return association_forward(seed, field, aux).report; });
}

int cmd_audit(const RunConfig& cfg) {
  PipelineReport rep("audit", cfg.seed, Field::prime(2), "bookkeeping");
  rep.absorb(triad_count_report(), "triad_count:");
  const int phi = phi_dimension_audit();
  rep.stage("phi_dimension", phi == 26, {{"value", phi}, {"hilb_13_P2", 26}});
  bool admissible = true;
  for (const auto& row : table1())
    admissible = admissible && is_admissible(interpolation_sequence(row.profile), row.profile.n, row.profile.k,
                                             row.profile.dim_u);
  rep.stage("table1_sequences_admissible", admissible);
  if (cfg.oracle) rep.absorb(oracle_pencil_trial(cfg.seed), "oracle:");
  return single(cfg, rep);
}

int dispatch(const RunConfig& cfg) {
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  if (cfg.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (cfg.command == "table1") return cmd_table1(cfg);
  if (cfg.command == "associate") return cmd_associate(cfg);
  if (cfg.command == "audit") return cmd_audit(cfg);

  Field f = Field::prime(2);
  try {
    f = cfg.field.field();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  static const std::map<std::string, TrialFn> simple{
      {"quintic-scroll", quintic_dp_forward},
      {"sextic-forward", sextic_dp_forward},
      {"p1p1-forward", p1p1_dp_forward},
      {"veronese9", [](uint64_t s, const Field& k) { return veronese9_count(s, k).report; }},
      {"triad-degenerate", [](uint64_t s, const Field& k) { return degenerate_triad_config(s, k).report; }},
  };
  if (const auto it = simple.find(cfg.command); it != simple.end()) return run_trials(cfg, f, it->second);
  if (cfg.command == "rnc") return cmd_rnc(cfg, f);
  if (cfg.command == "ci-interp") return cmd_ci(cfg, f);
  if (cfg.command == "triad") return cmd_triad(cfg, f);
  if (cfg.command == "veronese13") return cmd_association(cfg, f, 0);
  if (cfg.command == "delpezzo8") return cmd_association(cfg, f, 1);
  if (cfg.command == "delpezzo7") return cmd_association(cfg, f, 2);
  throw UsageError("unknown command " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> commands{"table1",         "associate",      "rnc",          "ci-interp",
                                          "quintic-scroll", "sextic-forward", "p1p1-forward", "veronese9",
                                          "veronese13",     "delpezzo8",      "delpezzo7",    "triad",
                                          "triad-degenerate", "audit"};
  CLI::App app{"Interpolation pipelines for del Pezzo surfaces over finite fields"};
  RunConfig cfg;
  app.add_option("command", cfg.command, "Command to run")->required()->check(CLI::IsMember(commands));
  app.add_option("--char", cfg.field.characteristic, "Field characteristic")->capture_default_str();
  app.add_option("--ext-deg", cfg.field.ext_degree, "Extension degree over the prime field")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Base seed; trial i uses seed + i")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Trials run concurrently")->capture_default_str();
  app.add_option("--in", cfg.in, "Input configuration JSON");
  app.add_option("--out", cfg.out, "Write output here instead of stdout");
  app.add_flag("--oracle", cfg.oracle, "Add brute-force cross-checks over F_101");
  app.add_flag("-v,--verbose", cfg.verbosity, "Stage summaries on stderr (repeat for detail)");
  app.add_option("--ambient", cfg.ambient, "rnc: dimension of the random configurations")->capture_default_str();
  app.add_option("--ci", cfg.ci, "ci-interp: k d n")->expected(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return dispatch(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResampleExhausted& e) {
    std::cerr << e.what() << '\n';
    return kExitExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
