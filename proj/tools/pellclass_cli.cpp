// pellclass: experiments on class numbers of indefinite forms ordered by fundamental unit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pellclass/charsums.hpp"
#include "pellclass/constants.hpp"
#include "pellclass/errors.hpp"
#include "pellclass/forms.hpp"
#include "pellclass/moments.hpp"
#include "pellclass/pell.hpp"
#include "pellclass/report.hpp"
#include "pellclass/selftest.hpp"
#include "pellclass/tail.hpp"

namespace pc = pellclass;

namespace {

struct RunConfig {
  pc::u64 x = 0;
  std::vector<double> k{1.0};
  pc::u64 m = 1;
  double y = 1e4;
  double y_escalate = 0;
  pc::u64 d_exact_max = 1'000'000;
  pc::u64 P = 0;
  std::vector<double> tau_grid{1.0, 1.3, 1.6};
  unsigned threads = 1;
  std::string cache_path;
  std::string output = "csv";
  std::string out_path;
  pc::u64 m_max = 120;
  pc::u64 u_max = 20;
  std::size_t top_n = 20;
  bool timing = false;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + cfg.out_path);
  os << text;
}

void emit(const RunConfig& cfg, const pc::Table& t) {
  emit(cfg, pc::render(t, cfg.output == "json" ? pc::OutputFormat::json : pc::OutputFormat::csv));
}

pc::EnumerationRun load_run(const RunConfig& cfg) {
  if (cfg.x < 3) throw pc::DomainError("--x must be at least 3");
  if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path)) {
    pc::EnumerationRun run = pc::cache_read(cfg.cache_path);
    if (run.x == cfg.x) return run;
    std::cerr << "cache " << cfg.cache_path << " holds x = " << run.x << "; rebuilding for x = " << cfg.x << '\n';
  }
  pc::EnumerateOptions eo;
  eo.threads = cfg.threads;
  pc::EnumerationRun run = pc::enumerate(cfg.x, eo);
  if (!cfg.cache_path.empty()) pc::cache_write(run, cfg.cache_path);
  return run;
}

pc::HybridOptions hybrid_options(const RunConfig& cfg) {
  pc::HybridOptions h;
  h.d_exact_max = cfg.d_exact_max;
  h.y = cfg.y;
  h.y_escalate = cfg.y_escalate;
  h.threads = cfg.threads;
  return h;
}

void report_hybrid(const pc::HybridStats& s) {
  std::cerr << "class numbers: " << s.exact << " exact, " << s.formula << " formula (" << s.escalated
            << " escalated, " << s.unreliable << " unreliable)\n";
}

int cmd_enumerate(const RunConfig& cfg) {
  const pc::EnumerationRun run = load_run(cfg);
  emit(cfg, pc::cache_serialize(run));
  std::cerr << run.records.size() << " records, " << run.pair_count << " pairs\n";
  return 0;
}

int cmd_density(const RunConfig& cfg) {
  emit(cfg, pc::density_table(load_run(cfg)));
  return 0;
}

int cmd_moments(const RunConfig& cfg) {
  pc::EnumerationRun run = load_run(cfg);
  pc::MomentOptions mo;
  mo.hybrid = hybrid_options(cfg);
  mo.P = cfg.P;
  if (cfg.m == 1) {
    for (const double k : cfg.k) {
      if (k > 0.0) {
        report_hybrid(pc::assign_class_numbers(run, mo.hybrid));
        break;
      }
    }
  }
  std::vector<pc::MomentReport> rows;
  for (const double k : cfg.k) rows.push_back(pc::moment_report(run, k, cfg.m, mo));
  emit(cfg, pc::moments_table(rows, cfg.timing));
  return 0;
}

int cmd_twisted(const RunConfig& cfg) {
  const pc::EnumerationRun run = load_run(cfg);
  std::vector<pc::MomentReport> rows;
  for (const double k : cfg.k) rows.push_back(pc::twisted_report(run, k, cfg.m, cfg.threads));
  emit(cfg, pc::moments_table(rows, cfg.timing));
  return 0;
}

int cmd_charsum_verify(const RunConfig& cfg) {
  const pc::CharsumVerification v = pc::charsum_verify(cfg.m_max, cfg.u_max, cfg.threads);
  emit(cfg, pc::charsum_table(v));
  std::cerr << v.mismatches << " mismatches\n";
  if (v.mismatches == 0) return 0;
  for (const auto& r : v.rows) {
    if (!r.match) {
      std::cerr << "counterexample: m=" << r.m << " a=" << r.a << " u=" << r.u << " closed*m=" << (r.closed * pc::Rational(static_cast<pc::i64>(r.m))).str()
                << " brute=" << r.brute << '\n';
    }
  }
  return 2;
}

int cmd_constants(const RunConfig& cfg) {
  std::vector<pc::ConstantEval> C, H;
  for (const double k : cfg.k) {
    const pc::u64 P = cfg.P ? cfg.P : pc::H_default_truncation(k);
    C.push_back(pc::C_of_k(k, P));
    H.push_back(pc::H_of_k(k, P, cfg.threads));
  }
  emit(cfg, pc::constants_table(cfg.k, C, H));
  return 0;
}

int cmd_tail(const RunConfig& cfg) {
  pc::EnumerationRun run = load_run(cfg);
  report_hybrid(pc::assign_class_numbers(run, hybrid_options(cfg)));
  std::vector<pc::TailReport> rows;
  for (const double tau : cfg.tau_grid) rows.push_back(pc::empirical_tail(run, tau));
  emit(cfg, pc::tail_table(rows));
  return 0;
}

int cmd_extremes(const RunConfig& cfg) {
  pc::EnumerationRun run = load_run(cfg);
  report_hybrid(pc::assign_class_numbers(run, hybrid_options(cfg)));
  const pc::ExtremeScan scan = pc::extreme_scan(run, cfg.top_n);
  emit(cfg, pc::extremes_table(scan));
  std::cerr << scan.admissible << " admissible, " << scan.excluded << " excluded (eps <= e^e)\n";
  return 0;
}

int cmd_selftest(const RunConfig& cfg) {
  pc::SelftestOptions so;
  so.threads = cfg.threads;
  so.charsum_m_max = cfg.m_max;
  so.charsum_u_max = cfg.u_max;
  std::size_t failed = 0;
  const auto results = pc::run_selftest(so, [&](const pc::CheckResult& r) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class numbers of indefinite binary quadratic forms ordered by fundamental unit"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--output", cfg.output, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
    sub->add_flag("--timing", cfg.timing, "Fill the seconds column");
  };
  const auto with_x = [&](CLI::App* sub) {
    sub->add_option("--x", cfg.x, "Bound on the fundamental unit")->required()->check(CLI::Range(3ull, 10'000'000ull));
    sub->add_option("--cache", cfg.cache_path, "Enumeration cache file (read if present, written otherwise)");
  };
  const auto with_h = [&](CLI::App* sub) {
    sub->add_option("--y", cfg.y, "Smoothing parameter of the L-series")->check(CLI::Range(2.0, 1e7));
    sub->add_option("--y-escalate", cfg.y_escalate, "Re-evaluate unreliable roundings at this y (0 disables)");
    sub->add_option("--d-exact-max", cfg.d_exact_max, "Largest d whose class number is computed exactly");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "Enumerate discriminants with eps_d <= x (cache format)");
  with_x(enumerate);
  common(enumerate);

  CLI::App* density = app.add_subcommand("density", "Number of discriminants per unit of x");
  with_x(density);
  common(density);

  CLI::App* moments = app.add_subcommand("moments", "Moments of h(d) (m = 1) or twisted sums against predictions");
  with_x(moments);
  with_h(moments);
  moments->add_option("--k", cfg.k, "Exponents (comma separated)")->delimiter(',');
  moments->add_option("--m", cfg.m, "Twist modulus")->check(CLI::PositiveNumber);
  moments->add_option("--P", cfg.P, "Truncation prime for H(k)");
  common(moments);

  CLI::App* twisted = app.add_subcommand("twisted", "Sums of chi_d(m) d^{k/2} against predictions");
  with_x(twisted);
  twisted->add_option("--k", cfg.k, "Exponents (comma separated)")->delimiter(',');
  twisted->add_option("--m", cfg.m, "Twist modulus")->check(CLI::PositiveNumber);
  common(twisted);

  CLI::App* charsum = app.add_subcommand("charsum-verify", "Closed-form character sums against brute force");
  charsum->add_option("--m-max", cfg.m_max, "Largest modulus")->check(CLI::Range(1ull, 100'000ull));
  charsum->add_option("--u-max", cfg.u_max, "Largest u")->check(CLI::Range(1ull, 1'000ull));
  common(charsum);

  CLI::App* constants = app.add_subcommand("constants", "C(k), H(k) and the large-k main term");
  constants->add_option("--k", cfg.k, "Exponents (comma separated)")->delimiter(',');
  constants->add_option("--P", cfg.P, "Truncation prime");
  common(constants);

  CLI::App* tail = app.add_subcommand("tail", "Proportion of large class numbers against the predicted tail");
  with_x(tail);
  with_h(tail);
  tail->add_option("--tau-grid", cfg.tau_grid, "Values of tau (comma separated)")->delimiter(',');
  common(tail);

  CLI::App* extremes = app.add_subcommand("extremes", "Largest h log eps / (eps log log eps)");
  with_x(extremes);
  with_h(extremes);
  extremes->add_option("--top-n", cfg.top_n, "Rows to report");
  common(extremes);

  CLI::App* selftest = app.add_subcommand("selftest", "Worked examples and exactness suites");
  selftest->add_option("--m-max", cfg.m_max, "Largest modulus for the character-sum suite");
  selftest->add_option("--u-max", cfg.u_max, "Largest u for the character-sum suite");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*enumerate) return cmd_enumerate(cfg);
    if (*density) return cmd_density(cfg);
    if (*moments) return cmd_moments(cfg);
    if (*twisted) return cmd_twisted(cfg);
    if (*charsum) return cmd_charsum_verify(cfg);
    if (*constants) return cmd_constants(cfg);
    if (*tail) return cmd_tail(cfg);
    if (*extremes) return cmd_extremes(cfg);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const pc::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
