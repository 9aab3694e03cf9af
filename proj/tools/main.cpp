#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "l1l2prox/io.hpp"
#include "l1l2prox/oracle.hpp"
#include "l1l2prox/prox.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;

struct OutStream {
  std::ofstream file;
  bool to_file = false;

  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw l1l2::Error("cannot open '" + path + "' for writing");
      to_file = true;
    }
  }
  std::ostream& stream() { return to_file ? file : std::cout; }
};

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string human_vector(const std::vector<double>& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += fmt3(x[i]);
  }
  return s + "]";
}

l1l2::ProxProblem make_problem(const l1l2::Record& rec, double mu, double a) {
  return {rec.y, rec.mu.value_or(mu), rec.a.value_or(a)};
}

json member_json(const l1l2::ProxMember& m) {
  return json{{"k", m.k}, {"q", m.q}, {"x", m.x}};
}

l1l2::ProxResult prox_with_mode(const l1l2::ProxProblem& p, l1l2::Mode mode) {
  if (mode == l1l2::Mode::optimized) return l1l2::prox(p);
  l1l2::validate(p);
  const l1l2::CanonicalForm canon = l1l2::canonicalize(p.y);
  l1l2::Enumeration e = l1l2::enumerate_candidates(canon, p.mu, l1l2::Mode::naive);
  if (e.diagnostics.any_polish_failure())
    throw l1l2::PolishDivergenceError("quartic polishing failed during candidate scan");
  return l1l2::select(std::span<const l1l2::Candidate>(e.candidates), canon, p);
}

int cmd_prox(const std::vector<l1l2::Record>& records, double mu, double a,
             l1l2::Mode mode, bool all_solutions, const std::string& out_path) {
  OutStream out(out_path);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const l1l2::ProxProblem p = make_problem(records[i], mu, a);
    const l1l2::ProxResult r = prox_with_mode(p, mode);
    json line{{"record", i},
              {"contains_zero", r.contains_zero},
              {"is_set_valued", r.is_set_valued}};
    if (all_solutions) {
      json members = json::array();
      for (const l1l2::ProxMember& m : r.members) members.push_back(member_json(m));
      line["members"] = members;
      line["q"] = r.members.front().q;
    } else {
      const l1l2::ProxMember& m = r.members.front();
      line["k"] = m.k;
      line["q"] = m.q;
      line["x"] = m.x;
    }
    out.stream() << line.dump() << "\n";
    if (out.to_file) {
      const l1l2::ProxMember& m = r.members.front();
      std::cout << "record " << i << ": k=" << m.k << " Q=" << fmt3(m.q)
                << " x=" << human_vector(m.x) << "\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(const std::vector<l1l2::Record>& records, double mu, const std::string& out_path) {
  OutStream out(out_path);
  std::ostream& os = out.stream();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const l1l2::ProxProblem p = make_problem(records[i], mu, 1.0);
    l1l2::validate(p);
    const l1l2::CanonicalForm canon = l1l2::canonicalize(p.y);
    const l1l2::ScanResult sr = l1l2::scan_candidates(canon, p.mu, l1l2::Mode::optimized);
    if (sr.diagnostics.any_polish_failure())
      throw l1l2::PolishDivergenceError("quartic polishing failed during sweep");
    if (records.size() > 1) os << "# record " << i << "\n";
    os << "k,A_k,exists,lambda_star,F,Q\n";
    char buf[64];
    const auto num = [&buf](double v) -> std::string {
      if (!std::isfinite(v)) return "";
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      return buf;
    };
    for (const l1l2::KRecord& rec : sr.diagnostics.records) {
      os << rec.k << "," << num(rec.a_k) << "," << (rec.exists ? 1 : 0) << ","
         << (rec.lambda_star ? num(*rec.lambda_star) : "") << ","
         << (rec.f_value ? num(*rec.f_value) : "") << ","
         << (rec.q_value ? num(*rec.q_value) : "") << "\n";
    }
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::size_t>& n_list, int trials, std::uint64_t seed,
              const std::string& out_path) {
  OutStream out(out_path);
  std::ostream& os = out.stream();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  os << "n,mode,time\n";
  for (std::size_t n : n_list) {
    for (const l1l2::Mode mode : {l1l2::Mode::optimized, l1l2::Mode::naive}) {
      if (mode == l1l2::Mode::naive && n > 10000) continue;
      std::vector<double> times;
      for (int t = 0; t < trials; ++t) {
        l1l2::ProxProblem p;
        p.y.resize(n);
        for (double& v : p.y) v = gauss(rng);
        p.mu = 1.0;
        const auto t0 = std::chrono::steady_clock::now();
        const l1l2::ProxResult r = prox_with_mode(p, mode);
        const auto t1 = std::chrono::steady_clock::now();
        if (r.members.empty()) throw l1l2::Error("empty prox result");
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      const double median = times[times.size() / 2];
      os << n << "," << (mode == l1l2::Mode::optimized ? "optimized" : "naive") << ","
         << median << "\n";
      if (out.to_file)
        std::cout << "n=" << n << " " << (mode == l1l2::Mode::optimized ? "optimized" : "naive")
                  << ": " << median << " s\n";
    }
  }
  return kExitOk;
}

int cmd_check(const std::vector<l1l2::Record>& records, double mu, double a,
              const l1l2::OracleConfig& cfg, const std::string& out_path) {
  OutStream out(out_path);
  std::ostream& os = out.stream();
  int failures = 0;
  double max_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].y.size() > 8) {
      std::cerr << "record " << i << ": check needs n <= 8\n";
      return kExitBadInput;
    }
    const l1l2::ProxProblem p = make_problem(records[i], mu, a);
    const l1l2::ProxResult r = prox_with_mode(p, l1l2::Mode::optimized);
    double q_prox = r.members.front().q;
    for (const l1l2::ProxMember& m : r.members) q_prox = std::min(q_prox, m.q);
    const l1l2::OracleResult orc = l1l2::oracle_prox(p, cfg);
    const double gap = q_prox - orc.q;
    max_gap = std::max(max_gap, gap);
    const bool ok = gap <= 1e-6;
    if (!ok) ++failures;
    os << "record " << i << ": q_prox=" << fmt3(q_prox) << " q_oracle=" << fmt3(orc.q)
       << " gap=" << gap << (ok ? "" : "  FAIL") << "\n";
  }
  os << "checked " << records.size() << " records, max gap " << max_gap << ", failures "
     << failures << "\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

std::vector<l1l2::Record> load_input(const std::string& path, const std::string& format_flag) {
  std::optional<l1l2::Format> fmt;
  if (format_flag == "csv") fmt = l1l2::Format::csv;
  if (format_flag == "jsonl") fmt = l1l2::Format::jsonl;
  if (path.empty()) {
    if (!fmt) throw l1l2::Error("reading stdin needs an explicit --format");
    return l1l2::parse_records(std::cin, *fmt);
  }
  return l1l2::read_records(path, fmt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact proximity operator of the l1/l2 ratio"};
  app.require_subcommand(1);

  std::string input_path;
  std::string format_flag;
  std::string out_path;
  double mu = 1.0;
  double a = 1.0;
  std::string mode_flag = "optimized";
  bool all_solutions = false;
  std::vector<std::size_t> n_list;
  int trials = 5;
  std::uint64_t seed = 0;
  l1l2::OracleConfig cfg;

  CLI::App* sp = app.add_subcommand("prox", "evaluate the prox per input record");
  sp->add_option("file", input_path, "input file (.csv or .jsonl); stdin when omitted");
  sp->add_option("--mu", mu, "regularization weight (default 1)");
  sp->add_option("--a", a, "value of the ratio at the origin (default 1)");
  sp->add_option("--mode", mode_flag, "naive|optimized")
      ->check(CLI::IsMember({"naive", "optimized"}));
  sp->add_flag("--all-solutions", all_solutions, "emit every member of a set-valued result");
  sp->add_option("--format", format_flag, "csv|jsonl (overrides file extension)")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sp->add_option("--out", out_path, "write machine output here, summary to stdout");

  CLI::App* sw = app.add_subcommand("sweep", "per-k existence and candidate diagnostics");
  sw->add_option("file", input_path, "input file (.csv or .jsonl); stdin when omitted");
  sw->add_option("--mu", mu, "regularization weight (default 1)");
  sw->add_option("--format", format_flag, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sw->add_option("--out", out_path, "write CSV here instead of stdout");

  CLI::App* sb = app.add_subcommand("bench", "time the scan on random Gaussian inputs");
  sb->add_option("--n", n_list, "problem sizes (repeatable)")->required();
  sb->add_option("--trials", trials, "trials per size (default 5)");
  sb->add_option("--seed", seed, "RNG seed");
  sb->add_option("--out", out_path, "write CSV here, summary to stdout");

  CLI::App* sc = app.add_subcommand("check", "compare against the brute-force oracle (n <= 8)");
  sc->add_option("file", input_path, "input file (.csv or .jsonl); stdin when omitted");
  sc->add_option("--mu", mu, "regularization weight (default 1)");
  sc->add_option("--a", a, "value of the ratio at the origin (default 1)");
  sc->add_option("--seed", seed, "oracle RNG seed");
  sc->add_option("--n-starts", cfg.n_starts, "oracle random restarts (default 100)");
  sc->add_option("--max-iter", cfg.max_iter, "oracle descent iterations (default 200)");
  sc->add_option("--format", format_flag, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sc->add_option("--out", out_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed() || sw->parsed() || sc->parsed()) {
      const std::vector<l1l2::Record> records = load_input(input_path, format_flag);
      if (sp->parsed())
        return cmd_prox(records, mu, a,
                        mode_flag == "naive" ? l1l2::Mode::naive : l1l2::Mode::optimized,
                        all_solutions, out_path);
      if (sw->parsed()) return cmd_sweep(records, mu, out_path);
      cfg.seed = seed;
      return cmd_check(records, mu, a, cfg, out_path);
    }
    return cmd_bench(n_list, trials, seed, out_path);
  } catch (const l1l2::PolishDivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const l1l2::CauchySchwarzError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const l1l2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
