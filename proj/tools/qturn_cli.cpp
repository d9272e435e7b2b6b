// Command-line front end: property-suite verification, mirror-angle
// optimization sweeps, circuit compression, and return-probability
// dynamics with CSV/SVG emission.
//
// Exit codes: 0 success, 1 tolerance/verification failure, 2 usage or
// config error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qturn/circuit.hpp"
#include "qturn/dynamics.hpp"
#include "qturn/optimizer.hpp"
#include "qturn/spin.hpp"
#include "qturn/trotter.hpp"
#include "qturn/turnover.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr double kPi = 3.14159265358979323846;

using nlohmann::json;

// ---------------------------------------------------------------------------
// Manifest plumbing
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string iso_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

json manifest_core(const std::string& command, const std::string& digest_src,
                   std::uint64_t seed) {
  return json{{"command", command},
              {"config_digest", hex64(fnv1a64(digest_src))},
              {"rng_seed", seed},
              {"version", kToolVersion}};
}

// Side-car manifest next to an output artifact. The artifact itself
// stays byte-deterministic under a fixed seed; the wall-clock stamp
// lives only here.
void write_manifest(const std::string& artifact_path,
                    const std::string& command,
                    const std::string& digest_src, std::uint64_t seed) {
  json m = manifest_core(command, digest_src, seed);
  m["generated_at"] = iso_timestamp();
  std::ofstream f(artifact_path + ".manifest.json");
  f << m.dump(2) << "\n";
}

bool write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<qturn::AxisWeights> turnover_families() {
  std::vector<qturn::AxisWeights> fams = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int s : {+1, -1}) {
    fams.push_back({1, s, 0});
    fams.push_back({1, 0, s});
    fams.push_back({0, 1, s});
  }
  for (int s1 : {+1, -1})
    for (int s2 : {+1, -1}) fams.push_back({1, s1, s2});
  return fams;
}

SuiteResult run_algebra_suite(double tol) {
  double worst = 0.0;
  worst = std::max(worst, qturn::algebra_report(qturn::Rep::Standard));
  worst = std::max(worst, qturn::algebra_report(qturn::Rep::Adjoint));
  worst = std::max(worst, qturn::basis_change_residual());
  worst = std::max(worst, qturn::conjugation_family_residual());
  worst = std::max(worst, qturn::embedded_pair_decomposition_residual());
  return {"algebra", worst, tol, worst < tol};
}

SuiteResult run_turnover_suite(int samples, std::uint64_t seed,
                               bool break_constraint, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const double shift = break_constraint ? 0.1 : 0.0;
  double worst = 0.0;
  for (const auto& fam : turnover_families()) {
    for (int i = 0; i < samples; ++i) {
      qturn::TurnoverInstance t;
      t.w = fam;
      t.alpha = ang(rng);
      t.beta = ang(rng);
      t.gamma = ang(rng);
      t.delta = ang(rng);
      worst = std::max(worst, qturn::turnover_residual(t, shift));
    }
  }
  return {"turnover", worst, tol, worst < tol};
}

SuiteResult run_subspace_suite(int samples, std::uint64_t seed, double tol) {
  auto [perm, sizes] = qturn::qubit_subspace_blocks();
  const std::vector<int> expect = {1, 2, 2, 4, 2, 4, 4, 8};
  double worst = (sizes == expect) ? 0.0 : 1.0;
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(perm.size()) || seen[p]) worst = 1.0;
    else seen[p] = true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < samples; ++i) {
    double a = ang(rng), b = ang(rng), g = ang(rng);
    qturn::Circuit c;
    c.n = 3;
    c.gates = {{qturn::Gen::X, 0, a, {}},
               {qturn::Gen::X, 1, b, {}},
               {qturn::Gen::X, 0, g, {}}};
    worst = std::max(worst,
                     qturn::block_offdiagonal_mass(qturn::circuit_unitary(c)));
    worst = std::max(worst, qturn::qubit_block_residual(a, b, g));
  }
  return {"subspace", worst, tol, worst < tol};
}

int run_verify(const std::string& suite, int samples, std::uint64_t seed,
               bool break_constraint, double tol_override,
               const std::string& out) {
  if (samples < 1) {
    std::cerr << "error: --samples must be >= 1\n";
    return 2;
  }
  auto tol_for = [&](double dflt) {
    return tol_override > 0 ? tol_override : dflt;
  };
  std::vector<SuiteResult> results;
  if (suite == "algebra" || suite == "all")
    results.push_back(run_algebra_suite(tol_for(1e-14)));
  if (suite == "turnover" || suite == "all")
    results.push_back(
        run_turnover_suite(samples, seed, break_constraint, tol_for(1e-12)));
  if (suite == "subspace" || suite == "all")
    results.push_back(run_subspace_suite(samples, seed, tol_for(1e-12)));

  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("suite %-8s max residual %.3e (tolerance %.1e) %s\n",
                r.name.c_str(), r.max_residual, r.tolerance,
                r.pass ? "PASS" : "FAIL");
  }
  if (!out.empty()) {
    json rep{{"command", "verify"},
             {"suite", suite},
             {"samples", samples},
             {"seed", seed},
             {"break_constraint", break_constraint},
             {"pass", all_pass}};
    rep["suites"] = json::array();
    for (const auto& r : results)
      rep["suites"].push_back(json{{"name", r.name},
                                   {"max_residual", r.max_residual},
                                   {"tolerance", r.tolerance},
                                   {"pass", r.pass}});
    if (!write_text_file(out, rep.dump(2) + "\n")) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    write_manifest(out, "verify", rep.dump(), seed);
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

struct SweepJob {
  double j = 0.0;
  qturn::Scheme scheme = qturn::Scheme::T1;
  std::string scheme_name;
  int nb = 1;
  double theta = 0.0;
  std::uint64_t seed = 0;
};

json opt_result_json(const SweepJob& job, const qturn::OptResult& r) {
  double c = r.best_infidelity;
  const bool exact_zero = c < 1e-15;  // report tiny costs as exact zero
  json line{{"scheme", job.scheme_name},
            {"J", job.j},
            {"nb", job.nb},
            {"theta", job.theta},
            {"params", std::vector<double>(
                           r.best_params.data(),
                           r.best_params.data() + r.best_params.size())},
            {"infidelity", exact_zero ? 0.0 : c},
            {"log10_infidelity", nullptr},
            {"restarts", r.restart_infidelities},
            {"seed", job.seed}};
  if (!exact_zero) line["log10_infidelity"] = std::log10(c);
  return line;
}

// Runs jobs on a bounded pool; results land in a per-index slot so the
// emitted stream order never depends on scheduling.
std::vector<json> run_pool(const std::vector<SweepJob>& jobs,
                           const qturn::OptimizerConfig& base_cfg,
                           int n_threads) {
  std::vector<json> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      const SweepJob& job = jobs[i];
      qturn::OptimizerConfig cfg = base_cfg;
      cfg.rng_seed = job.seed;
      qturn::OptResult r =
          qturn::optimize_reflection(job.scheme, job.theta, job.nb, cfg);
      results[i] = opt_result_json(job, r);
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  unsigned pool = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                : (hw > 0 ? hw : 1u);
  pool = std::min<unsigned>(pool, static_cast<unsigned>(jobs.size()));
  pool = std::max(pool, 1u);
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (unsigned t = 0; t < pool; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

void print_log10_table(std::ostream& os, const std::vector<SweepJob>& jobs,
                       const std::vector<json>& results,
                       const std::vector<double>& js,
                       const std::vector<std::string>& schemes,
                       const std::vector<int>& nbs) {
  std::size_t idx = 0;
  for (double j : js) {
    os << "log10 infidelity, J=" << j << "\n";
    os << "  scheme";
    for (int nb : nbs) {
      char head[16];
      std::snprintf(head, sizeof head, "%9s%d", "nb=", nb);
      os << head;
    }
    os << "\n";
    for (const auto& name : schemes) {
      char row[16];
      std::snprintf(row, sizeof row, "  %-6s", name.c_str());
      os << row;
      for (std::size_t k = 0; k < nbs.size(); ++k) {
        const json& line = results[idx++];
        char cell[16];
        if (line["log10_infidelity"].is_null())
          std::snprintf(cell, sizeof cell, "%10s", "exact");
        else
          std::snprintf(cell, sizeof cell, "%10.2f",
                        line["log10_infidelity"].get<double>());
        os << cell;
      }
      os << "\n";
    }
    (void)jobs;
  }
}

int run_optimize(const std::string& config_path, const std::string& out,
                 std::uint64_t seed, int jobs_flag) {
  std::ifstream f(config_path);
  if (!f) {
    std::cerr << "error: cannot read config " << config_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string cfg_text = buf.str();

  std::vector<double> js;
  std::vector<std::string> scheme_names;
  std::vector<int> nbs;
  bool theta_fixed = false;
  double theta_value = 0.0, theta_t = 0.0;
  int theta_steps = 0;
  qturn::OptimizerConfig base_cfg;
  try {
    json cfg = json::parse(cfg_text);
    js = cfg.at("J").get<std::vector<double>>();
    scheme_names = cfg.at("schemes").get<std::vector<std::string>>();
    nbs = cfg.at("nb").get<std::vector<int>>();
    const json& th = cfg.at("theta");
    if (th.is_number()) {
      theta_fixed = true;
      theta_value = th.get<double>();
    } else {
      theta_t = th.at("t").get<double>();
      theta_steps = th.at("steps").get<int>();
      if (theta_steps < 1) throw std::invalid_argument("theta.steps must be >= 1");
    }
    if (cfg.contains("optimizer")) {
      const json& o = cfg.at("optimizer");
      base_cfg.max_iterations = o.value("max_iterations", base_cfg.max_iterations);
      base_cfg.gradient_step = o.value("gradient_step", base_cfg.gradient_step);
      base_cfg.convergence_tol =
          o.value("convergence_tol", base_cfg.convergence_tol);
      base_cfg.restarts = o.value("restarts", base_cfg.restarts);
      base_cfg.perturbation_scale =
          o.value("perturbation_scale", base_cfg.perturbation_scale);
    }
    if (js.empty() || scheme_names.empty() || nbs.empty())
      throw std::invalid_argument("J, schemes, nb must be non-empty");
    for (int nb : nbs)
      if (nb < 1) throw std::invalid_argument("nb entries must be >= 1");
  } catch (const std::exception& e) {
    std::cerr << "error: malformed config: " << e.what() << "\n";
    return 2;
  }

  std::vector<SweepJob> jobs;
  try {
    for (double j : js)
      for (const auto& name : scheme_names)
        for (int nb : nbs) {
          SweepJob job;
          job.j = j;
          job.scheme = qturn::scheme_from_name(name);
          job.scheme_name = name;
          job.nb = nb;
          job.theta =
              theta_fixed ? theta_value : qturn::theta_step(j, theta_t, theta_steps);
          job.seed = seed + jobs.size();
          jobs.push_back(std::move(job));
        }
  } catch (const std::exception& e) {
    std::cerr << "error: malformed config: " << e.what() << "\n";
    return 2;
  }

  std::vector<json> results = run_pool(jobs, base_cfg, jobs_flag);

  std::ostringstream lines;
  for (const auto& line : results) lines << line.dump() << "\n";
  if (!out.empty()) {
    if (!write_text_file(out, lines.str())) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    write_manifest(out, "optimize", cfg_text, seed);
    print_log10_table(std::cout, jobs, results, js, scheme_names, nbs);
  } else {
    std::cout << lines.str();
    print_log10_table(std::cerr, jobs, results, js, scheme_names, nbs);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compress
// ---------------------------------------------------------------------------

int run_compress(const std::string& scheme_str, double j, double t, int steps,
                 int nb, bool have_theta, double theta_override,
                 const std::string& params_file, bool auto_opt,
                 bool have_max_inf, double max_inf, const std::string& out,
                 std::uint64_t seed) {
  qturn::Scheme scheme;
  try {
    scheme = qturn::scheme_from_name(scheme_str);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (nb < 1 || steps < nb + 1) {
    std::cerr << "error: need nb >= 1 and steps >= nb + 1 (got steps=" << steps
              << ", nb=" << nb << ")\n";
    return 2;
  }
  if (auto_opt == !params_file.empty()) {
    std::cerr << "error: pass exactly one of --auto or --params-file\n";
    return 2;
  }
  const double theta =
      have_theta ? theta_override : qturn::theta_step(j, t, steps);
  std::printf("per-step angle theta = %.12g (theta = -J t / steps)\n", theta);

  Eigen::VectorXd params;
  double block_infidelity = 0.0;
  if (auto_opt) {
    qturn::OptimizerConfig cfg;
    cfg.rng_seed = seed;
    qturn::OptResult r = qturn::optimize_reflection(scheme, theta, nb, cfg);
    params = r.best_params;
    block_infidelity = r.best_infidelity;
  } else {
    std::ifstream pf(params_file);
    if (!pf) {
      std::cerr << "error: cannot read " << params_file << "\n";
      return 2;
    }
    try {
      json pj = json::parse(pf);
      std::vector<double> vals =
          pj.is_array() ? pj.get<std::vector<double>>()
                        : pj.at("params").get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != qturn::param_count(scheme))
        throw std::invalid_argument("params length does not match scheme");
      params = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                           static_cast<long>(vals.size()));
    } catch (const std::exception& e) {
      std::cerr << "error: bad params file: " << e.what() << "\n";
      return 2;
    }
    qturn::Scheme fwd =
        scheme == qturn::Scheme::TREF ? qturn::Scheme::T1 : scheme;
    block_infidelity = qturn::multi_step_infidelity(
        qturn::circuit_unitary(qturn::wl_circuit(fwd, theta)),
        qturn::circuit_unitary(qturn::wr_circuit(scheme, params)), nb);
  }

  auto [circuit, report] = qturn::compress(scheme, theta, steps, nb, params);

  json rep{{"scheme", scheme_str},
           {"J", j},
           {"t", t},
           {"steps", steps},
           {"nb", nb},
           {"theta", theta},
           {"params", std::vector<double>(params.data(),
                                          params.data() + params.size())},
           {"block_infidelity", block_infidelity},
           {"original_gate_count", report.original_gate_count},
           {"compressed_gate_count", report.compressed_gate_count},
           {"substitutions_performed", report.substitutions_performed},
           {"gates_merged", report.gates_merged},
           {"max_unitary_deviation", report.max_unitary_deviation},
           {"seed", seed}};

  if (!out.empty()) {
    if (!write_text_file(out, qturn::circuit_to_json(circuit).dump(2) + "\n")) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    write_manifest(out, "compress", rep.dump(), seed);
  }
  std::cout << rep.dump() << "\n";

  if (have_max_inf && block_infidelity > max_inf) {
    std::cerr << "infidelity " << block_infidelity << " exceeds --max-infidelity "
              << max_inf << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// dynamics
// ---------------------------------------------------------------------------

struct MethodSpec {
  enum class Kind { Exact, Trotter, Compressed };
  Kind kind = Kind::Exact;
  qturn::Scheme scheme = qturn::Scheme::T1;
  int n_steps = 0;
  int nb = 0;
  std::string label;
};

MethodSpec parse_method(const std::string& token) {
  MethodSpec m;
  m.label = token;
  std::vector<std::string> parts;
  std::stringstream ss(token);
  std::string piece;
  while (std::getline(ss, piece, ':')) parts.push_back(piece);
  if (parts.empty()) throw std::invalid_argument("empty method token");
  if (parts[0] == "exact") {
    if (parts.size() != 1) throw std::invalid_argument("exact takes no args");
    m.kind = MethodSpec::Kind::Exact;
    return m;
  }
  if (parts[0] == "trotter") {
    if (parts.size() != 3)
      throw std::invalid_argument("expected trotter:SCHEME:STEPS");
    m.kind = MethodSpec::Kind::Trotter;
    m.scheme = qturn::scheme_from_name(parts[1]);
    m.n_steps = std::stoi(parts[2]);
    if (m.n_steps < 1) throw std::invalid_argument("steps must be >= 1");
    return m;
  }
  if (parts[0] == "compressed") {
    if (parts.size() != 4)
      throw std::invalid_argument("expected compressed:SCHEME:STEPS:NB");
    m.kind = MethodSpec::Kind::Compressed;
    m.scheme = qturn::scheme_from_name(parts[1]);
    m.n_steps = std::stoi(parts[2]);
    m.nb = std::stoi(parts[3]);
    if (m.nb < 1 || m.n_steps < m.nb + 1)
      throw std::invalid_argument("need nb >= 1 and steps >= nb + 1");
    return m;
  }
  throw std::invalid_argument("unknown method: " + parts[0]);
}

std::string svg_plot(double j, const std::vector<double>& ts, double t_max,
                     const std::vector<double>& exact_curve,
                     const std::vector<std::pair<std::string, std::vector<double>>>&
                         dot_series,
                     const json& manifest) {
  const double w = 640, h = 480, ml = 64, mr = 24, mt = 32, mb = 48;
  auto xpix = [&](double t) { return ml + t / t_max * (w - ml - mr); };
  auto ypix = [&](double p) { return mt + (1.0 - p) * (h - mt - mb); };
  const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b"};
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
    << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  s << "<!-- manifest " << manifest.dump() << " -->\n";
  s << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << (w - ml - mr)
    << "\" height=\"" << (h - mt - mb)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[256];
  for (int i = 0; i <= 5; ++i) {
    double t = t_max * i / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n<text x=\"%.1f\" y=\"%.1f\" "
                  "text-anchor=\"middle\" font-size=\"12\">%g</text>\n",
                  xpix(t), h - mb, xpix(t), h - mb + 6, xpix(t), h - mb + 20, t);
    s << buf;
  }
  for (int i = 0; i <= 5; ++i) {
    double p = i / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"black\"/>\n<text x=\"%.1f\" y=\"%.1f\" "
                  "text-anchor=\"end\" font-size=\"12\">%.1f</text>\n",
                  ml - 6, ypix(p), ml, ypix(p), ml - 10, ypix(p) + 4, p);
    s << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                "font-size=\"14\">t</text>\n<text x=\"%.1f\" y=\"%.1f\" "
                "text-anchor=\"middle\" font-size=\"14\">p</text>\n<text "
                "x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                "font-size=\"14\">J=%g</text>\n",
                (ml + w - mr) / 2, h - 8.0, 20.0, (mt + h - mb) / 2,
                (ml + w - mr) / 2, 20.0, j);
  s << buf;
  s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", xpix(ts[i]),
                  ypix(exact_curve[i]));
    s << buf;
  }
  s << "\"/>\n";
  int color = 0;
  for (const auto& [label, curve] : dot_series) {
    const char* stroke = palette[color % 6];
    ++color;
    s << "<g fill=\"none\" stroke=\"" << stroke << "\" data-method=\"" << label
      << "\">\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\"/>\n", xpix(ts[i]),
                    ypix(curve[i]));
      s << buf;
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int run_dynamics(const std::vector<double>& js,
                 const std::vector<std::string>& method_tokens, double t_max,
                 double dt, bool svg, const std::string& out,
                 std::uint64_t seed) {
  std::vector<MethodSpec> methods;
  try {
    for (const auto& tok : method_tokens) methods.push_back(parse_method(tok));
    if (js.empty()) throw std::invalid_argument("need at least one --J value");
    if (!(t_max > 0) || !(dt > 0) || dt > t_max)
      throw std::invalid_argument("need 0 < dt <= t-max");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const std::vector<double> ts = qturn::time_grid(0.0, t_max, dt);

  std::ostringstream csv;
  csv << "J,t,method,p,gate_count\n";
  char row[160];
  // (J, svg body) pairs emitted after the CSV so plotting never
  // interleaves with row output.
  std::vector<std::pair<double, std::string>> svgs;

  for (double j : js) {
    qturn::HamiltonianSpec hs;
    hs.j = j;
    qturn::Mat h = qturn::hamiltonian_xy(hs);
    std::vector<double> exact_curve = qturn::exact_return_curve(h, ts);
    std::vector<std::pair<std::string, std::vector<double>>> dot_series;

    for (const auto& m : methods) {
      std::vector<double> curve;
      long gate_count = 0;
      switch (m.kind) {
        case MethodSpec::Kind::Exact:
          curve = exact_curve;
          break;
        case MethodSpec::Kind::Trotter: {
          curve = qturn::trotter_return_curve(m.scheme, j, t_max, m.n_steps, ts);
          qturn::Scheme fwd = m.scheme == qturn::Scheme::TREF
                                  ? qturn::Scheme::T1
                                  : m.scheme;
          gate_count = static_cast<long>(
              qturn::wl_circuit(fwd, 0.0).gates.size() * m.n_steps);
          break;
        }
        case MethodSpec::Kind::Compressed: {
          const double theta = qturn::theta_step(j, t_max, m.n_steps);
          qturn::OptimizerConfig cfg;
          cfg.rng_seed = seed;
          qturn::OptResult r =
              qturn::optimize_reflection(m.scheme, theta, m.nb, cfg);
          auto [circ, report] =
              qturn::compress(m.scheme, theta, m.n_steps, m.nb, r.best_params);
          (void)circ;
          gate_count = report.compressed_gate_count;
          curve = qturn::compressed_return_curve(m.scheme, j, t_max, m.n_steps,
                                                 m.nb, r.best_params, ts);
          break;
        }
      }
      for (std::size_t i = 0; i < ts.size(); ++i) {
        std::snprintf(row, sizeof row, "%.10g,%.10g,%s,%.12f,%ld\n", j, ts[i],
                      m.label.c_str(), curve[i], gate_count);
        csv << row;
      }
      if (m.kind != MethodSpec::Kind::Exact)
        dot_series.emplace_back(m.label, curve);
    }

    if (svg) {
      json mc = manifest_core("dynamics", csv.str(), seed);
      svgs.emplace_back(j, svg_plot(j, ts, t_max, exact_curve, dot_series, mc));
    }
  }

  if (!out.empty()) {
    if (!write_text_file(out, csv.str())) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    write_manifest(out, "dynamics", csv.str(), seed);
  } else {
    std::cout << csv.str();
  }

  if (svg) {
    std::string base = out.empty() ? std::string("dynamics") : out;
    std::size_t dot = base.find_last_of('.');
    std::size_t slash = base.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
      base = base.substr(0, dot);
    for (const auto& [j, body] : svgs) {
      char jtxt[32];
      std::snprintf(jtxt, sizeof jtxt, "%g", j);
      std::string path = base + "_J" + jtxt + ".svg";
      if (!write_text_file(path, body)) {
        std::cerr << "error: cannot write " << path << "\n";
        return 2;
      }
      write_manifest(path, "dynamics", body, seed);
      std::cerr << "wrote " << path << "\n";
    }
  }
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"three-qutrit turnover toolkit: verification, mirror-angle "
               "optimization, circuit compression, return-probability "
               "dynamics"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out;
  double tolerance = -1.0;
  app.add_option("--seed", seed, "base RNG seed (sweeps add the job index)");
  app.add_option("--jobs", jobs, "worker threads (default: hardware)");
  app.add_option("--out", out, "output artifact path");
  app.add_option("--tolerance", tolerance,
                 "override per-suite residual tolerance (verify)");

  auto* v = app.add_subcommand("verify", "run residual property suites");
  v->fallthrough();
  std::string suite = "all";
  int samples = 100;
  bool break_constraint = false;
  v->add_option("--suite", suite, "algebra|turnover|subspace|all")
      ->check(CLI::IsMember({"algebra", "turnover", "subspace", "all"}));
  v->add_option("--samples", samples, "random instances per family");
  v->add_flag("--break-constraint", break_constraint,
              "shift the derived turnover angle (negative control)");

  auto* o = app.add_subcommand("optimize",
                               "sweep mirror-angle fits over (J, scheme, nb)");
  o->fallthrough();
  std::string config;
  o->add_option("--config", config, "sweep config JSON")->required();

  auto* c = app.add_subcommand("compress",
                               "replace step blocks by mirrored blocks");
  c->fallthrough();
  std::string cscheme;
  double cj = 0.0, ct = 5.0, theta_override = 0.0, max_inf = 0.0;
  int csteps = 0, cnb = 0;
  std::string params_file;
  bool auto_opt = false;
  c->add_option("--scheme", cscheme, "T1..T6 or TREF")->required();
  c->add_option("--J", cj, "coupling")->required();
  c->add_option("--t", ct, "total evolution time");
  c->add_option("--steps", csteps, "step count")->required();
  c->add_option("--nb", cnb, "blocks replaced per kept step")->required();
  auto* th_opt = c->add_option("--theta", theta_override,
                               "per-step angle override (else -J t / steps)");
  c->add_option("--params-file", params_file,
                "JSON with mirrored angles (array or {\"params\": [...]})");
  c->add_flag("--auto", auto_opt, "optimize mirrored angles first");
  auto* mi_opt =
      c->add_option("--max-infidelity", max_inf,
                    "fail (exit 1) if the block infidelity exceeds this");

  auto* d = app.add_subcommand("dynamics", "return-probability curves");
  d->fallthrough();
  std::vector<double> js = {0.1, 0.55, 1.0};
  std::vector<std::string> method_tokens;
  double t_max = 5.0, dt = 0.025;
  bool svg = false;
  d->add_option("--J", js, "couplings")->delimiter(',');
  d->add_option("--methods", method_tokens,
                "exact | trotter:SCHEME:STEPS | compressed:SCHEME:STEPS:NB")
      ->delimiter(',');
  d->add_option("--t-max", t_max, "grid end (exclusive)");
  d->add_option("--dt", dt, "grid step");
  d->add_flag("--svg", svg, "emit one SVG per J next to the CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (v->parsed())
      return run_verify(suite, samples, seed, break_constraint, tolerance, out);
    if (o->parsed()) return run_optimize(config, out, seed, jobs);
    if (c->parsed())
      return run_compress(cscheme, cj, ct, csteps, cnb, th_opt->count() > 0,
                          theta_override, params_file, auto_opt,
                          mi_opt->count() > 0, max_inf, out, seed);
    if (d->parsed())
      return run_dynamics(js, method_tokens, t_max, dt, svg, out, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
