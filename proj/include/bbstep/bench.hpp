#pragma once

// Benchmark harness: configuration parsing, the (method × epsilon × alpha0)
// grid runner, and summary/trace emitters.

#include <bbstep/descent.hpp>
#include <bbstep/errors.hpp>
#include <bbstep/problems.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace bbstep {

enum class OutputFormat { csv, json, markdown };

struct BenchConfig {
  std::string problem = "rosenbrock";
  std::vector<Method> methods{Method::bb1, Method::bb2, Method::bb3};
  std::vector<double> epsilons{1e-1, 1e-2, 1e-4, 1e-8};
  std::size_t max_iter = kDefaultMaxIter;
  std::vector<double> alpha0s{kDefaultAlpha0};
  Safeguard safeguard;
  StopKind stop = StopKind::target_distance;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> trace_dir;
  bool table1 = false;
};

/// alpha0 values swept by the table1 preset.
inline const std::vector<double> kTable1Alpha0Sweep{1e-4, 1e-3, 1e-2, 1e-1};

/// Reference iteration counts for the Rosenbrock experiment at
/// ε = 1e-1, 1e-2, 1e-4, 1e-8; empty means the 5000-iteration cap was hit.
struct ReferenceColumn {
  Method method;
  std::array<std::optional<int>, 4> iterations;
};
inline const std::array<ReferenceColumn, 3> kTable1Reference{{
    {Method::bb1, {154, 160, 166, 172}},
    {Method::bb2, {std::nullopt, std::nullopt, std::nullopt, std::nullopt}},
    {Method::bb3, {32, 38, 44, 46}},
}};

struct SummaryRow {
  Method method = Method::bb3;
  double epsilon = 0.0;
  RunStatus status = RunStatus::max_iter;
  std::size_t iterations = 0;
  std::optional<double> final_distance; // empty when the minimizer is unknown
  double alpha0 = 0.0;

  friend bool operator==(const SummaryRow &, const SummaryRow &) = default;
};

/// `--help` was requested; what() holds the rendered help text.
class HelpRequested : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Number formatting

/// Shortest decimal text that parses back to the same double.
inline std::string format_roundtrip(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

/// 17 significant digits, as printed in trace files.
inline std::string format_full(double v) {
  std::array<char, 64> buf{};
  int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

inline double parse_double(std::string_view text) {
  std::string s(text);
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw UsageError("not a number: '" + s + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Name lookups

inline Method parse_method(std::string_view name) {
  for (Method m : {Method::bb1, Method::bb2, Method::bb3, Method::fixed})
    if (name == to_string(m))
      return m;
  throw UsageError("unknown method '" + std::string(name) + "'", "--methods");
}

inline RunStatus parse_status(std::string_view name) {
  for (RunStatus s : {RunStatus::converged, RunStatus::max_iter, RunStatus::diverged,
                      RunStatus::degenerate})
    if (name == to_string(s))
      return s;
  throw Error("unknown run status '" + std::string(name) + "'");
}

inline OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  if (name == "md" || name == "markdown") return OutputFormat::markdown;
  throw UsageError("unknown format '" + std::string(name) + "'", "--format");
}

/// "none", "fallback" or "clamp:<min>,<max>".
inline Safeguard parse_safeguard(std::string_view text) {
  if (text == "none")
    return Safeguard::none();
  if (text == "fallback")
    return Safeguard::fallback();
  constexpr std::string_view prefix = "clamp:";
  if (text.starts_with(prefix)) {
    const auto body = text.substr(prefix.size());
    const auto comma = body.find(',');
    if (comma != std::string_view::npos) {
      try {
        const double lo = parse_double(body.substr(0, comma));
        const double hi = parse_double(body.substr(comma + 1));
        if (0.0 < lo && lo < hi)
          return Safeguard::clamp(lo, hi);
      } catch (const UsageError &) {
      }
    }
  }
  throw UsageError("--safeguard: expected none, fallback or clamp:<min>,<max> with 0 < min < max",
                   "--safeguard");
}

/// "rosenbrock", "quadratic" (diag(1, 10)) or "quadratic:<d1>,<d2>,...".
inline Problem make_problem(std::string_view id) {
  if (id == "rosenbrock")
    return rosenbrock();
  if (id == "quadratic")
    return quadratic({{1.0, 10.0}, {0.0, 0.0}});
  constexpr std::string_view prefix = "quadratic:";
  if (id.starts_with(prefix)) {
    Vector diag;
    std::string_view rest = id.substr(prefix.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      diag.push_back(parse_double(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    try {
      return quadratic({diag, Vector(diag.size(), 0.0)});
    } catch (const InvalidSpec &e) {
      throw UsageError(std::string("--problem: ") + e.what(), "--problem");
    }
  }
  throw UsageError("unknown problem '" + std::string(id) + "'", "--problem");
}

// ---------------------------------------------------------------------------
// Command line

namespace bench_detail {

inline std::string flag_from_message(const std::string &msg) {
  const auto pos = msg.find("--");
  if (pos == std::string::npos)
    return {};
  auto end = msg.find_first_of(" \t\n:,=", pos);
  return msg.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

} // namespace bench_detail

/// Parses harness arguments (program name excluded). Unknown flags and
/// invalid values raise UsageError naming the flag.
inline BenchConfig parse_config(const std::vector<std::string> &args) {
  BenchConfig cfg;

  CLI::App app{"Barzilai-Borwein gradient descent benchmark"};
  app.name("bbbench");

  std::string problem = cfg.problem;
  std::vector<std::string> methods;
  std::vector<double> eps;
  std::size_t max_iter = cfg.max_iter;
  std::vector<double> alpha0s;
  std::string safeguard = "none";
  std::string stop = "target";
  std::string out;
  std::string format = "csv";
  std::string trace_dir;

  auto *o_problem = app.add_option("--problem", problem, "rosenbrock | quadratic | quadratic:d1,d2,...");
  auto *o_methods = app.add_option("--methods", methods, "comma list of bb1,bb2,bb3,fixed")->delimiter(',');
  auto *o_eps = app.add_option("--eps", eps, "comma list of stopping tolerances")->delimiter(',');
  auto *o_max_iter = app.add_option("--max-iter", max_iter, "iteration cap");
  app.add_option("--alpha0", alpha0s, "comma list of first-step steplengths")->delimiter(',');
  auto *o_safeguard = app.add_option("--safeguard", safeguard, "none | fallback | clamp:min,max");
  auto *o_stop = app.add_option("--stop", stop, "target | gradnorm");
  app.add_option("--out", out, "summary output path (stdout if omitted)");
  app.add_option("--format", format, "csv | json | md");
  app.add_option("--trace-dir", trace_dir, "directory for per-run trace csv files");
  auto *table1 = app.add_subcommand("table1", "Rosenbrock preset: bb1/bb2/bb3, four tolerances, alpha0 sweep");
  table1->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError &e) {
    const std::string msg = e.what();
    throw UsageError(msg, bench_detail::flag_from_message(msg));
  }

  cfg.table1 = table1->parsed();
  if (cfg.table1) {
    for (auto *pinned : {o_problem, o_methods, o_eps, o_max_iter, o_safeguard, o_stop})
      if (pinned->count() > 0)
        throw UsageError("table1 pins " + pinned->get_name() + "; drop the flag",
                         pinned->get_name());
    cfg.alpha0s = kTable1Alpha0Sweep;
  }

  cfg.problem = problem;
  make_problem(cfg.problem); // validates the id

  if (!methods.empty()) {
    cfg.methods.clear();
    for (const auto &m : methods)
      cfg.methods.push_back(parse_method(m));
  }
  if (o_eps->count() > 0) {
    if (eps.empty())
      throw UsageError("--eps: list must be nonempty", "--eps");
    for (double e : eps)
      if (!(e > 0.0) || !std::isfinite(e))
        throw UsageError("--eps: tolerances must be positive", "--eps");
    cfg.epsilons = eps;
  }
  if (max_iter < 1)
    throw UsageError("--max-iter: must be at least 1", "--max-iter");
  cfg.max_iter = max_iter;
  if (!alpha0s.empty()) {
    for (double a : alpha0s)
      if (!(a > 0.0) || !std::isfinite(a))
        throw UsageError("--alpha0: values must be positive", "--alpha0");
    cfg.alpha0s = alpha0s;
  }
  cfg.safeguard = parse_safeguard(safeguard);
  if (stop == "target")
    cfg.stop = StopKind::target_distance;
  else if (stop == "gradnorm")
    cfg.stop = StopKind::gradient_norm;
  else
    throw UsageError("--stop: expected target or gradnorm", "--stop");
  if (!out.empty())
    cfg.out = out;
  cfg.format = parse_format(format);
  if (!trace_dir.empty())
    cfg.trace_dir = trace_dir;
  return cfg;
}

// ---------------------------------------------------------------------------
// Trace files

/// Header `k,x1..xn,f,grad_norm,alpha`, one row per record, 17 digits.
inline void write_trace(std::ostream &os, const RunResult &result) {
  if (result.trace.empty())
    throw DomainError("write_trace: empty trace");
  const std::size_t n = result.trace.front().x.size();
  os << "k";
  for (std::size_t i = 1; i <= n; ++i)
    os << ",x" << i;
  os << ",f,grad_norm,alpha\n";
  for (const auto &rec : result.trace) {
    os << rec.k;
    for (double v : rec.x)
      os << ',' << format_full(v);
    os << ',' << format_full(rec.f_value) << ',' << format_full(rec.grad_norm) << ',';
    if (rec.alpha)
      os << format_full(*rec.alpha);
    os << '\n';
  }
}

inline void emit_trace(const RunResult &result, const std::filesystem::path &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw IoError("cannot open trace file " + path.string());
  write_trace(os, result);
  if (!os)
    throw IoError("failed writing trace file " + path.string());
}

namespace bench_detail {

inline std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ','))
    cells.push_back(cell);
  if (!line.empty() && line.back() == ',')
    cells.emplace_back();
  return cells;
}

} // namespace bench_detail

/// Reads back a trace written by write_trace.
inline std::vector<IterationRecord> parse_trace(std::istream &is) {
  std::string line;
  if (!std::getline(is, line))
    throw Error("parse_trace: missing header");
  const auto header = bench_detail::split_csv_line(line);
  if (header.size() < 5 || header.front() != "k")
    throw Error("parse_trace: bad header");
  const std::size_t n = header.size() - 4;

  std::vector<IterationRecord> out;
  while (std::getline(is, line)) {
    const auto cells = bench_detail::split_csv_line(line);
    if (cells.size() != n + 4)
      throw Error("parse_trace: bad row '" + line + "'");
    IterationRecord rec;
    rec.k = static_cast<std::size_t>(std::stoull(cells[0]));
    for (std::size_t i = 0; i < n; ++i)
      rec.x.push_back(parse_double(cells[1 + i]));
    rec.f_value = parse_double(cells[n + 1]);
    rec.grad_norm = parse_double(cells[n + 2]);
    if (!cells[n + 3].empty())
      rec.alpha = parse_double(cells[n + 3]);
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::string trace_file_name(const Problem &problem, Method method, double epsilon,
                                   double alpha0) {
  return problem.name + "_" + std::string(to_string(method)) + "_eps" +
         format_roundtrip(epsilon) + "_alpha0" + format_roundtrip(alpha0) + ".csv";
}

// ---------------------------------------------------------------------------
// Grid runner

inline SolverConfig solver_config_for(const BenchConfig &cfg, const Problem &problem,
                                      Method method, double epsilon, double alpha0) {
  SolverConfig sc;
  sc.method = method;
  sc.alpha0 = alpha0;
  sc.max_iter = cfg.max_iter;
  sc.safeguard = cfg.safeguard;
  sc.stopping.epsilon = epsilon;
  sc.stopping.kind = (cfg.stop == StopKind::target_distance && problem.minimizer)
                         ? StopKind::target_distance
                         : StopKind::gradient_norm;
  return sc;
}

inline bool row_order(const SummaryRow &a, const SummaryRow &b) {
  if (a.method != b.method)
    return a.method < b.method;
  if (a.epsilon != b.epsilon)
    return a.epsilon > b.epsilon;
  return a.alpha0 < b.alpha0;
}

/// One row per (method, epsilon, alpha0), sorted by method, then epsilon
/// from loosest to tightest, then alpha0 ascending.
inline std::vector<SummaryRow> run_benchmark(const BenchConfig &cfg) {
  if (cfg.methods.empty() || cfg.epsilons.empty() || cfg.alpha0s.empty())
    throw DomainError("run_benchmark: methods, epsilons and alpha0s must be nonempty");
  const Problem problem = make_problem(cfg.problem);
  if (cfg.trace_dir)
    std::filesystem::create_directories(*cfg.trace_dir);

  std::vector<SummaryRow> rows;
  for (Method method : cfg.methods) {
    for (double eps : cfg.epsilons) {
      for (double a0 : cfg.alpha0s) {
        const SolverConfig sc = solver_config_for(cfg, problem, method, eps, a0);
        const RunResult result = run(problem, sc);

        SummaryRow row;
        row.method = method;
        row.epsilon = eps;
        row.status = result.status;
        row.iterations = result.iterations;
        if (problem.minimizer)
          row.final_distance = distance(result.final_x, *problem.minimizer);
        row.alpha0 = a0;
        rows.push_back(row);

        if (cfg.trace_dir)
          emit_trace(result, std::filesystem::path(*cfg.trace_dir) /
                                 trace_file_name(problem, method, eps, a0));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), row_order);
  return rows;
}

// ---------------------------------------------------------------------------
// Summary emitters

inline constexpr std::string_view kSummaryCsvHeader =
    "method,epsilon,status,iterations,final_distance,alpha0";

inline void write_summary_csv(std::ostream &os, const std::vector<SummaryRow> &rows) {
  os << kSummaryCsvHeader << '\n';
  for (const auto &r : rows) {
    os << to_string(r.method) << ',' << format_roundtrip(r.epsilon) << ',' << to_string(r.status)
       << ',' << r.iterations << ',';
    if (r.final_distance)
      os << format_roundtrip(*r.final_distance);
    os << ',' << format_roundtrip(r.alpha0) << '\n';
  }
}

inline nlohmann::ordered_json summary_to_json(const std::vector<SummaryRow> &rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto &r : rows) {
    nlohmann::ordered_json obj;
    obj["method"] = std::string(to_string(r.method));
    obj["epsilon"] = r.epsilon;
    obj["status"] = std::string(to_string(r.status));
    obj["iterations"] = r.iterations;
    obj["final_distance"] = r.final_distance ? nlohmann::ordered_json(*r.final_distance) : nlohmann::ordered_json();
    obj["alpha0"] = r.alpha0;
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline std::string markdown_cell(const SummaryRow &r) {
  switch (r.status) {
  case RunStatus::converged: return std::to_string(r.iterations);
  case RunStatus::max_iter: return "--";
  case RunStatus::diverged: return "div";
  case RunStatus::degenerate: return "deg";
  }
  return "?";
}

inline std::string method_label(Method m) {
  std::string s(to_string(m));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

/// One table per alpha0: epsilons as rows, methods as columns. "--" marks a
/// run that hit the iteration cap, "div" a run that overflowed, "deg" a run
/// stopped by an undefined steplength.
inline void write_summary_markdown(std::ostream &os, const std::vector<SummaryRow> &rows) {
  std::vector<double> alpha0s, epsilons;
  std::vector<Method> methods;
  for (const auto &r : rows) {
    if (std::find(alpha0s.begin(), alpha0s.end(), r.alpha0) == alpha0s.end())
      alpha0s.push_back(r.alpha0);
    if (std::find(epsilons.begin(), epsilons.end(), r.epsilon) == epsilons.end())
      epsilons.push_back(r.epsilon);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
  }
  std::sort(alpha0s.begin(), alpha0s.end());
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  std::sort(methods.begin(), methods.end());

  bool first = true;
  for (double a0 : alpha0s) {
    if (!first)
      os << '\n';
    first = false;
    os << "alpha0 = " << format_roundtrip(a0) << "\n\n";
    os << "| epsilon |";
    for (Method m : methods)
      os << ' ' << method_label(m) << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < methods.size(); ++i)
      os << "---|";
    os << '\n';
    for (double eps : epsilons) {
      os << "| " << format_roundtrip(eps) << " |";
      for (Method m : methods) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const SummaryRow &r) {
          return r.method == m && r.epsilon == eps && r.alpha0 == a0;
        });
        os << ' ' << (it == rows.end() ? std::string() : markdown_cell(*it)) << " |";
      }
      os << '\n';
    }
  }
}

inline void write_summary(std::ostream &os, const std::vector<SummaryRow> &rows,
                          OutputFormat format) {
  if (rows.empty())
    throw DomainError("write_summary: no rows");
  switch (format) {
  case OutputFormat::csv: write_summary_csv(os, rows); break;
  case OutputFormat::json: os << summary_to_json(rows).dump(2) << '\n'; break;
  case OutputFormat::markdown: write_summary_markdown(os, rows); break;
  }
}

inline void emit_summary(const std::vector<SummaryRow> &rows, OutputFormat format,
                         const std::filesystem::path &path) {
  if (rows.empty())
    throw DomainError("emit_summary: no rows");
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw IoError("cannot open summary file " + path.string());
  write_summary(os, rows, format);
  if (!os)
    throw IoError("failed writing summary file " + path.string());
}

/// Reference table for the Rosenbrock preset, same layout as the markdown summary.
inline void write_reference_markdown(std::ostream &os) {
  const std::array<double, 4> eps{1e-1, 1e-2, 1e-4, 1e-8};
  os << "reference (alpha0 unstated)\n\n| epsilon |";
  for (const auto &col : kTable1Reference)
    os << ' ' << method_label(col.method) << " |";
  os << "\n|---|---|---|---|\n";
  for (std::size_t i = 0; i < eps.size(); ++i) {
    os << "| " << format_roundtrip(eps[i]) << " |";
    for (const auto &col : kTable1Reference)
      os << ' ' << (col.iterations[i] ? std::to_string(*col.iterations[i]) : "--") << " |";
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Summary readers

inline std::vector<SummaryRow> parse_summary_csv(std::istream &is) {
  std::string line;
  if (!std::getline(is, line) || line != kSummaryCsvHeader)
    throw Error("parse_summary_csv: bad header");
  std::vector<SummaryRow> rows;
  while (std::getline(is, line)) {
    const auto c = bench_detail::split_csv_line(line);
    if (c.size() != 6)
      throw Error("parse_summary_csv: bad row '" + line + "'");
    SummaryRow r;
    r.method = parse_method(c[0]);
    r.epsilon = parse_double(c[1]);
    r.status = parse_status(c[2]);
    r.iterations = static_cast<std::size_t>(std::stoull(c[3]));
    if (!c[4].empty())
      r.final_distance = parse_double(c[4]);
    r.alpha0 = parse_double(c[5]);
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<SummaryRow> parse_summary_json(const nlohmann::ordered_json &arr) {
  std::vector<SummaryRow> rows;
  for (const auto &obj : arr) {
    SummaryRow r;
    r.method = parse_method(obj.at("method").get<std::string>());
    r.epsilon = obj.at("epsilon").get<double>();
    r.status = parse_status(obj.at("status").get<std::string>());
    r.iterations = obj.at("iterations").get<std::size_t>();
    if (!obj.at("final_distance").is_null())
      r.final_distance = obj.at("final_distance").get<double>();
    r.alpha0 = obj.at("alpha0").get<double>();
    rows.push_back(r);
  }
  return rows;
}

} // namespace bbstep
