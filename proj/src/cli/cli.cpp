#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "krylov/bilq.hpp"
#include "krylov/dual_solvers.hpp"
#include "krylov/functional.hpp"
#include "krylov/matrix_market.hpp"
#include "krylov/minres.hpp"
#include "krylov/problems.hpp"
#include "krylov/qmr.hpp"

namespace krylov::cli {

namespace {

const std::vector<std::string> kMethods = {"bilq",   "bicg",   "qmr",    "usymlq",
                                           "usymqr", "bilqr",  "trilqr", "minres-aug"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LogLevel { off, info, debug };

LogLevel log_level() {
  const char* v = std::getenv("KRYLOV_LOG");
  if (!v) return LogLevel::off;
  const std::string s(v);
  if (s == "debug") return LogLevel::debug;
  if (s == "info") return LogLevel::info;
  return LogLevel::off;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<double> parse_doubles(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_real<double>(item));
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid ") + what + ": " + text);
    }
  }
  if (expected && out.size() != expected)
    throw UsageError(std::string(what) + " expects " + std::to_string(expected) + " comma-separated values");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct ProblemOptions {
  std::string problem;
  std::string mm;
  std::string rhs;
  std::string dual_rhs;
  int nr = 50, ntheta = 50, n = 50;
  std::string chi = "1,1,1";
  std::string kappa = "5,20";
  bool random_rhs = false;
  std::uint64_t seed = 20190101;
  bool jacobi = false;
};

struct SolverOptions {
  std::string precision = "double";
  double atol = 1e-10;
  double rtol = 1e-7;
  int max_iter = 0;
  bool transfer = false;
  bool explicit_residuals = false;
  bool run_to_completion = false;
};

void add_problem_options(CLI::App* app, ProblemOptions& p) {
  app->add_option("--problem", p.problem, "Generated problem: polar-poisson, ode1d, convdiff2d");
  app->add_option("--mm", p.mm, "Matrix Market file");
  app->add_option("--rhs", p.rhs, "Right-hand side b (default: A times ones)");
  app->add_option("--dual-rhs", p.dual_rhs, "Dual right-hand side c (default: b)");
  app->add_option("--nr", p.nr, "Radial nodes (polar-poisson)");
  app->add_option("--ntheta", p.ntheta, "Angular nodes (polar-poisson)");
  app->add_option("--n", p.n, "Interior nodes per direction (ode1d, convdiff2d)");
  app->add_option("--chi", p.chi, "chi1,chi2,chi3 (ode1d)");
  app->add_option("--kappa", p.kappa, "kappa1,kappa2 (convdiff2d)");
  app->add_flag("--random-rhs", p.random_rhs, "Replace b and c by seeded normal samples");
  app->add_option("--seed", p.seed, "Seed for --random-rhs");
  app->add_flag("--jacobi", p.jacobi, "Left Jacobi scaling");
}

void add_solver_options(CLI::App* app, SolverOptions& s) {
  app->add_option("--precision", s.precision, "single, double or quad");
  app->add_option("--atol", s.atol, "Absolute tolerance");
  app->add_option("--rtol", s.rtol, "Relative tolerance");
  app->add_option("--max-iter", s.max_iter, "Iteration limit (default twice the system dimension)");
  app->add_flag("--transfer", s.transfer, "Use the Galerkin (BiCG/CG) point when available");
  app->add_flag("--explicit", s.explicit_residuals, "Test convergence on explicit residuals");
  app->add_flag("--run-to-completion", s.run_to_completion,
                "Joint solvers: iterate until both systems satisfy the test together");
}

TestProblem load_problem(const ProblemOptions& o) {
  if (o.problem.empty() == o.mm.empty()) throw UsageError("give exactly one of --problem or --mm");
  TestProblem p;
  if (!o.problem.empty()) {
    if (o.problem == "polar-poisson") {
      p = polar_poisson_reference(o.nr, o.ntheta);
    } else if (o.problem == "ode1d") {
      const auto v = parse_doubles(o.chi, 3, "--chi");
      p = ode_1d_reference(o.n, {v[0], v[1], v[2]});
    } else if (o.problem == "convdiff2d") {
      const auto v = parse_doubles(o.kappa, 2, "--kappa");
      p = convdiff_2d_reference(o.n, {v[0], v[1]});
    } else {
      throw UsageError("unknown problem: " + o.problem);
    }
  } else {
    p.name = std::filesystem::path(o.mm).stem().string();
    p.matrix = read_matrix_market(std::filesystem::path(o.mm));
    if (p.matrix.n_rows() != p.matrix.n_cols()) throw InvalidArgument("matrix must be square");
    const std::size_t n = p.matrix.n_rows();
    if (!o.rhs.empty()) {
      p.b = read_vector(std::filesystem::path(o.rhs));
      if (p.b.size() != n) throw InvalidArgument("right-hand side length does not match the matrix");
    } else {
      p.exact_primal.assign(n, 1.0);
      p.exact_kind = ExactKind::discrete;
      p.b.assign(n, 0.0);
      p.matrix.multiply(p.exact_primal, p.b);
    }
  }
  if (!o.dual_rhs.empty()) {
    p.c = read_vector(std::filesystem::path(o.dual_rhs));
    if (p.c.size() != p.b.size()) throw InvalidArgument("dual right-hand side length does not match the matrix");
  }
  if (o.random_rhs) {
    std::mt19937_64 gen(o.seed);
    std::normal_distribution<double> dist;
    for (auto& v : p.b) v = dist(gen);
    p.c.resize(p.b.size());
    for (auto& v : p.c) v = dist(gen);
    p.exact_primal.clear();
    p.exact_dual.clear();
    p.exact_kind = ExactKind::none;
  }
  if (p.c.empty()) p.c = p.b;
  return p;
}

struct Row {
  std::optional<double> rp, rd, ep, ed;
};

struct Outcome {
  std::string method;
  int iterations = 0;
  bool has_primal = true;
  bool has_dual = false;
  Status primal = Status::running;
  Status dual = Status::running;
  std::map<int, Row> rows;
  std::string message;
  std::vector<double> x, t;

  const Row* last_primal() const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      if (it->second.rp) return &it->second;
    return nullptr;
  }
  const Row* last_dual() const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
      if (it->second.rd) return &it->second;
    return nullptr;
  }
  Status worst() const {
    std::vector<Status> s;
    if (has_primal) s.push_back(primal);
    if (has_dual) s.push_back(dual);
    for (Status v : s)
      if (v == Status::breakdown) return Status::breakdown;
    for (Status v : s)
      if (v != Status::converged) return Status::max_iterations;
    return Status::converged;
  }
};

int exit_code(Status s) {
  switch (s) {
    case Status::converged: return exit_converged;
    case Status::breakdown: return exit_breakdown;
    default: return exit_max_iterations;
  }
}

template <Real T>
std::vector<T> cast_vector(const std::vector<double>& v) {
  return std::vector<T>(v.begin(), v.end());
}

template <Real T>
std::vector<double> to_doubles(const std::vector<T>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

template <Real T>
void add_history(Outcome& o, const History<T>& h, bool dual) {
  for (const auto& r : h) {
    Row& row = o.rows[r.iteration];
    const double rn = to_double(r.rnorm);
    std::optional<double> en;
    if (r.enorm) en = to_double(*r.enorm);
    if (dual) {
      row.rd = rn;
      row.ed = en;
    } else {
      row.rp = rn;
      row.ep = en;
    }
  }
}

template <Real T>
Outcome run_method(const std::string& method, const TestProblem& p, const SolverOptions& so, bool jacobi,
                   std::ostream& err) {
  const SparseMatrix<T> A = p.matrix.template cast<T>();
  LinearOperator<T> op = from_sparse(A);
  std::vector<T> b = cast_vector<T>(p.b);
  std::vector<T> c = cast_vector<T>(p.c);
  const std::vector<T> x_exact = cast_vector<T>(p.exact_primal);
  const std::vector<T> t_exact = cast_vector<T>(p.exact_dual);
  std::optional<DiagonalScaling<T>> scaling;
  if (jacobi) {
    scaling = DiagonalScaling<T>::from_matrix(A);
    op = jacobi_scaled(op, *scaling);
    scaling->apply_inverse(b);
  }

  StoppingRule<T> rule;
  rule.atol = static_cast<T>(so.atol);
  rule.rtol = static_cast<T>(so.rtol);
  const std::size_t dim = method == "minres-aug" ? 2 * p.b.size() : p.b.size();
  rule.max_iterations = so.max_iter > 0 ? so.max_iter : static_cast<int>(2 * dim);
  rule.explicit_residuals = so.explicit_residuals;
  rule.run_to_completion = so.run_to_completion;

  Monitoring<T> mon;
  mon.x_exact = x_exact;
  if (!jacobi) mon.t_exact = t_exact;
  if (log_level() == LogLevel::debug) {
    mon.observer = [&err, &method](const ConvergenceRecord<T>* pr, const ConvergenceRecord<T>* dr) {
      const ConvergenceRecord<T>* any = pr ? pr : dr;
      err << "[debug] " << method << " iter " << any->iteration;
      if (pr) err << " rnorm_primal " << fmt(to_double(pr->rnorm));
      if (dr) err << " rnorm_dual " << fmt(to_double(dr->rnorm));
      err << '\n';
    };
  }

  Outcome o;
  o.method = method;
  auto take_primal = [&](Solution<T>&& s) {
    o.iterations = s.iterations;
    o.primal = s.status;
    o.message = s.message;
    add_history(o, s.history, false);
    o.x = to_doubles(s.x);
  };
  auto take_joint = [&](DualSolution<T>&& s) {
    o.has_dual = true;
    o.iterations = s.iterations;
    o.primal = s.primal_status;
    o.dual = s.dual_status;
    o.message = s.message;
    add_history(o, s.primal_history, false);
    add_history(o, s.dual_history, true);
    if (scaling) scaling->apply_inverse(s.t);
    o.x = to_doubles(s.x);
    o.t = to_doubles(s.t);
  };

  if (method == "bilq")
    take_primal(bilq_solve<T>(op, b, c, rule, so.transfer, mon));
  else if (method == "bicg")
    take_primal(bicg_solve<T>(op, b, c, rule, mon));
  else if (method == "qmr")
    take_primal(qmr_solve<T>(op, b, c, rule, mon));
  else if (method == "usymlq")
    take_primal(usymlq_solve<T>(op, b, c, rule, so.transfer, mon));
  else if (method == "usymqr")
    take_primal(usymqr_primal_solve<T>(op, b, c, rule, mon));
  else if (method == "bilqr")
    take_joint(bilqr_solve<T>(op, b, c, rule, so.transfer, mon));
  else if (method == "trilqr")
    take_joint(trilqr_solve<T>(op, b, c, rule, so.transfer, mon));
  else if (method == "minres-aug")
    take_joint(minres_augmented_solve<T>(op, b, c, rule, mon));
  else
    throw UsageError("unknown method: " + method);
  return o;
}

Outcome dispatch(const std::string& method, const TestProblem& p, const SolverOptions& so, bool jacobi,
                 std::ostream& err) {
  if (so.precision == "single") return run_method<float>(method, p, so, jacobi, err);
  if (so.precision == "double") return run_method<double>(method, p, so, jacobi, err);
  if (so.precision == "quad") {
#if defined(KRYLOV_HAVE_QUADMATH)
    return run_method<quad>(method, p, so, jacobi, err);
#else
    throw UsageError("unsupported precision: quad");
#endif
  }
  throw UsageError("unsupported precision: " + so.precision);
}

void write_csv(std::ostream& out, const Outcome& o) {
  out << "iter,rnorm_primal,rnorm_dual,enorm_primal,enorm_dual\n";
  for (const auto& [k, r] : o.rows)
    out << k << ',' << fmt(r.rp) << ',' << fmt(r.rd) << ',' << fmt(r.ep) << ',' << fmt(r.ed) << '\n';
}

void write_vector(const std::string& path, const std::vector<double>& v) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  for (double x : v) f << fmt(x) << '\n';
}

void check_method(const std::string& m) {
  for (const auto& k : kMethods)
    if (k == m) return;
  throw UsageError("unknown method: " + m);
}

void report(std::ostream& err, const Outcome& o) {
  const LogLevel lvl = log_level();
  const Status s = o.worst();
  if (lvl == LogLevel::off && s == Status::converged) return;
  err << o.method << ": " << status_name(s) << " after " << o.iterations << " iterations";
  if (!o.message.empty()) err << " (" << o.message << ")";
  err << '\n';
}

int cmd_solve(const std::string& method, const ProblemOptions& po, const SolverOptions& so, const std::string& output,
              const std::string& save_x, const std::string& save_t, std::ostream& out, std::ostream& err) {
  check_method(method);
  const TestProblem p = load_problem(po);
  const Outcome o = dispatch(method, p, so, po.jacobi, err);
  if (output.empty()) {
    write_csv(out, o);
  } else {
    std::ofstream f(output);
    if (!f) throw Error("cannot write " + output);
    write_csv(f, o);
  }
  if (!save_x.empty()) write_vector(save_x, o.x);
  if (!save_t.empty() && o.has_dual) write_vector(save_t, o.t);
  report(err, o);
  return exit_code(o.worst());
}

int cmd_compare(const std::string& methods, const ProblemOptions& po, const SolverOptions& so,
                const std::string& output_dir, std::ostream& out, std::ostream& err) {
  const auto list = split(methods);
  if (list.empty()) throw UsageError("--methods is empty");
  for (const auto& m : list) check_method(m);
  const TestProblem p = load_problem(po);
  if (!output_dir.empty()) std::filesystem::create_directories(output_dir);
  out << "method,iterations,status,rnorm_primal,rnorm_dual,enorm_primal,enorm_dual\n";
  Status worst = Status::converged;
  for (const auto& m : list) {
    Outcome o;
    try {
      o = dispatch(m, p, so, po.jacobi, err);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      err << m << ": " << e.what() << '\n';
      out << m << ",0,error,,,,\n";
      worst = Status::breakdown;
      continue;
    }
    if (!output_dir.empty()) {
      std::ofstream f(std::filesystem::path(output_dir) / (m + ".csv"));
      if (!f) throw Error("cannot write into " + output_dir);
      write_csv(f, o);
    }
    const Row* lp = o.last_primal();
    const Row* ld = o.has_dual ? o.last_dual() : nullptr;
    const Status s = o.worst();
    out << m << ',' << o.iterations << ',' << status_name(s) << ',' << (lp ? fmt(lp->rp) : "") << ','
        << (ld ? fmt(ld->rd) : "") << ',' << (lp ? fmt(lp->ep) : "") << ',' << (ld ? fmt(ld->ed) : "") << '\n';
    report(err, o);
    if (s == Status::breakdown || (s == Status::max_iterations && worst == Status::converged)) worst = s;
  }
  return exit_code(worst);
}

int cmd_superconv(const std::string& ns, const std::string& chi, double atol, double rtol, int max_iter,
                  const std::string& output, std::ostream& out) {
  std::vector<int> Ns;
  for (const auto& s : split(ns)) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      Ns.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("invalid --N list: " + ns);
    }
  }
  if (Ns.empty()) throw UsageError("--N list is empty");
  for (int n : Ns)
    if (n < 16) throw UsageError("--N values must be at least 16");
  const auto c = parse_doubles(chi, 3, "--chi");
  SuperconvergenceOptions opt;
  opt.chi = {c[0], c[1], c[2]};
  opt.atol = atol;
  opt.rtol = rtol;
  opt.max_iterations = max_iter;
  const SuperconvergenceReport rep = superconvergence_study(Ns, opt);

  std::ofstream file;
  std::ostream* os = &out;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw Error("cannot write " + output);
    os = &file;
  }
  *os << "N,h,naive_error,corrected_error,iterations,converged\n";
  for (const auto& r : rep.rows)
    *os << r.N << ',' << fmt(r.h) << ',' << fmt(r.naive_error) << ',' << fmt(r.corrected_error) << ','
        << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
  if (rep.naive_slope) *os << "# naive_slope=" << fmt(*rep.naive_slope) << '\n';
  if (rep.corrected_slope) *os << "# corrected_slope=" << fmt(*rep.corrected_slope) << '\n';
  for (const auto& r : rep.rows)
    if (!r.converged) return exit_max_iterations;
  return exit_converged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krylov solvers for primal and adjoint linear systems", "krylov"};
  app.require_subcommand(1);

  ProblemOptions po_solve, po_compare;
  SolverOptions so_solve, so_compare;
  std::string method, output, save_x, save_t;
  auto* solve = app.add_subcommand("solve", "Run one method and write its convergence history as CSV");
  solve->add_option("--method", method, "bilq, bicg, qmr, usymlq, usymqr, bilqr, trilqr, minres-aug")->required();
  solve->add_option("--output", output, "CSV path (default: standard output)");
  solve->add_option("--save-x", save_x, "Write the primal solution");
  solve->add_option("--save-t", save_t, "Write the dual solution (joint methods)");
  add_problem_options(solve, po_solve);
  add_solver_options(solve, so_solve);

  std::string methods, output_dir;
  auto* compare = app.add_subcommand("compare", "Run several methods on one problem and print a summary");
  compare->add_option("--methods", methods, "Comma-separated method list")->required();
  compare->add_option("--output-dir", output_dir, "Directory receiving one CSV per method");
  add_problem_options(compare, po_compare);
  add_solver_options(compare, so_compare);

  std::string ns = "16,32,64,128,256", chi = "1,1,1", sc_output;
  double sc_atol = 0, sc_rtol = 1e-8;
  int sc_max_iter = 20000;
  auto* superconv = app.add_subcommand("superconv", "Functional estimates of the 1D problem under refinement");
  superconv->add_option("--N", ns, "Comma-separated interior node counts");
  superconv->add_option("--chi", chi, "chi1,chi2,chi3");
  superconv->add_option("--atol", sc_atol, "Absolute solver tolerance");
  superconv->add_option("--rtol", sc_rtol, "Relative solver tolerance");
  superconv->add_option("--max-iter", sc_max_iter, "Iteration limit per solve");
  superconv->add_option("--output", sc_output, "CSV path (default: standard output)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_converged;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*solve) return cmd_solve(method, po_solve, so_solve, output, save_x, save_t, out, err);
    if (*compare) return cmd_compare(methods, po_compare, so_compare, output_dir, out, err);
    return cmd_superconv(ns, chi, sc_atol, sc_rtol, sc_max_iter, sc_output, out);
  } catch (const InitializationBreakdown& e) {
    err << "breakdown: " << e.what() << '\n';
    return exit_breakdown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace krylov::cli
