#include <doctest.h>

#include "checks.hpp"
#include "krylov/bilq.hpp"
#include "krylov/dual_solvers.hpp"
#include "krylov/problems.hpp"
#include "krylov/qmr.hpp"

using namespace krylov;

namespace {

StoppingRule<double> fixed_steps(int k) {
  StoppingRule<double> r;
  r.atol = 0;
  r.rtol = 0;
  r.max_iterations = k;
  return r;
}

double rel(std::span<const double> x, std::span<const double> ref) {
  return oracle::distance<double>(x, ref) / oracle::norm<double>(ref);
}

bool same_record(const ConvergenceRecord<double>& a, const ConvergenceRecord<double>& b) {
  return a.iteration == b.iteration && a.rnorm == b.rnorm && a.rnorm_lq == b.rnorm_lq && a.rnorm_cg == b.rnorm_cg &&
         a.znorm == b.znorm && a.status == b.status && a.galerkin == b.galerkin;
}

}  // namespace

TEST_CASE("identity operator") {
  const auto op = from_sparse(SparseMatrix<double>::identity(2));
  const std::vector<double> e1{1, 0}, e2{0, 1};
  const auto s = bilqr_solve<double>(op, e1, e1, StoppingRule<double>{});
  CHECK(s.iterations == 1);
  CHECK(s.primal_status == Status::converged);
  CHECK(s.dual_status == Status::converged);
  CHECK(s.x == e1);
  CHECK(s.t == e1);

  const auto t = trilqr_solve<double>(op, e1, e2, StoppingRule<double>{});
  CHECK(t.primal_status == Status::converged);
  CHECK(t.dual_status == Status::converged);
  CHECK(oracle::distance<double>(t.x, e1) <= 1e-15);
  CHECK(oracle::distance<double>(t.t, e2) <= 1e-15);
  CHECK_THROWS_AS(bilqr_solve<double>(op, e1, e2, StoppingRule<double>{}), InitializationBreakdown);

  const auto b = oracle::random_vector<double>(2, 3);
  CHECK(oracle::distance<double>(usymlq_solve<double>(op, b, {}, StoppingRule<double>{}).x, b) <= 1e-15);
  CHECK(oracle::distance<double>(usymqr_solve<double>(op, e1, b, StoppingRule<double>{}).x, b) <= 1e-15);
}

TEST_CASE("final iterates match dense solves") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto m = oracle::random_matrix<double>(20, seed);
    const auto A = oracle::to_dense(m);
    const auto op = from_sparse(m);
    const auto b = oracle::random_vector<double>(20, seed + 5);
    const auto c = oracle::random_vector<double>(20, seed + 6);
    const auto x = oracle::dense_solve(A, b);
    const auto t = oracle::dense_solve(oracle::transpose(A), c);
    StoppingRule<double> rule;
    rule.atol = 0;
    rule.rtol = 1e-10;
    const auto s = bilqr_solve<double>(op, b, c, rule);
    CHECK(s.primal_status == Status::converged);
    CHECK(s.dual_status == Status::converged);
    CHECK(rel(s.x, x) <= 1e-6);
    CHECK(rel(s.t, t) <= 1e-6);
    const auto r = trilqr_solve<double>(op, b, c, rule);
    CHECK(r.primal_status == Status::converged);
    CHECK(r.dual_status == Status::converged);
    CHECK(rel(r.x, x) <= 1e-6);
    CHECK(rel(r.t, t) <= 1e-6);

    const auto m15 = oracle::random_matrix<double>(15, seed + 30);
    const auto A15 = oracle::to_dense(m15);
    const auto b15 = oracle::random_vector<double>(15, seed + 31);
    const auto c15 = oracle::random_vector<double>(15, seed + 32);
    const auto lq = usymlq_solve<double>(from_sparse(m15), b15, c15, rule);
    CHECK(lq.status == Status::converged);
    CHECK(rel(lq.x, oracle::dense_solve(A15, b15)) <= 1e-6);
    const auto qr = usymqr_solve<double>(from_sparse(m15), b15, c15, rule);
    CHECK(qr.status == Status::converged);
    CHECK(rel(qr.x, oracle::dense_solve(oracle::transpose(A15), c15)) <= 1e-6);
  }
}

TEST_CASE("joint run leaves the primal recurrences untouched") {
  const auto m = oracle::random_matrix<double>(40, 9);
  const auto op = from_sparse(m);
  const auto b = oracle::random_vector<double>(40, 10);
  const auto c = oracle::random_vector<double>(40, 11);
  StoppingRule<double> rule;
  rule.rtol = 1e-12;
  rule.atol = 0;
  for (bool transfer : {false, true}) {
    const auto joint = bilqr_solve<double>(op, b, c, rule, transfer);
    const auto alone = bilq_solve<double>(op, b, c, rule, transfer);
    REQUIRE(joint.primal_history.size() == alone.history.size());
    for (std::size_t i = 0; i < alone.history.size(); ++i)
      CHECK(same_record(joint.primal_history[i], alone.history[i]));
    CHECK(joint.x == alone.x);
    const auto dual_alone = qmr_dual_solve<double>(op, b, c, rule);
    CHECK(joint.t == dual_alone.x);
  }
}

TEST_CASE("histories share iteration indices") {
  const auto m = oracle::random_matrix<double>(30, 12);
  const auto b = oracle::random_vector<double>(30, 13);
  const auto c = oracle::random_vector<double>(30, 14);
  const auto s = trilqr_solve<double>(from_sparse(m), b, c, StoppingRule<double>{});
  for (std::size_t i = 0; i < s.primal_history.size(); ++i) CHECK(s.primal_history[i].iteration == int(i) + 1);
  for (std::size_t i = 0; i < s.dual_history.size(); ++i) CHECK(s.dual_history[i].iteration == int(i) + 1);
  CHECK(std::max(s.primal_history.size(), s.dual_history.size()) == static_cast<std::size_t>(s.iterations));
}

TEST_CASE("early stop freezes the converged system") {
  const auto p = ode_1d_reference(50, {});
  const auto op = from_sparse(p.matrix);
  const auto s = trilqr_solve<double>(op, p.b, p.c, StoppingRule<double>{});
  CHECK(s.primal_status == Status::converged);
  CHECK(s.dual_status == Status::converged);
  CHECK(s.primal_history.size() != s.dual_history.size());
  const bool dual_first = s.dual_history.size() < s.primal_history.size();
  const auto& first = dual_first ? s.dual_history : s.primal_history;
  const int stop = first.back().iteration;
  // rerun with the iteration limit at the first system's stop: its iterate is already final
  auto rule = StoppingRule<double>{};
  rule.max_iterations = stop;
  const auto cut = trilqr_solve<double>(op, p.b, p.c, rule);
  if (dual_first)
    CHECK(cut.t == s.t);
  else
    CHECK(cut.x == s.x);

  auto rtc = StoppingRule<double>{};
  rtc.run_to_completion = true;
  const auto full = trilqr_solve<double>(op, p.b, p.c, rtc);
  CHECK(full.primal_history.size() == full.dual_history.size());
  CHECK(full.primal_status == Status::converged);
  CHECK(full.dual_status == Status::converged);
  CHECK(full.iterations == s.iterations);
}

TEST_CASE("USYMQR residual is monotone") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto m = oracle::random_matrix<double>(30, seed, 1.5);
    const auto b = oracle::random_vector<double>(30, seed + 7);
    const auto c = oracle::random_vector<double>(30, seed + 8);
    auto rule = StoppingRule<double>{};
    rule.explicit_residuals = true;
    const auto s = usymqr_solve<double>(from_sparse(m), b, c, rule);
    for (std::size_t i = 1; i < s.history.size(); ++i)
      CHECK(s.history[i].rnorm <= s.history[i - 1].rnorm + 1e-10);
    const auto t = trilqr_solve<double>(from_sparse(m), b, c, rule);
    for (std::size_t i = 1; i < t.dual_history.size(); ++i)
      CHECK(t.dual_history[i].rnorm <= t.dual_history[i - 1].rnorm + 1e-10);
  }
}

TEST_CASE("USYMLQ error is monotone on the 2D convection-diffusion problem") {
  const auto p = convdiff_2d_reference(50, {});
  const auto xstar = oracle::sparse_solve(p.matrix, p.b);
  Monitoring<double> mon;
  mon.x_exact = xstar;
  const auto s = usymlq_solve<double>(from_sparse(p.matrix), p.b, p.c, StoppingRule<double>{}, false, mon);
  CHECK(s.status == Status::converged);
  const double slack = 1e-10 * oracle::norm<double>(xstar);
  int violations = 0;
  for (std::size_t i = 1; i < s.history.size(); ++i)
    if (*s.history[i].enorm > *s.history[i - 1].enorm + slack) ++violations;
  CHECK(violations == 0);
}

TEST_CASE("symmetric operator with b = c") {
  const auto m = oracle::random_symmetric<double>(30, 17);
  const auto op = from_sparse(m);
  const auto A = oracle::to_dense(m);
  const auto b = oracle::random_vector<double>(30, 18);
  for (int k = 1; k <= 12; ++k) {
    const auto bl = bilqr_solve<double>(op, b, b, fixed_steps(k));
    const auto tl = trilqr_solve<double>(op, b, b, fixed_steps(k));
    const auto q = qmr_dual_solve<double>(op, b, b, fixed_steps(k));
    CHECK(oracle::distance<double>(bl.x, tl.x) <= 1e-8);
    CHECK(oracle::distance<double>(bl.t, q.x) <= 1e-10);
    CHECK(oracle::distance<double>(tl.t, q.x) <= 1e-8);
  }
  // both systems are the same: the two halves reach one solution
  const auto s = bilqr_solve<double>(op, b, b, StoppingRule<double>{});
  CHECK(s.primal_status == Status::converged);
  CHECK(s.dual_status == Status::converged);
  const auto x = oracle::dense_solve(A, b);
  CHECK(rel(s.x, x) <= 1e-6);
  CHECK(rel(s.t, x) <= 1e-6);
}

TEST_CASE("TriLQR accepts orthogonal right-hand sides") {
  const auto m = oracle::random_matrix<double>(25, 19);
  const auto A = oracle::to_dense(m);
  std::vector<double> b(25, 0.0), c(25, 0.0);
  b[0] = 1;
  c[1] = 1;
  const auto s = trilqr_solve<double>(from_sparse(m), b, c, StoppingRule<double>{});
  CHECK(s.primal_status == Status::converged);
  CHECK(s.dual_status == Status::converged);
  CHECK(oracle::residual<double>(A, s.x, b) <= StoppingRule<double>{}.threshold(1.0));
}

TEST_CASE("1D adjoint pair converges for both joint solvers") {
  const auto p = ode_1d_reference(50, {});
  const auto op = from_sparse(p.matrix);
  const auto bl = bilqr_solve<double>(op, p.b, p.c, StoppingRule<double>{});
  const auto tl = trilqr_solve<double>(op, p.b, p.c, StoppingRule<double>{});
  CHECK(bl.primal_status == Status::converged);
  CHECK(bl.dual_status == Status::converged);
  CHECK(tl.primal_status == Status::converged);
  CHECK(tl.dual_status == Status::converged);
  CHECK(bl.iterations >= 40);
  CHECK(bl.iterations <= 80);
  CHECK(tl.iterations >= 65);
  CHECK(tl.iterations <= 120);
}
