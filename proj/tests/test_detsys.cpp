#include "doctest.h"
#include "support.hpp"

#include "jetcalc/zero.hpp"

using namespace jt;

namespace {

bool all_zero(const VectorExpr& v) {
  for (auto& e : v)
    if (!is_zero(e)) return false;
  return true;
}

VectorExpr V(const std::string& s, const JetSpace& sp) { return parse_vector(s, sp); }

std::vector<VectorExpr> span_of(const std::vector<std::string>& items, const JetSpace& sp) {
  std::vector<VectorExpr> out;
  for (auto& s : items) out.push_back(V(s, sp));
  return canonical_span(out);
}

LinearAnsatz gkdv_ansatz(const PdeSystem& sys, int degree) {
  std::vector<JetVar> vars;
  for (auto& v : sys.low_order_variables()) vars.push_back(v);
  LinearAnsatz a;
  for (auto& m : monomial_basis(vars, degree, 2)) a.basis.push_back({m});
  return a;
}

}  // namespace

TEST_CASE("symmetry residual: gKdV") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  CHECK(all_zero(symmetry_residual(sys, V("-u_x", sp))));
  auto s2 = corpus_system("gkdv.toml", {{"p", "2"}});
  CHECK(all_zero(symmetry_residual(s2, V("-(u + 3*t*u_t + x*u_x)", s2.space))));
  auto r = symmetry_residual(sys, V("u", sp));
  CHECK_FALSE(is_zero(r[0]));
  auto o = numeric_zero_check(r[0], sp, OracleOptions{10, 5, 8});
  CHECK(o.nonzero > 0);
}

TEST_CASE("adjoint-symmetry residual: gKdV") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  CHECK(all_zero(adjoint_symmetry_residual(sys, V("u_xx + u^(p+1)/(p+1)", sp))));
  CHECK(all_zero(adjoint_symmetry_residual(sys, V("1", sp))));
  auto r = adjoint_symmetry_residual(sys, V("u_x", sp));
  CHECK(numeric_zero_check(r[0], sp, OracleOptions{10, 5, 8}).nonzero > 0);
}

TEST_CASE("multiplier verification: gKdV") {
  auto p1 = corpus_system("gkdv.toml", {{"p", "1"}});
  CHECK(verify_multiplier(p1, V("x - t*u", p1.space)).verdict == ZeroVerdict::Zero);
  auto p2 = corpus_system("gkdv.toml", {{"p", "2"}});
  CHECK(verify_multiplier(p2, V("t*(3*u_xx + u^3) - x*u", p2.space)).verdict == ZeroVerdict::Zero);
  auto sys = corpus_system("gkdv.toml");
  auto vv = verify_multiplier(sys, V("u_x", sys.space));
  CHECK(vv.verdict == ZeroVerdict::NonZero);
  CHECK(numeric_zero_check(multiplier_residual(sys, V("u_x", sys.space))[0], sys.space).nonzero > 0);
}

TEST_CASE("helmholtz-type split: gKdV") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  auto q3 = helmholtz_type_split(sys, V("u_xx + u^(p+1)/(p+1)", sp));
  CHECK(q3.adjoint_symmetry);
  CHECK(q3.terms.empty());
  CHECK(q3.multiplier);

  auto ux = helmholtz_type_split(sys, V("u_x", sp));
  CHECK_FALSE(ux.adjoint_symmetry);
  CHECK_FALSE(ux.multiplier);
}

TEST_CASE("helmholtz-type split: generic low-order Q reduces to one condition") {
  const char* text = R"(
[system]
name = "gkdv"
independent = ["t", "x"]
dependent = ["u"]

[params]
p = "free"

[[function]]
name = "q"
args = ["a", "b", "c", "d", "e"]

[[equation]]
name = "gkdv"
lead = "u_t"
rhs = "-u^p*u_x - u_xxx"
)";
  auto sys = toml_system(text);
  auto& sp = sys.space;
  Expr Q = E("q(t, x, u, u_x, u_xx)", sp);
  auto rep = helmholtz_type_split(sys, {Q});
  // The x term is 2C and the undifferentiated term is D_x C, with
  // C = D_x(dQ/du_xx) - dQ/du_x.
  Expr cond = total_derivative(partial(Q, parse_jet_var("u_xx", sp)), 1) - partial(Q, parse_jet_var("u_x", sp));
  REQUIRE(rep.terms.size() == 2);
  for (auto& t : rep.terms) {
    Expr want = t.J.order() == 0 ? total_derivative(cond, 1) : cond.scaled(Coeff(2));
    CHECK(t.J.order() <= 1);
    CHECK(zero_test(t.residual - want).verdict == ZeroVerdict::Zero);
  }
}

TEST_CASE("adjoint split agrees with multiplier verification") {
  auto sys = corpus_system("gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  for (auto q : {"1", "u", "u_xx + u^3/3", "t*(3*u_xx + u^3) - x*u", "u_x", "x - t*u", "u_xx", "u^2"}) {
    auto Q = V(q, sp);
    bool mult = verify_multiplier(sys, Q).verdict == ZeroVerdict::Zero;
    auto rep = helmholtz_type_split(sys, Q);
    CHECK_MESSAGE(mult == (rep.adjoint_symmetry && rep.terms.empty() && rep.nonlinear.is_zero()), q);
  }
}

TEST_CASE("variational symmetries: potential gKdV") {
  auto sys = corpus_system("potential_gkdv.toml");
  auto& sp = sys.space;
  CHECK(all_zero(variational_symmetry_residual(sys, V("-w_x", sp))));
  CHECK(all_zero(variational_symmetry_residual(sys, V("0", sp))));
  auto r = variational_symmetry_residual(sys, V("(1 - 2/p)*w - 3*t*w_t - x*w_x", sp));
  CHECK(is_zero(r[0] - sys.G()[0] * E("2 - 4/p", sp)));
}

TEST_CASE("for a variational system adjoint-symmetries are symmetries") {
  auto sys = corpus_system("potential_gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  for (auto q : {"1", "w_t", "w_x", "3*t*w_t + x*w_x", "w", "x*w_t", "w_x^2"}) {
    auto a = adjoint_symmetry_residual(sys, V(q, sp));
    auto s = symmetry_residual(sys, V(q, sp));
    CHECK_MESSAGE(is_zero(a[0] - s[0]), q);
  }
}

TEST_CASE("gauge multipliers: Euler fluid") {
  auto sys = corpus_system("euler2d.toml");
  auto& sp = sys.space;
  // Equation order: u1, u2, pressure, div.
  Expr chi = E("t*x + u2", sp);
  auto Q = gauge_multiplier(sys, chi);
  REQUIRE(Q.size() == 4);
  CHECK(Q[0] == -total_derivative(chi, 1));
  CHECK(Q[1] == -total_derivative(chi, 2));
  CHECK(Q[2] == -chi);
  CHECK(Q[3] == total_derivative(chi, 0));
  CHECK(verify_multiplier(sys, Q).verdict == ZeroVerdict::Zero);
  CHECK(triviality_check(sys, gauge_multiplier(sys, E("1", sp))).verdict == Triviality::Trivial);
  CHECK(all_zero(gauge_multiplier(sys, Expr())));
}

TEST_CASE("gauge multipliers: MHD") {
  auto sys = corpus_system("mhd.toml");
  auto& sp = sys.space;
  // Equation order: div, mass, u1, u2, u3, B1, B2, B3.
  Expr chi = E("t*y + rho", sp);
  auto Q = gauge_multiplier(sys, chi);
  REQUIRE(Q.size() == 8);
  CHECK(Q[0] == total_derivative(chi, 0));
  for (int k = 1; k <= 4; ++k) CHECK(Q[k].is_zero());
  for (int i = 1; i <= 3; ++i) CHECK(Q[4 + i] == -total_derivative(chi, i));
  CHECK(verify_multiplier(sys, Q).verdict == ZeroVerdict::Zero);
  auto tr = triviality_check(sys, Q, {E("1", sp), E("t*y", sp), E("rho", sp), E("y", sp)});
  CHECK(tr.verdict == Triviality::Trivial);
  REQUIRE(tr.witness.size() == 1);
  CHECK(is_zero(tr.witness[0] - chi));
  // u1 is not a gauge multiplier component pattern.
  CHECK(triviality_check(sys, Q, {E("1", sp), E("y", sp)}).verdict == Triviality::NonTrivial);
}

TEST_CASE("gauge multiplier needs an identity") {
  auto sys = corpus_system("gkdv.toml");
  CHECK_THROWS(gauge_multiplier(sys, E("1", sys.space)));
}

TEST_CASE("triviality check") {
  auto sys = corpus_system("gkdv.toml");
  CHECK(triviality_check(sys, sys.G()).verdict == Triviality::Trivial);
  CHECK(triviality_check(sys, V("u", sys.space)).verdict == Triviality::NonTrivial);
  auto eu = corpus_system("euler2d.toml");
  auto tr = triviality_check(eu, gauge_multiplier(eu, E("1", eu.space)));
  CHECK(tr.verdict == Triviality::Trivial);
  REQUIRE(tr.witness.size() == 1);
  CHECK(tr.witness[0] == E("1", eu.space));
}

TEST_CASE("triviality check over a free parameter") {
  // Euler keeps rho free, so the gauge columns carry 1/rho.
  auto eu = corpus_system("euler2d.toml");
  auto& sp = eu.space;
  Expr chi = E("t*x + u2", sp);
  std::vector<Expr> basis{E("1", sp), E("t*x", sp), E("u1", sp), E("u2", sp)};
  auto tr = triviality_check(eu, gauge_multiplier(eu, chi), basis);
  CHECK(tr.verdict == Triviality::Trivial);
  REQUIRE(tr.witness.size() == 1);
  CHECK(is_zero(tr.witness[0] - chi));
  CHECK(triviality_check(eu, parse_vector(std::vector<std::string>{"1", "0", "0", "0"}, sp), basis).verdict == Triviality::NonTrivial);
}

TEST_CASE("solve: gKdV multipliers per p") {
  for (auto [p, want] : std::vector<std::pair<const char*, std::vector<std::string>>>{
           {"1", {"1", "u", "u_xx + u^2/2", "x - t*u"}},
           {"2", {"1", "u", "u_xx + u^3/3", "t*(3*u_xx + u^3) - x*u"}},
           {"3", {"1", "u", "u_xx + u^4/4"}}}) {
    auto sys = corpus_system("gkdv.toml", {{"p", p}});
    auto sol = solve_linear_ansatz(Target::Multipliers, sys, default_ansatz(sys, Target::Multipliers));
    CHECK_MESSAGE(canonical_span(sol.basis) == span_of(want, sys.space), "p=", p);
    for (auto& b : sol.basis) CHECK(verify_multiplier(sys, b).verdict == ZeroVerdict::Zero);
  }
}

TEST_CASE("solve: symbolic p is rejected") {
  auto sys = corpus_system("gkdv.toml");
  CHECK_THROWS_AS(solve_linear_ansatz(Target::Multipliers, sys, gkdv_ansatz(sys, 2)), SolveError);
}

TEST_CASE("solve: symmetries of gKdV at p=2") {
  auto sys = corpus_system("gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  LinearAnsatz a;
  for (auto s : {"1", "u", "u_x", "u_xx", "t*u_x", "x*u_x", "t*u_xxx", "t*u^2*u_x", "u^2", "x*u"}) a.basis.push_back({E(s, sp)});
  auto sol = solve_linear_ansatz(Target::Symmetries, sys, a);
  for (auto& b : sol.basis) CHECK(all_zero(symmetry_residual(sys, b)));
  // translation in x and the scaling, written without u_t
  CHECK(canonical_span(sol.basis) == span_of({"u_x", "u + x*u_x - 3*t*(u^2*u_x + u_xxx)"}, sp));
}

TEST_CASE("solve: Noether consistency on potential gKdV at p=2") {
  auto sys = corpus_system("potential_gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  LinearAnsatz a;
  for (auto s : {"1", "t", "x", "w", "w_t", "w_x", "t*w_t", "x*w_x", "t*w_x", "x*w_t", "w_xx", "w_tt"})
    a.basis.push_back({E(s, sp)});
  auto m = solve_linear_ansatz(Target::Multipliers, sys, a);
  auto v = solve_linear_ansatz(Target::Variational, sys, a);
  CHECK(canonical_span(m.basis) == canonical_span(v.basis));
  CHECK(canonical_span(m.basis) == span_of({"1", "t", "w_t", "w_x", "3*t*w_t + x*w_x"}, sp));
}
