#include "doctest.h"
#include "support.hpp"

#include "jetcalc/zero.hpp"

using namespace jt;

namespace {

const char* kHeat = R"(
[system]
name = "heat"
independent = ["t", "x"]
dependent = ["u"]

[[equation]]
name = "heat"
lead = "u_t"
rhs = "u_xx"
)";

JetSpace one_dep(bool with_p = true) {
  JetSpace sp;
  sp.indep = {"t", "x"};
  sp.dep = {"u"};
  if (with_p) sp.params = {"p"};
  return sp;
}

}  // namespace

TEST_CASE("frechet: gKdV linearization") {
  JetSpace sp = one_dep();
  sp.dep = {"u", "v"};
  Expr g = E("u_t + u^p*u_x + u_xxx", sp);
  CHECK(frechet(g, {E("v", sp), Expr()}) == E("v_t + u^p*v_x + p*u^(p-1)*u_x*v + v_xxx", sp));
  CHECK(frechet(E("u", sp), {E("v", sp), Expr()}) == E("v", sp));
  CHECK(frechet(g, {Expr(), Expr()}).is_zero());
}

TEST_CASE("frechet adjoint: gKdV and trivial cases") {
  JetSpace sp = one_dep();
  sp.dep = {"u", "w"};
  Expr g = E("u_t + u^p*u_x + u_xxx", sp);
  auto a = frechet_adjoint(g, E("w", sp), 1);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == E("-w_t - u^p*w_x - w_xxx", sp));
  Expr f = E("u*u_x", sp);
  CHECK(frechet_adjoint(f, E("1", sp), 1)[0] == euler(f, 1)[0]);
  CHECK(frechet_adjoint(E("x^2*t", sp), E("w", sp), 1)[0].is_zero());
}

TEST_CASE("adjoint current: examples") {
  JetSpace sp = one_dep();
  sp.dep = {"u", "v", "w"};
  auto psi = adjoint_current(E("u_x", sp), {E("v", sp)}, E("w", sp), 2);
  CHECK(psi.comp[0].is_zero());
  CHECK(psi.comp[1] == E("v*w", sp));

  Expr g = E("u_t + u^p*u_x + u_xxx", sp);
  auto c = adjoint_current(g, {E("v", sp)}, E("w", sp), 2);
  Expr lhs = E("w", sp) * frechet(g, {E("v", sp)}) - E("v", sp) * frechet_adjoint(g, E("w", sp), 1)[0];
  CHECK(is_zero(lhs - divergence(c)));

  auto z = adjoint_current(g, {Expr()}, E("w", sp), 2);
  CHECK(z.comp[0].is_zero());
  CHECK(z.comp[1].is_zero());
}

TEST_CASE("euler: potential gKdV Lagrangian") {
  JetSpace sp;
  sp.indep = {"t", "x"};
  sp.dep = {"w"};
  sp.params = {"p"};
  Expr L = E("-w_x*w_t/2 - w_x^(p+2)/((p+1)*(p+2)) + w_xx^2/2", sp);
  CHECK(euler(L, 1)[0] == E("w_tx + w_x^p*w_xx + w_xxxx", sp));
}

TEST_CASE("euler: annihilates divergences; higher Euler examples") {
  JetSpace sp = one_dep();
  CHECK(euler(total_derivative(E("u^3*u_xx + x*u_t", sp), 1), 1)[0].is_zero());
  auto mi = [&](const char* s) { return *sp.parse_letters(s); };
  CHECK(higher_euler(E("u_t", sp), 0, mi("t")) == E("1", sp));
  CHECK(higher_euler(E("u_xxx", sp), 0, mi("xxx")) == E("1", sp));
  CHECK(higher_euler(E("u_xxx", sp), 0, MultiIndex{}) == euler(E("u_xxx", sp), 1)[0]);
}

TEST_CASE("euler current: examples") {
  JetSpace sp = one_dep();
  sp.dep = {"u", "v"};
  auto c = euler_current(E("u_x^2/2", sp), {E("v", sp), Expr()}, 2);
  CHECK(c.comp[0].is_zero());
  CHECK(c.comp[1] == E("v*u_x", sp));

  // Upsilon minus the higher-Euler form differs by a divergence.
  Expr f = E("u*u_xx^2 + u_t*u_x", sp);
  VectorExpr v{E("v", sp), Expr()};
  auto ups = euler_current(f, v, 2);
  Current alt(2);
  for (auto& J : multi_indices_upto(2, 2)) {
    if (J.order() == 0) continue;
    Expr term = E("v", sp) * higher_euler(f, 0, J);
    for (int i = 0; i < 2; ++i)
      if (J[i] > 0) {
        alt.comp[i] += total_derivative(term, J.minus(MultiIndex{}.plus(i)));
        break;
      }
  }
  Current diff = ups - alt;
  CHECK(is_zero(divergence(diff)));
  CHECK(euler_current(f, {Expr(), Expr()}, 2).comp[1].is_zero());
}

TEST_CASE("divergence antiderivative: examples") {
  JetSpace sp = one_dep(false);
  auto F = divergence_antiderivative(E("u_x*u_xx", sp), sp);
  CHECK(F.comp[0].is_zero());
  CHECK(F.comp[1] == E("u_x^2/2", sp));

  Expr f = total_derivative(E("u^2", sp), 0) + total_derivative(E("u^3", sp), 1);
  auto G = divergence_antiderivative(f, sp);
  CHECK(is_zero(divergence(G) - f));

  CHECK_THROWS_AS(divergence_antiderivative(E("u", sp), sp), VarCalcError);
}

TEST_CASE("divergence antiderivative: shifted base point") {
  JetSpace sp = one_dep(false);
  // u^(-1) u_x is singular along the linear homotopy from 0.
  Expr f = E("u^(-1)*u_x", sp);
  CHECK_THROWS_AS(divergence_antiderivative(f, sp), VarCalcError);
  auto F = divergence_antiderivative(E("u^2*u_x + x*u_t", sp), sp, {E("1", sp)});
  CHECK(is_zero(divergence(F) - E("u^2*u_x + x*u_t", sp)));
}

TEST_CASE("helmholtz: gKdV fails at k=0 with p*u^(p-1)*u_x") {
  auto sys = corpus_system("gkdv.toml");
  auto rep = helmholtz_check(sys);
  CHECK_FALSE(rep.variational);
  bool found = false;
  for (auto& r : rep.residuals)
    if (r.J.order() == 0) {
      found = true;
      CHECK(r.residual == E("p*u^(p-1)*u_x", sys.space));
    }
  CHECK(found);
}

TEST_CASE("helmholtz: potential gKdV passes; heat fails at k=1") {
  auto pot = corpus_system("potential_gkdv.toml");
  auto rep = helmholtz_check(pot);
  CHECK(rep.variational);
  CHECK(rep.residuals.empty());

  auto heat = toml_system(kHeat);
  auto hr = helmholtz_check(heat);
  CHECK_FALSE(hr.variational);
  bool k1 = false;
  for (auto& r : hr.residuals)
    if (r.J == *heat.space.parse_letters("t")) {
      k1 = true;
      CHECK(r.residual == E("2", heat.space));
    }
  CHECK(k1);
}

TEST_CASE("lagrangian from system") {
  auto pot = corpus_system("potential_gkdv.toml");
  Expr L = lagrangian_from_system(pot);
  CHECK(L == E("w*w_tx/2 + w*w_x^p*w_xx/(p+2) + w*w_xxxx/2", pot.space));
  CHECK(euler(L, 1)[0] == pot.G()[0]);

  auto wave = corpus_system("wave.toml");
  Expr Lw = lagrangian_from_system(wave);
  CHECK(Lw == E("u*u_tt/2 - u*u_xx/2", wave.space));
  CHECK(euler(Lw, 1)[0] == wave.G()[0]);
}

TEST_CASE("scaling identity: gKdV weights") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  Expr G = sys.G()[0];
  auto coeff = [&](const char* s) { return *E(s, sp).constant_value(); };
  auto r2 = scaling_identity(G * E("u", sp), sys.scalings[0], 2);
  CHECK(r2.omega == coeff("1 - 4/p"));
  Expr f = G * E("u", sp);
  Expr P = r2.P[0];
  CHECK(is_zero(f.scaled(r2.omega) - P * euler(f, 1)[0] - divergence(r2.F)));
  CHECK(scaling_identity(G, sys.scalings[0], 2).omega == coeff("1 - 2/p"));
  CHECK(scaling_identity(G * E("u_xx + u^(p+1)/(p+1)", sp), sys.scalings[0], 2).omega == coeff("-1 - 4/p"));
}

TEST_CASE("scaling identity: critical weight and inhomogeneous input") {
  auto sys = corpus_system("gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  auto r = scaling_identity(sys.G()[0], sys.scalings[0], 2);
  CHECK(r.omega.is_zero());
  CHECK_THROWS_AS(scaling_weight(E("u + u_x", sp), sys.scalings[0]), VarCalcError);

  ScalingAction trivial{"none", {Coeff(0), Coeff(0)}, {Coeff(0)}};
  auto c = scaling_identity(E("7", sp), trivial, 2);
  CHECK(c.omega.is_zero());
  CHECK(is_zero(divergence(c.F)));
}
