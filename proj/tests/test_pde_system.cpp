#include "doctest.h"
#include "support.hpp"

#include "jetcalc/zero.hpp"

using namespace jt;

TEST_CASE("validate: gKdV is valid and in evolution form") {
  auto sys = corpus_system("gkdv.toml");
  auto rep = sys.validate();
  CHECK(rep.evolution_form);
}

TEST_CASE("validate: Euler fluid with its pressure identity") {
  auto sys = corpus_system("euler2d.toml");
  auto rep = sys.validate();
  CHECK_FALSE(rep.evolution_form);
  REQUIRE(sys.identities.size() == 1);
  CHECK(is_zero(sys.apply_identity(sys.identities[0], sys.G())));
}

TEST_CASE("validate: MHD identity holds") {
  auto sys = corpus_system("mhd.toml");
  REQUIRE(sys.identities.size() == 1);
  CHECK(is_zero(sys.apply_identity(sys.identities[0], sys.G())));
}

TEST_CASE("validate: rhs containing a lead descendant is rejected") {
  const char* bad = R"(
[system]
name = "bad"
independent = ["t", "x"]
dependent = ["u"]

[[equation]]
name = "e"
lead = "u_t"
rhs = "u_tx + u_xxx"
)";
  try {
    toml_system(bad);
    FAIL("expected rejection");
  } catch (const FileError& e) {
    std::string msg = e.what();
    CHECK(msg.find("u_tx") != std::string::npos);
    CHECK(msg.find("e") != std::string::npos);
  }
}

TEST_CASE("validate: a false identity is rejected") {
  const char* bad = R"(
[system]
name = "bad"
independent = ["t", "x"]
dependent = ["u", "v"]

[[equation]]
name = "a"
lead = "u_t"
rhs = "v_x"

[[equation]]
name = "b"
lead = "v_t"
rhs = "u_x"

[[identity]]
name = "wrong"
terms = [["a", "1", "x"], ["b", "-1", "x"]]
)";
  CHECK_THROWS_AS(toml_system(bad), FileError);
}

TEST_CASE("restrict: worked examples") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  CHECK(sys.restrict(E("u_t + u^p*u_x + u_xxx", sp)).is_zero());
  Expr direct = -total_derivative(total_derivative(E("u^p*u_x + u_xxx", sp), 1), 1);
  CHECK(sys.restrict(E("u_txx", sp)) == direct);
  CHECK(sys.restrict(E("x*u_xx", sp)) == E("x*u_xx", sp));
}

TEST_CASE("restrict: u_txx agrees numerically with the substitution chain") {
  auto sys = corpus_system("gkdv.toml", {{"p", "3"}});
  auto& sp = sys.space;
  // On the solved form, u_txx is D_x^2 of the rhs; compare at random points.
  Expr r = sys.restrict(E("u_txx", sp));
  Expr chain = total_derivative(total_derivative(sys.equations[0].rhs, 1), 1);
  auto o = numeric_zero_check(r - chain, sp, OracleOptions{25, 3, 8});
  CHECK(o.evaluated == 25);
  CHECK(o.nonzero == 0);
}

TEST_CASE("restrict: no lead descendants survive") {
  auto sys = corpus_system("ex07_camassa_holm.toml");
  auto& sp = sys.space;
  Expr r = sys.restrict(E("m_tx*u_txx + u_xxxx*m_t", sp));
  for (auto& v : jet_vars(r)) CHECK_FALSE(sys.is_lead_descendant(v));
}

TEST_CASE("lift: worked examples") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  auto l1 = sys.lift_off_solution_space(E("u_t", sp));
  CHECK(l1.restricted == E("-u^p*u_x - u_xxx", sp));
  REQUIRE(l1.linear.size() == 1);
  CHECK(l1.linear[0].J.order() == 0);
  CHECK(l1.linear[0].coeff == E("1", sp));
  CHECK(l1.nonlinear.is_zero());

  auto l2 = sys.lift_off_solution_space(total_derivative(E("u^2/2", sp), 0));
  REQUIRE(l2.linear.size() == 1);
  CHECK(l2.linear[0].coeff == E("u", sp));

  auto l3 = sys.lift_off_solution_space(E("u_t^2", sp));
  CHECK_FALSE(l3.nonlinear.is_zero());
}

TEST_CASE("low-order variables") {
  auto sys = corpus_system("gkdv.toml");
  auto& sp = sys.space;
  auto low = sys.low_order_variables();
  std::set<JetVar> want{parse_jet_var("u", sp), parse_jet_var("u_x", sp), parse_jet_var("u_xx", sp)};
  CHECK(low == want);

  const char* transport = R"(
[system]
name = "transport"
independent = ["t", "x"]
dependent = ["u"]

[[equation]]
name = "e"
lead = "u_t"
rhs = "-u*u_x"
)";
  auto tr = toml_system(transport);
  CHECK(tr.low_order_variables() == std::set<JetVar>{parse_jet_var("u", tr.space)});
}

TEST_CASE("low-order variables: breaking-wave equation in u") {
  const char* bw = R"(
[system]
name = "b-family"
independent = ["t", "x"]
dependent = ["u"]

[[equation]]
name = "e"
lead = "u_txx"
rhs = "u_t + 3*u*u_x - 2*u_x*u_xx - u*u_xxx"
)";
  auto sys = toml_system(bw);
  auto& sp = sys.space;
  std::set<JetVar> want;
  for (auto s : {"u", "u_t", "u_x", "u_tx", "u_xx"}) want.insert(parse_jet_var(s, sp));
  CHECK(sys.low_order_variables() == want);
}

TEST_CASE("properties: restrict is idempotent and a homomorphism; lift reconstructs") {
  auto sys = corpus_system("gkdv.toml", {{"p", "2"}});
  auto& sp = sys.space;
  RandomExpr gen(sp, 23);
  Expr G = sys.G()[0];
  for (int k = 0; k < 1000; ++k) {
    Expr a = gen.expr(3, 3), b = gen.expr(2, 3);
    Expr ra = sys.restrict(a), rb = sys.restrict(b);
    REQUIRE(sys.restrict(ra) == ra);
    REQUIRE(sys.restrict(a * b) == sys.restrict(ra * rb));
    REQUIRE(sys.restrict(a + b) == ra + rb);
    // Linear in leads: e = c0 + c1 * u_t*J with c's lead-free.
    Expr lin = sys.restrict(gen.expr(2, 2)) + sys.restrict(gen.expr(1, 1)) * total_derivative(E("u_t", sp), gen.pick(0, 1));
    auto lift = sys.lift_off_solution_space(lin);
    REQUIRE(lift.nonlinear.is_zero());
    Expr rec = lift.restricted;
    for (auto& t : lift.linear) rec += t.coeff * total_derivative(G, t.J);
    REQUIRE(is_zero(lin - rec));
  }
}
