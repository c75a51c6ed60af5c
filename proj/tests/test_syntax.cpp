#include <doctest.h>

#include "smalp/error.hpp"
#include "smalp/symsubst.hpp"
#include "smalp/syntax.hpp"
#include "support/generators.hpp"

using namespace smalp;
using K = ConnectiveKind;

namespace {

const char* kSymbolic =
    "p(X) <#s1| #&s2(q(X), @aver(r(X), s(X))) with 0.9.\n"
    "q(a) with #v.\n"
    "r(X) with 0.7.\n"
    "s(X) with 0.5.\n";

Atom atom1(const char* p, Term t) { return Atom{p, {std::move(t)}}; }

}  // namespace

TEST_CASE("facts and rules") {
  Program fact = parse_program("q(a) with 0.8.");
  REQUIRE(fact.rules.size() == 1);
  CHECK(fact.rules[0].is_fact);
  CHECK(fact.rules[0].head == atom1("q", Term::compound("a")));
  CHECK(fact.rules[0].weight == Expr::value(0.8));
  CHECK(fact.rules[0].body == Expr::value(1.0));

  Program symbolic = parse_program(kSymbolic);
  REQUIRE(symbolic.rules.size() == 4);
  const RuleDef& r = symbolic.rules[0];
  CHECK_FALSE(r.is_fact);
  CHECK(r.impl == ConnName::symbol("s1"));
  Expr x = Expr::atom(atom1("r", Term::variable("X")));
  Expr expected_body = Expr::app(
      K::Conjunction, ConnName::symbol("s2"),
      {Expr::atom(atom1("q", Term::variable("X"))),
       Expr::app(K::Aggregator, ConnName::concrete("aver"), {x, Expr::atom(atom1("s", Term::variable("X")))})});
  CHECK(r.body == expected_body);
  CHECK(r.weight == Expr::value(0.9));
  CHECK(symbolic.rules[1].weight == Expr::symbol("v"));

  Program sym_weight = parse_program("p(X) <prod| 0.9 with #v.");
  CHECK(sym_weight.rules[0].weight == Expr::symbol("v"));
  CHECK(sym_weight.rules[0].impl == ConnName::concrete("prod"));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_program("p(X) <prod| <godel|(a,b) with 1."), ImplicationInBody);
  CHECK_THROWS_AS(parse_goal("@aver(<prod|(a), 0.5)"), ImplicationInBody);
  CHECK_THROWS_AS(parse_program("p(X) with 0.5"), ParseError);
  CHECK_THROWS_AS(parse_program("p(X) with 1.5."), ParseError);
  CHECK_THROWS_AS(parse_program("P(x) with 0.5."), ParseError);
  CHECK_THROWS_AS(parse_program("p(X) <prod| q(X)."), ParseError);
  CHECK_THROWS_AS(parse_goal("p(X) q"), ParseError);
  CHECK_THROWS_AS(parse_program("p(X) <#s| #|s(q(X), 0.5) with 0.9."), SortClash);
  CHECK_THROWS_AS(parse_program("p with #v. q <prod| #&v(0.5, 0.5) with 1."), SortClash);
  // A pair symbol's conjunction face is not a clash.
  CHECK_NOTHROW(parse_program("p <#s| #&s(q, 0.5) with 0.9."));

  try {
    parse_program("p(a) with 0.5.\nq(b) wiht 0.5.");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("goals") {
  CHECK(parse_goal("popularity(sun)") == Expr::atom(atom1("popularity", Term::compound("sun"))));
  CHECK(parse_goal("@aver(p(a), 0.8)") ==
        Expr::app(K::Aggregator, ConnName::concrete("aver"),
                  {Expr::atom(atom1("p", Term::compound("a"))), Expr::value(0.8)}));
  CHECK(parse_goal("0.5") == Expr::value(0.5));
  CHECK(parse_goal("1") == Expr::value(1.0));
  CHECK(parse_goal("p") == Expr::atom(Atom{"p", {}}));
  CHECK(parse_goal("p(f(X, g(_G1)))").as_atom()->args[0].args[1].args[0] == Term::variable("_G1"));
}

TEST_CASE("rendering") {
  CHECK(render(parse_goal("@aver(0.7,0.5)")) == "@aver(0.7,0.5)");
  CHECK(render(parse_goal("@aver(0.7, 0.5)"), {true}) == "@aver(0.7, 0.5)");
  CHECK(render(Expr::value(1.0)) == "1.0");
  CHECK(render(Expr::value(0.0)) == "0.0");
  CHECK(render_value(0.54) == "0.54");
  CHECK(render(parse_goal("#&s1(0.9, #&s2(#v, 0.6))"), {true}) == "#&s1(0.9, #&s2(#v, 0.6))");
  CHECK(render(parse_program("q(a) with #v.")) == "q(a) with #v.\n");

  Program symbolic = parse_program(kSymbolic);
  CHECK(parse_program(render(symbolic)) == symbolic);
  CHECK(render(symbolic.rules[0], {true}) == "p(X) <#s1| #&s2(q(X), @aver(r(X), s(X))) with 0.9.");
}

TEST_CASE("round trip on fuzzed expressions and programs") {
  testing::Gen g(7);
  for (int i = 0; i < 300; ++i) {
    Expr e = testing::random_expr(g, 4);
    CAPTURE(render(e));
    CHECK(parse_goal(render(e)) == e);
    CHECK(parse_goal(render(e, {true})) == e);
  }
  for (int i = 0; i < 100; ++i) {
    Program p = testing::random_program(g);
    CAPTURE(render(p));
    CHECK(parse_program(render(p)) == p);
  }
}

TEST_CASE("validation against the registry") {
  Registry reg = builtin_registry();
  CHECK_NOTHROW(validate(parse_program(kSymbolic), reg));
  CHECK_THROWS_AS(validate(parse_program("p <tnorm| q with 1."), reg), UnknownConnective);
  CHECK_THROWS_AS(validate(parse_goal("@max(0.1, 0.2)"), reg), UnknownConnective);
  CHECK_THROWS_AS(validate(parse_goal("@aver(0.1)"), reg), ArityMismatch);
  CHECK_NOTHROW(validate(parse_goal("@aver(0.1, 0.2, 0.3)"), reg));
}
