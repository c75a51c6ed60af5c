#include <doctest.h>

#include "smalp/unify.hpp"
#include "support/generators.hpp"

using namespace smalp;

namespace {

Atom A(const char* text) { return *parse_goal(text).as_atom(); }
Term T(const char* text) { return parse_term(text); }

Substitution S(std::initializer_list<std::pair<const char*, const char*>> bs) {
  Substitution s;
  for (auto [v, t] : bs) s.bind(v, T(t));
  return s;
}

}  // namespace

TEST_CASE("mgu") {
  CHECK(mgu(A("p(X)"), A("p(a)")) == S({{"X", "a"}}));
  CHECK(mgu(A("p(X, f(Y))"), A("p(g(Z), f(b))")) == S({{"X", "g(Z)"}, {"Y", "b"}}));
  CHECK_FALSE(mgu(A("p(a)"), A("q(a)")));
  CHECK_FALSE(mgu(A("p(a)"), A("p(a, b)")));
  CHECK_FALSE(mgu(A("p(X)"), A("p(f(X))")));
  CHECK_FALSE(mgu(A("p(f(a))"), A("p(f(b))")));
  // Variable-variable: the right-hand variable is bound.
  CHECK(mgu(A("p(_G1)"), A("p(X)")) == S({{"X", "_G1"}}));
  // Bindings stay idempotent across chained equations.
  auto s = mgu(A("q(X, Y, Y)"), A("q(Y, Z, f(W))"));
  REQUIRE(s);
  for (const auto& [v, t] : s->bindings()) {
    for (const auto& u : variables(t)) CHECK_FALSE(s->lookup(u));
  }
  CHECK(apply(*s, A("q(X, Y, Y)")) == apply(*s, A("q(Y, Z, f(W))")));
}

TEST_CASE("apply") {
  CHECK(apply(S({{"X", "a"}}), A("p(X)")) == A("p(a)"));
  Expr e = parse_goal("#&s2(q(X), 0.7)");
  CHECK(apply(S({{"X", "a"}}), e) == parse_goal("#&s2(q(a), 0.7)"));
  CHECK(apply(Substitution::identity(), e) == e);
}

TEST_CASE("compose") {
  CHECK(compose(S({{"X", "Y"}}), S({{"Y", "a"}})) == S({{"X", "a"}, {"Y", "a"}}));
  Substitution s = S({{"X", "f(Y)"}, {"Z", "b"}});
  CHECK(compose(Substitution::identity(), s) == s);
  CHECK(compose(s, Substitution::identity()) == s);
  // X/Y then Y/X collapses X's binding.
  CHECK(compose(S({{"X", "Y"}}), S({{"Y", "X"}})) == S({{"Y", "X"}}));

  testing::Gen g(11);
  auto random_subst = [&] {
    Substitution r;
    for (const char* v : {"X", "Y", "Zed"}) {
      if (g.chance(0.5)) r.bind(v, testing::random_term(g, 2));
    }
    return r;
  };
  for (int i = 0; i < 200; ++i) {
    Substitution a = random_subst(), b = random_subst(), c = random_subst();
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    Term t = testing::random_term(g, 3);
    CHECK(apply(compose(a, b), t) == apply(b, apply(a, t)));
  }
}

TEST_CASE("restrict") {
  CHECK(restrict(S({{"X", "a"}, {"X1", "a"}}), {"X"}) == S({{"X", "a"}}));
  CHECK(restrict(S({{"X", "a"}}), {}).empty());
  CHECK(restrict(Substitution::identity(), {"X", "Y"}).empty());
}

TEST_CASE("rename apart") {
  Program p = parse_program("p(X) <prod| @aver(q(X), #v) with #w.");
  FreshNames fresh;
  RuleDef r1 = rename_apart(p.rules[0], fresh);
  RuleDef r2 = rename_apart(p.rules[0], fresh);
  CHECK(r1.head == A("p(_G1)"));
  CHECK(r1.body == parse_goal("@aver(q(_G1), #v)"));
  CHECK(r1.weight == Expr::symbol("w"));
  CHECK(r2.head == A("p(_G2)"));
  CHECK(fresh.peek() == 3);
}

TEST_CASE("renaming equivalence") {
  CHECK(equivalent_up_to_renaming(S({{"X", "f(_G1)"}}), S({{"X", "f(_G7)"}})));
  CHECK_FALSE(equivalent_up_to_renaming(S({{"X", "f(_G1, _G1)"}}), S({{"X", "f(_G7, _G8)"}})));
  CHECK_FALSE(equivalent_up_to_renaming(S({{"X", "a"}}), S({{"Y", "a"}})));
  CHECK_FALSE(equivalent_up_to_renaming(S({{"X", "_G1"}, {"Y", "_G2"}}), S({{"X", "_G3"}, {"Y", "_G3"}})));
}

TEST_CASE("substitution rendering round trip") {
  Substitution s = S({{"X", "a"}, {"Y", "f(Z, b)"}});
  CHECK(render(s) == "{X/a,Y/f(Z,b)}");
  CHECK(render(Substitution::identity()) == "{}");
  CHECK(parse_substitution(render(s)) == s);
  CHECK(parse_substitution(render(s, {true})) == s);
}

TEST_CASE("mgu agrees with a grounding oracle on a sample") {
  auto atoms = testing::small_atoms();
  auto pool = testing::ground_pool(3);
  testing::Gen g(3);
  for (int i = 0; i < 2000; ++i) {
    const Atom& a = g.pick(atoms);
    const Atom& b = g.pick(atoms);
    auto m = mgu(a, b);
    auto oracle = testing::brute_force_unifier(a, b, pool);
    CAPTURE(render(a));
    CAPTURE(render(b));
    CHECK(m.has_value() == oracle.has_value());
    if (m) CHECK(apply(*m, a) == apply(*m, b));
  }
}
