#include <doctest.h>

#include <set>

#include "smalp/engine.hpp"
#include "smalp/error.hpp"
#include "smalp/symsubst.hpp"
#include "support/generators.hpp"

using namespace smalp;

namespace {

const char* kSymbolic =
    "p(X) <#s1| #&s2(q(X), @aver(r(X), s(X))) with 0.9.\n"
    "q(a) with #v.\n"
    "r(X) with 0.7.\n"
    "s(X) with 0.5.\n";

const char* kHotelHead =
    "popularity(X) <#s| #|disj(facilities(X), @aver(location(X), rates(X))) with 0.9.\n"
    "facilities(sun) with #v.\n";

const char* kHotelDomains =
    "#s in {luka, prod, godel}.\n"
    "#disj in {godel, prod, luka}.\n"
    "#v in {0.3, 0.5, 0.7}.\n";

}  // namespace

TEST_CASE("sym_of") {
  auto syms = sym_of(parse_program(kSymbolic));
  REQUIRE(syms.size() == 3);
  CHECK(syms[0] == SymbolId{"s1", Sort::AdjointPair});
  CHECK(syms[1] == SymbolId{"s2", Sort::Conjunction});
  CHECK(syms[2] == SymbolId{"v", Sort::Weight});

  auto hotel = sym_of(parse_program(kHotelHead));
  REQUIRE(hotel.size() == 3);
  CHECK(hotel[0] == SymbolId{"s", Sort::AdjointPair});
  CHECK(hotel[1] == SymbolId{"disj", Sort::Disjunction});
  CHECK(hotel[2] == SymbolId{"v", Sort::Weight});

  CHECK(sym_of(parse_program("p(a) <prod| q(a) with 0.5. q(a) with 1.")).empty());
  CHECK(sym_of(parse_goal("#&s1(0.9, #@g(#v, 0.6))")).size() == 3);
}

TEST_CASE("apply_theta on expressions") {
  Registry reg = builtin_registry();
  auto syms = sym_of(parse_program(kSymbolic));
  SymbolicSubstitution th = parse_theta("s1=prod,s2=godel,v=0.8", syms, reg);
  CHECK(th.render() == "s1=prod, s2=godel, v=0.8");

  Expr sfca = parse_goal("#&s1(0.9, #&s2(#v, 0.6))");
  CHECK(apply_theta(th, sfca) == parse_goal("&prod(0.9, &godel(0.8, 0.6))"));
  CHECK(apply_theta(SymbolicSubstitution{}, sfca) == sfca);

  SymbolicSubstitution partial;
  partial.assign("v", Assignment::weight(0.3));
  CHECK(apply_theta(partial, parse_goal("#&s1(#v, 0.5)")) == parse_goal("#&s1(0.3, 0.5)"));

  SymbolicSubstitution wrong;
  wrong.assign("s1", Assignment::weight(0.3));
  CHECK_THROWS_AS(apply_theta(wrong, sfca), SortClash);
}

TEST_CASE("adjoint pair assignments rewrite both faces") {
  Registry reg = builtin_registry();
  Program p = parse_program("p <#s| #&s(q, 0.5) with 0.9.");
  SymbolicSubstitution th = parse_theta("s=luka", sym_of(p), reg);
  Program inst = apply_theta_program(th, p);
  CHECK(inst == parse_program("p <luka| &luka(q, 0.5) with 0.9."));

  Registry custom = reg.with(ConnectiveDef{"nilp", ConnectiveKind::Conjunction, 2,
                                           [](std::span<const double> a) { return std::min(a[0], a[1]); }})
                        .with(ConnectiveDef{"nilpotent", ConnectiveKind::Implication, 2,
                                            [](std::span<const double>) { return 1.0; }, "nilp"});
  SymbolicSubstitution th2 = parse_theta("s=nilpotent", sym_of(p), custom);
  CHECK(apply_theta_program(th2, p) == parse_program("p <nilpotent| &nilp(q, 0.5) with 0.9."));
}

TEST_CASE("apply_theta_program") {
  Registry reg = builtin_registry();
  Program symbolic = parse_program(kSymbolic);
  Program inst = apply_theta_program(parse_theta("s1=prod,s2=godel,v=0.8", sym_of(symbolic), reg), symbolic);
  CHECK(sym_of(inst).empty());
  CHECK(inst.rules[0] == parse_program("p(X) <prod| &godel(q(X), @aver(r(X), s(X))) with 0.9.").rules[0]);
  CHECK(inst.rules[1] == parse_program("q(a) with 0.8.").rules[0]);

  Program hotel = parse_program(kHotelHead);
  Program tuned = apply_theta_program(parse_theta("s=luka,disj=prod,v=0.3", sym_of(hotel), reg), hotel);
  CHECK(render(tuned, {true}) ==
        "popularity(X) <luka| |prod(facilities(X), @aver(location(X), rates(X))) with 0.9.\n"
        "facilities(sun) with 0.3.\n");

  Program concrete = parse_program("p(a) <prod| q(a) with 0.5.");
  CHECK(apply_theta_program(SymbolicSubstitution{}, concrete) == concrete);
}

TEST_CASE("assignments are sort-checked") {
  Registry reg = builtin_registry();
  auto syms = sym_of(parse_program(kSymbolic));
  CHECK_THROWS_AS(parse_theta("s1=aver", syms, reg), InvalidAssignment);
  CHECK_THROWS_AS(parse_theta("v=prod", syms, reg), InvalidAssignment);
  CHECK_THROWS_AS(parse_theta("v=1.2", syms, reg), InvalidAssignment);
  CHECK_THROWS_AS(parse_theta("w=0.3", syms, reg), InvalidAssignment);
  CHECK_THROWS_AS(parse_theta("v", syms, reg), InvalidAssignment);
  CHECK(parse_theta("#s2=&luka", syms, reg).find("s2")->label == "luka");
  auto pair = parse_theta("s1=<godel|", syms, reg).find("s1");
  CHECK(pair->label == "godel");
  CHECK(pair->conjunction == "godel");
}

TEST_CASE("domain declarations and enumeration") {
  Registry reg = builtin_registry();
  auto syms = sym_of(parse_program(kHotelHead));
  DomainSpec spec = resolve_domains(parse_domain_decls(kHotelDomains), syms, reg);
  auto all = enumerate(spec);
  REQUIRE(all.size() == 27);
  CHECK(all[3].render() == "s=luka, disj=prod, v=0.3");
  CHECK(all[12].render() == "s=prod, disj=prod, v=0.3");
  CHECK(all[26].render() == "s=godel, disj=luka, v=0.7");

  std::set<std::string> seen;
  for (const auto& th : all) seen.insert(th.render());
  CHECK(seen.size() == all.size());
  CHECK(enumerate(spec) == all);

  // Declaration order in the file does not matter: symbol order does.
  auto shuffled = parse_domain_decls("#v in {0.3, 0.5, 0.7}.\n#disj in {godel, prod, luka}.\n#s in {luka, prod, godel}.");
  CHECK(enumerate(resolve_domains(shuffled, syms, reg)) == all);

  auto single = resolve_domains(parse_domain_decls("#v in {0.5}."), {SymbolId{"v", Sort::Weight}}, reg);
  CHECK(enumerate(single).size() == 1);

  CHECK_THROWS_AS(resolve_domains(parse_domain_decls("#s in {luka}. #disj in {prod}."), syms, reg),
                  IncompleteDomain);
  CHECK_THROWS_AS(resolve_domains(parse_domain_decls(std::string(kHotelDomains) + "#zz in {0.1}."), syms, reg),
                  IncompleteDomain);
  CHECK_THROWS_AS(resolve_domains(parse_domain_decls("#s in {luka}. #disj in {prod}. #v in {}."), syms, reg),
                  EmptyDomain);
  CHECK_THROWS_AS(parse_domain_decls("#v in {0.3}. #v in {0.5}."), ParseError);
  CHECK_THROWS_AS(resolve_domains(parse_domain_decls("#s in {aver}. #disj in {prod}. #v in {0.3}."), syms, reg),
                  InvalidAssignment);
}

TEST_CASE("instantiating the symbolic answer matches solving the instantiated program") {
  Registry reg = builtin_registry();
  Program symbolic = parse_program(kSymbolic);
  SymbolicSubstitution th = parse_theta("s1=prod,s2=godel,v=0.8", sym_of(symbolic), reg);
  Expr goal = parse_goal("p(X)");

  Answer sfca = solve(symbolic, reg, goal).answer;
  Answer via_sfca = interpret(reg, Answer{apply_theta(th, sfca.expr), sfca.subst}).answer;
  Answer direct = solve(apply_theta_program(th, symbolic), reg, goal).answer;
  REQUIRE(via_sfca.kind == AnswerKind::FCA);
  REQUIRE(direct.kind == AnswerKind::FCA);
  CHECK(*via_sfca.value() == doctest::Approx(0.54).epsilon(1e-12));
  CHECK(*via_sfca.value() == *direct.value());
  CHECK(via_sfca.subst == direct.subst);
}

TEST_CASE("apply_theta commutes with variable substitution") {
  Registry reg = builtin_registry();
  testing::Gen g(99);
  for (int i = 0; i < 200; ++i) {
    auto inst = testing::random_instance(g);
    if (inst.program.rules.empty()) continue;
    SymbolicSubstitution th = testing::random_theta(g, inst.symbols, reg);
    Substitution sigma;
    sigma.bind("X", testing::random_term(g, 2));
    for (const auto& r : inst.program.rules) {
      CHECK(apply_theta(th, apply(sigma, r.body)) == apply(sigma, apply_theta(th, r.body)));
    }
  }
}
