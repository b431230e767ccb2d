#include <doctest.h>

#include "cgw/catalog.hpp"
#include "cgw/presentation.hpp"
#include "cgw/word_problem.hpp"

using namespace cgw;

namespace {

  TrivialityCertificate cert(Presentation const& p, std::vector<char const*> u,
                             std::vector<char const*> r) {
    TrivialityCertificate c;
    c.u.clear();
    for (auto x : u) {
      c.u.push_back(p.parse(x));
    }
    for (auto x : r) {
      c.r.push_back(p.parse(x));
    }
    return c;
  }

  Presentation trivial_group() {
    Presentation p;
    p.add_generator("a", Role::other);
    p.add_relator(p.parse("a"));
    return p;
  }

  Presentation free_group() {
    Presentation p;
    p.add_generator("a", Role::other);
    p.add_generator("b", Role::other);
    return p;
  }

}  // namespace

TEST_CASE("verify_certificate") {
  auto p = z2_presentation();
  auto w = p.parse("a b a^-1 b^-1");
  CHECK(verify_certificate(cert(p, {"", ""}, {"a b a^-1 b^-1"}), p, w).valid());

  auto shifted = cert(p, {"", ""}, {"b a^-1 b^-1 a"});
  CHECK(verify_certificate(shifted, p, w).defect == CertificateDefect::product_mismatch);
  auto fixed = cert(p, {"a", "a^-1"}, {"b a^-1 b^-1 a"});
  CHECK(verify_certificate(fixed, p, w).valid());

  auto bad_u = cert(p, {"a", ""}, {"b a^-1 b^-1 a"});
  auto check = verify_certificate(bad_u, p, p.parse("a b a^-1 b^-1 a"));
  CHECK(check.defect == CertificateDefect::conjugators_nontrivial);
  CHECK(to_string(check.defect) == "conjugators-nontrivial");

  auto not_rel = cert(p, {"", ""}, {"a b"});
  check        = verify_certificate(not_rel, p, p.parse("a b"));
  CHECK(check.defect == CertificateDefect::not_a_relator);
  CHECK(check.index == 0);

  TrivialityCertificate shape;
  shape.r.push_back(p.parse("a b a^-1 b^-1"));
  CHECK(verify_certificate(shape, p, w).defect == CertificateDefect::shape);

  auto far = cert(p, {"a a a a a a", "a^-1 a^-1 a^-1 a^-1 a^-1 a^-1"}, {"a b a^-1 b^-1"});
  auto wf  = evaluate(far);
  CHECK(verify_certificate(far, p, wf).valid());
  CHECK(verify_certificate(far, p, wf, 2).defect == CertificateDefect::edge_bound);
  CHECK(verify_certificate(far, p, wf, 4).valid());
}

TEST_CASE("certificates and factors") {
  auto                         p = z2_presentation();
  std::vector<ConjugateFactor> f{{p.parse("a"), p.parse("a b a^-1 b^-1")},
                                 {p.parse("b^-1"), p.parse("b a^-1 b^-1 a")}};
  auto                         c = certificate_from_factors(f);
  CHECK(c.d() == 2);
  CHECK(c.u.front() == p.parse("a"));
  CHECK(c.u.back() == p.parse("b"));
  CHECK(factors_of(c) == f);
  CHECK(conjugator_length(c) == 4);
  CHECK(evaluate(TrivialityCertificate{}).empty());
}

TEST_CASE("area_oracle on Z^2") {
  auto p  = z2_presentation();
  auto r1 = area_oracle(p, p.parse("a b a^-1 b^-1"));
  REQUIRE(r1.area);
  CHECK(*r1.area == 1);
  auto w2 = p.parse("a a b b a^-1 a^-1 b^-1 b^-1");
  auto r2 = area_oracle(p, w2);
  REQUIRE(r2.area);
  CHECK(*r2.area == 4);
  CHECK(verify_certificate(*r2.certificate, p, w2).valid());
  CHECK(r2.certificate->d() == 4);

  auto empty = area_oracle(p, Word{});
  CHECK(empty.area == 0);
  CHECK(empty.certificate->d() == 0);

  // a != 1: the area-bounded search space is finite and exhausted.
  auto never = area_oracle(p, p.parse("a"), AreaBudget{8, 100000, 0});
  CHECK_FALSE(never.area);
  CHECK(never.exhausted);
  auto starved = area_oracle(p, w2, AreaBudget{32, 5, 0});
  CHECK_FALSE(starved.area);
  CHECK_FALSE(starved.exhausted);
  auto capped = area_oracle(p, p.parse("a"), AreaBudget{3, 100000, 6});
  CHECK_FALSE(capped.area);
  CHECK(capped.exhausted);
}

TEST_CASE("area_oracle finds K(q) = 1 in G(M)") {
  auto tm  = counterexample_tm();
  auto p   = compile_gm(tm, 2);
  auto kq  = p.parse("k_1 q#1 k_2 q#2");
  auto res = area_oracle(p, kq, AreaBudget{16, 2'000'000, 10});
  REQUIRE(res.certificate);
  CHECK(verify_certificate(*res.certificate, p, kq).valid());
  CHECK(*res.area == 13);
}

TEST_CASE("DerivationBuilder") {
  auto              p = z2_presentation();
  DerivationBuilder b(p, p.parse("b a a^-1 b^-1 b a"));
  b.reduce_current();
  CHECK(b.current() == p.parse("b a"));
  b.replace(0, 2, p.parse("a b"));
  CHECK(b.current() == p.parse("a b"));
  CHECK_THROWS_AS(b.replace(0, 2, p.parse("b b")), std::invalid_argument);

  DerivationBuilder c(p, p.parse("a a b a^-1 a^-1 b^-1"));
  c.rewrite(0, 3, p.parse("b a a"));
  c.reduce_current();
  CHECK(c.current().empty());
  auto cert = c.finish();
  CHECK(cert.d() == 2);
  CHECK(verify_certificate(cert, p, p.parse("a a b a^-1 a^-1 b^-1")).valid());
}

TEST_CASE("certificate_from_smachine_trace") {
  auto tm = counterexample_tm();
  auto s  = naive_to_smachine(tm);
  auto p  = compile_gns(s, 2);

  ComputationTrace idle{{s.accept}, {}};
  auto             c0 = certificate_from_smachine_trace(s, p, idle);
  CHECK(c0.d() == 1);
  CHECK(verify_certificate(c0, p, gns_hub(s, p, s.accept)).valid());

  auto start = parse_admissible(s, "q");
  auto run   = accepts(s, start, {});
  REQUIRE(run.trace);
  auto c = certificate_from_smachine_trace(s, p, *run.trace);
  CHECK(verify_certificate(c, p, gns_hub(s, p, start)).valid());

  auto gm    = compile_gm(tm, 2);
  auto moved = translate_certificate(c, p, gm);
  CHECK(verify_certificate(moved, gm, gm.parse("k_1 q#1 k_2 q#2")).valid());

  // One step of the G_{1,3} machine: per copy one k-commutation, three rule
  // relators and three tape commutations; then the hub.
  auto g   = gmn_machine(1, 3);
  auto gp  = compile_gns(g, 2);
  auto w   = parse_admissible(g, "a_1^-1 q_1 a_1^-1 q_2 a_1^-1 q_3");
  auto one = ComputationTrace{{w, g.accept}, {RuleRef{0, false}}};
  auto c1  = certificate_from_smachine_trace(g, gp, one);
  CHECK(c1.d() == (1 + 3 + 3) * 2 + 1);
  CHECK(verify_certificate(c1, gp, gns_hub(g, gp, w)).valid());

  ComputationTrace wrong{{w}, {}};
  CHECK_THROWS_AS(certificate_from_smachine_trace(g, gp, wrong), std::invalid_argument);
}

TEST_CASE("dehn_sample") {
  auto rows = dehn_sample(trivial_group(), 4);
  REQUIRE(rows.size() == 5);
  for (auto const& r : rows) {
    CHECK(r.max_area == r.n);
    CHECK(r.exact);
  }

  auto z2 = dehn_sample(z2_presentation(), 8);
  CHECK(z2[4].max_area == 1);
  CHECK(z2[8].max_area == 4);
  CHECK(z2[8].exact);

  for (auto const& r : dehn_sample(free_group(), 6)) {
    CHECK(r.max_area == 0);
  }
}

TEST_CASE("todd_coxeter") {
  auto z3 = todd_coxeter(cyclic_presentation(3));
  REQUIRE(z3);
  CHECK(z3->order() == 3);
  CHECK(z3->is_trivial(parse_word("a a a", cyclic_presentation(3).alphabet())));

  Presentation s3;
  s3.add_generator("x", Role::other);
  s3.add_generator("y", Role::other);
  s3.add_relator(s3.parse("x x"));
  s3.add_relator(s3.parse("y y y"));
  s3.add_relator(s3.parse("x y x y"));
  auto m = todd_coxeter(s3);
  REQUIRE(m);
  CHECK(m->order() == 6);
  CHECK_FALSE(m->is_trivial(s3.parse("x y")));

  CHECK_FALSE(todd_coxeter(z2_presentation(), 500));
}
