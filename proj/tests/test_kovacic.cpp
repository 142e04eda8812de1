#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <utility>
#include <vector>

#include "fuchs/diffop.hpp"
#include "fuchs/hypergeom.hpp"
#include "fuchs/kovacic.hpp"
#include "fuchs/registry.hpp"

using namespace fuchs;

namespace {

Poly<Rat> P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

RatFunc<Rat> normal_form_r(const DiffOp& L) { return remove_subleading_derivative(L).r; }

// y'' = r y as the order-2 operator den * y'' - num * y
DiffOp op_of_r(const RatFunc<Rat>& r) {
  std::vector<Poly<Rat>> p(3);
  p[0] = -r.num;
  p[1] = Poly<Rat>();
  p[2] = r.den;
  return DiffOp(std::move(p));
}

RatFunc<NFElem> lift_q(const RatFunc<Rat>& a) {
  return RatFunc<NFElem>(lift_poly(a.num, nullptr), lift_poly(a.den, nullptr));
}

}  // namespace

TEST_CASE("pole sites carry consistent Laurent data") {
  // r of the self-adjoint second-order benchmark: order-2 poles at 0 and at the
  // roots of x^2 - 34x + 1
  RatFunc<Rat> r = normal_form_r(registry_operator("eq5"));
  auto sites = pole_data(r, 2);
  REQUIRE(sites.size() == 2);

  CHECK(sites[0].m == P({0, 1}));
  CHECK(sites[0].order == 2);
  CHECK(sites[0].laurent[0] == NFElem(Rat(-1, 4)));

  CHECK(sites[1].m == P({1, -34, 1}));
  CHECK(sites[1].order == 2);
  CHECK(sites[1].family_size() == 2);
  CHECK(sites[1].laurent[0] == NFElem(sites[1].F, Poly<Rat>::constant(Rat(-3, 16))));

  // re-expansion: subtracting the principal part must clear the pole
  for (const auto& s : sites) {
    RatFunc<NFElem> acc = RatFunc<NFElem>(lift_poly(r.num, s.F), lift_poly(r.den, s.F));
    Poly<NFElem> xc{-s.point, NFElem(1L)};
    for (int j = 0; j < s.order; ++j)
      acc -= RatFunc<NFElem>(Poly<NFElem>::constant(s.laurent[static_cast<size_t>(j)]),
                             xc.pow(s.order - j));
    CHECK(acc.den.eval(s.point).is_zero() == false);
  }
}

TEST_CASE("simple Riccati witnesses are found exactly") {
  SUBCASE("r = -1/(4x^2)") {
    RatFunc<Rat> r(P({-1}), P({0, 0, 4}));
    KovacicResult res = classify(r);
    CHECK(res.tag == KovacicCase::Case1);
    CHECK(res.riccati() == RatFunc<NFElem>(Poly<NFElem>::constant(NFElem(1L)),
                                           Poly<NFElem>{NFElem(0L), NFElem(2L)}));
    CHECK(verify_witness(r, res));
    CHECK(galois_label(res) == GaloisLabel::Triangular);
  }
  SUBCASE("r = 1") {
    RatFunc<Rat> r(P({1}), P({1}));
    KovacicResult res = classify(r);
    CHECK(res.tag == KovacicCase::Case1);
    CHECK(res.riccati() == RatFunc<NFElem>(NFElem(1L)));
    CHECK(verify_witness(r, res));
  }
  SUBCASE("r = 0") {
    KovacicResult res = classify(RatFunc<Rat>());
    CHECK(res.tag == KovacicCase::Case1);
    CHECK(res.riccati().is_zero());
    CHECK(verify_witness(RatFunc<Rat>(), res));
    CHECK(classify_sym_square(RatFunc<Rat>()) == GaloisLabel::Triangular);
  }
  SUBCASE("r = 1/x^4 needs the square-root expansion at an even-order pole") {
    RatFunc<Rat> r(P({1}), P({0, 0, 0, 0, 1}));
    KovacicResult res = classify(r);
    CHECK(res.tag == KovacicCase::Case1);
    // u = 1/x^2 + 1/x
    RatFunc<Rat> expected(P({1, 1}), P({0, 0, 1}));
    CHECK(res.riccati() == lift_q(expected));
    CHECK(verify_witness(r, res));
  }
}

TEST_CASE("witness verification is a real check, not a stamp") {
  RatFunc<Rat> r(P({1}), P({1}));
  KovacicResult good = classify(r);
  CHECK(verify_witness(r, good));

  KovacicResult fake;
  fake.tag = KovacicCase::Case1;
  // u = x: x' + x^2 = 1 + x^2 != 1
  fake.min_poly = {RatFunc<NFElem>(Poly<NFElem>{NFElem(0L), NFElem(-1L)}),
                   RatFunc<NFElem>(NFElem(1L))};
  CHECK(!verify_witness(r, fake));
}

TEST_CASE("benchmark equation has no Liouvillian solutions") {
  RatFunc<Rat> r = normal_form_r(registry_operator("eq5"));
  // pinned value: r = -(x^4 - 44x^3 + 1206x^2 - 44x + 1) / (4x^2 (x^2-34x+1)^2)
  RatFunc<Rat> pinned(P({-1, 44, -1206, 44, -1}), P({0, 0, 4, -272, 4632, -272, 4}));
  CHECK(r == pinned);

  KovacicResult res = classify(r);
  CHECK(res.tag == KovacicCase::Case4);
  CHECK(!res.has_witness());
  CHECK(galois_label(res) == GaloisLabel::SL2);
  CHECK(classify_sym_square(r) == GaloisLabel::PSL2);
}

TEST_CASE("Airy-type polynomial coefficient is transcendental too") {
  RatFunc<Rat> r(P({0, 1}), P({1}));
  CHECK(classify(r).tag == KovacicCase::Case4);
}

TEST_CASE("Schwarz dihedral operator lands in case 2") {
  // exponent differences (1/2, 1/2, 1/3): 2F1 with a = 1/6, b = -1/6, c = 1/2
  HypergeomParams prm;
  prm.upper = {NFElem(Rat(1, 6)), NFElem(Rat(-1, 6))};
  prm.lower = {NFElem(Rat(1, 2))};
  RatFunc<Rat> r = normal_form_r(hypergeom_operator_q(prm));

  KovacicResult res = classify(r);
  CHECK(res.tag == KovacicCase::Case2);
  CHECK(res.witness_degree() == 2);
  CHECK(verify_witness(r, res));
  CHECK(galois_label(res) == GaloisLabel::Dihedral);
  CHECK(classify_sym_square(r) == GaloisLabel::Dihedral);
}

TEST_CASE("Schwarz tetrahedral operator lands in case 3") {
  // exponent differences (1/2, 1/3, 1/3): 2F1 with a = 1/4, b = -1/12, c = 1/2
  HypergeomParams prm;
  prm.upper = {NFElem(Rat(1, 4)), NFElem(Rat(-1, 12))};
  prm.lower = {NFElem(Rat(1, 2))};
  RatFunc<Rat> r = normal_form_r(hypergeom_operator_q(prm));

  KovacicResult res = classify(r);
  CHECK(res.tag == KovacicCase::Case3);
  CHECK(res.witness_degree() == 4);
  CHECK(verify_witness(r, res));
  CHECK(galois_label(res) == GaloisLabel::Finite);
}

TEST_CASE("case tag is invariant under rational translation") {
  std::vector<RatFunc<Rat>> rs = {
      normal_form_r(registry_operator("eq5")),
      RatFunc<Rat>(P({-1}), P({0, 0, 4})),
      RatFunc<Rat>(P({1}), P({0, 0, 0, 0, 1})),
  };
  for (const auto& r : rs) {
    RatFunc<Rat> shifted = r.compose(RatFunc<Rat>(P({3, 1})));
    CHECK(classify(shifted).tag == classify(r).tag);
  }
}

TEST_CASE("Moebius pullback preserves the case-4 verdict") {
  RatFunc<Rat> r = normal_form_r(registry_operator("eq5"));
  // phi = x/(1+x) fixes 0; renormalize the pulled-back operator and reclassify
  RatFunc<Rat> phi(P({0, 1}), P({1, 1}));
  DiffOp pulled = pullback(op_of_r(r), phi);
  RatFunc<Rat> rp = normal_form_r(pulled);
  CHECK(classify(rp).tag == KovacicCase::Case4);
}

TEST_CASE("soundness: every witness-bearing classification verifies") {
  std::vector<RatFunc<Rat>> rs;
  rs.emplace_back(P({-1}), P({0, 0, 4}));
  rs.emplace_back(P({1}), P({1}));
  rs.emplace_back(P({1}), P({0, 0, 0, 0, 1}));
  {
    HypergeomParams prm;
    prm.upper = {NFElem(Rat(1, 6)), NFElem(Rat(-1, 6))};
    prm.lower = {NFElem(Rat(1, 2))};
    rs.push_back(normal_form_r(hypergeom_operator_q(prm)));
  }
  {
    HypergeomParams prm;
    prm.upper = {NFElem(Rat(1, 4)), NFElem(Rat(-1, 12))};
    prm.lower = {NFElem(Rat(1, 2))};
    rs.push_back(normal_form_r(hypergeom_operator_q(prm)));
  }
  for (const auto& r : rs) {
    KovacicResult res = classify(r);
    REQUIRE(res.tag != KovacicCase::Case4);
    CHECK(verify_witness(r, res));
    // the minimal polynomial is monic of the advertised degree
    CHECK(res.min_poly.back() == RatFunc<NFElem>(NFElem(1L)));
    CHECK(res.witness_degree() >= 1);
  }
}
