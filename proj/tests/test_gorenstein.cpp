#include <catch2/catch_amalgamated.hpp>

#include "gorkit/fixtures.hpp"
#include "gorkit/tate.hpp"

using namespace gorkit;

namespace {
AlgebraPtr E1() {
  static AlgebraPtr a = Algebra::compile(fixtures::e1());
  return a;
}
AlgebraPtr E2() {
  static AlgebraPtr a = Algebra::compile(fixtures::e2());
  return a;
}
AlgebraPtr E3() {
  static AlgebraPtr a = Algebra::compile(fixtures::e3());
  return a;
}
AlgebraPtr E5() {
  static AlgebraPtr a = Algebra::compile(fixtures::e5());
  return a;
}
const GorensteinCertificate& certE1() {
  static GorensteinCertificate c = certify_ig(E1(), 12);
  return c;
}
const GorensteinCertificate& certE2() {
  static GorensteinCertificate c = certify_ig(E2(), 12);
  return c;
}
const GorensteinCertificate& certE5() {
  static GorensteinCertificate c = certify_ig(E5(), 12);
  return c;
}
}  // namespace

TEST_CASE("certification of the fixtures", "[gorenstein]") {
  REQUIRE(certE1().certified());
  REQUIRE(certE1().d == 0);  // self-injective

  REQUIRE(certE2().certified());
  REQUIRE(certE2().d == 1);

  REQUIRE(certE5().certified());
  REQUIRE(certE5().d == 0);

  GorensteinCertificate e3 = certify_ig(E3(), 6);
  REQUIRE(e3.status == GorensteinCertificate::Status::unknown);
  REQUIRE(e3.left[0].kind == DimValue::Kind::at_least);
  REQUIRE(e3.left[0].value == 7);
}

TEST_CASE("uncertified algebras get typed refusals", "[gorenstein]") {
  ResolutionCache cache;
  GorensteinCertificate e3 = certify_ig(E3(), 4);
  auto s = simple_module(E3(), 0);
  REQUIRE_THROWS_AS(is_gp(s, e3, cache), not_certified_error);
  REQUIRE_THROWS_AS(gdim(s, e3, cache), not_certified_error);
  REQUIRE_THROWS_AS(gorenstein_ext(s, s, 1, e3, cache), not_certified_error);
  REQUIRE_THROWS_AS(special_approximation(s, e3, cache), not_certified_error);
  REQUIRE_THROWS_AS(tate_ext(s, s, 0, e3, 8, cache), not_certified_error);
  try {
    is_gp(s, e3, cache);
  } catch (const not_certified_error& e) {
    REQUIRE(std::string(e.what()).find("unavailable") == 0);
  }
}

TEST_CASE("Gorenstein projectives over the fixtures", "[gorenstein]") {
  ResolutionCache cache;
  // d = 0: every module is GP
  REQUIRE(is_gp(simple_module(E1(), 0), certE1(), cache));
  REQUIRE(is_gp(regular_module(E1()), certE1(), cache));
  REQUIRE(is_gp(simple_module(E5(), 0), certE5(), cache));

  // over E2 the GP modules are exactly the projectives
  REQUIRE(is_gp(vertex_projective(E2(), 0), certE2(), cache));
  REQUIRE(is_gp(vertex_projective(E2(), 1), certE2(), cache));
  REQUIRE_FALSE(is_gp(simple_module(E2(), 0), certE2(), cache));
}

TEST_CASE("G-dimension refines projective dimension", "[gorenstein]") {
  ResolutionCache cache;
  REQUIRE(gdim(vertex_projective(E2(), 0), certE2(), cache) == 0);
  REQUIRE(gdim(simple_module(E2(), 0), certE2(), cache) == 1);  // = pd
  REQUIRE(gdim(simple_module(E1(), 0), certE1(), cache) == 0);  // pd infinite
}

TEST_CASE("coresolutions of GP modules through the dualisation functor", "[gorenstein]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  GpCoresolution c = gp_coresolution(s, certE1(), 3, cache);
  REQUIRE(c.terms.size() == 4);
  for (const auto& q : c.terms) REQUIRE(q->total_dim() == 2);  // each Q^j = A
  REQUIRE(c.maps[0].is_mono());

  // projective G: split coresolution G -> G -> 0
  auto a = regular_module(E1());
  GpCoresolution ca = gp_coresolution(a, certE1(), 3, cache);
  REQUIRE(ca.complete);
  REQUIRE(ca.terms.size() == 1);
  REQUIRE(ca.maps[0].is_iso());

  // zero module
  REQUIRE(gp_coresolution(zero_module(E1()), certE1(), 2, cache).terms.empty());

  // non-GP input refused
  REQUIRE_THROWS_AS(gp_coresolution(simple_module(E2(), 0), certE2(), 2, cache), precondition_error);
}

TEST_CASE("special approximations", "[gorenstein]") {
  ResolutionCache cache;
  // X projective: (0, X, X)
  auto p1 = vertex_projective(E2(), 0);
  GpApproximation app = special_approximation(p1, certE2(), cache);
  REQUIRE(app.k->is_zero());
  REQUIRE(app.g->content_hash() == p1->content_hash());

  // X GP: (0, X, X)
  auto s = simple_module(E1(), 0);
  GpApproximation aps = special_approximation(s, certE1(), cache);
  REQUIRE(aps.k->is_zero());

  // S(1) over E2: K = P(2), G = P(1)
  auto s1 = simple_module(E2(), 0);
  GpApproximation ap1 = special_approximation(s1, certE2(), cache);
  ap1.ses.verify();
  REQUIRE(is_isomorphic(ap1.g, vertex_projective(E2(), 0)).verdict == IsoVerdict::yes);
  REQUIRE(is_isomorphic(ap1.k, vertex_projective(E2(), 1)).verdict == IsoVerdict::yes);
  REQUIRE(ap1.pd_k.is_exact());
  REQUIRE(ap1.pd_k.value == 0);

  // hereditary orthogonality: Ext^1(GP test object, K) = 0
  for (int v = 0; v < 2; ++v)
    REQUIRE(ext(vertex_projective(E2(), v), ap1.k, 1, cache).dimension == 0);
}

TEST_CASE("Gorenstein extension groups on the fixtures", "[gorenstein]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  // GE^0 = Hom, GE^k = 0 for k >= 1 on the GP module S, while Ext^1 = 1
  REQUIRE(gorenstein_ext(s, s, 0, certE1(), cache) == 1);
  for (std::size_t k = 1; k <= 3; ++k) REQUIRE(gorenstein_ext(s, s, k, certE1(), cache) == 0);
  REQUIRE(ext(s, s, 1, cache).dimension == 1);  // GE is strictly coarser

  // finite pd: GE^k = Ext^k
  auto s1 = simple_module(E2(), 0);
  auto s2 = simple_module(E2(), 1);
  REQUIRE(gorenstein_ext(s1, s2, 1, certE2(), cache) == 1);
  REQUIRE(gorenstein_ext(s1, s2, 2, certE2(), cache) == 0);
  REQUIRE(gorenstein_ext(s1, s1, 1, certE2(), cache) == 0);

  // projectives have vanishing higher GE
  auto p = vertex_projective(E2(), 0);
  for (std::size_t k = 1; k <= 3; ++k) REQUIRE(gorenstein_ext(p, s2, k, certE2(), cache) == 0);

  // vanishing beyond the G-dimension
  REQUIRE(gorenstein_ext(s1, s2, certE2().d + 1, certE2(), cache) == 0);
}

TEST_CASE("the two GE routes agree", "[gorenstein]") {
  ResolutionCache cache;
  std::vector<ModulePtr> e2mods{simple_module(E2(), 0), simple_module(E2(), 1),
                                vertex_projective(E2(), 0), vertex_projective(E2(), 1)};
  for (const auto& x : e2mods)
    for (const auto& y : e2mods)
      for (std::size_t k = 0; k <= 3; ++k)
        REQUIRE(gorenstein_ext(x, y, k, certE2(), cache) ==
                gorenstein_ext_direct(x, y, k, certE2(), cache));

  std::vector<ModulePtr> e1mods{simple_module(E1(), 0), vertex_projective(E1(), 0)};
  for (const auto& x : e1mods)
    for (const auto& y : e1mods)
      for (std::size_t k = 0; k <= 2; ++k)
        REQUIRE(gorenstein_ext(x, y, k, certE1(), cache) ==
                gorenstein_ext_direct(x, y, k, certE1(), cache));
}

TEST_CASE("complete resolutions and Tate Ext over E1", "[gorenstein]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  CompleteResolution cr = complete_resolution(s, certE1(), 8, cache);
  REQUIRE_FALSE(cr.zero_complex);
  for (long i = cr.lo; i <= cr.hi; ++i) REQUIRE(cr.at(i)->total_dim() == 2);  // ... -> A -> A -> ...
  REQUIRE(cr.acyclicity_checked_pairs > 0);
  for (long i = -3; i <= 3; ++i) REQUIRE(tate_ext_from(cr, s, i) == 1);
  REQUIRE(tate_ext(s, s, -2, certE1(), 8, cache) == 1);
  REQUIRE(tate_ext(s, s, 3, certE1(), 8, cache) == ext(s, s, 3, cache).dimension);

  // modules of finite pd have the zero complex and vanishing Tate groups
  auto p = vertex_projective(E2(), 0);
  CompleteResolution crp = complete_resolution(p, certE2(), 8, cache);
  REQUIRE(crp.zero_complex);
  auto s1 = simple_module(E2(), 0);
  for (long i = -3; i <= 3; ++i) REQUIRE(tate_ext(s1, s1, i, certE2(), 8, cache) == 0);

  REQUIRE_THROWS_AS(tate_ext(s, s, 7, certE1(), 8, cache), precondition_error);
}

TEST_CASE("Tate Ext is independent of the splice depth", "[gorenstein]") {
  ResolutionCache cache;
  auto s = simple_module(E5(), 0);  // over E5, S has period-2 syzygies
  CompleteResolution small = complete_resolution(s, certE5(), 6, cache);
  CompleteResolution big = complete_resolution(s, certE5(), 10, cache);
  for (long i = -3; i <= 3; ++i) REQUIRE(tate_ext_from(small, s, i) == tate_ext_from(big, s, i));
}

TEST_CASE("realize_ge1 produces a verified non-split extension", "[gorenstein]") {
  ResolutionCache cache;
  auto s1 = simple_module(E2(), 0);
  auto s2 = simple_module(E2(), 1);
  GpApproximation ap = special_approximation(s1, certE2(), cache);
  HomSpace hk = hom_space(ap.k, s2);
  REQUIRE(hk.dim() == 1);
  RealizedExtension re = realize_ge1(s1, s2, hk.basis[0], certE2(), cache);
  re.ses.verify();
  REQUIRE(is_isomorphic(re.ses.mid(), vertex_projective(E2(), 0)).verdict == IsoVerdict::yes);

  // the zero class is a coboundary
  REQUIRE_THROWS_AS(realize_ge1(s1, s2, zero_hom(ap.k, s2), certE2(), cache), precondition_error);

  // over E1 GE^1 vanishes identically: every candidate errors
  auto s = simple_module(E1(), 0);
  GpApproximation ape1 = special_approximation(s, certE1(), cache);
  REQUIRE_THROWS_AS(realize_ge1(s, s, zero_hom(ape1.k, s), certE1(), cache), precondition_error);
}

TEST_CASE("AM sequence check", "[gorenstein]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  AmReport r1 = am_sequence_check(s, s, certE1(), 8, cache);
  REQUIRE(r1.ok());
  for (const auto& row : r1.rows) {
    REQUIRE(row.ge == 0);
    REQUIRE(row.ext_dim == 1);
    REQUIRE(row.tate == 1);
  }

  auto s1 = simple_module(E2(), 0);
  auto s2 = simple_module(E2(), 1);
  AmReport r2 = am_sequence_check(s1, s2, certE2(), 8, cache);
  REQUIRE(r2.ok());
  for (const auto& row : r2.rows) {
    REQUIRE(row.tate == 0);
    REQUIRE(row.ge == row.ext_dim);
  }

  // projective X: all three rows vanish
  AmReport r3 = am_sequence_check(vertex_projective(E2(), 0), s2, certE2(), 8, cache);
  REQUIRE(r3.ok());
  for (const auto& row : r3.rows) {
    REQUIRE(row.ge == 0);
    REQUIRE(row.ext_dim == 0);
    REQUIRE(row.tate == 0);
  }
}

TEST_CASE("Nakayama functor sends projectives to injectives", "[gorenstein]") {
  // over E1 (self-injective): nu(A) = A
  auto a = regular_module(E1());
  REQUIRE(is_isomorphic(nakayama(a), a).verdict == IsoVerdict::yes);

  // over E2: nu(P_v) = injective envelope of top(P_v)
  for (int v = 0; v < 2; ++v) {
    auto p = vertex_projective(E2(), v);
    auto nu = nakayama(p);
    Envelope env = injective_envelope(simple_module(E2(), v));
    REQUIRE(is_isomorphic(nu, env.inj).verdict == IsoVerdict::yes);
  }
  REQUIRE(nakayama(zero_module(E2()))->is_zero());
  // nu P(1) over E2 is the simple injective S(1)
  REQUIRE(nakayama(vertex_projective(E2(), 0))->dims == std::vector<std::size_t>{1, 0});
}

TEST_CASE("findim stays below the Gorenstein bound", "[gorenstein]") {
  ResolutionCache cache;
  std::vector<std::pair<std::string, ModulePtr>> corpus{
      {"S", simple_module(E1(), 0)}, {"A", regular_module(E1())}};
  FindimReport rep = findim_check(certE1(), corpus, cache);
  REQUIRE(rep.all_ok);
  std::vector<std::pair<std::string, ModulePtr>> corpus2{
      {"S(1)", simple_module(E2(), 0)},
      {"S(2)", simple_module(E2(), 1)},
      {"P(1)", vertex_projective(E2(), 0)}};
  FindimReport rep2 = findim_check(certE2(), corpus2, cache);
  REQUIRE(rep2.all_ok);
}
