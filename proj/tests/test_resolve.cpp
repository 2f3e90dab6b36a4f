#include <catch2/catch_amalgamated.hpp>

#include "gorkit/fixtures.hpp"
#include "gorkit/resolve.hpp"

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
}  // namespace

TEST_CASE("minimal resolutions terminate or truncate honestly", "[resolve]") {
  ResolutionCache cache;
  auto p = vertex_projective(E2(), 0);
  Resolution r = min_projective_resolution(p, 5, cache);
  REQUIRE(r.complete);
  REQUIRE(r.steps.size() == 1);  // length 0
  REQUIRE(r.exact_pd() == 0);

  auto s = simple_module(E1(), 0);
  Resolution rs = min_projective_resolution(s, 5, cache);
  REQUIRE(rs.truncated());
  REQUIRE(rs.steps.size() == 6);
  for (std::size_t i = 0; i < rs.steps.size(); ++i)
    REQUIRE(rs.steps[i]->proj.rep->total_dim() == 2);  // each P_i = A
  // d_i d_{i+1} = 0
  for (std::size_t i = 1; i + 1 < rs.steps.size(); ++i)
    REQUIRE(compose(rs.differential(i), rs.differential(i + 1)).is_zero());
  // minimality: kernels inside the radical
  for (std::size_t i = 0; i < rs.steps.size(); ++i) {
    Cover c{rs.steps[i]->proj, rs.steps[i]->cover};
    REQUIRE(kernel_inside_radical(c, rs.steps[i]->incl_next));
  }

  auto s1 = simple_module(E2(), 0);
  Resolution r1 = min_projective_resolution(s1, 5, cache);
  REQUIRE(r1.complete);
  REQUIRE(r1.steps.size() == 2);  // 0 -> P(2) -> P(1) -> S(1)
  REQUIRE(r1.steps[1]->proj.copies == std::vector<int>{1});
}

TEST_CASE("resolution cache is extended lazily and shared", "[resolve]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  Resolution r3 = cache.resolution(s, 3);
  REQUIRE(r3.steps.size() == 4);
  Resolution r6 = cache.resolution(s, 6);
  REQUIRE(r6.steps.size() == 7);
  REQUIRE(r6.steps[0].get() == r3.steps[0].get());  // steps literally shared
  auto s_again = simple_module(E1(), 0);
  Resolution r2 = cache.resolution(s_again, 2);
  REQUIRE(r2.steps[0].get() == r3.steps[0].get());  // content-keyed
}

TEST_CASE("pd verdicts", "[resolve]") {
  REQUIRE(projective_dimension(vertex_projective(E1(), 0), 5).is_exact());
  REQUIRE(projective_dimension(vertex_projective(E1(), 0), 5).value == 0);

  DimValue inf = projective_dimension(simple_module(E1(), 0), 5);
  REQUIRE(inf.kind == DimValue::Kind::infinite);
  REQUIRE(inf.period->lo == 0);
  REQUIRE(inf.period->hi == 1);
  REQUIRE(inf.render("pd") == "pd = infinity (period 0->1)");

  DimValue one = projective_dimension(simple_module(E2(), 0), 5);
  REQUIRE(one.is_exact());
  REQUIRE(one.value == 1);

  // E3: syzygies grow strictly; no periodicity within the cap
  DimValue grow = projective_dimension(simple_module(E3(), 0), 6);
  REQUIRE(grow.kind == DimValue::Kind::at_least);
  REQUIRE(grow.value == 7);
  REQUIRE(grow.strictly_growing());
  REQUIRE(grow.render("pd") == "pd >= 7");
}

TEST_CASE("injective dimension through the dual route", "[resolve]") {
  DimValue d = injective_dimension(regular_module(E1()), 8);
  REQUIRE(d.is_exact());
  REQUIRE(d.value == 0);  // E1 self-injective

  REQUIRE(injective_dimension(vertex_projective(E2(), 1), 8).value == 1);
  REQUIRE(injective_dimension(vertex_projective(E2(), 0), 8).value == 0);

  DimValue e3 = injective_dimension(regular_module(E3()), 6);
  REQUIRE(e3.kind == DimValue::Kind::at_least);
  REQUIRE(e3.value == 7);
}

TEST_CASE("ext dimensions on the fixtures", "[resolve]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  auto p = vertex_projective(E1(), 0);
  for (std::size_t i = 0; i <= 5; ++i) REQUIRE(ext(s, s, i, cache).dimension == 1);
  REQUIRE(ext(p, s, 1, cache).dimension == 0);

  auto s1 = simple_module(E2(), 0);
  auto s2 = simple_module(E2(), 1);
  REQUIRE(ext(s1, s2, 1, cache).dimension == 1);
  REQUIRE(ext(s1, s1, 1, cache).dimension == 0);
  REQUIRE(ext(s1, s2, 0, cache).dimension == 0);
  REQUIRE(ext(s1, s1, 0, cache).dimension == 1);

  // ext(M, N, 0) = dim Hom(M, N)
  for (const auto& m : {s1, s2, vertex_projective(E2(), 0)})
    for (const auto& n : {s1, s2, vertex_projective(E2(), 0)})
      REQUIRE(ext(m, n, 0, cache).dimension == hom_basis(m, n).size());

  ExtGroup e = ext(s, s, 2, cache);
  REQUIRE(e.cocycle_basis.size() == 1);
}

TEST_CASE("ext agrees with the injective-side oracle", "[resolve][properties]") {
  ResolutionCache cache;
  std::vector<ModulePtr> e1mods{simple_module(E1(), 0), vertex_projective(E1(), 0)};
  for (const auto& m : e1mods)
    for (const auto& n : e1mods)
      for (std::size_t i = 0; i <= 4; ++i)
        REQUIRE(ext(m, n, i, cache).dimension == ext_via_injectives(m, n, i, cache));

  std::vector<ModulePtr> e2mods{simple_module(E2(), 0), simple_module(E2(), 1),
                                vertex_projective(E2(), 0), vertex_projective(E2(), 1)};
  for (const auto& m : e2mods)
    for (const auto& n : e2mods)
      for (std::size_t i = 0; i <= 4; ++i)
        REQUIRE(ext(m, n, i, cache).dimension == ext_via_injectives(m, n, i, cache));
}

TEST_CASE("ext additivity and dimension shift", "[resolve][properties]") {
  ResolutionCache cache;
  auto s = simple_module(E1(), 0);
  auto a = regular_module(E1());
  auto both = direct_sum(s, a).sum;
  for (std::size_t i = 0; i <= 3; ++i)
    REQUIRE(ext(both, s, i, cache).dimension ==
            ext(s, s, i, cache).dimension + ext(a, s, i, cache).dimension);

  // dim Ext^{i+1}(M, N) = dim Ext^i(Omega M, N) for i >= 1
  auto s1 = simple_module(E2(), 0);
  auto om = syzygy(s1);
  for (std::size_t i = 1; i <= 3; ++i)
    REQUIRE(ext(s1, s1, i + 1, cache).dimension == ext(om, s1, i, cache).dimension);
  auto se1 = simple_module(E1(), 0);
  auto ome1 = syzygy(se1);
  for (std::size_t i = 1; i <= 3; ++i)
    REQUIRE(ext(se1, se1, i + 1, cache).dimension == ext(ome1, se1, i, cache).dimension);

  // pd(M + N) = max(pd M, pd N) when both are exact
  auto p1 = vertex_projective(E2(), 0);
  auto sum = direct_sum(s1, p1).sum;
  DimValue dm = projective_dimension(s1, 8), dn = projective_dimension(p1, 8),
           ds = projective_dimension(sum, 8);
  REQUIRE(ds.is_exact());
  REQUIRE(ds.value == std::max(dm.value, dn.value));
}

TEST_CASE("horseshoe resolutions stay exact degree by degree", "[resolve]") {
  // 0 -> S(2) -> P(1) -> S(1) -> 0 over E2
  auto s1 = simple_module(E2(), 0);
  Syzygy sy = syzygy_data(s1);
  ShortExactSequence ses{sy.inclusion, sy.cover.epi};
  ses.verify();
  HorseshoeResolution h = horseshoe_resolution(ses, 3);
  REQUIRE(h.mid.size() == 4);
  for (std::size_t i = 0; i < h.mid.size(); ++i)
    REQUIRE(h.mid[i].rep->total_dim() == h.sub[i].rep->total_dim() + h.quot[i].rep->total_dim());
  for (std::size_t i = 1; i < h.d_mid.size(); ++i)
    REQUIRE(compose(h.d_mid[i - 1], h.d_mid[i]).is_zero());
}
