#include <catch2/catch_amalgamated.hpp>

#include "gorkit/fixtures.hpp"
#include "gorkit/module.hpp"

using namespace gorkit;

TEST_CASE("compile the expected fixture dimensions", "[algebra]") {
  auto e1 = Algebra::compile(fixtures::e1());
  REQUIRE(e1->dim() == 2);  // {e, x}
  REQUIRE(e1->path_name(0) == "e_1");
  REQUIRE(e1->path_name(1) == "x");

  auto e2 = Algebra::compile(fixtures::e2());
  REQUIRE(e2->dim() == 3);  // {e1, e2, a}

  auto e3 = Algebra::compile(fixtures::e3());
  REQUIRE(e3->dim() == 3);  // {e, x, y}

  auto e5 = Algebra::compile(fixtures::e5());
  REQUIRE(e5->dim() == 3);  // {e, x, x*x}

  auto k = Algebra::compile(fixtures::ground_field());
  REQUIRE(k->dim() == 1);
}

TEST_CASE("compile rejects bad presentations", "[algebra]") {
  AlgebraPresentation p;
  REQUIRE_THROWS_AS(Algebra::compile(p), std::invalid_argument);  // empty quiver

  p = fixtures::e2();
  p.nilpotency_bound = 0;
  REQUIRE_THROWS_AS(Algebra::compile(p), std::invalid_argument);

  // non-parallel relation terms
  AlgebraPresentation q;
  q.quiver.vertices = {"1", "2", "3"};
  q.quiver.arrows = {{"a", "1", "2"}, {"b", "1", "3"}};
  q.relations = {{{{1, {"a"}}, {1, {"b"}}}}};
  q.nilpotency_bound = 2;
  REQUIRE_THROWS_AS(Algebra::compile(q), std::invalid_argument);
}

TEST_CASE("multiplication tables are associative and unital", "[algebra]") {
  for (auto pres : {fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e5()}) {
    auto a = Algebra::compile(pres);
    REQUIRE(a->associative());
    Vec unit = a->unit();
    for (std::size_t i = 0; i < a->dim(); ++i) {
      REQUIRE(a->element_mult(unit, a->basis_vec(int(i))) == a->basis_vec(int(i)));
      REQUIRE(a->element_mult(a->basis_vec(int(i)), unit) == a->basis_vec(int(i)));
    }
    for (std::size_t v = 0; v < a->n_vertices(); ++v)
      for (std::size_t w = 0; w < a->n_vertices(); ++w) {
        Vec prod = a->element_mult(a->basis_vec(a->idempotent(int(v))), a->basis_vec(a->idempotent(int(w))));
        if (v == w)
          REQUIRE(prod == a->basis_vec(a->idempotent(int(v))));
        else
          REQUIRE(prod == Vec(a->dim(), 0));
      }
  }
}

TEST_CASE("dimension decomposes over vertex pairs", "[algebra]") {
  auto a = Algebra::compile(fixtures::e2());
  std::size_t total = 0;
  for (std::size_t v = 0; v < a->n_vertices(); ++v)
    for (std::size_t w = 0; w < a->n_vertices(); ++w) total += a->basis_between(int(v), int(w)).size();
  REQUIRE(total == a->dim());
}

TEST_CASE("opposite algebra is an involution", "[algebra]") {
  auto e2 = Algebra::compile(fixtures::e2());
  auto op = e2->opposite();
  REQUIRE(op->dim() == 3);
  int a = op->arrow_index("a");
  REQUIRE(op->vertex_label(op->arrow_src(a)) == "2");
  REQUIRE(op->vertex_label(op->arrow_tgt(a)) == "1");
  REQUIRE(op->opposite().get() == e2.get());

  auto e1 = Algebra::compile(fixtures::e1());
  auto e1op = e1->opposite();
  for (std::size_t i = 0; i < e1->dim(); ++i)
    for (std::size_t j = 0; j < e1->dim(); ++j) REQUIRE(e1op->mult(int(i), int(j)) == e1->mult(int(j), int(i)));

  auto e3 = Algebra::compile(fixtures::e3());
  auto e3opop = make_opposite(*make_opposite(*e3));
  for (std::size_t i = 0; i < e3->dim(); ++i)
    for (std::size_t j = 0; j < e3->dim(); ++j) REQUIRE(e3opop->mult(int(i), int(j)) == e3->mult(int(i), int(j)));
}

TEST_CASE("truncation warnings name paths killed only by J^N", "[algebra]") {
  auto a5 = Algebra::compile(fixtures::e5());
  REQUIRE(a5->warnings().empty());

  // relation z^2 = z^3: in kQ/I the class of z^2 is nonzero (z^2 = z^3 = ...),
  // but the J^3 truncation kills z^3 and with it z^2.
  AlgebraPresentation q;
  q.quiver.vertices = {"1"};
  q.quiver.arrows = {{"z", "1", "1"}};
  q.relations = {{{{1, {"z", "z"}}, {-1, {"z", "z", "z"}}}}};
  q.nilpotency_bound = 3;
  auto az = Algebra::compile(q);
  REQUIRE(az->dim() == 2);  // {e, z}
  REQUIRE(az->warnings().size() == 1);
  REQUIRE(az->warnings()[0].find("z*z") != std::string::npos);
}

TEST_CASE("vertex projectives match the fixture structure", "[algebra]") {
  auto e1 = Algebra::compile(fixtures::e1());
  auto p = vertex_projective(e1, 0);
  REQUIRE(p->dims == std::vector<std::size_t>{2});
  REQUIRE(rank(p->action[0]) == 1);  // x acts as a nilpotent Jordan block
  REQUIRE((p->action[0] * p->action[0]).is_zero());
  p->validate();

  auto e2 = Algebra::compile(fixtures::e2());
  auto p1 = vertex_projective(e2, 0);
  REQUIRE(p1->dims == std::vector<std::size_t>{1, 1});
  REQUIRE(p1->action[0](0, 0) == 1);  // arrow acts by identity
  auto p2 = vertex_projective(e2, 1);
  REQUIRE(p2->dims == std::vector<std::size_t>{0, 1});
  p1->validate();
  p2->validate();
}

TEST_CASE("vertex projectives satisfy all relations", "[algebra][properties]") {
  for (auto pres : {fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e5()}) {
    auto a = Algebra::compile(pres);
    for (std::size_t v = 0; v < a->n_vertices(); ++v) REQUIRE_NOTHROW(vertex_projective(a, int(v))->validate());
    auto op = a->opposite();
    for (std::size_t v = 0; v < op->n_vertices(); ++v) REQUIRE_NOTHROW(vertex_projective(op, int(v))->validate());
  }
}

TEST_CASE("module JSON-level validation rejects relation violations", "[algebra]") {
  auto e1 = Algebra::compile(fixtures::e1());
  Module bad{e1, {1}, {Matrix::identity(1)}};  // x^2 acts as identity, not zero
  try {
    bad.validate();
    FAIL("expected validation error");
  } catch (const std::invalid_argument& e) {
    REQUIRE(std::string(e.what()).find("x*x") != std::string::npos);
  }
}
