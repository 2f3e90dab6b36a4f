// Small named algebras used across the test and selftest suites.
#pragma once

#include "gorkit/algebra.hpp"

namespace gorkit::fixtures {

/// F_p itself: one vertex, no arrows.
inline AlgebraPresentation ground_field() {
  AlgebraPresentation p;
  p.quiver.vertices = {"1"};
  p.nilpotency_bound = 1;
  return p;
}

/// E1 = F_p[x]/(x^2): one loop, square zero.
inline AlgebraPresentation e1() {
  AlgebraPresentation p;
  p.quiver.vertices = {"1"};
  p.quiver.arrows = {{"x", "1", "1"}};
  p.relations = {{{{1, {"x", "x"}}}}};
  p.nilpotency_bound = 2;
  return p;
}

/// E2 = path algebra of A2: vertices 1 -> 2.
inline AlgebraPresentation e2() {
  AlgebraPresentation p;
  p.quiver.vertices = {"1", "2"};
  p.quiver.arrows = {{"a", "1", "2"}};
  p.nilpotency_bound = 2;
  return p;
}

/// E3: two loops with radical square zero; not Gorenstein.
inline AlgebraPresentation e3() {
  AlgebraPresentation p;
  p.quiver.vertices = {"1"};
  p.quiver.arrows = {{"x", "1", "1"}, {"y", "1", "1"}};
  p.relations = {{{{1, {"x", "x"}}}}, {{{1, {"y", "y"}}}}, {{{1, {"x", "y"}}}}, {{{1, {"y", "x"}}}}};
  p.nilpotency_bound = 2;
  return p;
}

/// E5 = F_p[x]/(x^3).
inline AlgebraPresentation e5() {
  AlgebraPresentation p;
  p.quiver.vertices = {"1"};
  p.quiver.arrows = {{"x", "1", "1"}};
  p.nilpotency_bound = 3;
  return p;
}

}  // namespace gorkit::fixtures
