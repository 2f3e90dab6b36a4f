// Seeded random module generation: walk from the structural modules
// (simples, projectives) through random extension middles, keeping the total
// dimension under a cap. Deterministic per Rng state.
#pragma once

#include "gorkit/modcat.hpp"

namespace gorkit {

/// A random extension 0 -> N -> E -> M -> 0 realized as the pushout of the
/// syzygy inclusion of M along a random hom Omega M -> N; the split middle
/// appears when the sampled class is a coboundary, which is fine for fuzzing.
inline ModulePtr random_extension_middle(const ModulePtr& m, const ModulePtr& n, Rng& rng) {
  if (m->is_zero() || n->is_zero()) return direct_sum(m, n).sum;
  Syzygy sy = syzygy_data(m);
  if (sy.omega->is_zero()) return direct_sum(m, n).sum;
  HomSpace hs = hom_space(sy.omega, n);
  if (hs.dim() == 0) return direct_sum(m, n).sum;
  Vec c(hs.dim());
  for (auto& x : c) x = rng.field_element();
  ModuleHom alpha = hs.from_coords(c);
  DirectSum npk = direct_sum(n, sy.cover.proj.rep);
  SubquotientHom ck = cokernel(hom_sub(compose(npk.inc1, alpha), compose(npk.inc2, sy.inclusion)));
  return ck.module;
}

/// One seeded random module of total dimension <= dim_cap.
inline ModulePtr random_module(const AlgebraPtr& a, Rng& rng, std::size_t dim_cap) {
  std::vector<ModulePtr> pool;
  for (std::size_t v = 0; v < a->n_vertices(); ++v) {
    pool.push_back(simple_module(a, int(v)));
    pool.push_back(vertex_projective(a, int(v)));
  }
  ModulePtr cur = pool[rng.uniform(pool.size())];
  const std::size_t steps = rng.uniform(3);
  for (std::size_t s = 0; s < steps; ++s) {
    ModulePtr other = pool[rng.uniform(pool.size())];
    ModulePtr ext_mid = rng.uniform(2) ? random_extension_middle(cur, other, rng)
                                       : random_extension_middle(other, cur, rng);
    if (ext_mid->total_dim() > dim_cap) break;
    cur = ext_mid;
  }
  if (cur->total_dim() > dim_cap) cur = pool[0];
  return cur;
}

}  // namespace gorkit
