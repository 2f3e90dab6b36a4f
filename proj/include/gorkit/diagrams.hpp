// Two elementary diagram constructions used to glue coresolution steps onto
// covers: a horseshoe for coresolution-style rows (the middle objects need
// not be projective, an Ext^1 vanishing stands in), and a comparison ladder
// that, for an epimorphism, contains a four-term exact sequence.
#pragma once

#include "gorkit/errors.hpp"
#include "gorkit/resolve.hpp"

namespace gorkit {

namespace detail {

/// Solve compose(h, pre) == rhs for h in Hom(mid, tgt); nullopt if
/// inconsistent.
inline std::optional<ModuleHom> solve_extension(const HomSpace& hs, const ModuleHom& pre,
                                                const ModuleHom& rhs) {
  Vec target = rhs.flat();
  Matrix sys(target.size(), hs.dim());
  for (std::size_t k = 0; k < hs.dim(); ++k) {
    Vec col = compose(hs.basis[k], pre).flat();
    sys.set_column(k, col);
  }
  auto c = solve(sys, target);
  if (!c) return std::nullopt;
  return hs.from_coords(*c);
}

/// Solve compose(h, epi) == rhs for h; epi is onto, so a solution is unique
/// when it exists.
inline ModuleHom solve_through_epi(const HomSpace& hs, const ModuleHom& epi, const ModuleHom& rhs,
                                   const char* what) {
  auto h = solve_extension(hs, epi, rhs);
  if (!h) throw std::logic_error(std::string("no factorization through epimorphism: ") + what);
  return *h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Baby horseshoe

struct BabyHorseshoe {
  ShortExactSequence top;     // X  -> P   -> X1
  ShortExactSequence middle;  // Y  -> P+Q -> Y1
  ShortExactSequence bottom;  // Z  -> Q   -> Z1
  ShortExactSequence left;    // X -> Y -> Z (the input)
  ShortExactSequence center;  // P -> P+Q -> Q
  ShortExactSequence right;   // X1 -> Y1 -> Z1
};

/// Given X -> P ->> X1, Z -> Q ->> Z1 and X -> Y ->> Z with Ext^1(Z, P) = 0,
/// build the full commuting 3x3 diagram with exact rows and columns.
inline BabyHorseshoe baby_horseshoe(const ShortExactSequence& ses_x, const ShortExactSequence& ses_z,
                                    const ShortExactSequence& ses_mid, ResolutionCache& cache) {
  if (ext(ses_z.sub(), ses_x.mid(), 1, cache).dimension != 0)
    throw precondition_error("baby horseshoe requires Ext^1(Z, P) = 0");

  // alpha: Y -> P restricting to X -> P along X -> Y
  HomSpace hyp = hom_space(ses_mid.mid(), ses_x.mid());
  auto alpha = detail::solve_extension(hyp, ses_mid.inc, ses_x.inc);
  if (!alpha) throw std::logic_error("baby horseshoe: extension of X -> P over Y missing despite Ext^1 = 0");
  ModuleHom beta = compose(ses_z.inc, ses_mid.proj);

  DirectSum pq = direct_sum(ses_x.mid(), ses_z.mid());
  ModuleHom phi = hom_add(compose(pq.inc1, *alpha), compose(pq.inc2, beta));
  if (!phi.is_mono()) throw std::logic_error("baby horseshoe: Y -> P+Q is not mono");
  ShortExactSequence middle = ses_from_mono(phi);

  // induced maps on the cokernel column
  HomSpace hx1y1 = hom_space(ses_x.quot(), middle.quot());
  ModuleHom x1_to_y1 = detail::solve_through_epi(
      hx1y1, ses_x.proj, compose(middle.proj, pq.inc1), "X1 -> Y1");
  HomSpace hy1z1 = hom_space(middle.quot(), ses_z.quot());
  ModuleHom y1_to_z1 = detail::solve_through_epi(
      hy1z1, middle.proj, compose(ses_z.proj, pq.proj2), "Y1 -> Z1");

  BabyHorseshoe out{ses_x, middle, ses_z, ses_mid,
                    ShortExactSequence{pq.inc1, pq.proj2},
                    ShortExactSequence{x1_to_y1, y1_to_z1}};
  out.center.verify();
  out.right.verify();
  // remaining commuting squares
  if (!hom_sub(compose(phi, ses_mid.inc), compose(pq.inc1, ses_x.inc)).is_zero())
    throw std::logic_error("baby horseshoe: top-left square does not commute");
  if (!hom_sub(compose(pq.proj2, phi), compose(ses_z.inc, ses_mid.proj)).is_zero())
    throw std::logic_error("baby horseshoe: bottom-left square does not commute");
  return out;
}

// ---------------------------------------------------------------------------
// Baby comparison

struct FourTermExact {
  ModuleHom f1;  // ker(alpha) -> P
  ModuleHom f2;  // P -> Q + Y1
  ModuleHom f3;  // Q + Y1 -> Z1

  void verify() const {
    if (!f1.is_mono()) throw std::logic_error("four-term: first map not mono");
    if (!f3.is_epi()) throw std::logic_error("four-term: last map not epi");
    if (!compose(f2, f1).is_zero() || !compose(f3, f2).is_zero())
      throw std::logic_error("four-term: composites nonzero");
    const std::size_t dim_p = f1.tgt->total_dim();
    const std::size_t dim_mid = f2.tgt->total_dim();
    if (f1.total_rank() + f2.total_rank() != dim_p)
      throw std::logic_error("four-term: not exact at position 2");
    if (f2.total_rank() + f3.total_rank() != dim_mid)
      throw std::logic_error("four-term: not exact at position 3");
  }
};

struct BabyComparison {
  ModuleHom alpha;  // Y -> Z
  ModuleHom beta;   // P -> Q
  ModuleHom gamma;  // Y1 -> Z1
  std::optional<FourTermExact> four_term;  // present when alpha is epi
};

/// Given Y -> P ->> Y1, Z -> Q ->> Z1 and alpha: Y -> Z with
/// Ext^1(Y1, Q) = 0, build the commuting ladder; when alpha is epi, also the
/// exact sequence 0 -> ker(alpha) -> P -> Q + Y1 -> Z1 -> 0.
inline BabyComparison baby_comparison(const ShortExactSequence& ses_y, const ShortExactSequence& ses_z,
                                      const ModuleHom& alpha, ResolutionCache& cache) {
  if (ext(ses_y.quot(), ses_z.mid(), 1, cache).dimension != 0)
    throw precondition_error("baby comparison requires Ext^1(Y1, Q) = 0");

  HomSpace hpq = hom_space(ses_y.mid(), ses_z.mid());
  auto beta = detail::solve_extension(hpq, ses_y.inc, compose(ses_z.inc, alpha));
  if (!beta) throw std::logic_error("baby comparison: lift of alpha missing despite Ext^1 = 0");
  HomSpace hyz = hom_space(ses_y.quot(), ses_z.quot());
  ModuleHom gamma = detail::solve_through_epi(hyz, ses_y.proj, compose(ses_z.proj, *beta), "Y1 -> Z1");

  BabyComparison out{alpha, *beta, gamma, std::nullopt};
  if (alpha.is_epi()) {
    SubquotientHom ker_alpha = kernel(alpha);
    DirectSum qy1 = direct_sum(ses_z.mid(), ses_y.quot());
    ModuleHom f1 = compose(ses_y.inc, ker_alpha.map);
    ModuleHom f2 = hom_add(compose(qy1.inc1, *beta), compose(qy1.inc2, ses_y.proj));
    ModuleHom f3 = hom_sub(compose(ses_z.proj, qy1.proj1), compose(gamma, qy1.proj2));
    FourTermExact ft{f1, f2, f3};
    ft.verify();
    out.four_term = std::move(ft);
  }
  return out;
}

}  // namespace gorkit
