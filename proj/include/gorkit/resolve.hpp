// Minimal projective resolutions, projective/injective dimensions with honest
// capped verdicts, and Ext groups computed two independent ways.
//
// A dimension in N ∪ {∞} is only ever reported as:
//   - an exact value (the resolution terminated),
//   - "infinite" with a syzygy-periodicity witness Omega^j = Omega^k, or
//   - ">= cap+1" when the search cap was hit without either.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "gorkit/modcat.hpp"

namespace gorkit {

struct PeriodWitness {
  std::size_t lo = 0, hi = 0;  // Omega^lo isomorphic to Omega^hi, lo < hi
};

struct DimValue {
  enum class Kind { exact, at_least, infinite };
  Kind kind = Kind::exact;
  std::size_t value = 0;  // exact value, or the lower bound
  std::optional<PeriodWitness> period;
  std::vector<std::size_t> syzygy_dims;  // dim Omega^0, Omega^1, ...

  bool is_exact() const { return kind == Kind::exact; }
  bool strictly_growing() const {
    if (syzygy_dims.size() < 3) return false;
    for (std::size_t i = 2; i < syzygy_dims.size(); ++i)
      if (syzygy_dims[i] <= syzygy_dims[i - 1]) return false;
    return true;
  }

  std::string render(const std::string& name) const {
    std::ostringstream os;
    switch (kind) {
      case Kind::exact:
        os << name << " = " << value;
        break;
      case Kind::infinite:
        os << name << " = infinity (period " << period->lo << "->" << period->hi << ")";
        break;
      case Kind::at_least:
        os << name << " >= " << value;
        break;
    }
    return os.str();
  }
};

struct ResolutionStep {
  ProjectiveModule proj;  // P_i
  ModuleHom cover;        // P_i ->> Omega^i
  ModulePtr syz_next;     // Omega^{i+1}
  ModuleHom incl_next;    // Omega^{i+1} -> P_i
};

struct Resolution {
  ModulePtr module;
  std::vector<std::shared_ptr<const ResolutionStep>> steps;
  bool complete = false;  // the syzygy after the last step vanishes

  std::size_t depth() const { return steps.empty() ? 0 : steps.size() - 1; }
  bool truncated() const { return !complete; }

  ModulePtr syzygy_at(std::size_t i) const {  // Omega^i, i >= 1 within range
    return steps[i - 1]->syz_next;
  }

  /// d_i: P_i -> P_{i-1}, for 1 <= i <= depth.
  ModuleHom differential(std::size_t i) const {
    return compose(steps[i - 1]->incl_next, steps[i]->cover);
  }

  const ModuleHom& augmentation() const { return steps[0]->cover; }

  /// Exact pd when the resolution terminated below the cap.
  std::optional<std::size_t> exact_pd() const {
    if (!complete) return std::nullopt;
    return steps.size() == 0 ? 0 : steps.size() - 1;
  }
};

namespace detail {

inline std::shared_ptr<const ResolutionStep> resolution_step(const ModulePtr& omega) {
  Cover c = projective_cover(omega);
  SubquotientHom k = kernel(c.epi);
  if (c.proj.rep->total_dim() - k.module->total_dim() != omega->total_dim())
    throw std::logic_error("projective cover failed to surject");
  return std::make_shared<ResolutionStep>(
      ResolutionStep{std::move(c.proj), std::move(c.epi), k.module, std::move(k.map)});
}

}  // namespace detail

/// Shared, lazily extended store of minimal resolutions keyed by module
/// content. Get-or-compute is atomic; returned snapshots are immutable.
class ResolutionCache {
 public:
  /// A minimal resolution with steps P_0..P_depth, ending early if a syzygy
  /// vanishes first.
  Resolution resolution(const ModulePtr& m, std::size_t depth) {
    std::shared_ptr<Entry> entry;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto& slot = entries_[m->content_hash()];
      if (!slot) {
        slot = std::make_shared<Entry>();
        slot->module = m;
        slot->complete = m->is_zero();
      }
      entry = slot;
    }
    std::lock_guard<std::mutex> lock(entry->mu);
    while (!entry->complete && entry->steps.size() <= depth) {
      ModulePtr omega = entry->steps.empty() ? entry->module : entry->steps.back()->syz_next;
      if (omega->is_zero()) {
        entry->complete = true;
        break;
      }
      entry->steps.push_back(detail::resolution_step(omega));
      if (entry->steps.back()->syz_next->is_zero()) entry->complete = true;
    }
    Resolution r;
    r.module = entry->module;
    r.steps.assign(entry->steps.begin(),
                   entry->steps.begin() + std::min(entry->steps.size(), depth + 1));
    r.complete = entry->complete && r.steps.size() == entry->steps.size();
    return r;
  }

 private:
  struct Entry {
    ModulePtr module;
    std::vector<std::shared_ptr<const ResolutionStep>> steps;
    bool complete = false;
    std::mutex mu;
  };
  std::mutex mu_;
  std::map<std::uint64_t, std::shared_ptr<Entry>> entries_;
};

inline Resolution min_projective_resolution(const ModulePtr& m, std::size_t depth_cap,
                                            ResolutionCache& cache) {
  return cache.resolution(m, depth_cap);
}

// ---------------------------------------------------------------------------
// Projective and injective dimension

/// Lean pd search: keeps syzygies for the periodicity scan but drops covers as
/// it goes, so deep searches over growing algebras stay within memory.
inline DimValue projective_dimension(const ModulePtr& m, std::size_t cap, int trials = 8,
                                     std::uint64_t seed = 0x9d100d) {
  DimValue out;
  std::vector<ModulePtr> syzygies{m};
  out.syzygy_dims.push_back(m->total_dim());
  if (m->is_zero()) {
    out.kind = DimValue::Kind::exact;
    out.value = 0;
    return out;
  }
  Rng rng(seed);
  for (std::size_t k = 1; k <= cap + 1; ++k) {
    ModulePtr omega = syzygy(syzygies.back());
    if (omega->is_zero()) {
      out.kind = DimValue::Kind::exact;
      out.value = k - 1;
      return out;
    }
    for (std::size_t j = 0; j < syzygies.size(); ++j) {
      if (syzygies[j]->dims != omega->dims) continue;
      IsoResult iso = is_isomorphic(syzygies[j], omega, trials, rng.next());
      if (iso.verdict == IsoVerdict::yes) {
        out.kind = DimValue::Kind::infinite;
        out.period = PeriodWitness{j, k};
        out.syzygy_dims.push_back(omega->total_dim());
        return out;
      }
    }
    syzygies.push_back(omega);
    out.syzygy_dims.push_back(omega->total_dim());
  }
  out.kind = DimValue::Kind::at_least;
  out.value = cap + 1;
  return out;
}

inline DimValue injective_dimension(const ModulePtr& m, std::size_t cap, int trials = 8,
                                    std::uint64_t seed = 0x1d100d) {
  return projective_dimension(dualize(m), cap, trials, seed);
}

// ---------------------------------------------------------------------------
// Ext via the projective side

struct ExtGroup {
  std::size_t degree = 0;
  std::size_t dimension = 0;
  std::vector<ModuleHom> cocycle_basis;  // homs P_degree -> N modulo coboundaries
};

namespace detail {

/// Matrix of Hom(d, N): Hom(P, N) -> Hom(P', N) for a differential
/// d: P' -> P, in generator coordinates.
inline Matrix induced_on_proj_homs(const ProjectiveModule& pfrom /* P' */,
                                   const ProjectiveModule& pto /* P */, const ModuleHom& d,
                                   const Module& n) {
  // coordinates: Hom(P, N) = sum over copies j of N_{v_j}
  std::vector<std::size_t> to_off(pto.copies.size() + 1, 0);
  for (std::size_t j = 0; j < pto.copies.size(); ++j)
    to_off[j + 1] = to_off[j] + n.dims[pto.copies[j]];
  std::vector<std::size_t> from_off(pfrom.copies.size() + 1, 0);
  for (std::size_t j = 0; j < pfrom.copies.size(); ++j)
    from_off[j + 1] = from_off[j] + n.dims[pfrom.copies[j]];

  Matrix out(from_off.back(), to_off.back());
  for (std::size_t c = 0; c < pfrom.copies.size(); ++c) {
    const int v = pfrom.copies[c];
    // image of the c-th generator inside P, in (copy, path) coordinates
    const Matrix& blk = d.blocks[v];
    const std::size_t gcol = pfrom.generator_pos[c];
    for (std::size_t r = 0; r < blk.rows(); ++r) {
      const fp::Scalar val = blk(r, gcol);
      if (!val) continue;
      const auto [j, b] = pto.coords_at[v][r];
      const Path& path = pto.algebra->basis_path(b);
      Matrix pa = n.path_action(path.arrows, path.src).scaled(val);  // N_{v_j} -> N_v
      for (std::size_t i = 0; i < pa.rows(); ++i)
        for (std::size_t k = 0; k < pa.cols(); ++k)
          out(from_off[c] + i, to_off[j] + k) = fp::add(out(from_off[c] + i, to_off[j] + k), pa(i, k));
    }
  }
  return out;
}

/// Columns of `candidates` extending span(base) to a larger space; returns
/// the chosen column indices.
inline std::vector<std::size_t> independent_extension(const Matrix& base, const Matrix& candidates) {
  std::vector<std::size_t> picked;
  Matrix cur = base;
  std::size_t r = rank(cur);
  for (std::size_t c = 0; c < candidates.cols(); ++c) {
    Matrix trym = Matrix::hstack(cur, candidates.columns({c}));
    if (rank(trym) > r) {
      picked.push_back(c);
      cur = trym;
      ++r;
    }
  }
  return picked;
}

}  // namespace detail

/// Ext^i(M, N) as the degree-i cohomology of Hom(P_., N) for the cached
/// minimal resolution P_. of M.
inline ExtGroup ext(const ModulePtr& m, const ModulePtr& n, std::size_t i, ResolutionCache& cache) {
  ExtGroup out;
  out.degree = i;
  if (m->is_zero() || n->is_zero()) return out;
  Resolution res = cache.resolution(m, i + 1);
  if (res.steps.size() <= i) return out;  // P_i = 0
  const ProjectiveModule& pi = res.steps[i]->proj;
  const std::size_t ci = pi.hom_dim_into(*n);

  Matrix delta_out;  // C^i -> C^{i+1}
  if (i + 1 < res.steps.size()) {
    delta_out = detail::induced_on_proj_homs(res.steps[i + 1]->proj, pi, res.differential(i + 1), *n);
  } else {
    delta_out = Matrix(0, ci);
  }
  Matrix delta_in;  // C^{i-1} -> C^i
  if (i > 0) {
    delta_in = detail::induced_on_proj_homs(pi, res.steps[i - 1]->proj, res.differential(i), *n);
  } else {
    delta_in = Matrix(ci, 0);
  }

  KernelBasis cocycles = kernel_basis(delta_out);
  const std::size_t rk_in = rank(delta_in);
  out.dimension = cocycles.basis.cols() - rk_in;

  // echelon representatives of a complement of the coboundaries
  std::vector<std::size_t> chosen = detail::independent_extension(delta_in, cocycles.basis);
  for (std::size_t c : chosen) {
    Vec coords = cocycles.basis.column(c);
    std::vector<Vec> images = generator_images_from_coords(pi, *n, coords);
    out.cocycle_basis.push_back(hom_from_generators(pi, n, images));
  }
  if (out.cocycle_basis.size() != out.dimension) throw std::logic_error("ext: cocycle count mismatch");
  return out;
}

// ---------------------------------------------------------------------------
// Ext via the injective side (the cross-check oracle)

/// dim Ext^i(M, N) as the degree-i cohomology of Hom(M, I^.) for an injective
/// coresolution of N obtained by dualizing a projective resolution of D N
/// over the opposite algebra. Shares nothing with ext() beyond linalg and the
/// hom-space solver.
inline std::size_t ext_via_injectives(const ModulePtr& m, const ModulePtr& n, std::size_t i,
                                      ResolutionCache& cache) {
  if (m->is_zero() || n->is_zero()) return 0;
  ModulePtr dn = dualize(n);
  Resolution res = cache.resolution(dn, i + 1);

  auto inj_at = [&](std::size_t j) -> ModulePtr {
    if (j >= res.steps.size()) return zero_module(n->algebra);
    return dualize(res.steps[j]->proj.rep);
  };

  ModulePtr ii = inj_at(i);
  HomSpace hi = hom_space(m, ii);

  Matrix delta_out(0, hi.dim());
  if (i + 1 < res.steps.size()) {
    ModulePtr inext = inj_at(i + 1);
    HomSpace hnext = hom_space(m, inext);
    ModuleHom d = res.differential(i + 1);  // R_{i+1} -> R_i over the opposite
    ModuleHom partial = dualize_hom(d, ii, inext);
    delta_out = Matrix(hnext.dim(), hi.dim());
    for (std::size_t k = 0; k < hi.dim(); ++k)
      delta_out.set_column(k, hnext.coords(compose(partial, hi.basis[k])));
  }
  Matrix delta_in(hi.dim(), 0);
  if (i > 0 && i < res.steps.size()) {
    ModulePtr iprev = inj_at(i - 1);
    HomSpace hprev = hom_space(m, iprev);
    ModuleHom d = res.differential(i);
    ModuleHom partial = dualize_hom(d, iprev, ii);
    delta_in = Matrix(hi.dim(), hprev.dim());
    for (std::size_t k = 0; k < hprev.dim(); ++k)
      delta_in.set_column(k, hi.coords(compose(partial, hprev.basis[k])));
  }

  return kernel_basis(delta_out).basis.cols() - rank(delta_in);
}

// ---------------------------------------------------------------------------
// Horseshoe resolutions of a short exact sequence

/// Simultaneous projective resolutions of 0 -> K -> G -> X -> 0 with split
/// chain maps in each degree: P^G_i = P^K_i + P^X_i.
struct HorseshoeResolution {
  std::vector<ProjectiveModule> sub, mid, quot;
  std::vector<ModuleHom> sub_cover, mid_cover, quot_cover;  // onto the i-th syzygy sequence
  std::vector<ModuleHom> d_sub, d_mid, d_quot;              // differentials
};

inline HorseshoeResolution horseshoe_resolution(const ShortExactSequence& ses, std::size_t depth) {
  HorseshoeResolution out;
  ShortExactSequence cur = ses;
  std::vector<ModuleHom> prev_incl;  // syzygy inclusions of (sub, mid, quot) into the previous projectives
  for (std::size_t i = 0; i <= depth; ++i) {
    Cover ck = projective_cover(cur.sub());
    Cover cx = projective_cover(cur.quot());
    std::vector<int> copies = ck.proj.copies;
    copies.insert(copies.end(), cx.proj.copies.begin(), cx.proj.copies.end());
    ProjectiveModule pm = build_projective(ses.inc.src->algebra, copies);

    // lift of the quotient cover through the epi
    std::vector<Vec> lift_imgs;
    for (std::size_t j = 0; j < cx.proj.copies.size(); ++j) {
      const int v = cx.proj.copies[j];
      Vec target = cx.epi.blocks[v].column(cx.proj.generator_pos[j]);
      auto pre = solve(cur.proj.blocks[v], target);
      if (!pre) throw std::logic_error("horseshoe: cover lift failed");
      lift_imgs.push_back(*pre);
    }
    ModuleHom lift = hom_from_generators(cx.proj, cur.mid(), lift_imgs);

    std::vector<Matrix> mid_blocks;
    for (std::size_t v = 0; v < pm.rep->dims.size(); ++v)
      mid_blocks.push_back(Matrix::hstack(compose(cur.inc, ck.epi).blocks[v], lift.blocks[v]));
    ModuleHom mid_cover = make_hom(pm.rep, cur.mid(), std::move(mid_blocks));

    // chain maps in degree i are the coordinate inclusion / projection
    if (i > 0) {
      // differentials: cover composed with the previous syzygy inclusion
      out.d_sub.push_back(compose(prev_incl[0], ck.epi));
      out.d_mid.push_back(compose(prev_incl[1], mid_cover));
      out.d_quot.push_back(compose(prev_incl[2], cx.epi));
    }
    out.sub_cover.push_back(ck.epi);
    out.mid_cover.push_back(mid_cover);
    out.quot_cover.push_back(cx.epi);

    SubquotientHom kk = kernel(ck.epi);
    SubquotientHom km = kernel(mid_cover);
    SubquotientHom kx = kernel(cx.epi);

    out.sub.push_back(ck.proj);
    out.mid.push_back(pm);
    out.quot.push_back(std::move(cx.proj));

    if (i == depth) break;

    // next short exact sequence of syzygies
    const std::size_t nk = out.sub.back().rep->dims.size();
    std::vector<Matrix> inc_blocks, proj_blocks;
    for (std::size_t v = 0; v < nk; ++v) {
      // Omega(K) -> Omega(G): include P^K coordinates into P^G and read off
      const std::size_t dk = out.sub.back().rep->dims[v];
      const std::size_t dxv = out.quot.back().rep->dims[v];
      Matrix inck(dk + dxv, dk);
      for (std::size_t r = 0; r < dk; ++r) inck(r, r) = 1;
      Matrix img = inck * kk.map.blocks[v];
      Matrix x(km.module->dims[v], kk.module->dims[v]);
      KernelBasis kbm = kernel_basis(mid_cover.blocks[v]);
      for (std::size_t r = 0; r < km.module->dims[v]; ++r)
        for (std::size_t c = 0; c < kk.module->dims[v]; ++c) x(r, c) = img(kbm.free_cols[r], c);
      inc_blocks.push_back(std::move(x));

      Matrix projx(dxv, dk + dxv);
      for (std::size_t r = 0; r < dxv; ++r) projx(r, dk + r) = 1;
      Matrix img2 = projx * km.map.blocks[v];
      Matrix y(kx.module->dims[v], km.module->dims[v]);
      KernelBasis kbx = kernel_basis(cx.epi.blocks[v]);
      for (std::size_t r = 0; r < kx.module->dims[v]; ++r)
        for (std::size_t c = 0; c < km.module->dims[v]; ++c) y(r, c) = img2(kbx.free_cols[r], c);
      proj_blocks.push_back(std::move(y));
    }
    ModuleHom next_inc = make_hom(kk.module, km.module, std::move(inc_blocks));
    ModuleHom next_proj = make_hom(km.module, kx.module, std::move(proj_blocks));
    cur = ShortExactSequence{next_inc, next_proj};
    cur.verify();
    prev_incl = {kk.map, km.map, kx.map};
  }
  return out;
}

}  // namespace gorkit
