// The abelian-category layer over a compiled algebra: submodule extraction,
// radical/top/socle, minimal projective covers, injective envelopes via the
// dual route, syzygies, pushouts, short exact sequences, and probabilistic
// isomorphism testing with an honest three-valued verdict.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gorkit/module.hpp"

namespace gorkit {

// ---------------------------------------------------------------------------
// Submodules

/// Submodule spanned by the given per-vertex column bases. Throws when the
/// span is not closed under the arrow actions.
inline SubquotientHom submodule_from_columns(const ModulePtr& m, const std::vector<ColBasis>& cols) {
  std::vector<std::size_t> dims;
  for (const auto& c : cols) dims.push_back(c.dim());
  std::vector<Matrix> act;
  const auto& alg = *m->algebra;
  for (std::size_t a = 0; a < m->action.size(); ++a) {
    const int u = alg.arrow_src(int(a)), v = alg.arrow_tgt(int(a));
    Matrix img = m->action[a] * cols[u].cols;
    for (std::size_t c = 0; c < img.cols(); ++c)
      if (!in_span(cols[v], img.column(c))) throw std::logic_error("submodule span not arrow-closed");
    Matrix x(dims[v], dims[u]);
    for (std::size_t r = 0; r < dims[v]; ++r)
      for (std::size_t c = 0; c < dims[u]; ++c) x(r, c) = img(cols[v].lead[r], c);
    act.push_back(std::move(x));
  }
  ModulePtr s = make_module(m->algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> inc;
  for (const auto& c : cols) inc.push_back(c.cols);
  return {s, make_hom(s, m, std::move(inc))};
}

/// rad M = sum of the images of all arrow actions.
inline SubquotientHom radical_submodule(const ModulePtr& m) {
  const auto& alg = *m->algebra;
  std::vector<ColBasis> cols;
  for (std::size_t v = 0; v < m->dims.size(); ++v) {
    Matrix stacked(m->dims[v], 0);
    for (std::size_t a = 0; a < m->action.size(); ++a)
      if (std::size_t(alg.arrow_tgt(int(a))) == v) stacked = Matrix::hstack(stacked, m->action[a]);
    cols.push_back(column_space(stacked));
  }
  return submodule_from_columns(m, cols);
}

/// top M = M / rad M, a semisimple quotient.
inline SubquotientHom top_quotient(const ModulePtr& m) {
  const auto& alg = *m->algebra;
  std::vector<QuotientSplit> q;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m->dims.size(); ++v) {
    Matrix stacked(m->dims[v], 0);
    for (std::size_t a = 0; a < m->action.size(); ++a)
      if (std::size_t(alg.arrow_tgt(int(a))) == v) stacked = Matrix::hstack(stacked, m->action[a]);
    q.push_back(quotient_split(m->dims[v], column_space(stacked)));
    dims.push_back(q[v].kept.size());
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < m->action.size(); ++a)
    act.emplace_back(dims[alg.arrow_tgt(int(a))], dims[alg.arrow_src(int(a))]);  // semisimple
  ModulePtr t = make_module(m->algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> pr;
  for (auto& s : q) pr.push_back(s.proj);
  return {t, make_hom(m, t, std::move(pr))};
}

/// soc M = joint kernel of all arrow actions, a semisimple submodule.
inline SubquotientHom socle_submodule(const ModulePtr& m) {
  const auto& alg = *m->algebra;
  std::vector<ColBasis> cols;
  for (std::size_t v = 0; v < m->dims.size(); ++v) {
    Matrix stacked(0, m->dims[v]);
    for (std::size_t a = 0; a < m->action.size(); ++a)
      if (std::size_t(alg.arrow_src(int(a))) == v) stacked = Matrix::vstack(stacked, m->action[a]);
    KernelBasis kb = kernel_basis(stacked);
    cols.push_back(ColBasis{kb.basis, kb.free_cols});
  }
  return submodule_from_columns(m, cols);
}

// ---------------------------------------------------------------------------
// Projective modules with generator bookkeeping

/// A finite direct sum of vertex projectives, with coordinates indexed by
/// (copy, basis path).
struct ProjectiveModule {
  AlgebraPtr algebra;
  std::vector<int> copies;  // vertex of each copy
  ModulePtr rep;
  std::vector<std::vector<std::pair<int, int>>> coords_at;  // per vertex: (copy, basis path)
  std::vector<std::size_t> generator_pos;                   // per copy: position in its vertex block

  bool is_zero() const { return copies.empty(); }
  std::size_t hom_dim_into(const Module& n) const {
    std::size_t d = 0;
    for (int v : copies) d += n.dims[v];
    return d;
  }
};

inline ProjectiveModule build_projective(const AlgebraPtr& a, std::vector<int> copies) {
  ProjectiveModule p;
  p.algebra = a;
  p.copies = std::move(copies);
  p.coords_at.assign(a->n_vertices(), {});
  p.generator_pos.assign(p.copies.size(), 0);
  std::vector<VertexProjective> vp;
  for (std::size_t v = 0; v < a->n_vertices(); ++v) vp.push_back(vertex_projective_data(a, int(v)));

  for (std::size_t j = 0; j < p.copies.size(); ++j) {
    const int vj = p.copies[j];
    for (std::size_t w = 0; w < a->n_vertices(); ++w) {
      for (int b : vp[vj].paths_at[w]) {
        if (a->basis_path(b).arrows.empty()) p.generator_pos[j] = p.coords_at[w].size();
        p.coords_at[w].emplace_back(int(j), b);
      }
    }
  }

  std::vector<std::size_t> dims(a->n_vertices());
  for (std::size_t w = 0; w < a->n_vertices(); ++w) dims[w] = p.coords_at[w].size();
  std::vector<Matrix> act;
  for (std::size_t ai = 0; ai < a->n_arrows(); ++ai) {
    const int s = a->arrow_src(int(ai)), t = a->arrow_tgt(int(ai));
    Matrix m(dims[t], dims[s]);
    // position lookup at the target vertex
    std::vector<std::vector<int>> pos(p.copies.size(), std::vector<int>(a->dim(), -1));
    for (std::size_t k = 0; k < p.coords_at[t].size(); ++k)
      pos[p.coords_at[t][k].first][p.coords_at[t][k].second] = int(k);
    const Vec& arr = a->arrow_element(int(ai));
    for (std::size_t c = 0; c < p.coords_at[s].size(); ++c) {
      const auto [j, b] = p.coords_at[s][c];
      Vec prod = a->element_mult(arr, a->basis_vec(b));
      for (std::size_t i = 0; i < prod.size(); ++i)
        if (prod[i]) m(pos[j][i], c) = prod[i];
    }
    act.push_back(std::move(m));
  }
  p.rep = make_module(a, std::move(dims), std::move(act), false);
  return p;
}

/// The hom P -> N determined by the images of the copy generators;
/// images[j] is a vector in N at vertex copies[j]. Path actions are built
/// once per basis path, and columns for standard-basis generators (the
/// common case: covers) are read off without a matrix-vector product.
inline ModuleHom hom_from_generators(const ProjectiveModule& p, const ModulePtr& n,
                                     const std::vector<Vec>& images) {
  std::map<int, Matrix> path_act;
  auto act = [&](int b) -> const Matrix& {
    auto it = path_act.find(b);
    if (it != path_act.end()) return it->second;
    const Path& path = p.algebra->basis_path(b);
    return path_act.emplace(b, n->path_action(path.arrows, path.src)).first->second;
  };
  // single-coordinate generators admit column extraction
  std::vector<int> standard_pos(images.size(), -1);
  std::vector<fp::Scalar> standard_val(images.size(), 0);
  for (std::size_t j = 0; j < images.size(); ++j) {
    int pos = -1;
    bool single = true;
    for (std::size_t i = 0; i < images[j].size() && single; ++i) {
      if (!images[j][i]) continue;
      if (pos >= 0) single = false;
      pos = int(i);
    }
    if (single && pos >= 0) {
      standard_pos[j] = pos;
      standard_val[j] = images[j][pos];
    }
  }
  std::vector<Matrix> blocks;
  for (std::size_t w = 0; w < p.coords_at.size(); ++w) {
    Matrix blk(n->dims[w], p.coords_at[w].size());
    for (std::size_t c = 0; c < p.coords_at[w].size(); ++c) {
      const auto [j, b] = p.coords_at[w][c];
      const Matrix& pa = act(b);
      if (standard_pos[j] >= 0) {
        const fp::Scalar s = standard_val[j];
        for (std::size_t i = 0; i < blk.rows(); ++i)
          blk(i, c) = fp::mul(pa(i, std::size_t(standard_pos[j])), s);
      } else {
        Vec col = pa.apply(images[j]);
        for (std::size_t i = 0; i < col.size(); ++i) blk(i, c) = col[i];
      }
    }
    blocks.push_back(std::move(blk));
  }
  return make_hom(p.rep, n, std::move(blocks));
}

/// Hom(P, N) in generator coordinates (one block of N-coordinates per copy).
inline std::vector<Vec> generator_images_from_coords(const ProjectiveModule& p, const Module& n, const Vec& coords) {
  std::vector<Vec> images;
  std::size_t off = 0;
  for (int v : p.copies) {
    images.emplace_back(coords.begin() + off, coords.begin() + off + n.dims[v]);
    off += n.dims[v];
  }
  return images;
}

inline ModulePtr regular_module(const AlgebraPtr& a) {
  std::vector<int> copies;
  for (std::size_t v = 0; v < a->n_vertices(); ++v) copies.push_back(int(v));
  return build_projective(a, copies).rep;
}

// ---------------------------------------------------------------------------
// Minimal covers, envelopes, syzygies

struct Cover {
  ProjectiveModule proj;
  ModuleHom epi;
};

/// Minimal projective cover: one copy of P_v per top-multiplicity, with the
/// section of top(M) chosen by Gaussian pivoting in the fixed basis order.
inline Cover projective_cover(const ModulePtr& m) {
  const auto& alg = *m->algebra;
  std::vector<int> copies;
  std::vector<Vec> gens;
  for (std::size_t v = 0; v < m->dims.size(); ++v) {
    Matrix stacked(m->dims[v], 0);
    for (std::size_t a = 0; a < m->action.size(); ++a)
      if (std::size_t(alg.arrow_tgt(int(a))) == v) stacked = Matrix::hstack(stacked, m->action[a]);
    QuotientSplit q = quotient_split(m->dims[v], column_space(stacked));
    for (std::size_t k = 0; k < q.kept.size(); ++k) {
      copies.push_back(int(v));
      Vec g(m->dims[v], 0);
      g[q.kept[k]] = 1;
      gens.push_back(std::move(g));
    }
  }
  ProjectiveModule p = build_projective(m->algebra, std::move(copies));
  ModuleHom epi = hom_from_generators(p, m, gens);
  return Cover{std::move(p), std::move(epi)};
}

struct Syzygy {
  ModulePtr omega;
  ModuleHom inclusion;  // omega -> P
  Cover cover;
};

inline Syzygy syzygy_data(const ModulePtr& m) {
  Cover c = projective_cover(m);
  SubquotientHom k = kernel(c.epi);
  // cover surjectivity: rank per vertex = dim M
  std::size_t rank_total = c.proj.rep->total_dim() - k.module->total_dim();
  if (rank_total != m->total_dim()) throw std::logic_error("projective cover failed to surject");
  return Syzygy{k.module, k.map, std::move(c)};
}

inline ModulePtr syzygy(const ModulePtr& m) { return syzygy_data(m).omega; }

/// kernel(epi) lies inside rad P: the minimality certificate of a cover.
inline bool kernel_inside_radical(const Cover& c, const ModuleHom& kernel_inclusion) {
  SubquotientHom rad = radical_submodule(c.proj.rep);
  for (std::size_t v = 0; v < c.proj.rep->dims.size(); ++v) {
    Matrix both = Matrix::hstack(rad.map.blocks[v], kernel_inclusion.blocks[v]);
    if (rank(both) != rank(rad.map.blocks[v])) return false;
  }
  return true;
}

struct Envelope {
  ModulePtr inj;
  ModuleHom mono;
};

/// Injective envelope through the dual route: I(M) = D(cover of D M).
inline Envelope injective_envelope(const ModulePtr& m) {
  ModulePtr dm = dualize(m);
  Cover c = projective_cover(dm);
  ModulePtr inj = dualize(c.proj.rep);
  std::vector<Matrix> blocks;
  for (const auto& b : c.epi.blocks) blocks.push_back(b.transpose());
  ModuleHom mono = make_hom(m, inj, std::move(blocks));
  return Envelope{inj, std::move(mono)};
}

// ---------------------------------------------------------------------------
// Short exact sequences and pushouts

struct ShortExactSequence {
  ModuleHom inc;   // X -> Y
  ModuleHom proj;  // Y -> Z

  const ModulePtr& sub() const { return inc.src; }
  const ModulePtr& mid() const { return inc.tgt; }
  const ModulePtr& quot() const { return proj.tgt; }

  void verify() const {
    if (inc.tgt->content_hash() != proj.src->content_hash())
      throw std::invalid_argument("ses: middle modules differ");
    if (!inc.is_mono()) throw std::logic_error("ses: inclusion not mono");
    if (!proj.is_epi()) throw std::logic_error("ses: projection not epi");
    if (!compose(proj, inc).is_zero()) throw std::logic_error("ses: composite nonzero");
    for (std::size_t v = 0; v < inc.blocks.size(); ++v)
      if (rank(inc.blocks[v]) + rank(proj.blocks[v]) != inc.tgt->dims[v])
        throw std::logic_error("ses: not exact in the middle");
  }
};

inline ShortExactSequence ses_from_mono(const ModuleHom& inc) {
  SubquotientHom c = cokernel(inc);
  ShortExactSequence s{inc, c.map};
  s.verify();
  return s;
}

inline ShortExactSequence ses_from_epi(const ModuleHom& proj) {
  SubquotientHom k = kernel(proj);
  ShortExactSequence s{k.map, proj};
  s.verify();
  return s;
}

struct Pushout {
  ModulePtr module;
  ModuleHom from_first;   // A -> P
  ModuleHom from_second;  // B -> P
};

/// Pushout of f: N -> A and g: N -> B, the cokernel of (f, -g): N -> A + B.
inline Pushout pushout(const ModuleHom& f, const ModuleHom& g) {
  if (f.src->content_hash() != g.src->content_hash()) throw std::invalid_argument("pushout: sources differ");
  DirectSum s = direct_sum(f.tgt, g.tgt);
  ModuleHom h = hom_sub(compose(s.inc1, f), compose(s.inc2, g));
  SubquotientHom c = cokernel(h);
  Pushout p{c.module, compose(c.map, s.inc1), compose(c.map, s.inc2)};
  if (!hom_sub(compose(p.from_first, f), compose(p.from_second, g)).is_zero())
    throw std::logic_error("pushout square does not commute");
  return p;
}

// ---------------------------------------------------------------------------
// Probabilistic isomorphism testing

enum class IsoVerdict { yes, no, unknown };

struct IsoResult {
  IsoVerdict verdict;
  std::optional<ModuleHom> witness;
  std::string note;
};

/// Three-valued isomorphism test. "no" rests on exact invariants (dimension
/// vectors, Hom-space dimensions); "yes" carries an invertible witness; after
/// `trials` random samples without a witness the honest answer is "unknown".
inline IsoResult is_isomorphic(const ModulePtr& m, const ModulePtr& n, int trials = 8,
                               std::uint64_t seed = 0x15015015) {
  if (m->is_zero() && n->is_zero()) return {IsoVerdict::yes, std::nullopt, "both zero"};
  if (m->dims != n->dims) return {IsoVerdict::no, std::nullopt, "dimension vectors differ"};
  HomSpace fwd = hom_space(m, n);
  HomSpace bwd = hom_space(n, m);
  if (fwd.dim() != bwd.dim())
    return {IsoVerdict::no, std::nullopt, "hom-space dimensions differ"};
  HomSpace endm = hom_space(m, m);
  HomSpace endn = hom_space(n, n);
  if (endm.dim() != endn.dim())
    return {IsoVerdict::no, std::nullopt, "endomorphism-space dimensions differ"};
  for (const auto& h : fwd.basis)
    if (h.is_iso()) return {IsoVerdict::yes, h, "basis element"};
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Vec c(fwd.dim());
    for (auto& x : c) x = rng.field_element();
    ModuleHom h = fwd.from_coords(c);
    if (h.is_iso()) return {IsoVerdict::yes, h, "random combination"};
  }
  return {IsoVerdict::unknown, std::nullopt,
          "no invertible hom found in " + std::to_string(trials) + " trials (probabilistic)"};
}

}  // namespace gorkit
