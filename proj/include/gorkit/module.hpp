// Finite-dimensional representations of a compiled algebra: one space per
// vertex, one matrix per arrow. Everything is an immutable value behind a
// shared_ptr; operations are pure.
#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gorkit/algebra.hpp"
#include "gorkit/matrix.hpp"

namespace gorkit {

struct Module;
using ModulePtr = std::shared_ptr<const Module>;

struct Module {
  AlgebraPtr algebra;
  std::vector<std::size_t> dims;  // per vertex
  std::vector<Matrix> action;    // per arrow a: dims[tgt(a)] x dims[src(a)]

  std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t(0)); }
  bool is_zero() const { return total_dim() == 0; }

  std::size_t vertex_offset(int v) const {
    std::size_t off = 0;
    for (int w = 0; w < v; ++w) off += dims[w];
    return off;
  }

  /// Action of a path (traversal order) as a map dims[src] -> dims[tgt].
  Matrix path_action(const std::vector<int>& arrows, int src_vertex) const {
    Matrix m = Matrix::identity(dims[src_vertex]);
    for (int a : arrows) m = action[a] * m;
    return m;
  }

  Matrix basis_action(int basis_index) const {
    const Path& p = algebra->basis_path(basis_index);
    return path_action(p.arrows, p.src);
  }

  /// Action of an algebra element on the concatenated total space.
  Matrix element_action_total(const Vec& coeffs) const {
    const std::size_t n = total_dim();
    Matrix m(n, n);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (!coeffs[i]) continue;
      const Path& p = algebra->basis_path(int(i));
      Matrix blk = basis_action(int(i)).scaled(coeffs[i]);
      const std::size_t ro = vertex_offset(p.tgt), co = vertex_offset(p.src);
      for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c)
          m(ro + r, co + c) = fp::add(m(ro + r, co + c), blk(r, c));
    }
    return m;
  }

  /// Throws if some arrow matrix has the wrong shape or a relation acts
  /// nonzero; the offending relation is named.
  void validate() const {
    if (dims.size() != algebra->n_vertices()) throw std::invalid_argument("module: wrong number of vertex dimensions");
    if (action.size() != algebra->n_arrows()) throw std::invalid_argument("module: wrong number of arrow actions");
    for (std::size_t a = 0; a < action.size(); ++a) {
      if (action[a].rows() != dims[algebra->arrow_tgt(int(a))] || action[a].cols() != dims[algebra->arrow_src(int(a))])
        throw std::invalid_argument("module: arrow " + algebra->arrow_name(int(a)) + " has wrong shape");
    }
    for (const auto& rel : algebra->relations()) {
      Matrix sum(dims[rel.tgt], dims[rel.src]);
      for (const auto& term : rel.terms)
        sum = sum + path_action(term.arrows, rel.src).scaled(term.coef);
      if (!sum.is_zero())
        throw std::invalid_argument("module violates relation: " + rel.display);
    }
  }

  std::uint64_t content_hash() const {
    std::uint64_t h = algebra->fingerprint();
    for (auto d : dims) detail::fnv_mix(h, d);
    for (const auto& m : action) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) detail::fnv_mix(h, m(i, j));
      detail::fnv_mix(h, 0xabull);
    }
    return h;
  }

  std::string dim_string() const {
    std::string s = "(";
    for (std::size_t v = 0; v < dims.size(); ++v) s += (v ? "," : "") + std::to_string(dims[v]);
    return s + ")";
  }
};

inline ModulePtr make_module(AlgebraPtr a, std::vector<std::size_t> dims, std::vector<Matrix> action,
                             bool check = true) {
  auto m = std::make_shared<Module>(Module{std::move(a), std::move(dims), std::move(action)});
  if (check) m->validate();
  return m;
}

inline ModulePtr zero_module(AlgebraPtr a) {
  std::vector<std::size_t> dims(a->n_vertices(), 0);
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->n_arrows(); ++i)
    act.emplace_back(dims[a->arrow_tgt(int(i))], dims[a->arrow_src(int(i))]);
  return make_module(std::move(a), std::move(dims), std::move(act), false);
}

inline ModulePtr simple_module(AlgebraPtr a, int v) {
  std::vector<std::size_t> dims(a->n_vertices(), 0);
  dims[v] = 1;
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < a->n_arrows(); ++i)
    act.emplace_back(dims[a->arrow_tgt(int(i))], dims[a->arrow_src(int(i))]);
  return make_module(std::move(a), std::move(dims), std::move(act), false);
}

/// The left module A e_v as a representation; its basis at vertex w is the
/// set of basis paths v -> w, in algebra order.
struct VertexProjective {
  ModulePtr rep;
  std::vector<std::vector<int>> paths_at;  // per vertex w: algebra basis indices
};

inline VertexProjective vertex_projective_data(const AlgebraPtr& a, int v) {
  VertexProjective out;
  out.paths_at.assign(a->n_vertices(), {});
  for (int i : a->basis_with_src(v)) out.paths_at[a->basis_path(i).tgt].push_back(i);
  std::vector<std::size_t> dims(a->n_vertices());
  for (std::size_t w = 0; w < a->n_vertices(); ++w) dims[w] = out.paths_at[w].size();

  // position of each basis path within its vertex block
  std::vector<int> pos(a->dim(), -1);
  for (std::size_t w = 0; w < a->n_vertices(); ++w)
    for (std::size_t k = 0; k < out.paths_at[w].size(); ++k) pos[out.paths_at[w][k]] = int(k);

  std::vector<Matrix> act;
  for (std::size_t ai = 0; ai < a->n_arrows(); ++ai) {
    const int s = a->arrow_src(int(ai)), t = a->arrow_tgt(int(ai));
    Matrix m(dims[t], dims[s]);
    const Vec& arr = a->arrow_element(int(ai));
    for (std::size_t k = 0; k < out.paths_at[s].size(); ++k) {
      Vec prod = a->element_mult(arr, a->basis_vec(out.paths_at[s][k]));
      for (std::size_t i = 0; i < prod.size(); ++i)
        if (prod[i]) m(pos[i], k) = prod[i];
    }
    act.push_back(std::move(m));
  }
  out.rep = make_module(a, std::move(dims), std::move(act), false);
  return out;
}

inline ModulePtr vertex_projective(const AlgebraPtr& a, int v) { return vertex_projective_data(a, v).rep; }

/// A as a left module over itself, assembled vertex projective by vertex
/// projective in vertex order.
inline ModulePtr regular_module(const AlgebraPtr& a);  // defined in modcat.hpp

// ---------------------------------------------------------------------------
// Morphisms

struct ModuleHom {
  ModulePtr src, tgt;
  std::vector<Matrix> blocks;  // per vertex: tgt.dims[v] x src.dims[v]

  bool is_zero() const {
    for (const auto& b : blocks)
      if (!b.is_zero()) return false;
    return true;
  }

  std::size_t total_rank() const {
    std::size_t r = 0;
    for (const auto& b : blocks) r += rank(b);
    return r;
  }

  bool is_mono() const { return total_rank() == src->total_dim(); }
  bool is_epi() const { return total_rank() == tgt->total_dim(); }
  bool is_iso() const {
    for (std::size_t v = 0; v < blocks.size(); ++v)
      if (blocks[v].rows() != blocks[v].cols() || !is_invertible(blocks[v])) return false;
    return true;
  }

  Vec flat() const {
    Vec out;
    for (const auto& b : blocks)
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.push_back(b(i, j));
    return out;
  }

  Vec apply_total(const Vec& x) const {
    Vec out(tgt->total_dim(), 0);
    std::size_t so = 0, to = 0;
    for (std::size_t v = 0; v < blocks.size(); ++v) {
      const Matrix& b = blocks[v];
      for (std::size_t i = 0; i < b.rows(); ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < b.cols(); ++j) acc += std::uint64_t(b(i, j)) * x[so + j] % fp::prime();
        out[to + i] = fp::Scalar(acc % fp::prime());
      }
      so += src->dims[v];
      to += tgt->dims[v];
    }
    return out;
  }
};

namespace detail {

inline bool compatible(const Module& a, const Module& b) {
  return a.algebra->same_as(*b.algebra);
}

// Full intertwiner verification below this op-count estimate; Freivalds-style
// probing with exact arithmetic above it.
constexpr std::uint64_t kFullVerifyBudget = 1ull << 28;

inline std::uint64_t verify_cost(const Module& s, const Module& t) {
  std::uint64_t c = 0;
  for (std::size_t a = 0; a < s.action.size(); ++a) {
    const int as = s.algebra->arrow_src(int(a)), at = s.algebra->arrow_tgt(int(a));
    c += std::uint64_t(t.dims[at]) * s.dims[at] * s.dims[as];
    c += std::uint64_t(t.dims[at]) * t.dims[as] * s.dims[as];
  }
  return c;
}

}  // namespace detail

/// Intertwiner check: exact dense when affordable, exact random probes when
/// the operands are resolution-scale.
inline void verify_hom(const ModuleHom& f) {
  const Module& s = *f.src;
  const Module& t = *f.tgt;
  if (!detail::compatible(s, t)) throw std::invalid_argument("hom between modules over different algebras");
  if (f.blocks.size() != s.dims.size()) throw std::invalid_argument("hom: wrong number of blocks");
  for (std::size_t v = 0; v < f.blocks.size(); ++v)
    if (f.blocks[v].rows() != t.dims[v] || f.blocks[v].cols() != s.dims[v])
      throw std::invalid_argument("hom: block shape mismatch at vertex " + std::to_string(v));
  const auto& alg = *s.algebra;
  if (detail::verify_cost(s, t) <= detail::kFullVerifyBudget) {
    for (std::size_t a = 0; a < s.action.size(); ++a) {
      const int as = alg.arrow_src(int(a)), at = alg.arrow_tgt(int(a));
      if (f.blocks[at] * s.action[a] != t.action[a] * f.blocks[as])
        throw std::logic_error("hom fails intertwiner equation at arrow " + alg.arrow_name(int(a)));
    }
  } else {
    Rng rng(0x5eedf00dull ^ s.total_dim() ^ (t.total_dim() << 20));
    for (int probe = 0; probe < 4; ++probe) {
      for (std::size_t a = 0; a < s.action.size(); ++a) {
        const int as = alg.arrow_src(int(a)), at = alg.arrow_tgt(int(a));
        Vec x(s.dims[as]);
        for (auto& e : x) e = rng.field_element();
        Vec lhs = f.blocks[at].apply(s.action[a].apply(x));
        Vec rhs = t.action[a].apply(f.blocks[as].apply(x));
        if (lhs != rhs) throw std::logic_error("hom fails intertwiner probe at arrow " + alg.arrow_name(int(a)));
      }
    }
  }
}

inline ModuleHom make_hom(ModulePtr src, ModulePtr tgt, std::vector<Matrix> blocks) {
  ModuleHom f{std::move(src), std::move(tgt), std::move(blocks)};
  verify_hom(f);
  return f;
}

inline ModuleHom zero_hom(ModulePtr src, ModulePtr tgt) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < src->dims.size(); ++v) blocks.emplace_back(tgt->dims[v], src->dims[v]);
  return ModuleHom{std::move(src), std::move(tgt), std::move(blocks)};
}

inline ModuleHom identity_hom(ModulePtr m) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < m->dims.size(); ++v) blocks.push_back(Matrix::identity(m->dims[v]));
  return ModuleHom{m, m, std::move(blocks)};
}

inline ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  if (g.src->content_hash() != f.tgt->content_hash())
    throw std::invalid_argument("compose: middle modules differ");
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) blocks.push_back(g.blocks[v] * f.blocks[v]);
  return ModuleHom{f.src, g.tgt, std::move(blocks)};
}

inline ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < a.blocks.size(); ++v) blocks.push_back(a.blocks[v] + b.blocks[v]);
  return ModuleHom{a.src, a.tgt, std::move(blocks)};
}

inline ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b) {
  std::vector<Matrix> blocks;
  for (std::size_t v = 0; v < a.blocks.size(); ++v) blocks.push_back(a.blocks[v] - b.blocks[v]);
  return ModuleHom{a.src, a.tgt, std::move(blocks)};
}

inline ModuleHom hom_scaled(const ModuleHom& a, fp::Scalar c) {
  std::vector<Matrix> blocks;
  for (const auto& b : a.blocks) blocks.push_back(b.scaled(c));
  return ModuleHom{a.src, a.tgt, std::move(blocks)};
}

// ---------------------------------------------------------------------------
// Hom spaces with canonical coordinates

/// Basis of Hom(src, tgt) cut out by the intertwiner equations; the flattened
/// basis is a kernel basis in echelon form, so coordinates of a hom in the
/// span are read off at the lead positions.
struct HomSpace {
  ModulePtr src, tgt;
  std::vector<ModuleHom> basis;
  std::vector<std::size_t> lead;

  std::size_t dim() const { return basis.size(); }

  Vec coords(const ModuleHom& h) const {
    Vec flat = h.flat();
    Vec c(lead.size());
    for (std::size_t k = 0; k < lead.size(); ++k) c[k] = flat[lead[k]];
    return c;
  }

  ModuleHom from_coords(const Vec& c) const {
    ModuleHom h = zero_hom(src, tgt);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k]) h = hom_add(h, hom_scaled(basis[k], c[k]));
    return h;
  }
};

inline std::vector<Matrix> unflatten_blocks(const Module& src, const Module& tgt, const Vec& flat) {
  std::vector<Matrix> blocks;
  std::size_t off = 0;
  for (std::size_t v = 0; v < src.dims.size(); ++v) {
    Matrix b(tgt.dims[v], src.dims[v]);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = flat[off++];
    blocks.push_back(std::move(b));
  }
  return blocks;
}

inline HomSpace hom_space(ModulePtr src, ModulePtr tgt) {
  if (!detail::compatible(*src, *tgt)) throw std::invalid_argument("hom_space: algebra mismatch");
  const auto& alg = *src->algebra;
  std::vector<std::size_t> block_off(src->dims.size() + 1, 0);
  for (std::size_t v = 0; v < src->dims.size(); ++v)
    block_off[v + 1] = block_off[v] + tgt->dims[v] * src->dims[v];
  const std::size_t unknowns = block_off.back();

  std::size_t n_rows = 0;
  for (std::size_t a = 0; a < alg.n_arrows(); ++a)
    n_rows += tgt->dims[alg.arrow_tgt(int(a))] * src->dims[alg.arrow_src(int(a))];

  Matrix sys(n_rows, unknowns);
  std::size_t row = 0;
  for (std::size_t a = 0; a < alg.n_arrows(); ++a) {
    const int u = alg.arrow_src(int(a)), v = alg.arrow_tgt(int(a));
    const Matrix& Ms = src->action[a];  // src.dims[v] x src.dims[u]
    const Matrix& Mt = tgt->action[a];  // tgt.dims[v] x tgt.dims[u]
    // constraint (i,j): sum_k f_v(i,k) Ms(k,j) - sum_l Mt(i,l) f_u(l,j) = 0
    for (std::size_t i = 0; i < tgt->dims[v]; ++i) {
      for (std::size_t j = 0; j < src->dims[u]; ++j) {
        for (std::size_t k = 0; k < src->dims[v]; ++k) {
          const fp::Scalar c = Ms(k, j);
          if (c) sys(row, block_off[v] + i * src->dims[v] + k) = fp::add(sys(row, block_off[v] + i * src->dims[v] + k), c);
        }
        for (std::size_t l = 0; l < tgt->dims[u]; ++l) {
          const fp::Scalar c = Mt(i, l);
          if (c) sys(row, block_off[u] + l * src->dims[u] + j) =
                     fp::sub(sys(row, block_off[u] + l * src->dims[u] + j), c);
        }
        ++row;
      }
    }
  }

  KernelBasis kb = kernel_basis(sys);
  HomSpace hs;
  hs.src = src;
  hs.tgt = tgt;
  hs.lead = kb.free_cols;
  for (std::size_t k = 0; k < kb.basis.cols(); ++k) {
    ModuleHom h{src, tgt, unflatten_blocks(*src, *tgt, kb.basis.column(k))};
    verify_hom(h);
    hs.basis.push_back(std::move(h));
  }
  return hs;
}

inline std::vector<ModuleHom> hom_basis(ModulePtr src, ModulePtr tgt) { return hom_space(src, tgt).basis; }

// ---------------------------------------------------------------------------
// Kernels, cokernels, images

struct SubquotientHom {
  ModulePtr module;
  ModuleHom map;
};

inline SubquotientHom kernel(const ModuleHom& f) {
  const Module& s = *f.src;
  std::vector<KernelBasis> kb;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < s.dims.size(); ++v) {
    kb.push_back(kernel_basis(f.blocks[v]));
    dims.push_back(kb[v].basis.cols());
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < s.action.size(); ++a) {
    const int u = s.algebra->arrow_src(int(a)), v = s.algebra->arrow_tgt(int(a));
    Matrix img = s.action[a] * kb[u].basis;  // lands in ker(f_v)
    Matrix x(dims[v], dims[u]);
    for (std::size_t r = 0; r < dims[v]; ++r)
      for (std::size_t c = 0; c < dims[u]; ++c) x(r, c) = img(kb[v].free_cols[r], c);
    act.push_back(std::move(x));
  }
  ModulePtr K = make_module(s.algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> inc;
  for (std::size_t v = 0; v < s.dims.size(); ++v) inc.push_back(kb[v].basis);
  ModuleHom incl = make_hom(K, f.src, std::move(inc));
  return {K, std::move(incl)};
}

inline SubquotientHom cokernel(const ModuleHom& f) {
  const Module& t = *f.tgt;
  std::vector<QuotientSplit> q;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < t.dims.size(); ++v) {
    ColBasis im = column_space(f.blocks[v]);
    q.push_back(quotient_split(t.dims[v], im));
    dims.push_back(q[v].kept.size());
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < t.action.size(); ++a) {
    const int u = t.algebra->arrow_src(int(a)), v = t.algebra->arrow_tgt(int(a));
    act.push_back(q[v].proj * (t.action[a] * q[u].section));
  }
  ModulePtr C = make_module(t.algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> pr;
  for (std::size_t v = 0; v < t.dims.size(); ++v) pr.push_back(q[v].proj);
  ModuleHom proj = make_hom(f.tgt, C, std::move(pr));
  return {C, std::move(proj)};
}

inline SubquotientHom image(const ModuleHom& f) {
  const Module& t = *f.tgt;
  std::vector<ColBasis> cb;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < t.dims.size(); ++v) {
    cb.push_back(column_space(f.blocks[v]));
    dims.push_back(cb[v].dim());
  }
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < t.action.size(); ++a) {
    const int u = t.algebra->arrow_src(int(a)), v = t.algebra->arrow_tgt(int(a));
    Matrix img = t.action[a] * cb[u].cols;  // image is a subrepresentation
    Matrix x(dims[v], dims[u]);
    for (std::size_t r = 0; r < dims[v]; ++r)
      for (std::size_t c = 0; c < dims[u]; ++c) x(r, c) = img(cb[v].lead[r], c);
    act.push_back(std::move(x));
  }
  ModulePtr I = make_module(t.algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> inc;
  for (std::size_t v = 0; v < t.dims.size(); ++v) inc.push_back(cb[v].cols);
  ModuleHom incl = make_hom(I, f.tgt, std::move(inc));
  return {I, std::move(incl)};
}

// ---------------------------------------------------------------------------
// Direct sums

struct DirectSum {
  ModulePtr sum;
  ModuleHom inc1, inc2, proj1, proj2;
};

inline DirectSum direct_sum(ModulePtr m, ModulePtr n) {
  if (!detail::compatible(*m, *n)) throw std::invalid_argument("direct_sum: algebra mismatch");
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m->dims.size(); ++v) dims.push_back(m->dims[v] + n->dims[v]);
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < m->action.size(); ++a) act.push_back(Matrix::block_diag(m->action[a], n->action[a]));
  ModulePtr s = make_module(m->algebra, std::move(dims), std::move(act), false);
  std::vector<Matrix> i1, i2, p1, p2;
  for (std::size_t v = 0; v < m->dims.size(); ++v) {
    const std::size_t dm = m->dims[v], dn = n->dims[v];
    Matrix a1(dm + dn, dm), a2(dm + dn, dn), b1(dm, dm + dn), b2(dn, dm + dn);
    for (std::size_t i = 0; i < dm; ++i) a1(i, i) = 1, b1(i, i) = 1;
    for (std::size_t i = 0; i < dn; ++i) a2(dm + i, i) = 1, b2(i, dm + i) = 1;
    i1.push_back(a1);
    i2.push_back(a2);
    p1.push_back(b1);
    p2.push_back(b2);
  }
  return DirectSum{s, ModuleHom{m, s, std::move(i1)}, ModuleHom{n, s, std::move(i2)},
                   ModuleHom{s, m, std::move(p1)}, ModuleHom{s, n, std::move(p2)}};
}

// ---------------------------------------------------------------------------
// k-linear duality and the dualisation functor Hom(-, A)

/// D M = Hom_k(M, k) as a module over the opposite algebra: same dimensions,
/// transposed arrow actions.
inline ModulePtr dualize(const ModulePtr& m) {
  AlgebraPtr op = m->algebra->opposite();
  std::vector<Matrix> act;
  for (std::size_t a = 0; a < m->action.size(); ++a) act.push_back(m->action[a].transpose());
  return make_module(op, m->dims, std::move(act), false);
}

/// D of a morphism: contravariant, blockwise transpose.
inline ModuleHom dualize_hom(const ModuleHom& f, const ModulePtr& dual_tgt, const ModulePtr& dual_src) {
  std::vector<Matrix> blocks;
  for (const auto& b : f.blocks) blocks.push_back(b.transpose());
  return make_hom(dual_tgt, dual_src, std::move(blocks));
}

/// F(M) = Hom_A(M, A) as a module over the opposite algebra, together with
/// the per-vertex hom-space bases realizing its coordinates:
/// F(M)_v = Hom_A(M, A e_v), and an arrow a: u -> v of A acts
/// F(M)_v -> F(M)_u by postcomposing with right multiplication by a.
struct DualisationData {
  ModulePtr fm;                      // over opposite algebra
  std::vector<HomSpace> hom_at;      // per vertex v: Hom(M, A e_v)
  std::vector<VertexProjective> proj_at;  // A e_v bookkeeping
};

inline DualisationData hom_to_regular_data(const ModulePtr& m) {
  const AlgebraPtr& a = m->algebra;
  AlgebraPtr op = a->opposite();
  DualisationData out;
  std::vector<std::size_t> dims(a->n_vertices());
  for (std::size_t v = 0; v < a->n_vertices(); ++v) {
    out.proj_at.push_back(vertex_projective_data(a, int(v)));
    out.hom_at.push_back(hom_space(m, out.proj_at[v].rep));
    dims[v] = out.hom_at[v].dim();
  }
  // Arrow a: u -> v of A becomes an arrow v -> u of the opposite quiver; its
  // action sends f in Hom(M, A e_v) to (x -> f(x) * a) in Hom(M, A e_u).
  std::vector<Matrix> act(a->n_arrows());
  for (std::size_t ai = 0; ai < a->n_arrows(); ++ai) {
    const int u = a->arrow_src(int(ai)), v = a->arrow_tgt(int(ai));
    // right multiplication by a: A e_v -> A e_u, as a hom of representations
    const auto& pv = out.proj_at[v];
    const auto& pu = out.proj_at[u];
    std::vector<Matrix> rblocks;
    for (std::size_t w = 0; w < a->n_vertices(); ++w) {
      Matrix blk(pu.paths_at[w].size(), pv.paths_at[w].size());
      std::vector<int> pos(a->dim(), -1);
      for (std::size_t k = 0; k < pu.paths_at[w].size(); ++k) pos[pu.paths_at[w][k]] = int(k);
      for (std::size_t c = 0; c < pv.paths_at[w].size(); ++c) {
        Vec prod = a->element_mult(a->basis_vec(pv.paths_at[w][c]), a->arrow_element(int(ai)));
        for (std::size_t i = 0; i < prod.size(); ++i)
          if (prod[i]) blk(pos[i], c) = prod[i];
      }
      rblocks.push_back(std::move(blk));
    }
    ModuleHom rmul = make_hom(pv.rep, pu.rep, std::move(rblocks));
    Matrix mat(dims[u], dims[v]);
    for (std::size_t k = 0; k < dims[v]; ++k) {
      ModuleHom comp = compose(rmul, out.hom_at[v].basis[k]);
      mat.set_column(k, out.hom_at[u].coords(comp));
    }
    act[ai] = std::move(mat);
  }
  out.fm = make_module(op, std::move(dims), std::move(act), false);
  return out;
}

inline ModulePtr hom_to_regular(const ModulePtr& m) { return hom_to_regular_data(m).fm; }

}  // namespace gorkit
