// Compiles a quiver-with-relations presentation into a finite-dimensional
// algebra with an explicit path basis and multiplication table.
//
// The quotient is kQ/(I + J^N): the ideal spanned by all u*r*w (r a relation,
// u, w paths), reduced inside the space of paths of length < N by plain
// Gaussian elimination, with every length >= N path set to zero by fiat.
// No Groebner bases: the truncation makes the reduction a finite linear
// problem, and basis paths come out length-lexicographically ordered.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gorkit/matrix.hpp"
#include "gorkit/quiver.hpp"

namespace gorkit {

struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<int> arrows;  // traversal order
  std::size_t length() const { return arrows.size(); }
};

struct CompiledRelationTerm {
  fp::Scalar coef;
  std::vector<int> arrows;  // traversal order
};

struct CompiledRelation {
  std::vector<CompiledRelationTerm> terms;
  int src = 0, tgt = 0;
  std::string display;
};

using SparseVec = std::vector<std::pair<int, fp::Scalar>>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgebraPtr compile(const AlgebraPresentation& pres);

  std::size_t dim() const { return basis_.size(); }
  std::size_t n_vertices() const { return vertex_labels_.size(); }
  std::size_t n_arrows() const { return arrow_src_.size(); }

  const std::string& vertex_label(int v) const { return vertex_labels_[v]; }
  const std::string& arrow_name(int a) const { return arrow_names_[a]; }
  int arrow_src(int a) const { return arrow_src_[a]; }
  int arrow_tgt(int a) const { return arrow_tgt_[a]; }
  int vertex_index(const std::string& label) const {
    for (std::size_t i = 0; i < vertex_labels_.size(); ++i)
      if (vertex_labels_[i] == label) return int(i);
    return -1;
  }
  int arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrow_names_.size(); ++i)
      if (arrow_names_[i] == name) return int(i);
    return -1;
  }

  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis_path(int i) const { return basis_[i]; }
  int idempotent(int v) const { return idempotent_[v]; }
  const std::vector<CompiledRelation>& relations() const { return relations_; }

  std::string path_name(int i) const {
    const Path& p = basis_[i];
    if (p.arrows.empty()) return "e_" + vertex_labels_[p.src];
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
      if (k) s += '*';
      s += arrow_names_[p.arrows[k]];
    }
    return s;
  }

  /// basis_i * basis_j as a combination of basis elements.
  const SparseVec& mult(int i, int j) const { return mult_[i * dim() + j]; }

  /// Product of two elements given as dense coefficient vectors.
  Vec element_mult(const Vec& x, const Vec& y) const {
    Vec r(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (!y[j]) continue;
        const fp::Scalar c = fp::mul(x[i], y[j]);
        for (const auto& [k, v] : mult(int(i), int(j))) r[k] = fp::add(r[k], fp::mul(c, v));
      }
    }
    return r;
  }

  Vec unit() const {
    Vec u(dim(), 0);
    for (int e : idempotent_) u[e] = 1;
    return u;
  }

  Vec basis_vec(int i) const {
    Vec v(dim(), 0);
    v[i] = 1;
    return v;
  }

  /// Matrix of left multiplication by an element, in the basis coordinates.
  Matrix left_mult_matrix(const Vec& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec col = element_mult(x, basis_vec(int(j)));
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
  }

  Matrix right_mult_matrix(const Vec& x) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec col = element_mult(basis_vec(int(j)), x);
      for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
    }
    return m;
  }

  const std::vector<int>& basis_with_src(int v) const { return by_src_[v]; }
  const std::vector<int>& basis_with_tgt(int v) const { return by_tgt_[v]; }

  /// Coefficients of an arrow in the basis (an arrow can be rewritten or
  /// killed by the relations, so it is not always a basis element itself).
  const Vec& arrow_element(int a) const { return arrow_element_[a]; }

  /// Basis indices of e_tgt * A * e_src, i.e. paths from src to tgt.
  std::vector<int> basis_between(int src, int tgt) const {
    std::vector<int> out;
    for (int i : by_src_[src])
      if (basis_[i].tgt == tgt) out.push_back(i);
    return out;
  }

  /// Reduce a path (given by its traversal arrows) to basis coordinates.
  /// Only valid on algebras built by compile(), not on opposites.
  Vec reduce_path(const std::vector<int>& arrows) const;

  const std::vector<std::string>& warnings() const { return warnings_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

  /// The opposite algebra: index-matched basis with reversed paths and the
  /// transposed multiplication table. opposite(opposite(A)) is A itself.
  AlgebraPtr opposite() const;

  bool same_as(const Algebra& other) const { return fingerprint_ == other.fingerprint_; }

  /// Associativity on all basis triples; compile() runs this for dim <= 50.
  bool associative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          Vec ij = element_mult(basis_vec(int(i)), basis_vec(int(j)));
          Vec left = element_mult(ij, basis_vec(int(k)));
          Vec jk = element_mult(basis_vec(int(j)), basis_vec(int(k)));
          Vec right = element_mult(basis_vec(int(i)), jk);
          if (left != right) return false;
        }
    return true;
  }

 private:
  friend AlgebraPtr make_opposite(const Algebra& a);

  void compute_fingerprint();
  void index_basis();

  std::vector<std::string> vertex_labels_;
  std::vector<std::string> arrow_names_;
  std::vector<int> arrow_src_, arrow_tgt_;
  std::vector<Path> basis_;
  std::vector<int> idempotent_;            // per vertex
  std::vector<SparseVec> mult_;            // dim x dim, row-major
  std::vector<CompiledRelation> relations_;
  std::vector<Vec> arrow_element_;
  std::vector<std::vector<int>> by_src_, by_tgt_;
  std::vector<std::string> warnings_;
  std::uint64_t fingerprint_ = 0;

  // reduction data (kept only on compiled algebras, for reduce_path)
  std::map<std::vector<int>, int> path_index_;  // key: arrows, or {-(v+1)} for e_v
  std::vector<Path> all_paths_;
  Matrix rref_rows_;
  std::vector<std::size_t> rref_pivots_;
  std::vector<int> path_to_basis_;  // -1 when the path is a pivot

  mutable std::mutex opposite_mutex_;
  mutable AlgebraPtr opposite_cache_;
  mutable std::weak_ptr<const Algebra> opposite_back_;
};

namespace detail {

inline std::vector<int> path_key(const Path& p) {
  if (p.arrows.empty()) return {-(p.src + 1)};
  return p.arrows;
}

inline void fnv_mix(std::uint64_t& h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

inline void fnv_mix_str(std::uint64_t& h, const std::string& s) {
  for (char c : s) fnv_mix(h, std::uint64_t(std::uint8_t(c)));
  fnv_mix(h, 0xffull);
}

}  // namespace detail

inline AlgebraPtr Algebra::compile(const AlgebraPresentation& pres) {
  pres.quiver.validate();
  if (pres.nilpotency_bound == 0) throw std::invalid_argument("nilpotency bound must be >= 1");
  const std::size_t N = pres.nilpotency_bound;

  auto alg = std::make_shared<Algebra>();
  alg->vertex_labels_ = pres.quiver.vertices;
  for (const auto& a : pres.quiver.arrows) {
    alg->arrow_names_.push_back(a.name);
    alg->arrow_src_.push_back(pres.quiver.vertex_index(a.from));
    alg->arrow_tgt_.push_back(pres.quiver.vertex_index(a.to));
  }
  const std::size_t nv = alg->n_vertices();

  // Paths of length < N, in length-lex order.
  std::vector<Path>& paths = alg->all_paths_;
  for (std::size_t v = 0; v < nv; ++v) paths.push_back(Path{int(v), int(v), {}});
  std::size_t level_begin = 0, level_end = paths.size();
  for (std::size_t len = 1; len < N; ++len) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::size_t a = 0; a < alg->n_arrows(); ++a) {
        if (alg->arrow_src_[a] != paths[i].tgt) continue;
        Path q = paths[i];
        q.arrows.push_back(int(a));
        q.tgt = alg->arrow_tgt_[a];
        paths.push_back(std::move(q));
      }
    }
    level_begin = level_end;
    level_end = paths.size();
    if (level_begin == level_end) break;
  }
  for (std::size_t i = 0; i < paths.size(); ++i) alg->path_index_[detail::path_key(paths[i])] = int(i);

  // Compile and validate the relations.
  for (std::size_t ri = 0; ri < pres.relations.size(); ++ri) {
    const Relation& rel = pres.relations[ri];
    CompiledRelation cr;
    bool first = true;
    std::string display;
    for (const auto& term : rel.terms) {
      CompiledRelationTerm ct;
      ct.coef = fp::normalize(term.coef);
      if (term.path.empty())
        throw std::invalid_argument("relation " + std::to_string(ri) + ": empty path term");
      int prev_tgt = -1;
      for (const auto& name : term.path) {
        int a = alg->arrow_index(name);
        if (a < 0) throw std::invalid_argument("relation " + std::to_string(ri) + ": unknown arrow " + name);
        if (prev_tgt >= 0 && alg->arrow_src_[a] != prev_tgt)
          throw std::invalid_argument("relation " + std::to_string(ri) + ": non-composable path");
        prev_tgt = alg->arrow_tgt_[a];
        ct.arrows.push_back(a);
      }
      const int s = alg->arrow_src_[ct.arrows.front()];
      const int t = alg->arrow_tgt_[ct.arrows.back()];
      if (first) {
        cr.src = s;
        cr.tgt = t;
        first = false;
      } else if (cr.src != s || cr.tgt != t) {
        throw std::invalid_argument("relation " + std::to_string(ri) + ": terms are not parallel");
      }
      if (!display.empty()) display += " + ";
      display += std::to_string(ct.coef) + "*";
      for (std::size_t k = 0; k < term.path.size(); ++k) display += (k ? "*" + term.path[k] : term.path[k]);
      cr.terms.push_back(std::move(ct));
    }
    bool nonzero = false;
    for (const auto& t : cr.terms) nonzero = nonzero || t.coef != 0;
    if (!nonzero)
      throw std::invalid_argument("relation " + std::to_string(ri) + ": all coefficients vanish mod p");
    cr.display = display;
    alg->relations_.push_back(std::move(cr));
  }

  // Span of all u*r*w inside the truncated path space. Rows from products
  // where no term fell off the truncation are collected separately so we can
  // tell which reductions exist only because of J^N.
  const std::size_t np = paths.size();
  std::vector<Vec> span_rows, untrunc_rows;
  for (const auto& rel : alg->relations_) {
    for (const auto& w : paths) {
      if (w.tgt != rel.src) continue;
      for (const auto& u : paths) {
        if (u.src != rel.tgt) continue;
        Vec row(np, 0);
        bool any = false, truncated = false;
        for (const auto& term : rel.terms) {
          std::vector<int> arrows = w.arrows;
          arrows.insert(arrows.end(), term.arrows.begin(), term.arrows.end());
          arrows.insert(arrows.end(), u.arrows.begin(), u.arrows.end());
          if (arrows.size() >= N) {
            truncated = true;
            continue;
          }
          auto it = alg->path_index_.find(arrows);
          const int idx = it->second;
          row[idx] = fp::add(row[idx], term.coef);
          any = any || row[idx] != 0;
        }
        bool zero = true;
        for (auto x : row) zero = zero && x == 0;
        (void)any;
        if (!zero) {
          span_rows.push_back(row);
          if (!truncated) untrunc_rows.push_back(row);
        } else if (!truncated) {
          untrunc_rows.push_back(row);  // keeps the two spans comparable
        }
      }
    }
  }

  Matrix span_m(span_rows.size(), np);
  for (std::size_t i = 0; i < span_rows.size(); ++i)
    for (std::size_t j = 0; j < np; ++j) span_m(i, j) = span_rows[i][j];
  Echelon e = rref(span_m);
  alg->rref_rows_ = e.reduced;
  alg->rref_pivots_ = e.pivots;

  std::vector<bool> is_pivot(np, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  alg->path_to_basis_.assign(np, -1);
  for (std::size_t i = 0; i < np; ++i) {
    if (!is_pivot[i]) {
      alg->path_to_basis_[i] = int(alg->basis_.size());
      alg->basis_.push_back(paths[i]);
    }
  }
  alg->index_basis();

  // Multiplication table via concatenate-and-reduce.
  const std::size_t d = alg->dim();
  alg->mult_.assign(d * d, {});
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Path& p = alg->basis_[i];
      const Path& q = alg->basis_[j];
      if (p.src != q.tgt) continue;  // product is zero
      std::vector<int> arrows = q.arrows;
      arrows.insert(arrows.end(), p.arrows.begin(), p.arrows.end());
      if (arrows.size() >= N) continue;
      if (arrows.empty()) {  // e_v * e_v
        alg->mult_[i * d + j] = SparseVec{{int(i), 1}};
        continue;
      }
      Vec red = alg->reduce_path(arrows);
      SparseVec sv;
      for (std::size_t k = 0; k < d; ++k)
        if (red[k]) sv.emplace_back(int(k), red[k]);
      alg->mult_[i * d + j] = std::move(sv);
    }
  }

  // Truncation diagnostics: length N-1 paths that reduce to zero, but would
  // not under the untruncated ideal products alone.
  if (N >= 2) {
    Matrix um(untrunc_rows.size(), np);
    for (std::size_t i = 0; i < untrunc_rows.size(); ++i)
      for (std::size_t j = 0; j < np; ++j) um(i, j) = untrunc_rows[i][j];
    Echelon ue = rref(um);
    std::vector<int> upivot(np, -1);
    for (std::size_t r = 0; r < ue.pivots.size(); ++r) upivot[ue.pivots[r]] = int(r);
    auto reduces_to_zero = [&](const Echelon& ech, std::size_t path_idx) {
      Vec x(np, 0);
      x[path_idx] = 1;
      for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        const fp::Scalar c = x[ech.pivots[r]];
        if (!c) continue;
        for (std::size_t jj = 0; jj < np; ++jj) x[jj] = fp::sub(x[jj], fp::mul(c, ech.reduced(r, jj)));
      }
      for (auto v : x)
        if (v) return false;
      return true;
    };
    for (std::size_t i = 0; i < np; ++i) {
      if (paths[i].length() != N - 1) continue;
      if (reduces_to_zero(e, i) && !reduces_to_zero(ue, i)) {
        Path p = paths[i];
        std::string nm;
        for (std::size_t k = 0; k < p.arrows.size(); ++k)
          nm += (k ? "*" : "") + alg->arrow_names_[p.arrows[k]];
        alg->warnings_.push_back("path " + nm + " of length " + std::to_string(N - 1) +
                                 " is killed only by the J^" + std::to_string(N) + " truncation");
      }
    }
  }

  for (std::size_t a = 0; a < alg->n_arrows(); ++a)
    alg->arrow_element_.push_back(alg->reduce_path({int(a)}));

  alg->compute_fingerprint();
  if (d <= 50 && !alg->associative())
    throw std::logic_error("compiled algebra fails associativity check");
  return alg;
}

inline Vec Algebra::reduce_path(const std::vector<int>& arrows) const {
  const std::size_t np = all_paths_.size();
  if (np == 0) throw std::logic_error("reduce_path on an algebra without compile data");
  Vec x(np, 0);
  std::vector<int> key = arrows;
  if (arrows.empty()) throw std::invalid_argument("reduce_path needs a nonempty path");
  auto it = path_index_.find(key);
  if (it == path_index_.end()) return Vec(dim(), 0);  // length >= N
  x[it->second] = 1;
  for (std::size_t r = 0; r < rref_pivots_.size(); ++r) {
    const fp::Scalar c = x[rref_pivots_[r]];
    if (!c) continue;
    for (std::size_t j = 0; j < np; ++j) x[j] = fp::sub(x[j], fp::mul(c, rref_rows_(r, j)));
  }
  Vec out(dim(), 0);
  for (std::size_t i = 0; i < np; ++i)
    if (x[i]) out[path_to_basis_[i]] = x[i];
  return out;
}

inline void Algebra::index_basis() {
  idempotent_.assign(n_vertices(), -1);
  by_src_.assign(n_vertices(), {});
  by_tgt_.assign(n_vertices(), {});
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Path& p = basis_[i];
    by_src_[p.src].push_back(int(i));
    by_tgt_[p.tgt].push_back(int(i));
    if (p.arrows.empty()) idempotent_[p.src] = int(i);
  }
  for (std::size_t v = 0; v < n_vertices(); ++v)
    if (idempotent_[v] < 0) throw std::logic_error("vertex idempotent eliminated by relations");
}

inline void Algebra::compute_fingerprint() {
  std::uint64_t h = 0xcbf29ce484222325ull;
  detail::fnv_mix(h, fp::prime());
  detail::fnv_mix(h, n_vertices());
  for (const auto& v : vertex_labels_) detail::fnv_mix_str(h, v);
  for (std::size_t a = 0; a < n_arrows(); ++a) {
    detail::fnv_mix_str(h, arrow_names_[a]);
    detail::fnv_mix(h, arrow_src_[a]);
    detail::fnv_mix(h, arrow_tgt_[a]);
  }
  detail::fnv_mix(h, dim());
  for (const auto& p : basis_) {
    detail::fnv_mix(h, p.src);
    for (int a : p.arrows) detail::fnv_mix(h, std::uint64_t(a) + 1);
    detail::fnv_mix(h, 0xfeull);
  }
  for (const auto& sv : mult_) {
    for (const auto& [k, v] : sv) {
      detail::fnv_mix(h, k);
      detail::fnv_mix(h, v);
    }
    detail::fnv_mix(h, 0xfdull);
  }
  fingerprint_ = h;
}

inline AlgebraPtr make_opposite(const Algebra& a) {
  auto op = std::make_shared<Algebra>();
  op->vertex_labels_ = a.vertex_labels_;
  op->arrow_names_ = a.arrow_names_;
  op->arrow_src_ = a.arrow_tgt_;  // arrows reversed
  op->arrow_tgt_ = a.arrow_src_;
  op->basis_.reserve(a.basis_.size());
  for (const auto& p : a.basis_) {
    Path q;
    q.src = p.tgt;
    q.tgt = p.src;
    q.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
    op->basis_.push_back(std::move(q));
  }
  const std::size_t d = a.dim();
  op->mult_.assign(d * d, {});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) op->mult_[i * d + j] = a.mult_[j * d + i];
  for (const auto& rel : a.relations_) {
    CompiledRelation cr;
    cr.src = rel.tgt;
    cr.tgt = rel.src;
    cr.display = rel.display + " (op)";
    for (const auto& t : rel.terms) {
      CompiledRelationTerm ct;
      ct.coef = t.coef;
      ct.arrows.assign(t.arrows.rbegin(), t.arrows.rend());
      cr.terms.push_back(std::move(ct));
    }
    op->relations_.push_back(std::move(cr));
  }
  op->arrow_element_ = a.arrow_element_;  // index-matched basis, same coefficients
  op->index_basis();
  op->compute_fingerprint();
  return op;
}

inline AlgebraPtr Algebra::opposite() const {
  std::lock_guard<std::mutex> lock(opposite_mutex_);
  if (auto back = opposite_back_.lock()) return back;
  if (opposite_cache_) return opposite_cache_;
  AlgebraPtr op = make_opposite(*this);
  {
    std::lock_guard<std::mutex> oplock(op->opposite_mutex_);
    op->opposite_back_ = weak_from_this();
  }
  opposite_cache_ = op;
  return op;
}

}  // namespace gorkit
