#include "shopd/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace shopd {

DenseMat DenseMat::from_sparse(const SparseMat& m) {
  DenseMat d(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.col(j)) d.a_[i][j] = v;
  return d;
}

std::vector<int> DenseMat::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int p = -1;
    for (int i = row; i < r_; ++i) {
      if (!a_[i][col].is_zero()) { p = i; break; }
    }
    if (p < 0) continue;
    std::swap(a_[p], a_[row]);
    Rational inv = a_[row][col].inverse();
    for (int j = col; j < c_; ++j) a_[row][j] *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == row || a_[i][col].is_zero()) continue;
      Rational f = a_[i][col];
      for (int j = col; j < c_; ++j) a_[i][j] -= f * a_[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const SparseMat& m) {
  DenseMat d = DenseMat::from_sparse(m);
  return (int)d.rref().size();
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMat& m) {
  DenseMat d = DenseMat::from_sparse(m);
  std::vector<int> piv = d.rref();
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<std::vector<Rational>> out;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = Rational(1);
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -d.at((int)r, free);
    out.push_back(std::move(v));
  }
  return out;
}

bool in_span(const SparseMat& m, const std::vector<Rational>& v) {
  SparseMat aug(m.rows(), m.cols() + 1);
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, val] : m.col(j)) aug.set(i, j, val);
  for (int i = 0; i < m.rows(); ++i)
    if (!v[i].is_zero()) aug.set(i, m.cols(), v[i]);
  return rank(aug) == rank(m);
}

bool same_span(const SparseMat& a, const SparseMat& b) {
  if (a.rows() != b.rows()) return false;
  SparseMat ab(a.rows(), a.cols() + b.cols());
  for (int j = 0; j < a.cols(); ++j)
    for (const auto& [i, v] : a.col(j)) ab.set(i, j, v);
  for (int j = 0; j < b.cols(); ++j)
    for (const auto& [i, v] : b.col(j)) ab.set(i, j + a.cols(), v);
  int ra = rank(a), rb = rank(b);
  return ra == rb && rank(ab) == ra;
}

std::optional<std::vector<Rational>> solve(const SparseMat& m, const std::vector<Rational>& v) {
  DenseMat d(m.rows(), m.cols() + 1);
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, val] : m.col(j)) d.at(i, j) = val;
  for (int i = 0; i < m.rows(); ++i) d.at(i, m.cols()) = v[i];
  std::vector<int> piv = d.rref();
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = d.at((int)r, m.cols());
  return x;
}

namespace {

// Per-degree elimination data for the retract construction.
struct DegreeSplit {
  // basis indices of V^n classified as image part (B), homology part (H),
  // coimage part (A, mapped isomorphically onto B of degree n+1)
  std::vector<int> b_part, h_part, a_part;
};

}  // namespace

RetractData5 homology_retract(const SpacePtr& v, PivotOrder order) {
  if (!v->has_differential()) {
    // zero differential: H = V, incl = proj = id, h = 0
    std::vector<GradedSpace::BasisElt> hb;
    for (const auto& b : v->basis()) hb.push_back({"[" + b.name + "]", b.degree});
    SpacePtr h = GradedSpace::make(hb, SparseMat(v->dim(), v->dim()));
    return {h, GradedMap(h, v, 0, SparseMat::identity(v->dim())),
            GradedMap(v, h, 0, SparseMat::identity(v->dim())),
            GradedMap(v, v, -1)};
  }
  const SparseMat& d = v->differential();
  int n = v->dim();

  // indices per degree, in basis order (or reversed for Rightmost pivoting)
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < n; ++i) by_deg[v->degree(i)].push_back(i);
  if (order == PivotOrder::Rightmost)
    for (auto& [deg, idx] : by_deg) std::reverse(idx.begin(), idx.end());

  // For each degree n: eliminate the block d_n : V^n -> V^{n+1}.
  // Pivot rows give a basis of im(d_n) expressed in target coordinates and
  // pivot columns single out the coimage part A of V^n.
  //
  // h is (d|_A)^{-1} on B = im d, zero on the chosen complement.
  SparseMat incl_m(n, 0), proj_m(0, n);  // resized later
  SparseMat h_m(n, n);

  // Collect image spans: for degree m, columns of d from degree m-1.
  // We do one elimination per degree block.
  std::map<int, std::vector<std::vector<Rational>>> image_vectors;  // degree -> vectors in V
  std::map<int, std::vector<int>> a_cols;                           // degree -> coimage basis idx
  std::map<int, std::vector<std::vector<Rational>>> a_dvals;        // d of the A columns
  for (const auto& [deg, src_idx] : by_deg) {
    auto tgt_it = by_deg.find(deg + 1);
    if (tgt_it == by_deg.end()) continue;
    const auto& tgt_idx = tgt_it->second;
    DenseMat block((int)tgt_idx.size(), (int)src_idx.size());
    for (int jj = 0; jj < (int)src_idx.size(); ++jj) {
      for (const auto& [i, val] : d.col(src_idx[jj])) {
        auto pos = std::find(tgt_idx.begin(), tgt_idx.end(), i);
        if (pos == tgt_idx.end()) continue;
        block.at((int)(pos - tgt_idx.begin()), jj) = val;
      }
    }
    std::vector<int> piv = block.rref();
    for (int pc : piv) {
      a_cols[deg].push_back(src_idx[pc]);
      std::vector<Rational> dv(n, Rational(0));
      for (const auto& [i, val] : d.col(src_idx[pc])) dv[i] = val;
      a_dvals[deg].push_back(std::move(dv));
      image_vectors[deg + 1].push_back(a_dvals[deg].back());
    }
  }

  // Per degree, find: B-coordinates (image span), then extend by kernel
  // vectors to pick H representatives, leaving A as chosen above.
  std::vector<GradedSpace::BasisElt> h_basis;
  std::vector<std::vector<Rational>> h_reps;           // representatives in V
  std::vector<std::vector<Rational>> proj_rows;        // functionals on V
  // We build, per degree, the matrix [B | Hreps | A] over that degree's
  // basis, invert it, and read off projections.
  for (const auto& [deg, idx] : by_deg) {
    int dim = (int)idx.size();
    std::vector<std::vector<Rational>> bvecs;  // image vectors restricted
    if (auto it = image_vectors.find(deg); it != image_vectors.end()) {
      for (const auto& w : it->second) {
        std::vector<Rational> r(dim);
        for (int t = 0; t < dim; ++t) r[t] = w[idx[t]];
        bvecs.push_back(std::move(r));
      }
    }
    std::vector<int> amask;  // positions (within idx) of A columns
    if (auto it = a_cols.find(deg); it != a_cols.end()) {
      for (int gc : it->second)
        amask.push_back((int)(std::find(idx.begin(), idx.end(), gc) - idx.begin()));
    }
    // kernel of d restricted to this degree
    auto tgt_it = by_deg.find(deg + 1);
    DenseMat block(tgt_it == by_deg.end() ? 0 : (int)tgt_it->second.size(), dim);
    if (tgt_it != by_deg.end()) {
      const auto& tgt_idx = tgt_it->second;
      for (int jj = 0; jj < dim; ++jj)
        for (const auto& [i, val] : d.col(idx[jj])) {
          auto pos = std::find(tgt_idx.begin(), tgt_idx.end(), i);
          if (pos != tgt_idx.end()) block.at((int)(pos - tgt_idx.begin()), jj) = val;
        }
    }
    // kernel via rref of block
    DenseMat kb = block;
    std::vector<int> piv = kb.rref();
    std::vector<bool> is_piv(dim, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<Rational>> kvecs;
    for (int free = 0; free < dim; ++free) {
      if (is_piv[free]) continue;
      std::vector<Rational> kv(dim, Rational(0));
      kv[free] = Rational(1);
      for (size_t r = 0; r < piv.size(); ++r) kv[piv[r]] = -kb.at((int)r, free);
      kvecs.push_back(std::move(kv));
    }
    // choose H: extend bvecs to a basis of ker using kvecs greedily
    DenseMat ext((int)dim, 0);
    std::vector<std::vector<Rational>> chosen = bvecs;
    std::vector<std::vector<Rational>> hvecs;
    auto rank_of = [&](const std::vector<std::vector<Rational>>& cols) {
      DenseMat m2(dim, (int)cols.size());
      for (int j = 0; j < (int)cols.size(); ++j)
        for (int i = 0; i < dim; ++i) m2.at(i, j) = cols[j][i];
      return (int)m2.rref().size();
    };
    int cur = rank_of(chosen);
    for (const auto& kv : kvecs) {
      auto trial = chosen;
      trial.push_back(kv);
      int r2 = rank_of(trial);
      if (r2 > cur) {
        chosen = std::move(trial);
        hvecs.push_back(kv);
        cur = r2;
      }
    }
    // Change of basis: columns [B | H | A] expressed in degree-local coords.
    int nb = (int)bvecs.size(), nh = (int)hvecs.size(), na = (int)amask.size();
    if (nb + nh + na != dim)
      throw std::logic_error("homology_retract: block decomposition mismatch");
    DenseMat chg(dim, dim);
    for (int j = 0; j < nb; ++j)
      for (int i = 0; i < dim; ++i) chg.at(i, j) = bvecs[j][i];
    for (int j = 0; j < nh; ++j)
      for (int i = 0; i < dim; ++i) chg.at(i, nb + j) = hvecs[j][i];
    for (int j = 0; j < na; ++j) chg.at(amask[j], nb + nh + j) = Rational(1);
    // invert chg by rref of [chg | I]
    DenseMat aug(dim, 2 * dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) aug.at(i, j) = chg.at(i, j);
      aug.at(i, dim + i) = Rational(1);
    }
    std::vector<int> p2 = aug.rref();
    if ((int)p2.size() != dim || p2[dim - 1] >= dim)
      throw std::logic_error("homology_retract: singular change of basis");
    // inv(i, j) = aug(i, dim + j)
    // rows nb..nb+nh-1 of inv = coordinates of H-projection
    for (int j = 0; j < nh; ++j) {
      std::vector<Rational> row(n, Rational(0));
      for (int t = 0; t < dim; ++t) row[idx[t]] = aug.at(nb + j, dim + t);
      proj_rows.push_back(std::move(row));
      std::vector<Rational> rep(n, Rational(0));
      for (int t = 0; t < dim; ++t) rep[idx[t]] = hvecs[j][t];
      h_reps.push_back(std::move(rep));
      h_basis.push_back({"h" + std::to_string(h_basis.size()), deg});
    }
    // h on the B part of this degree: B basis vector b_j = d(A_j of degree-1)
    // h(b_j) := A_j. In local coords: h = sum_j A_j * (row nb-proj of b_j)
    if (auto it = a_cols.find(deg - 1); it != a_cols.end()) {
      const auto& acols_prev = it->second;
      for (int j = 0; j < (int)acols_prev.size(); ++j) {
        // functional selecting the j-th B coordinate: row j of inv
        for (int t = 0; t < dim; ++t) {
          const Rational& c = aug.at(j, dim + t);
          if (!c.is_zero()) h_m.add(acols_prev[j], idx[t], c);
        }
      }
    }
  }

  int hd = (int)h_basis.size();
  SpacePtr hsp = GradedSpace::make(h_basis, SparseMat(hd, hd));
  SparseMat im(n, hd), pm(hd, n);
  for (int j = 0; j < hd; ++j)
    for (int i = 0; i < n; ++i)
      if (!h_reps[j][i].is_zero()) im.set(i, j, h_reps[j][i]);
  for (int i = 0; i < hd; ++i)
    for (int j = 0; j < n; ++j)
      if (!proj_rows[i][j].is_zero()) pm.set(i, j, proj_rows[i][j]);
  GradedMap incl(hsp, v, 0, std::move(im));
  GradedMap proj(v, hsp, 0, std::move(pm));
  GradedMap h(v, v, -1, std::move(h_m));
  // side-condition normalisation h <- h d h (idempotent for this construction)
  GradedMap dmap(v, v, 1, d);
  h = compose(h, compose(dmap, h));
  return {hsp, incl, proj, h};
}

std::map<int, int> homology_dims(const SpacePtr& v) {
  std::map<int, int> out;
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < v->dim(); ++i) by_deg[v->degree(i)].push_back(i);
  const SparseMat* d = v->has_differential() ? &v->differential() : nullptr;
  auto block = [&](int deg) {
    auto s = by_deg.find(deg);
    auto t = by_deg.find(deg + 1);
    int rowsn = t == by_deg.end() ? 0 : (int)t->second.size();
    int colsn = s == by_deg.end() ? 0 : (int)s->second.size();
    DenseMat m(rowsn, colsn);
    if (d && rowsn && colsn) {
      for (int j = 0; j < colsn; ++j)
        for (const auto& [i, val] : d->col(s->second[j])) {
          auto pos = std::find(t->second.begin(), t->second.end(), i);
          if (pos != t->second.end()) m.at((int)(pos - t->second.begin()), j) = val;
        }
    }
    return m;
  };
  for (const auto& [deg, idx] : by_deg) {
    DenseMat out_block = block(deg);
    DenseMat in_block = block(deg - 1);
    int rk_out = (int)out_block.rref().size();
    int rk_in = (int)in_block.rref().size();
    out[deg] = (int)idx.size() - rk_out - rk_in;
  }
  return out;
}

}  // namespace shopd
