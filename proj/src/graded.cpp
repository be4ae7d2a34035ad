#include "shopd/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace shopd {

void SparseMat::add(int i, int j, const Rational& v) {
  if (v.is_zero()) return;
  auto& c = col_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, int row) { return e.first < row; });
  if (it != c.end() && it->first == i) {
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
  } else {
    c.insert(it, {i, v});
  }
}

void SparseMat::set(int i, int j, const Rational& v) {
  auto& c = col_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, int row) { return e.first < row; });
  if (it != c.end() && it->first == i) {
    if (v.is_zero()) c.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    c.insert(it, {i, v});
  }
}

Rational SparseMat::at(int i, int j) const {
  const auto& c = col_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i,
                             [](const Entry& e, int row) { return e.first < row; });
  if (it != c.end() && it->first == i) return it->second;
  return Rational(0);
}

bool SparseMat::is_zero() const {
  for (const auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

long long SparseMat::nnz() const {
  long long n = 0;
  for (const auto& c : col_) n += (long long)c.size();
  return n;
}

static std::vector<SparseMat::Entry> merge_cols(const std::vector<SparseMat::Entry>& a,
                                                const std::vector<SparseMat::Entry>& b,
                                                bool subtract) {
  std::vector<SparseMat::Entry> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, subtract ? -b[j].second : b[j].second});
      ++j;
    } else {
      Rational v = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!v.is_zero()) out.push_back({a[i].first, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseMat operator+(const SparseMat& a, const SparseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("SparseMat: shape mismatch in +");
  SparseMat r(a.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) r.col_[j] = merge_cols(a.col_[j], b.col_[j], false);
  return r;
}

SparseMat operator-(const SparseMat& a, const SparseMat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("SparseMat: shape mismatch in -");
  SparseMat r(a.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) r.col_[j] = merge_cols(a.col_[j], b.col_[j], true);
  return r;
}

SparseMat SparseMat::operator-() const {
  SparseMat r(rows_, cols_);
  for (int j = 0; j < cols_; ++j) {
    r.col_[j].reserve(col_[j].size());
    for (const auto& e : col_[j]) r.col_[j].push_back({e.first, -e.second});
  }
  return r;
}

SparseMat SparseMat::scaled(const Rational& c) const {
  SparseMat r(rows_, cols_);
  if (c.is_zero()) return r;
  for (int j = 0; j < cols_; ++j) {
    r.col_[j].reserve(col_[j].size());
    for (const auto& e : col_[j]) r.col_[j].push_back({e.first, e.second * c});
  }
  return r;
}

SparseMat SparseMat::mul(const SparseMat& a, const SparseMat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMat: shape mismatch in mul");
  SparseMat r(a.rows_, b.cols_);
  std::vector<SparseMat::Entry> acc;
  for (int j = 0; j < b.cols_; ++j) {
    acc.clear();
    for (const auto& [k, bv] : b.col_[j]) {
      for (const auto& [i, av] : a.col_[k]) acc.push_back({i, av * bv});
    }
    if (acc.empty()) continue;
    std::sort(acc.begin(), acc.end(),
              [](const Entry& x, const Entry& y) { return x.first < y.first; });
    auto& out = r.col_[j];
    for (auto& e : acc) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
        if (out.back().second.is_zero()) out.pop_back();
      } else if (!e.second.is_zero()) {
        out.push_back(std::move(e));
      }
    }
  }
  return r;
}

SparseMat SparseMat::identity(int n) {
  SparseMat r(n, n);
  for (int i = 0; i < n; ++i) r.col_[i].push_back({i, Rational(1)});
  return r;
}

bool operator==(const SparseMat& a, const SparseMat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
}

std::vector<Rational> SparseMat::apply(const std::vector<Rational>& x) const {
  if ((int)x.size() != cols_) throw std::invalid_argument("SparseMat: vector size mismatch");
  std::vector<Rational> y(rows_, Rational(0));
  for (int j = 0; j < cols_; ++j) {
    if (x[j].is_zero()) continue;
    for (const auto& [i, v] : col_[j]) y[i] += v * x[j];
  }
  return y;
}

SpacePtr GradedSpace::make(std::vector<BasisElt> basis) {
  auto s = std::shared_ptr<GradedSpace>(new GradedSpace());
  s->basis_ = std::move(basis);
  return s;
}

SpacePtr GradedSpace::make(std::vector<BasisElt> basis, SparseMat differential) {
  auto s = std::shared_ptr<GradedSpace>(new GradedSpace());
  s->basis_ = std::move(basis);
  if (differential.rows() != (int)s->basis_.size() ||
      differential.cols() != (int)s->basis_.size())
    throw std::invalid_argument("GradedSpace: differential shape mismatch");
  s->d_ = std::move(differential);
  return s;
}

const SparseMat& GradedSpace::differential() const {
  if (!d_) throw std::logic_error("GradedSpace: no differential");
  return *d_;
}

bool GradedSpace::same_as(const GradedSpace& o) const {
  if (this == &o) return true;
  if (basis_.size() != o.basis_.size()) return false;
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree != o.basis_[i].degree || basis_[i].name != o.basis_[i].name)
      return false;
  if (d_.has_value() != o.d_.has_value()) return false;
  if (d_ && !(*d_ == *o.d_)) return false;
  return true;
}

GradedMap::GradedMap(SpacePtr src, SpacePtr tgt, int degree)
    : src_(std::move(src)), tgt_(std::move(tgt)), deg_(degree),
      m_(tgt_->dim(), src_->dim()) {}

GradedMap::GradedMap(SpacePtr src, SpacePtr tgt, int degree, SparseMat m)
    : src_(std::move(src)), tgt_(std::move(tgt)), deg_(degree), m_(std::move(m)) {
  if (m_.rows() != tgt_->dim() || m_.cols() != src_->dim())
    throw std::invalid_argument("GradedMap: matrix shape mismatch");
  for (int j = 0; j < m_.cols(); ++j)
    for (const auto& [i, v] : m_.col(j)) check_entry_degree(i, j, v);
}

void GradedMap::check_entry_degree(int i, int j, const Rational& v) const {
  if (v.is_zero()) return;
  if (tgt_->degree(i) != src_->degree(j) + deg_)
    throw std::invalid_argument("GradedMap: entry (" + tgt_->name(i) + ", " + src_->name(j) +
                                ") violates degree " + std::to_string(deg_));
}

void GradedMap::set(int i, int j, const Rational& v) {
  check_entry_degree(i, j, v);
  m_.set(i, j, v);
}

void GradedMap::add(int i, int j, const Rational& v) {
  check_entry_degree(i, j, v);
  m_.add(i, j, v);
}

GradedMap GradedMap::identity(const SpacePtr& s) {
  return GradedMap(s, s, 0, SparseMat::identity(s->dim()));
}

GradedMap GradedMap::zero(SpacePtr src, SpacePtr tgt, int degree) {
  return GradedMap(std::move(src), std::move(tgt), degree);
}

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
  if (a.deg_ != b.deg_ || !a.src_->same_as(*b.src_) || !a.tgt_->same_as(*b.tgt_))
    throw std::invalid_argument("GradedMap: incompatible maps in +");
  return GradedMap(a.src_, a.tgt_, a.deg_, a.m_ + b.m_);
}

GradedMap operator-(const GradedMap& a, const GradedMap& b) {
  if (a.deg_ != b.deg_ || !a.src_->same_as(*b.src_) || !a.tgt_->same_as(*b.tgt_))
    throw std::invalid_argument("GradedMap: incompatible maps in -");
  return GradedMap(a.src_, a.tgt_, a.deg_, a.m_ - b.m_);
}

GradedMap GradedMap::operator-() const { return GradedMap(src_, tgt_, deg_, -m_); }

GradedMap GradedMap::scaled(const Rational& c) const {
  return GradedMap(src_, tgt_, deg_, m_.scaled(c));
}

bool operator==(const GradedMap& a, const GradedMap& b) {
  return a.deg_ == b.deg_ && a.src_->same_as(*b.src_) && a.tgt_->same_as(*b.tgt_) &&
         a.m_ == b.m_;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!g.source()->same_as(*f.target()))
    throw std::invalid_argument("compose: inner spaces do not match");
  return GradedMap(f.source(), g.target(), f.degree() + g.degree(),
                   SparseMat::mul(g.mat(), f.mat()));
}

SpacePtr shift_space(const SpacePtr& v, int m) {
  if (m == 0) return v;
  std::vector<GradedSpace::BasisElt> basis;
  basis.reserve(v->dim());
  for (const auto& b : v->basis()) basis.push_back({b.name, b.degree + m});
  if (v->has_differential()) return GradedSpace::make(std::move(basis), v->differential());
  return GradedSpace::make(std::move(basis));
}

GradedMap suspension(const SpacePtr& v, int m) {
  return GradedMap(v, shift_space(v, m), m, SparseMat::identity(v->dim()));
}

GradedMap desuspension(const SpacePtr& v, int m) {
  return GradedMap(shift_space(v, m), v, -m, SparseMat::identity(v->dim()));
}

SpacePtr tensor_space(const std::vector<SpacePtr>& factors) {
  if (factors.empty()) {
    return GradedSpace::make({{"1", 0}}, SparseMat(1, 1));
  }
  if (factors.size() == 1) return factors[0];
  long long dim = 1;
  for (const auto& f : factors) dim *= f->dim();
  std::vector<GradedSpace::BasisElt> basis;
  basis.reserve(dim);
  std::vector<int> idx(factors.size(), 0);
  for (long long n = 0; n < dim; ++n) {
    std::string name;
    int deg = 0;
    for (size_t a = 0; a < factors.size(); ++a) {
      if (a) name += "(x)";
      name += factors[a]->name(idx[a]);
      deg += factors[a]->degree(idx[a]);
    }
    basis.push_back({std::move(name), deg});
    for (int a = (int)factors.size() - 1; a >= 0; --a) {
      if (++idx[a] < factors[a]->dim()) break;
      idx[a] = 0;
    }
  }
  bool any_d = false;
  for (const auto& f : factors)
    if (f->has_differential()) { any_d = true; break; }
  if (!any_d) return GradedSpace::make(std::move(basis));
  // Leibniz differential: sum over factors of 1 (x) .. (x) d (x) .. (x) 1,
  // assembled through tensor_map so the Koszul signs are the only signs.
  auto plain = GradedSpace::make(basis);
  GradedMap total(plain, plain, 1);
  for (size_t a = 0; a < factors.size(); ++a) {
    if (!factors[a]->has_differential()) continue;
    std::vector<GradedMap> legs;
    for (size_t b = 0; b < factors.size(); ++b) {
      if (b == a)
        legs.push_back(GradedMap(factors[b], factors[b], 1, factors[b]->differential()));
      else
        legs.push_back(GradedMap::identity(factors[b]));
    }
    GradedMap term = tensor_map(legs);
    total = GradedMap(plain, plain, 1, total.mat() + term.mat());
  }
  return GradedSpace::make(std::move(basis), total.mat());
}

GradedMap tensor_map(const std::vector<GradedMap>& factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_map: no factors");
  if (factors.size() == 1) return factors[0];
  std::vector<SpacePtr> srcs, tgts;
  int deg = 0;
  for (const auto& f : factors) {
    srcs.push_back(f.source());
    tgts.push_back(f.target());
    deg += f.degree();
  }
  SpacePtr src = tensor_space(srcs);
  SpacePtr tgt = tensor_space(tgts);
  // strides for mixed-radix indexing
  size_t k = factors.size();
  std::vector<long long> sstride(k, 1), tstride(k, 1);
  for (int a = (int)k - 2; a >= 0; --a) {
    sstride[a] = sstride[a + 1] * srcs[a + 1]->dim();
    tstride[a] = tstride[a + 1] * tgts[a + 1]->dim();
  }
  SparseMat m(tgt->dim(), src->dim());
  std::vector<int> idx(k, 0);
  std::vector<SparseMat::Entry> parts;  // per-factor chosen entries
  for (long long col = 0; col < src->dim(); ++col) {
    // Koszul sign: each factor map f_a moves past source factors 0..a-1.
    // Collect per-factor column entries and emit the product.
    // sign accumulates (-1)^{ sum_a |f_a| * (deg of source prefix before a) }
    int prefix_deg = 0;
    long long sign_exp = 0;
    bool zero = false;
    for (size_t a = 0; a < k; ++a) {
      if (factors[a].mat().col(idx[a]).empty()) { zero = true; break; }
      sign_exp += (long long)factors[a].degree() * prefix_deg;
      prefix_deg += srcs[a]->degree(idx[a]);
    }
    if (!zero) {
      Rational sign((sign_exp % 2 == 0) ? 1 : -1);
      // iterate over product of entry choices
      std::vector<size_t> pick(k, 0);
      while (true) {
        long long row = 0;
        Rational v = sign;
        for (size_t a = 0; a < k; ++a) {
          const auto& e = factors[a].mat().col(idx[a])[pick[a]];
          row += tstride[a] * e.first;
          v *= e.second;
        }
        m.add((int)row, (int)col, v);
        int a = (int)k - 1;
        for (; a >= 0; --a) {
          if (++pick[a] < factors[a].mat().col(idx[a]).size()) break;
          pick[a] = 0;
        }
        if (a < 0) break;
      }
    }
    for (int a = (int)k - 1; a >= 0; --a) {
      if (++idx[a] < srcs[a]->dim()) break;
      idx[a] = 0;
    }
  }
  return GradedMap(src, tgt, deg, std::move(m));
}

GradedMap reorder_factors(const std::vector<SpacePtr>& factors, const std::vector<int>& perm) {
  size_t k = factors.size();
  if (perm.size() != k) throw std::invalid_argument("reorder_factors: size mismatch");
  std::vector<SpacePtr> tfac(k);
  for (size_t a = 0; a < k; ++a) tfac[perm[a]] = factors[a];
  SpacePtr src = tensor_space(factors);
  SpacePtr tgt = tensor_space(tfac);
  std::vector<long long> sstride(k, 1), tstride(k, 1);
  for (int a = (int)k - 2; a >= 0; --a) {
    sstride[a] = sstride[a + 1] * factors[a + 1]->dim();
    tstride[a] = tstride[a + 1] * tfac[a + 1]->dim();
  }
  SparseMat m(tgt->dim(), src->dim());
  std::vector<int> idx(k, 0);
  for (long long col = 0; col < src->dim(); ++col) {
    // Koszul sign: (-1)^{sum of deg_a*deg_b over inverted pairs a<b, perm[a]>perm[b]}
    long long sign_exp = 0;
    for (size_t a = 0; a < k; ++a)
      for (size_t b = a + 1; b < k; ++b)
        if (perm[a] > perm[b])
          sign_exp += (long long)factors[a]->degree(idx[a]) * factors[b]->degree(idx[b]);
    long long row = 0;
    for (size_t a = 0; a < k; ++a) row += tstride[perm[a]] * idx[a];
    m.set((int)row, (int)col, Rational(sign_exp % 2 == 0 ? 1 : -1));
    for (int a = (int)k - 1; a >= 0; --a) {
      if (++idx[a] < factors[a]->dim()) break;
      idx[a] = 0;
    }
  }
  return GradedMap(src, tgt, 0, std::move(m));
}

ComplexReport check_complex(const SpacePtr& v) {
  ComplexReport rep;
  if (!v->has_differential()) {
    rep.passed = false;
    rep.violations.push_back("no differential");
    return rep;
  }
  const SparseMat& d = v->differential();
  for (int j = 0; j < d.cols(); ++j) {
    for (const auto& [i, val] : d.col(j)) {
      if (val.is_zero()) continue;
      if (v->degree(i) != v->degree(j) + 1) {
        rep.passed = false;
        rep.violations.push_back("degree: d(" + v->name(j) + ") hits " + v->name(i));
      }
    }
  }
  SparseMat dd = SparseMat::mul(d, d);
  for (int j = 0; j < dd.cols(); ++j) {
    for (const auto& [i, val] : dd.col(j)) {
      if (!val.is_zero()) {
        rep.passed = false;
        rep.violations.push_back("d^2(" + v->name(j) + ") has component " + v->name(i) +
                                 " = " + val.str());
      }
    }
  }
  return rep;
}

}  // namespace shopd
