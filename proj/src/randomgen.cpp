#include "shopd/randomgen.hpp"

#include <cstdlib>
#include <map>

#include "shopd/linalg.hpp"

namespace shopd {

Rational random_scalar(std::mt19937_64& rng) {
  switch (rng() % 12) {
    case 0: return Rational(1);
    case 1: return Rational(-1);
    case 2: return Rational(2);
    case 3: return Rational(-2);
    case 4: return Rational(1, 2);
    case 5: return Rational(-1, 2);
    default: return Rational(0);
  }
}

SpacePtr random_complex(std::mt19937_64& rng, int max_dim, int deg_lo, int deg_hi) {
  int dim = 1 + (int)(rng() % (unsigned)max_dim);
  std::vector<GradedSpace::BasisElt> basis;
  for (int i = 0; i < dim; ++i) {
    int deg = deg_lo + (int)(rng() % (unsigned)(deg_hi - deg_lo + 1));
    basis.push_back({"v" + std::to_string(i), deg});
  }
  // build d degree by degree, top degree downward; each block's columns are
  // drawn from the kernel of the next block so that d*d = 0 exactly.
  SparseMat d(dim, dim);
  std::map<int, std::vector<int>> by_deg;
  for (int i = 0; i < dim; ++i) by_deg[basis[i].degree].push_back(i);
  std::map<int, SparseMat> blocks;  // source degree -> block matrix
  for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
    int deg = it->first;
    auto tgt_it = by_deg.find(deg + 1);
    if (tgt_it == by_deg.end()) continue;
    const auto& src_idx = it->second;
    const auto& tgt_idx = tgt_it->second;
    std::vector<std::vector<Rational>> kbasis;
    auto nxt = blocks.find(deg + 1);
    if (nxt == blocks.end()) {
      for (size_t i = 0; i < tgt_idx.size(); ++i) {
        std::vector<Rational> e(tgt_idx.size(), Rational(0));
        e[i] = Rational(1);
        kbasis.push_back(std::move(e));
      }
    } else {
      kbasis = kernel_basis(nxt->second);
    }
    SparseMat block((int)tgt_idx.size(), (int)src_idx.size());
    for (size_t j = 0; j < src_idx.size(); ++j) {
      for (const auto& kv : kbasis) {
        Rational c = random_scalar(rng);
        if (c.is_zero()) continue;
        for (size_t i = 0; i < kv.size(); ++i) {
          if (kv[i].is_zero()) continue;
          block.add((int)i, (int)j, c * kv[i]);
        }
      }
    }
    blocks[deg] = block;
    for (size_t j = 0; j < src_idx.size(); ++j)
      for (const auto& [i, v] : block.col((int)j)) d.set(tgt_idx[i], src_idx[j], v);
  }
  return GradedSpace::make(basis, d);
}

GradedMap random_map(std::mt19937_64& rng, const SpacePtr& src, const SpacePtr& tgt, int degree) {
  GradedMap f(src, tgt, degree);
  for (int j = 0; j < src->dim(); ++j)
    for (int i = 0; i < tgt->dim(); ++i) {
      if (tgt->degree(i) != src->degree(j) + degree) continue;
      Rational c = random_scalar(rng);
      if (!c.is_zero()) f.set(i, j, c);
    }
  return f;
}

unsigned long long env_seed() {
  const char* s = std::getenv("SHOPD_SEED");
  if (!s) return 0;
  return std::strtoull(s, nullptr, 10);
}

}  // namespace shopd
