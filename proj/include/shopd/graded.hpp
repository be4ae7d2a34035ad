#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shopd/rational.hpp"

namespace shopd {

class GradedSpace;
using SpacePtr = std::shared_ptr<const GradedSpace>;

/// Sparse column-major matrix over Rational. Entry lists are kept sorted by
/// row and free of explicit zeros.
class SparseMat {
 public:
  using Entry = std::pair<int, Rational>;

  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const std::vector<Entry>& col(int j) const { return col_[j]; }
  std::vector<Entry>& col_mut(int j) { return col_[j]; }

  void add(int i, int j, const Rational& v);
  void set(int i, int j, const Rational& v);
  Rational at(int i, int j) const;

  bool is_zero() const;
  long long nnz() const;

  friend SparseMat operator+(const SparseMat& a, const SparseMat& b);
  friend SparseMat operator-(const SparseMat& a, const SparseMat& b);
  SparseMat operator-() const;
  SparseMat scaled(const Rational& c) const;

  /// Matrix product a*b.
  static SparseMat mul(const SparseMat& a, const SparseMat& b);

  static SparseMat identity(int n);

  friend bool operator==(const SparseMat& a, const SparseMat& b);

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<Entry>> col_;
};

/// Finite-basis cohomologically graded vector space over the rationals.
/// The differential, when present, raises degree by one and squares to zero;
/// both facts are the caller's responsibility at construction time and are
/// validated by check_complex().
class GradedSpace : public std::enable_shared_from_this<GradedSpace> {
 public:
  struct BasisElt {
    std::string name;
    int degree = 0;
  };

  static SpacePtr make(std::vector<BasisElt> basis);
  static SpacePtr make(std::vector<BasisElt> basis, SparseMat differential);

  int dim() const { return (int)basis_.size(); }
  int degree(int i) const { return basis_[i].degree; }
  const std::string& name(int i) const { return basis_[i].name; }
  const std::vector<BasisElt>& basis() const { return basis_; }

  bool has_differential() const { return d_.has_value(); }
  const SparseMat& differential() const;

  /// Vector-space equality: same ordered basis names/degrees (differentials
  /// are compared too). Space identity for map composition uses this.
  bool same_as(const GradedSpace& o) const;

 private:
  GradedSpace() = default;
  std::vector<BasisElt> basis_;
  std::optional<SparseMat> d_;
};

/// Degree-homogeneous linear map between graded spaces. The entry (i, j)
/// is nonzero only when degree(target i) == degree(source j) + degree.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(SpacePtr src, SpacePtr tgt, int degree);
  GradedMap(SpacePtr src, SpacePtr tgt, int degree, SparseMat m);

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return tgt_; }
  int degree() const { return deg_; }
  const SparseMat& mat() const { return m_; }
  SparseMat& mat_mut() { return m_; }

  bool is_zero() const { return m_.is_zero(); }

  void set(int i, int j, const Rational& v);
  void add(int i, int j, const Rational& v);

  static GradedMap identity(const SpacePtr& s);
  static GradedMap zero(SpacePtr src, SpacePtr tgt, int degree);

  friend GradedMap operator+(const GradedMap& a, const GradedMap& b);
  friend GradedMap operator-(const GradedMap& a, const GradedMap& b);
  GradedMap operator-() const;
  GradedMap scaled(const Rational& c) const;

  friend bool operator==(const GradedMap& a, const GradedMap& b);

 private:
  SpacePtr src_, tgt_;
  int deg_ = 0;
  SparseMat m_;
  void check_entry_degree(int i, int j, const Rational& v) const;
};

/// g after f (source of g matches target of f).
GradedMap compose(const GradedMap& g, const GradedMap& f);

/// Shifted space V[m]: an element of degree d in V has degree d + m in V[m].
/// Matrix entries of the differential are copied without sign change; signs
/// appear only through suspension maps and the Koszul tensor rule.
SpacePtr shift_space(const SpacePtr& v, int m);

/// Suspension V -> V[m] with identity entries; its degree is m.
GradedMap suspension(const SpacePtr& v, int m);
/// Inverse of suspension: V[m] -> V, degree -m. `shifted` must be shift_space(v,m).
GradedMap desuspension(const SpacePtr& v, int m);

/// Tensor product space with lexicographic (row-major, leftmost factor
/// slowest) basis order. Differential is the graded Leibniz extension.
SpacePtr tensor_space(const std::vector<SpacePtr>& factors);

/// Koszul tensor product of maps: (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y),
/// extended to any number of factors.
GradedMap tensor_map(const std::vector<GradedMap>& factors);
inline GradedMap tensor_map(const GradedMap& f, const GradedMap& g) {
  return tensor_map(std::vector<GradedMap>{f, g});
}

/// Permutation of tensor factors with Koszul signs: sends factor slot a of
/// the source to slot perm[a] of the target.
GradedMap reorder_factors(const std::vector<SpacePtr>& factors, const std::vector<int>& perm);

struct ComplexReport {
  bool passed = true;
  std::vector<std::string> violations;
};

/// Checks that the stored differential is homogeneous of degree +1 and
/// squares to zero; violating basis pairs are listed by name.
ComplexReport check_complex(const SpacePtr& v);

struct RetractData5 {
  SpacePtr h_space;
  GradedMap incl;   // H -> V
  GradedMap proj;   // V -> H
  GradedMap htpy;   // V -> V, degree -1
};

enum class PivotOrder { Leftmost, Rightmost };

/// Deterministic strict deformation retract of a complex onto its homology:
/// proj*incl = id, d*h + h*d = id - incl*proj, and the side conditions
/// h*incl = 0, proj*h = 0, h*h = 0 hold exactly.
RetractData5 homology_retract(const SpacePtr& v, PivotOrder order = PivotOrder::Leftmost);

/// Homology dimension per degree (exact ranks).
std::map<int, int> homology_dims(const SpacePtr& v);

}  // namespace shopd
