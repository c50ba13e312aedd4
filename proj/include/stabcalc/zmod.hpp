#pragma once

#include <string>
#include <vector>

#include "stabcalc/snf.hpp"

namespace stabcalc {

/// Finitely generated abelian group Z^c / (row span of the presentation).
/// Rows are relations, columns generators.
class ZFGModule {
 public:
  ZFGModule() = default;
  explicit ZFGModule(ZMatrix presentation);
  /// Z^c with no relations.
  static ZFGModule free(std::size_t rank);
  /// ⊕ Z/n_i.
  static ZFGModule cyclic_sum(const std::vector<Integer>& orders);

  const ZMatrix& presentation() const { return pres_; }
  std::size_t generators() const { return pres_.cols(); }
  std::size_t free_rank() const { return free_rank_; }
  /// Invariant factors ≥ 2, each dividing the next.
  const std::vector<Integer>& factors() const { return factors_; }
  bool is_zero() const { return free_rank_ == 0 && factors_.empty(); }

  /// "0", "Z/6", "Z/2 + Z/12 + Z^2".
  std::string str() const;

  /// Isomorphism (normal forms equal).
  friend bool operator==(const ZFGModule& a, const ZFGModule& b) {
    return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }

 private:
  ZMatrix pres_;
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

ZFGModule normal_form(const ZMatrix& presentation);

ZFGModule direct_sum(const ZFGModule& a, const ZFGModule& b);

/// Relations of M reduced to a basis of their row lattice (full row rank).
ZMatrix reduced_relations(const ZFGModule& m);

/// Ext¹(M, N) from the presentation 0 → Z^r → Z^c → M → 0.
ZFGModule ext1_z(const ZFGModule& m, const ZFGModule& n);
/// Coker of the dualized presentation.
ZFGModule transpose_z(const ZFGModule& m);
/// A ⊗̄ B = Ext¹(Tr A, B).
ZFGModule tensor_stab_z(const ZFGModule& a, const ZFGModule& b);

/// Ker(e_A : A → A**) with its inclusion: row i of `inclusion` is the image
/// of generator i in the generators of A.
struct ZTorsion {
  ZFGModule torsion;
  ZMatrix inclusion;
};
ZTorsion torsion_z(const ZFGModule& a);

}  // namespace stabcalc
