#include "stabcalc/zmod.hpp"

#include <sstream>

#include "stabcalc/linalg.hpp"

namespace stabcalc {

namespace {

ZMatrix unimodular_inverse(const ZMatrix& u) {
  QMatrix inv = inverse(to_rational(u));
  ZMatrix out(u.rows(), u.cols());
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) {
      if (inv(r, c).get_den() != 1) throw std::logic_error("unimodular_inverse: matrix is not unimodular");
      out(r, c) = inv(r, c).get_num();
    }
  return out;
}

std::size_t snf_rank(const SnfResult& s) {
  std::size_t r = 0;
  while (r < s.S.rows() && r < s.S.cols() && sgn(s.S(r, r)) != 0) ++r;
  return r;
}

}  // namespace

ZFGModule::ZFGModule(ZMatrix presentation) : pres_(std::move(presentation)) {
  SnfResult s = snf(pres_, false);
  free_rank_ = pres_.cols() - snf_rank(s);
  factors_ = std::move(s.invariant_factors);
}

ZFGModule ZFGModule::free(std::size_t rank) { return ZFGModule(ZMatrix(0, rank)); }

ZFGModule ZFGModule::cyclic_sum(const std::vector<Integer>& orders) {
  ZMatrix m(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) m(i, i) = orders[i];
  return ZFGModule(std::move(m));
}

std::string ZFGModule::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const char* sep = "";
  for (const auto& d : factors_) {
    os << sep << "Z/" << d.get_str();
    sep = " + ";
  }
  if (free_rank_ == 1) os << sep << "Z";
  if (free_rank_ > 1) os << sep << "Z^" << free_rank_;
  return os.str();
}

ZFGModule normal_form(const ZMatrix& presentation) { return ZFGModule(presentation); }

ZFGModule direct_sum(const ZFGModule& a, const ZFGModule& b) {
  const ZMatrix& p = a.presentation();
  const ZMatrix& q = b.presentation();
  ZMatrix m(p.rows() + q.rows(), p.cols() + q.cols());
  m.set_block(0, 0, p);
  m.set_block(p.rows(), p.cols(), q);
  return ZFGModule(std::move(m));
}

ZMatrix reduced_relations(const ZFGModule& m) {
  // R = U⁻¹ S V⁻¹, so the relation lattice is the row span of S V⁻¹.
  SnfResult s = snf(m.presentation());
  const std::size_t r = snf_rank(s);
  ZMatrix vinv = unimodular_inverse(s.V);
  ZMatrix out(r, m.generators());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < m.generators(); ++c) out(i, c) = s.S(i, i) * vinv(i, c);
  return out;
}

ZFGModule ext1_z(const ZFGModule& m, const ZFGModule& n) {
  // Ext¹(M, N) = Coker(Hom(Z^c, N) → Hom(Z^r, N)) with Hom(Z^r, N) = N^r.
  const ZMatrix rel = reduced_relations(m);
  const std::size_t r = rel.rows(), c = rel.cols();
  const ZMatrix& rn = n.presentation();
  const std::size_t g = rn.cols();
  ZMatrix out(r * rn.rows() + c * g, r * g);
  std::size_t row = 0;
  for (std::size_t j = 0; j < r; ++j, row += rn.rows()) out.set_block(row, j * g, rn);
  // φ sending generator k of Z^c to generator l of N, pulled back along rel.
  for (std::size_t k = 0; k < c; ++k)
    for (std::size_t l = 0; l < g; ++l, ++row)
      for (std::size_t j = 0; j < r; ++j) out(row, j * g + l) = rel(j, k);
  return ZFGModule(std::move(out));
}

ZFGModule transpose_z(const ZFGModule& m) { return ZFGModule(reduced_relations(m).transpose()); }

ZFGModule tensor_stab_z(const ZFGModule& a, const ZFGModule& b) { return ext1_z(transpose_z(a), b); }

ZTorsion torsion_z(const ZFGModule& a) {
  const ZMatrix& rel = a.presentation();
  const std::size_t c = a.generators();
  // A* = {φ ∈ Z^c : rel·φ = 0}: the columns of V past the rank.
  SnfResult s = snf(rel);
  const std::size_t rho = snf_rank(s);
  ZMatrix dual = s.V.block(0, rho, c, c - rho);
  // e_A(x) = x·dual in A** = Z^{c-ρ}; its kernel lattice is spanned by the
  // rows of U_K past the rank of dual, where U_K·dual·V_K = S_K.
  SnfResult sk = snf(dual);
  const std::size_t rk = snf_rank(sk);
  ZTorsion t;
  t.inclusion = sk.U.block(rk, 0, c - rk, c);
  // Relations of A rewritten in that lattice basis: rel·U_K⁻¹, restricted
  // to the kernel coordinates (the others vanish since rel·dual = 0).
  ZMatrix coords = rel * unimodular_inverse(sk.U);
  t.torsion = ZFGModule(coords.block(0, rk, rel.rows(), c - rk));
  return t;
}

}  // namespace stabcalc
