#include "stabcalc/functor.hpp"

#include <functional>

namespace stabcalc {

const char* to_string(FunctorKind k) {
  switch (k) {
    case FunctorKind::Tensor: return "tensor";
    case FunctorKind::Hom: return "hom";
    case FunctorKind::FP: return "fp";
    case FunctorKind::Satellite: return "satellite";
    case FunctorKind::Cosatellite: return "cosatellite";
    case FunctorKind::InjStab: return "inj-stab";
    case FunctorKind::ProjStab: return "proj-stab";
    case FunctorKind::DerivedTor: return "derived-tor";
  }
  return "?";
}

Functor::Functor(AlgebraPtr algebra, Side side, int depth) : algebra_(std::move(algebra)), side_(side), depth_(depth) {
  if (depth_ > kMaxDepth)
    throw FunctorDepthError("functor nesting deeper than " + std::to_string(kMaxDepth) + " combinators");
}

const FValue& Functor::eval(const Module& x) const {
  if (x.side() != side_ || x.algebra()->id() != algebra_->id())
    throw ModuleError(describe() + ": argument has the wrong algebra or side");
  const std::string& key = x.fingerprint();
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return *it->second;
  }
  auto v = std::make_shared<const FValue>(compute(x));
  std::lock_guard lock(mu_);
  // First writer wins so every caller sees one committed basis.
  auto [it, inserted] = memo_.emplace(key, std::move(v));
  return *it->second;
}

QMatrix Functor::eval_map(const ModuleMap& g, const LiftOptions& opts) const {
  const FValue& src = eval(g.domain());
  const FValue& dst = eval(g.codomain());
  return compute_map(g, src, dst, opts);
}

namespace {

template <class T>
class Memo {
 public:
  std::shared_ptr<const T> get(const std::string& key, const std::function<T()>& make) const {
    {
      std::lock_guard lock(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    auto v = std::make_shared<const T>(make());
    std::lock_guard lock(mu_);
    return map_.emplace(key, std::move(v)).first->second;
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const T>> map_;
};

std::string dims(const Module& a) { return std::to_string(a.dim()); }

int child_depth(const FunctorPtr& f) {
  if (!f) throw std::invalid_argument("null functor");
  return f->depth() + 1;
}

QMatrix right_inverse(const QMatrix& epi) {
  auto s = solve(epi, QMatrix::identity(epi.rows()));
  if (!s) throw std::logic_error("map is not onto");
  return *s;
}

QMatrix left_factor(const QMatrix& mono, const QMatrix& target) {
  if (target.cols() == 0) return QMatrix(mono.cols(), 0);
  auto s = solve(mono, target);
  if (!s) throw std::logic_error("map does not factor through the monomorphism");
  return *s;
}

class TensorFunctor final : public Functor {
 public:
  explicit TensorFunctor(Module a) : Functor(a.algebra(), opposite(a.side()), 0), a_(std::move(a)) {}
  FunctorKind kind() const override { return FunctorKind::Tensor; }
  std::string describe() const override {
    return a_.side() == Side::Right ? "A(" + dims(a_) + ")⊗−" : "−⊗A(" + dims(a_) + ")";
  }

 protected:
  FValue compute(const Module& x) const override {
    TensorProduct t = a_.side() == Side::Right ? tensor_over_algebra(a_, x) : tensor_over_algebra(x, a_);
    return {t.space, "tensor"};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions&) const override {
    const QMatrix id = QMatrix::identity(a_.dim());
    return induced_map(src.space, dst.space,
                       a_.side() == Side::Right ? QMatrix::kron(id, g.matrix()) : QMatrix::kron(g.matrix(), id));
  }

 private:
  Module a_;
};

class HomFunctor final : public Functor {
 public:
  explicit HomFunctor(Module a) : Functor(a.algebra(), a.side(), 0), a_(std::move(a)) {}
  FunctorKind kind() const override { return FunctorKind::Hom; }
  std::string describe() const override { return "Hom(A(" + dims(a_) + "),−)"; }

 protected:
  FValue compute(const Module& x) const override {
    auto h = hom(x);
    return {Subquotient::quotient(h->dim(), QMatrix(h->dim(), 0)), "hom"};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue&, const FValue& dst, const LiftOptions&) const override {
    auto from = hom(g.domain());
    auto to = hom(g.codomain());
    std::vector<QMatrix> cols;
    for (const auto& phi : from->basis()) cols.push_back(to->coords(g.matrix() * phi.matrix()));
    return QMatrix::hstack(cols, dst.dim());
  }

 private:
  std::shared_ptr<const HomSpace> hom(const Module& x) const {
    return homs_.get(x.fingerprint(), [&] { return HomSpace(a_, x); });
  }
  Module a_;
  Memo<HomSpace> homs_;
};

class FpFunctor final : public Functor {
 public:
  explicit FpFunctor(ModuleMap f) : Functor(f.domain().algebra(), f.domain().side(), 0), f_(std::move(f)) {}
  FunctorKind kind() const override { return FunctorKind::FP; }
  std::string describe() const override {
    return "Coker((" + dims(f_.codomain()) + ",−)→(" + dims(f_.domain()) + ",−))";
  }

 protected:
  FValue compute(const Module& x) const override {
    auto ha = homs(f_.domain(), x);
    auto hb = homs(f_.codomain(), x);
    std::vector<QMatrix> cols;
    for (const auto& psi : hb->basis()) cols.push_back(ha->coords(psi.matrix() * f_.matrix()));
    QMatrix rel = image_basis(QMatrix::hstack(cols, ha->dim()));
    return {Subquotient::quotient(ha->dim(), rel), "hom"};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions&) const override {
    auto from = homs(f_.domain(), g.domain());
    auto to = homs(f_.domain(), g.codomain());
    std::vector<QMatrix> cols;
    for (const auto& phi : from->basis()) cols.push_back(to->coords(g.matrix() * phi.matrix()));
    return induced_map(src.space, dst.space, QMatrix::hstack(cols, to->dim()));
  }

 private:
  std::shared_ptr<const HomSpace> homs(const Module& a, const Module& x) const {
    return homs_.get(a.fingerprint() + "|" + x.fingerprint(), [&] { return HomSpace(a, x); });
  }
  ModuleMap f_;
  Memo<HomSpace> homs_;
};

class DerivedTorFunctor final : public Functor {
 public:
  DerivedTorFunctor(Module a, std::size_t n, Mode mode)
      : Functor(a.algebra(), opposite(a.side()), 0), a_(std::move(a)), n_(n), mode_(mode) {}
  FunctorKind kind() const override { return FunctorKind::DerivedTor; }
  std::string describe() const override {
    const std::string t = "Tor_" + std::to_string(n_);
    return a_.side() == Side::Right ? t + "(A(" + dims(a_) + "),−)" : t + "(−,A(" + dims(a_) + "))";
  }

 protected:
  FValue compute(const Module& x) const override { return {tor(x)->homology, "tor-chain"}; }
  QMatrix compute_map(const ModuleMap& g, const FValue&, const FValue&, const LiftOptions&) const override {
    return tor_map(*tor(g.domain()), *tor(g.codomain()), g);
  }

 private:
  std::shared_ptr<const TorGroup> tor(const Module& x) const {
    return tors_.get(x.fingerprint(), [&] {
      return a_.side() == Side::Right ? tor_n(a_, x, n_, TorRoute::ResolveFirst, mode_)
                                      : tor_n(x, a_, n_, TorRoute::ResolveSecond, mode_);
    });
  }
  Module a_;
  std::size_t n_;
  Mode mode_;
  Memo<TorGroup> tors_;
};

// Combinators work in the coordinates of the inner functor's values.
class Combinator : public Functor {
 public:
  Combinator(FunctorPtr f, Mode mode) : Functor(f->algebra(), f->side(), child_depth(f)), f_(std::move(f)), mode_(mode) {}
 protected:
  std::string tag(const std::string& what) const { return what + "[" + f_->describe() + "]"; }
  FunctorPtr f_;
  Mode mode_;
};

class InjStab final : public Combinator {
 public:
  using Combinator::Combinator;
  FunctorKind kind() const override { return FunctorKind::InjStab; }
  std::string describe() const override { return "InjStab(" + f_->describe() + ")"; }

 protected:
  FValue compute(const Module& x) const override {
    InjectiveEnvelope env = injective_envelope(x, mode_);
    return {Subquotient::subspace(kernel(f_->eval_map(env.embedding))), tag("F")};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions& o) const override {
    return induced_map(src.space, dst.space, f_->eval_map(g, o));
  }
};

class ProjStab final : public Combinator {
 public:
  using Combinator::Combinator;
  FunctorKind kind() const override { return FunctorKind::ProjStab; }
  std::string describe() const override { return "ProjStab(" + f_->describe() + ")"; }

 protected:
  FValue compute(const Module& x) const override {
    ProjectiveCover pc = projective_cover(x, mode_);
    return {Subquotient::quotient(f_->eval(x).dim(), image_basis(f_->eval_map(pc.cover))), tag("F")};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions& o) const override {
    return induced_map(src.space, dst.space, f_->eval_map(g, o));
  }
};

// Right variants use 0 → A → I → ΣA → 0, left variants 0 → ΩA → P → A → 0.
class SatelliteBase : public Combinator {
 public:
  SatelliteBase(FunctorPtr f, Direction dir, Mode mode) : Combinator(std::move(f), mode), dir_(dir) {}

 protected:

  InjectiveResolution inj(const Module& x) const { return resolve_injective(x, 1, mode_); }
  ProjectiveResolution proj(const Module& x) const { return resolve_projective(x, 1, mode_); }

  // I(A) → ΣA and ΩA → P(A).
  ModuleMap cosyzygy_projection(const Module& x) const { return inj(x).cosyzygy_projections[0]; }
  ModuleMap syzygy_inclusion(const Module& x) const { return proj(x).syzygy_inclusions[0]; }

  ModuleMap lift_to_injective(const ModuleMap& g, const LiftOptions& o) const {
    return lift_map(g, inj(g.domain()), inj(g.codomain()), 0, o).components[0];
  }
  ModuleMap lift_to_projective(const ModuleMap& g, const LiftOptions& o) const {
    return lift_map(g, proj(g.domain()), proj(g.codomain()), 0, o).components[0];
  }
  ModuleMap sigma_map(const ModuleMap& g, const LiftOptions& o) const {
    ModuleMap p = cosyzygy_projection(g.domain()), q = cosyzygy_projection(g.codomain());
    ModuleMap g0 = lift_to_injective(g, o);
    QMatrix m = p.codomain().dim() ? q.matrix() * g0.matrix() * right_inverse(p.matrix())
                                   : QMatrix(q.codomain().dim(), 0);
    return ModuleMap::unchecked(p.codomain(), q.codomain(), m);
  }
  ModuleMap omega_map(const ModuleMap& g, const LiftOptions& o) const {
    ModuleMap i = syzygy_inclusion(g.domain()), j = syzygy_inclusion(g.codomain());
    ModuleMap g0 = lift_to_projective(g, o);
    return ModuleMap::unchecked(i.domain(), j.domain(), left_factor(j.matrix(), g0.matrix() * i.matrix()));
  }
  std::string arrow() const { return dir_ == Direction::Right ? "^1" : "_1"; }

  Direction dir_;
};

class Satellite final : public SatelliteBase {
 public:
  using SatelliteBase::SatelliteBase;
  FunctorKind kind() const override { return FunctorKind::Satellite; }
  std::string describe() const override { return "S" + arrow() + "(" + f_->describe() + ")"; }

 protected:
  FValue compute(const Module& x) const override {
    if (dir_ == Direction::Right) {
      ModuleMap p = cosyzygy_projection(x);
      return {Subquotient::quotient(f_->eval(p.codomain()).dim(), image_basis(f_->eval_map(p))), tag("F(ΣA)")};
    }
    return {Subquotient::subspace(kernel(f_->eval_map(syzygy_inclusion(x)))), tag("F(ΩA)")};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions& o) const override {
    ModuleMap h = dir_ == Direction::Right ? sigma_map(g, o) : omega_map(g, o);
    return induced_map(src.space, dst.space, f_->eval_map(h, o));
  }
};

class Cosatellite final : public SatelliteBase {
 public:
  using SatelliteBase::SatelliteBase;
  FunctorKind kind() const override { return FunctorKind::Cosatellite; }
  std::string describe() const override { return "C" + arrow() + "(" + f_->describe() + ")"; }

 protected:
  FValue compute(const Module& x) const override {
    if (dir_ == Direction::Right)
      return {Subquotient::subspace(kernel(f_->eval_map(cosyzygy_projection(x)))), tag("F(I)")};
    ModuleMap i = syzygy_inclusion(x);
    return {Subquotient::quotient(f_->eval(i.codomain()).dim(), image_basis(f_->eval_map(i))), tag("F(P)")};
  }
  QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst, const LiftOptions& o) const override {
    ModuleMap g0 = dir_ == Direction::Right ? lift_to_injective(g, o) : lift_to_projective(g, o);
    return induced_map(src.space, dst.space, f_->eval_map(g0, o));
  }
};

}  // namespace

FunctorPtr tensor_functor(const Module& a) { return std::make_shared<TensorFunctor>(a); }
FunctorPtr hom_functor(const Module& a) { return std::make_shared<HomFunctor>(a); }
FunctorPtr fp_functor(const ModuleMap& f) { return std::make_shared<FpFunctor>(f); }
FunctorPtr derived_tor_functor(const Module& a, std::size_t n, Mode mode) {
  return std::make_shared<DerivedTorFunctor>(a, n, mode);
}
FunctorPtr injective_stabilization(FunctorPtr f, Mode mode) { return std::make_shared<InjStab>(std::move(f), mode); }
FunctorPtr projective_stabilization(FunctorPtr f, Mode mode) { return std::make_shared<ProjStab>(std::move(f), mode); }
FunctorPtr satellite(FunctorPtr f, Direction dir, Mode mode) {
  return std::make_shared<Satellite>(std::move(f), dir, mode);
}
FunctorPtr cosatellite(FunctorPtr f, Direction dir, Mode mode) {
  return std::make_shared<Cosatellite>(std::move(f), dir, mode);
}

}  // namespace stabcalc
