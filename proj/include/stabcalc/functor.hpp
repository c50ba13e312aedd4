#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "stabcalc/derived.hpp"

namespace stabcalc {

enum class FunctorKind { Tensor, Hom, FP, Satellite, Cosatellite, InjStab, ProjStab, DerivedTor };
const char* to_string(FunctorKind k);

enum class Direction { Left, Right };

/// A functor value: a subquotient with committed basis inside a concrete
/// ambient coordinate space (the value of the inner functor, a tensor
/// space, a hom space, ...).
struct FValue {
  Subquotient space;
  std::string ambient_tag;

  std::size_t dim() const { return space.dim(); }
  QSpace qspace() const { return {space.dim(), space.reps(), ambient_tag}; }
};

class FunctorDepthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariant additive functor from modules of side() over algebra() to
/// Q-vector spaces. Values are memoized per module content, so two
/// evaluations of equal modules share committed coordinates.
class Functor {
 public:
  virtual ~Functor() = default;

  virtual FunctorKind kind() const = 0;
  virtual std::string describe() const = 0;
  const AlgebraPtr& algebra() const { return algebra_; }
  Side side() const { return side_; }
  int depth() const { return depth_; }

  const FValue& eval(const Module& x) const;
  /// Matrix dim F(cod) × dim F(dom). Options only affect functors whose
  /// maps are defined through chosen lifts (satellites); the result must
  /// not depend on them.
  QMatrix eval_map(const ModuleMap& g, const LiftOptions& opts = {}) const;

  static constexpr int kMaxDepth = 4;

 protected:
  Functor(AlgebraPtr algebra, Side side, int depth);
  virtual FValue compute(const Module& x) const = 0;
  virtual QMatrix compute_map(const ModuleMap& g, const FValue& src, const FValue& dst,
                              const LiftOptions& opts) const = 0;

 private:
  AlgebraPtr algebra_;
  Side side_;
  int depth_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const FValue>> memo_;
};

using FunctorPtr = std::shared_ptr<const Functor>;

/// A ⊗ − (A right, argument left) or − ⊗ A (A left, argument right).
FunctorPtr tensor_functor(const Module& a);
/// Hom(A, −).
FunctorPtr hom_functor(const Module& a);
/// Coker((B, −) → (A, −)) for f : A → B.
FunctorPtr fp_functor(const ModuleMap& f);
/// Tor_n(A, −) (A right) or Tor_n(−, A) (A left), computed from a resolution of A.
FunctorPtr derived_tor_functor(const Module& a, std::size_t n, Mode mode = Mode::Minimal);

/// F̄(B) = Ker F(ι : B → I(B)).
FunctorPtr injective_stabilization(FunctorPtr f, Mode mode = Mode::Minimal);
/// Coker F(π : P(M) → M).
FunctorPtr projective_stabilization(FunctorPtr f, Mode mode = Mode::Minimal);
/// Right: S¹F(A) = Coker F(π : I → ΣA). Left: S₁F(A) = Ker F(ι : ΩA → P).
FunctorPtr satellite(FunctorPtr f, Direction dir, Mode mode = Mode::Minimal);
/// Right: C¹F(A) = Ker F(π : I → ΣA). Left: C₁F(A) = Coker F(ι : ΩA → P).
FunctorPtr cosatellite(FunctorPtr f, Direction dir, Mode mode = Mode::Minimal);

}  // namespace stabcalc
