#include "stabcalc/resolutions.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "stabcalc/sampling.hpp"

namespace stabcalc {

namespace {

QMatrix flatten(const QMatrix& a) {
  QMatrix v(a.rows() * a.cols(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) v(r * a.cols() + c, 0) = a(r, c);
  return v;
}

// Single-writer, multi-reader table keyed by mode and module content. A fill
// is idempotent: a racing writer only ever replaces a shorter resolution.
template <class R>
class ResolutionCache {
 public:
  std::optional<R> find(const std::string& key) {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const R& r) {
    std::unique_lock lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end() || it->second.length() < r.length()) map_.insert_or_assign(key, r);
  }

 private:
  std::shared_mutex mu_;
  std::map<std::string, R> map_;
};

ResolutionCache<ProjectiveResolution>& projective_cache() {
  static ResolutionCache<ProjectiveResolution> c;
  return c;
}
ResolutionCache<InjectiveResolution>& injective_cache() {
  static ResolutionCache<InjectiveResolution> c;
  return c;
}

ProjectiveResolution truncate(ProjectiveResolution r, std::size_t n) {
  r.terms.resize(n + 1);
  r.differentials.resize(n);
  r.syzygies.resize(n + 1);
  r.syzygy_inclusions.resize(n);
  r.syzygy_covers.resize(n + 1);
  return r;
}

InjectiveResolution truncate(InjectiveResolution r, std::size_t n) {
  r.terms.resize(n + 1);
  r.differentials.resize(n);
  r.cosyzygies.resize(n + 1);
  r.cosyzygy_projections.resize(n);
  r.cosyzygy_embeddings.resize(n + 1);
  return r;
}

void extend(ProjectiveResolution& r, std::size_t length) {
  if (r.terms.empty()) {
    r.syzygies.push_back(r.module);
    ProjectiveCover c = projective_cover(r.module, r.mode);
    r.terms.push_back(c.projective);
    r.syzygy_covers.push_back(c.cover);
    r.augmentation = c.cover;
  }
  while (r.length() < length) {
    const std::size_t i = r.terms.size();  // building P_i
    MapFactorization fz = map_factorization(r.syzygy_covers[i - 1]);
    Module omega = fz.kernel.module;
    r.syzygies.push_back(omega);
    r.syzygy_inclusions.push_back(fz.kernel.inclusion);
    ProjectiveCover c = projective_cover(omega, r.mode);
    r.terms.push_back(c.projective);
    r.syzygy_covers.push_back(c.cover);
    r.differentials.push_back(compose(fz.kernel.inclusion, c.cover));
  }
}

void extend(InjectiveResolution& r, std::size_t length) {
  if (r.terms.empty()) {
    r.cosyzygies.push_back(r.module);
    InjectiveEnvelope e = injective_envelope(r.module, r.mode);
    r.terms.push_back(e.injective);
    r.cosyzygy_embeddings.push_back(e.embedding);
    r.coaugmentation = e.embedding;
  }
  while (r.length() < length) {
    const std::size_t j = r.terms.size();  // building I^j
    QuotientModule q = quotient(r.terms[j - 1], r.cosyzygy_embeddings[j - 1].matrix());
    r.cosyzygies.push_back(q.module);
    r.cosyzygy_projections.push_back(q.projection);
    InjectiveEnvelope e = injective_envelope(q.module, r.mode);
    r.terms.push_back(e.injective);
    r.cosyzygy_embeddings.push_back(e.embedding);
    r.differentials.push_back(compose(e.embedding, q.projection));
  }
}

template <class R>
R resolve(ResolutionCache<R>& cache, const Module& m, std::size_t length, Mode mode) {
  const std::string key = std::string(to_string(mode)) + '#' + m.fingerprint();
  std::optional<R> hit = cache.find(key);
  R r;
  if (hit) {
    r = std::move(*hit);
  } else {
    r.module = m;
    r.mode = mode;
  }
  if (r.terms.empty() || r.length() < length) {
    extend(r, length);
    cache.store(key, r);
  }
  r = truncate(std::move(r), length);
  r.module = m;
  return r;
}

QMatrix random_combination(const std::vector<ModuleMap>& maps, std::size_t rows, std::size_t cols, Rng& rng) {
  QMatrix out(rows, cols);
  for (const auto& h : maps) {
    int c = random_small(rng, 2);
    if (c) out += Rational(c) * h.matrix();
  }
  return out;
}

}  // namespace

ProjectiveResolution resolve_projective(const Module& m, std::size_t length, Mode mode) {
  return resolve(projective_cache(), m, length, mode);
}

InjectiveResolution resolve_injective(const Module& b, std::size_t length, Mode mode) {
  return resolve(injective_cache(), b, length, mode);
}

Module syzygy(const Module& m, std::size_t j, Mode mode) {
  return resolve_projective(m, j, mode).syzygies[j];
}

Module cosyzygy(const Module& b, std::size_t j, Mode mode) {
  return resolve_injective(b, j, mode).cosyzygies[j];
}

TransposeResult transpose(const Module& a, Mode mode) {
  ProjectiveResolution res = resolve_projective(a, 1, mode);
  TransposeResult t{a, Module{}, star(a), star(res.terms[0]), star(res.terms[1]), {}, {}, {}, false};
  t.pi_star = star_map(res.augmentation, t.p0_star, t.a_star);
  t.d_star = star_map(res.d(1), t.p1_star, t.p0_star);
  QuotientModule q = quotient(t.p1_star.module, t.d_star.matrix());
  t.tr = q.module;
  t.projection = q.projection;
  t.four_term_exact = t.pi_star.is_injective() && exact_at(t.pi_star.matrix(), t.d_star.matrix()) &&
                      exact_at(t.d_star.matrix(), t.projection.matrix()) && t.projection.is_surjective();
  return t;
}

std::optional<HomSolutions> solve_hom_all(const HomSpace& hom, const QMatrix& left, const QMatrix& right,
                                          const QMatrix& target) {
  QMatrix b = flatten(target);
  if (hom.dim() == 0) {
    if (!target.is_zero()) return std::nullopt;
    return HomSolutions{ModuleMap::zero(hom.source(), hom.target()), {}};
  }
  std::vector<QMatrix> cols;
  for (const auto& x : hom.basis()) cols.push_back(flatten(left * x.matrix() * right));
  auto rs = rref_solve(QMatrix::hstack(cols, b.rows()), b);
  if (!rs.solution) return std::nullopt;
  HomSolutions out{hom.element(*rs.solution), {}};
  for (std::size_t k = 0; k < rs.kernel_basis.cols(); ++k) out.homogeneous.push_back(hom.element(rs.kernel_basis.col(k)));
  return out;
}

ChainMap lift_map(const ModuleMap& f, const ProjectiveResolution& source, const ProjectiveResolution& target,
                  std::size_t degree, const LiftOptions& opts) {
  if (source.length() < degree || target.length() < degree)
    throw LiftError("lift_map: resolutions are shorter than degree " + std::to_string(degree));
  Rng rng(opts.perturb_seed.value_or(0));
  ChainMap out;
  for (std::size_t i = 0; i <= degree; ++i) {
    const Module& p = source.terms[i];
    const Module& q = target.terms[i];
    HomSpace h(p, q);
    QMatrix left = i == 0 ? target.augmentation.matrix() : target.d(i).matrix();
    QMatrix goal = i == 0 ? f.matrix() * source.augmentation.matrix()
                          : out.components[i - 1].matrix() * source.d(i).matrix();
    auto sol = solve_hom_all(h, left, QMatrix::identity(p.dim()), goal);
    if (!sol) throw LiftError("lift_map: no lift at degree " + std::to_string(i));
    QMatrix m = sol->particular.matrix();
    if (opts.perturb_seed) m += random_combination(sol->homogeneous, q.dim(), p.dim(), rng);
    out.components.push_back(ModuleMap::unchecked(p, q, m));
  }
  return out;
}

ChainMap lift_map(const ModuleMap& f, const InjectiveResolution& source, const InjectiveResolution& target,
                  std::size_t degree, const LiftOptions& opts) {
  if (source.length() < degree || target.length() < degree)
    throw LiftError("lift_map: resolutions are shorter than degree " + std::to_string(degree));
  Rng rng(opts.perturb_seed.value_or(0));
  ChainMap out;
  for (std::size_t j = 0; j <= degree; ++j) {
    const Module& i0 = source.terms[j];
    const Module& j0 = target.terms[j];
    HomSpace h(i0, j0);
    QMatrix right = j == 0 ? source.coaugmentation.matrix() : source.differentials[j - 1].matrix();
    QMatrix goal = j == 0 ? target.coaugmentation.matrix() * f.matrix()
                          : target.differentials[j - 1].matrix() * out.components[j - 1].matrix();
    auto sol = solve_hom_all(h, QMatrix::identity(j0.dim()), right, goal);
    if (!sol) throw LiftError("lift_map: no extension at degree " + std::to_string(j));
    QMatrix m = sol->particular.matrix();
    if (opts.perturb_seed) m += random_combination(sol->homogeneous, j0.dim(), i0.dim(), rng);
    out.components.push_back(ModuleMap::unchecked(i0, j0, m));
  }
  return out;
}

bool exact_at(const QMatrix& f, const QMatrix& g) {
  if (f.rows() != g.cols()) throw DimensionError("exact_at: maps are not composable");
  if (!(g * f).is_zero()) return false;
  return rank(f) + rank(g) == f.rows();
}

}  // namespace stabcalc
