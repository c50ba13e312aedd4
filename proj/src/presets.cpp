#include "stabcalc/presets.hpp"

#include <stdexcept>

namespace stabcalc {

namespace {

QMatrix radical_power_basis(const AlgebraPtr& a, Side s, std::size_t j) {
  Module reg = regular_module(a, s);
  QMatrix cur = QMatrix::identity(a->dim());
  for (std::size_t t = 0; t < j; ++t) {
    std::vector<QMatrix> parts;
    for (std::size_t c = 0; c < a->radical().cols(); ++c) parts.push_back(reg.act(a->radical().col(c)) * cur);
    cur = image_basis(QMatrix::hstack(parts, a->dim()));
  }
  return cur;
}

}  // namespace

Module preset_regular(const AlgebraPtr& a, Side s) { return regular_module(a, s); }

Module preset_simple_top(const AlgebraPtr& a, Side s, std::size_t index) {
  auto ps = indecomposable_projectives(a, s);
  if (index >= ps.size())
    throw std::out_of_range("simple_top index " + std::to_string(index) + " but only " +
                            std::to_string(ps.size()) + " indecomposable projectives");
  return top(ps[index]).module;
}

Module preset_radical_layer(const AlgebraPtr& a, Side s, std::size_t j) {
  return quotient(regular_module(a, s), radical_power_basis(a, s, j)).module;
}

Module preset_radical_power(const AlgebraPtr& a, Side s, std::size_t j) {
  return submodule(regular_module(a, s), radical_power_basis(a, s, j)).module;
}

Module preset_dual_regular(const AlgebraPtr& a, Side s) { return dual_module(regular_module(a, opposite(s))); }

}  // namespace stabcalc
