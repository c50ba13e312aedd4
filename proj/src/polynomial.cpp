#include "stabcalc/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabcalc::poly {

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly bb = b;
  trim(bb);
  if (bb.empty()) throw std::domain_error("polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < bb.size()) return {{}, r};
  Poly q(r.size() - bb.size() + 1);
  const Rational lead = bb.back();
  while (!r.empty() && r.size() >= bb.size()) {
    std::size_t shift = r.size() - bb.size();
    Rational f = r.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= f * bb[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  Poly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    Poly s2 = sub(s0, mul(q, s1));
    Poly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    Rational inv = 1 / r0.back();
    for (auto& x : r0) x *= inv;
    for (auto& x : s0) x *= inv;
    for (auto& x : t0) x *= inv;
  }
  return {r0, s0, t0};
}

namespace {

std::optional<std::vector<Integer>> divisors(Integer n) {
  n = abs(n);
  if (n > 10000000) return std::nullopt;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

std::optional<std::vector<Rational>> rational_roots(const Poly& p0) {
  Poly p = p0;
  trim(p);
  std::vector<Rational> roots;
  if (p.size() <= 1) return roots;
  std::size_t low = 0;
  while (sgn(p[low]) == 0) ++low;
  if (low > 0) roots.push_back(0);
  Poly q(p.begin() + static_cast<long>(low), p.end());
  if (q.size() > 1) {
    Integer l = 1;
    for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Rational front = q.front() * l;
    Rational back = q.back() * l;
    Integer a0 = front.get_num();
    Integer an = back.get_num();
    auto dp = divisors(a0);
    auto dq = divisors(an);
    if (!dp || !dq) return std::nullopt;
    for (const auto& num : *dp)
      for (const auto& den : *dq)
        for (int s : {1, -1}) {
          Rational cand(Integer(s * num), den);
          cand.canonicalize();
          if (sgn(evaluate(q, cand)) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
            roots.push_back(cand);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace stabcalc::poly
