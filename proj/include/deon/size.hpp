#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "deon/errors.hpp"

namespace deon {

/// Exception budget: a subset A of X is small iff |A| ≤ ⌊ε·|X|⌋.
struct FractionSize {
  double epsilon = 0.0;
};

/// Principal filter generated by the minimal elements μ(X) of a preference.
/// `weakly_better(a, b)` reads a ≼ b.
template <class T>
struct PreferentialSize {
  std::function<bool(const T&, const T&)> weakly_better;
};

template <class T>
using SizeSpec = std::variant<FractionSize, PreferentialSize<T>>;

template <class T>
struct SoftResult {
  bool holds = true;
  std::vector<T> exceptions;
  explicit operator bool() const noexcept { return holds; }
};

inline void validate(const FractionSize& f) {
  if (!(f.epsilon >= 0.0 && f.epsilon < 1.0)) throw SizeUndefined("epsilon must lie in [0, 1)");
}

template <class T>
void validate(const PreferentialSize<T>& p) {
  if (!p.weakly_better) throw SizeUndefined("preferential size has no relation");
}

template <class T>
void validate(const SizeSpec<T>& s) {
  std::visit([](const auto& v) { validate(v); }, s);
}

/// Largest number of exceptions a FRACTION budget tolerates on a carrier of n elements.
inline std::size_t allowed_exceptions(const FractionSize& f, std::size_t n) {
  validate(f);
  return static_cast<std::size_t>(std::floor(f.epsilon * static_cast<double>(n) + 1e-9));
}

/// μ(X): members with no strictly better member (strict = weak one way only).
template <class T>
std::vector<T> minimal_elements(const std::vector<T>& X, const PreferentialSize<T>& p) {
  validate(p);
  std::vector<T> out;
  for (const T& x : X) {
    bool dominated = std::any_of(X.begin(), X.end(), [&](const T& y) {
      return p.weakly_better(y, x) && !p.weakly_better(x, y);
    });
    if (!dominated) out.push_back(x);
  }
  return out;
}

/// ⟨x,x′⟩ ≼ ⟨y,y′⟩ iff x ≼ y and x′ ≼′ y′.
template <class A, class B>
PreferentialSize<std::pair<A, B>> product_preference(const PreferentialSize<A>& left,
                                                     const PreferentialSize<B>& right) {
  validate(left);
  validate(right);
  return {[l = left.weakly_better, r = right.weakly_better](const std::pair<A, B>& a,
                                                            const std::pair<A, B>& b) {
    return l(a.first, b.first) && r(a.second, b.second);
  }};
}

namespace detail {

template <class T>
bool contains(const std::vector<T>& v, const T& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

template <class T>
bool includes(const std::vector<T>& outer, const std::vector<T>& inner) {
  return std::all_of(inner.begin(), inner.end(), [&](const T& x) { return contains(outer, x); });
}

}  // namespace detail

/// A ∈ F(X). Requires A ⊆ X.
template <class T>
bool is_big(const std::vector<T>& A, const std::vector<T>& X, const SizeSpec<T>& s) {
  if (!detail::includes(X, A)) throw PreconditionViolation("is_big requires A ⊆ X");
  if (const auto* f = std::get_if<FractionSize>(&s)) {
    std::size_t outside = 0;
    for (const T& x : X) outside += !detail::contains(A, x);
    return outside <= allowed_exceptions(*f, X.size());
  }
  return detail::includes(A, minimal_elements(X, std::get<PreferentialSize<T>>(s)));
}

/// C ∈ F(X × X′) for the filter generated by μ(X) × μ(X′). Requires
/// C ⊆ X × X′ and both sizes preferential.
template <class A, class B>
bool product_is_big(const std::vector<std::pair<A, B>>& C, const std::vector<A>& X,
                    const std::vector<B>& Xp, const SizeSpec<A>& s, const SizeSpec<B>& sp) {
  const auto* ps = std::get_if<PreferentialSize<A>>(&s);
  const auto* psp = std::get_if<PreferentialSize<B>>(&sp);
  if (ps == nullptr || psp == nullptr) throw NonPrincipal("product of exception budgets is not principal");
  for (const auto& c : C)
    if (!detail::contains(X, c.first) || !detail::contains(Xp, c.second))
      throw PreconditionViolation("product_is_big requires C ⊆ X × X′");
  for (const A& a : minimal_elements(X, *ps))
    for (const B& b : minimal_elements(Xp, *psp))
      if (!detail::contains(C, std::pair<A, B>(a, b))) return false;
  return true;
}

/// ∇x ∈ X. pred(x): the members satisfying `pred` form a big subset of X.
/// The exception set is reported whether or not it is small.
template <class T, class Pred>
SoftResult<T> soft_forall(const std::vector<T>& X, Pred&& pred, const SizeSpec<T>& s) {
  validate(s);
  SoftResult<T> out;
  for (const T& x : X)
    if (!pred(x)) out.exceptions.push_back(x);
  if (const auto* f = std::get_if<FractionSize>(&s)) {
    out.holds = out.exceptions.size() <= allowed_exceptions(*f, X.size());
  } else {
    auto mu = minimal_elements(X, std::get<PreferentialSize<T>>(s));
    out.holds = std::none_of(mu.begin(), mu.end(),
                             [&](const T& m) { return detail::contains(out.exceptions, m); });
  }
  return out;
}

}  // namespace deon
