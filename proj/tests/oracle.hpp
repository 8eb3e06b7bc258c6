// Brute-force reference implementations used to cross-check the library.
// Nothing here calls into the code under test except plain accessors.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "modalbao/formula.hpp"
#include "modalbao/kripke.hpp"
#include "modalbao/upset.hpp"

namespace oracle {

// A prefix/period pair read with the textbook semantics, no canonical form.
struct RawSet {
  std::vector<bool> prefix;
  std::vector<bool> period{false};

  bool contains(std::uint64_t n) const {
    if (n < prefix.size()) return prefix[n];
    return period[(n - prefix.size()) % period.size()];
  }
  std::uint64_t horizon() const { return prefix.size() + period.size(); }
};

inline RawSet raw_of(const modalbao::UPSet& s) { return {s.prefix(), s.period()}; }

inline RawSet random_raw(std::mt19937_64& rng, std::size_t max_prefix = 16, std::size_t max_period = 12) {
  std::uniform_int_distribution<std::size_t> plen(0, max_prefix), qlen(1, max_period);
  std::bernoulli_distribution bit(0.5);
  RawSet r;
  r.prefix.resize(plen(rng));
  r.period.resize(qlen(rng));
  for (std::size_t i = 0; i < r.prefix.size(); ++i) r.prefix[i] = bit(rng);
  for (std::size_t i = 0; i < r.period.size(); ++i) r.period[i] = bit(rng);
  // Bias some draws towards finite and cofinite sets.
  std::uniform_int_distribution<int> shape(0, 5);
  const int s = shape(rng);
  if (s == 0) r.period.assign(r.period.size(), false);
  if (s == 1) r.period.assign(r.period.size(), true);
  return r;
}

using Membership = std::function<bool(std::uint64_t)>;

// Is some element of X at or beyond `from`? X repeats with period `p` after `l`.
inline bool meets_tail(const RawSet& x, std::uint64_t from) {
  const std::uint64_t end = std::max<std::uint64_t>(from, x.prefix.size()) + x.period.size();
  for (std::uint64_t v = from; v < end; ++v) {
    if (x.contains(v)) return true;
  }
  return false;
}

inline bool inside_tail(const RawSet& x, std::uint64_t from) {
  const std::uint64_t end = std::max<std::uint64_t>(from, x.prefix.size()) + x.period.size();
  for (std::uint64_t v = from; v < end; ++v) {
    if (!x.contains(v)) return false;
  }
  return true;
}

// w R v iff v >= w - 1.
inline bool recession_dia(const RawSet& x, std::uint64_t w) { return meets_tail(x, w == 0 ? 0 : w - 1); }
inline bool recession_box(const RawSet& x, std::uint64_t w) { return inside_tail(x, w == 0 ? 0 : w - 1); }

// Literal m_R on a bounded window: scans successors up to `limit`.
inline bool recession_dia_window(const Membership& x, std::uint64_t w, std::uint64_t limit) {
  for (std::uint64_t v = w == 0 ? 0 : w - 1; v < limit; ++v) {
    if (x(v)) return true;
  }
  return false;
}

// Naive recursive Kripke semantics, world by world.
inline bool holds(const modalbao::FiniteFrame& fr, const modalbao::Valuation& val, const modalbao::Formula& f,
                  std::size_t w) {
  using modalbao::Connective;
  switch (f.kind()) {
    case Connective::Variable: return (val.at(f.name()) >> w) & 1U;
    case Connective::Bottom: return false;
    case Connective::Negation: return !holds(fr, val, f.operand(), w);
    case Connective::Conjunction: return holds(fr, val, f.left(), w) && holds(fr, val, f.right(), w);
    case Connective::Disjunction: return holds(fr, val, f.left(), w) || holds(fr, val, f.right(), w);
    case Connective::Implication: return !holds(fr, val, f.left(), w) || holds(fr, val, f.right(), w);
    case Connective::Box:
      for (std::size_t v = 0; v < fr.size(); ++v) {
        if (fr.related(w, v) && !holds(fr, val, f.operand(), v)) return false;
      }
      return true;
    case Connective::Diamond:
      for (std::size_t v = 0; v < fr.size(); ++v) {
        if (fr.related(w, v) && holds(fr, val, f.operand(), v)) return true;
      }
      return false;
  }
  return false;
}

inline modalbao::WorldSet truth_set(const modalbao::FiniteFrame& fr, const modalbao::Valuation& val,
                                    const modalbao::Formula& f) {
  modalbao::WorldSet out = 0;
  for (std::size_t w = 0; w < fr.size(); ++w) {
    if (holds(fr, val, f, w)) out |= modalbao::WorldSet{1} << w;
  }
  return out;
}

// Validity by brute force over every valuation.
inline bool valid_on_frame(const modalbao::FiniteFrame& fr, const modalbao::Formula& f) {
  const auto vars = f.variables();
  const std::size_t k = fr.size();
  const std::uint64_t total = std::uint64_t{1} << (k * vars.size());
  const modalbao::WorldSet all = modalbao::all_worlds(k);
  for (std::uint64_t code = 0; code < total; ++code) {
    modalbao::Valuation val;
    std::size_t j = 0;
    for (const auto& v : vars) val[v] = (code >> (j++ * k)) & all;
    if (truth_set(fr, val, f) != all) return false;
  }
  return true;
}

inline modalbao::FiniteFrame random_frame(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<std::uint64_t> d(0, (std::uint64_t{1} << (k * k)) - 1);
  return modalbao::FiniteFrame::from_relation_bits(k, d(rng));
}

inline bool reflexive(const modalbao::FiniteFrame& fr) {
  for (std::size_t w = 0; w < fr.size(); ++w) {
    if (!fr.related(w, w)) return false;
  }
  return true;
}

inline bool transitive(const modalbao::FiniteFrame& fr) {
  const std::size_t k = fr.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (fr.related(a, b) && fr.related(b, c) && !fr.related(a, c)) return false;
  return true;
}

// b_n = box^n a minus box^(n+1) a on [0, window), iterating the literal box
// definition over a finite array. `a` must be cofinite; past the array every
// power of a is treated as full, which is exact for cofinite sets.
inline std::vector<bool> recession_layer(const RawSet& a, std::size_t n, std::uint64_t window) {
  const std::uint64_t size = window + 2 * (n + 2) + a.horizon();
  std::vector<bool> power(size);
  for (std::uint64_t v = 0; v < size; ++v) power[v] = a.contains(v);
  std::vector<bool> prev;
  for (std::size_t i = 0; i < n + 1; ++i) {
    std::vector<bool> next(size, false);
    for (std::uint64_t w = 0; w < size; ++w) {
      bool all = true;
      for (std::uint64_t v = w == 0 ? 0 : w - 1; v < size && all; ++v) all = power[v];
      next[w] = all;
    }
    prev = std::move(power);
    power = std::move(next);
  }
  // prev = box^n a, power = box^(n+1) a.
  std::vector<bool> layer(window);
  for (std::uint64_t w = 0; w < window; ++w) layer[w] = prev[w] && !power[w];
  return layer;
}

}  // namespace oracle
