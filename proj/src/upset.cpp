#include "modalbao/upset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "modalbao/error.hpp"

namespace modalbao {

UPSet::UPSet() : period_{false} {}

UPSet UPSet::normalize(std::vector<bool> prefix, std::vector<bool> period) {
  if (period.empty()) throw InvalidArgument("period must be non-empty");

  const std::size_t len = period.size();
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < len && repeats; ++i) repeats = period[i] == period[i % d];
    if (repeats) {
      period.resize(d);
      break;
    }
  }

  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    bool last = period.back();
    period.pop_back();
    period.insert(period.begin(), last);
  }
  return UPSet(std::move(prefix), std::move(period));
}

UPSet UPSet::empty() { return UPSet(); }

UPSet UPSet::omega() { return UPSet({}, {true}); }

UPSet UPSet::singleton(std::uint64_t n) {
  std::vector<bool> prefix(n + 1, false);
  prefix[n] = true;
  return normalize(std::move(prefix), {false});
}

UPSet UPSet::finite(std::span<const std::uint64_t> members) {
  if (members.empty()) return empty();
  std::vector<bool> prefix(*std::max_element(members.begin(), members.end()) + 1, false);
  for (auto m : members) prefix[m] = true;
  return normalize(std::move(prefix), {false});
}

UPSet UPSet::from(std::uint64_t lo) { return normalize(std::vector<bool>(lo, false), {true}); }

UPSet UPSet::interval(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return empty();
  std::vector<bool> prefix(hi + 1, false);
  for (auto n = lo; n <= hi; ++n) prefix[n] = true;
  return normalize(std::move(prefix), {false});
}

UPSet UPSet::progression(std::uint64_t start, std::uint64_t step) {
  if (step == 0) throw InvalidArgument("progression step must be at least 1");
  std::vector<bool> period(step, false);
  period[0] = true;
  return normalize(std::vector<bool>(start, false), std::move(period));
}

bool UPSet::contains(std::uint64_t n) const noexcept {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

bool UPSet::is_empty() const noexcept { return is_finite() && prefix_.empty(); }
bool UPSet::is_omega() const noexcept { return is_cofinite() && prefix_.empty(); }
bool UPSet::is_finite() const noexcept { return period_.size() == 1 && !period_[0]; }
bool UPSet::is_cofinite() const noexcept { return period_.size() == 1 && period_[0]; }

std::optional<std::uint64_t> UPSet::max_element() const {
  if (!is_finite() || prefix_.empty()) return std::nullopt;
  return prefix_.size() - 1;
}

std::optional<std::uint64_t> UPSet::max_missing() const {
  if (!is_cofinite() || prefix_.empty()) return std::nullopt;
  return prefix_.size() - 1;
}

std::optional<std::uint64_t> UPSet::min_missing() const {
  for (std::uint64_t n = 0; n < prefix_.size() + period_.size(); ++n) {
    if (!contains(n)) return n;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> UPSet::members() const {
  if (!is_finite()) throw InvalidArgument("members() of an infinite set");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n < prefix_.size(); ++n) {
    if (prefix_[n]) out.push_back(n);
  }
  return out;
}

std::string UPSet::bits() const {
  std::string out;
  for (bool b : prefix_) out += b ? '1' : '0';
  out += ';';
  for (bool b : period_) out += b ? '1' : '0';
  return out;
}

namespace {

std::string join_numbers(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string describe_finite(const std::vector<std::uint64_t>& xs) {
  if (xs.empty()) return "∅";
  if (xs.size() >= 2 && xs.back() - xs.front() + 1 == xs.size()) {
    return "[" + std::to_string(xs.front()) + "," + std::to_string(xs.back()) + "]";
  }
  return "{" + join_numbers(xs) + "}";
}

}  // namespace

std::string UPSet::describe() const {
  if (is_finite()) return describe_finite(members());
  if (is_cofinite()) {
    if (prefix_.empty()) return "ω";
    auto gaps = complement(*this).members();
    if (gaps.front() == 0 && gaps.back() + 1 == gaps.size()) {
      return "{n ≥ " + std::to_string(gaps.size()) + "}";
    }
    return "ω∖" + describe_finite(gaps);
  }
  std::vector<std::string> parts;
  std::vector<std::uint64_t> head;
  for (std::uint64_t n = 0; n < prefix_.size(); ++n) {
    if (prefix_[n]) head.push_back(n);
  }
  if (!head.empty()) parts.push_back(describe_finite(head));
  const std::uint64_t len = prefix_.size();
  const std::uint64_t step = period_.size();
  for (std::uint64_t r = 0; r < step; ++r) {
    if (!period_[r]) continue;
    const std::uint64_t a = len + r;
    parts.push_back("{" + join_numbers({a, a + step, a + 2 * step}) + ",…}");
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ∪ ";
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Op>
UPSet combine(const UPSet& x, const UPSet& y, std::size_t lcm_cap, Op op) {
  const std::size_t len = std::max(x.prefix().size(), y.prefix().size());
  const std::size_t period = std::lcm(x.period().size(), y.period().size());
  if (period > lcm_cap) {
    throw BoundExceeded("period alignment needs lcm " + std::to_string(period) +
                        ", above the cap " + std::to_string(lcm_cap));
  }
  std::vector<bool> prefix(len);
  std::vector<bool> cycle(period);
  for (std::size_t n = 0; n < len; ++n) prefix[n] = op(x.contains(n), y.contains(n));
  for (std::size_t i = 0; i < period; ++i) cycle[i] = op(x.contains(len + i), y.contains(len + i));
  return UPSet::normalize(std::move(prefix), std::move(cycle));
}

}  // namespace

UPSet unite(const UPSet& x, const UPSet& y, std::size_t lcm_cap) {
  return combine(x, y, lcm_cap, [](bool a, bool b) { return a || b; });
}

UPSet intersect(const UPSet& x, const UPSet& y, std::size_t lcm_cap) {
  return combine(x, y, lcm_cap, [](bool a, bool b) { return a && b; });
}

UPSet complement(const UPSet& x) {
  std::vector<bool> prefix(x.prefix());
  std::vector<bool> period(x.period());
  prefix.flip();
  period.flip();
  return UPSet::normalize(std::move(prefix), std::move(period));
}

UPSet difference(const UPSet& x, const UPSet& y, std::size_t lcm_cap) {
  return combine(x, y, lcm_cap, [](bool a, bool b) { return a && !b; });
}

bool subset_of(const UPSet& x, const UPSet& y, std::size_t lcm_cap) {
  return difference(x, y, lcm_cap).is_empty();
}

UPSet dia_recession(const UPSet& x) {
  if (x.is_empty()) return UPSet::empty();
  if (auto m = x.max_element()) return UPSet::interval(0, *m + 1);
  return UPSet::omega();
}

UPSet box_recession(const UPSet& x) {
  if (!x.is_cofinite()) return UPSet::empty();
  if (auto m = x.max_missing()) return UPSet::from(*m + 2);
  return UPSet::omega();
}

bool veiled_admissible(const UPSet& x) noexcept { return x.is_finite() || x.is_cofinite(); }

// ---------------------------------------------------------------------------
// Text input

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : s_(text) {}

  UPSet run() {
    UPSet out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view lit) {
    skip();
    if (s_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  template <typename... Lits>
  bool accept_any(Lits... lits) {
    return (accept(lits) || ...);
  }

  void expect(std::string_view lit) {
    if (!accept(lit)) fail("expected '" + std::string(lit) + "'");
  }

  std::uint64_t number() {
    skip();
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return value;
  }

  UPSet expr() {
    UPSet acc = term();
    for (;;) {
      if (accept_any("∪", "|", "+")) {
        acc = unite(acc, term());
      } else if (accept_any("∖", "\\", "-")) {
        acc = difference(acc, term());
      } else {
        return acc;
      }
    }
  }

  UPSet term() {
    if (accept_any("∅")) return UPSet::empty();
    if (accept_any("ω", "omega")) return UPSet::omega();
    if (accept("(")) {
      UPSet inner = expr();
      expect(")");
      return inner;
    }
    if (accept("[")) {
      auto lo = number();
      expect(",");
      auto hi = number();
      expect("]");
      if (lo > hi) fail("empty interval");
      return UPSet::interval(lo, hi);
    }
    if (accept("{")) return brace();
    fail("expected a set");
  }

  UPSet brace() {
    if (accept("}")) return UPSet::empty();
    if (accept("n")) {
      if (!accept_any("≥", ">=")) fail("expected '>='");
      auto lo = number();
      expect("}");
      return UPSet::from(lo);
    }
    std::vector<std::uint64_t> xs{number()};
    bool open_ended = false;
    while (accept(",")) {
      if (accept_any("…", "...")) {
        open_ended = true;
        break;
      }
      xs.push_back(number());
    }
    expect("}");
    if (!open_ended) return UPSet::finite(xs);
    if (xs.size() < 2 || xs[1] <= xs[0]) fail("a progression needs two increasing terms before '...'");
    const auto step = xs[1] - xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] <= xs[i - 1] || xs[i] - xs[i - 1] != step) fail("terms are not an arithmetic progression");
    }
    return UPSet::progression(xs[0], step);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

bool looks_like_bits(std::string_view s) {
  return s.find(';') != std::string_view::npos &&
         s.find_first_not_of("01; \t") == std::string_view::npos;
}

}  // namespace

UPSet parse_upset(std::string_view text) {
  if (!looks_like_bits(text)) return SetParser(text).run();
  std::vector<bool> prefix;
  std::vector<bool> period;
  bool in_period = false;
  for (char c : text) {
    if (c == ';') {
      if (in_period) throw ParseError(0, "more than one ';' in bitstring form");
      in_period = true;
    } else if (c == '0' || c == '1') {
      (in_period ? period : prefix).push_back(c == '1');
    }
  }
  if (period.empty()) throw ParseError(text.size(), "period must be non-empty");
  return UPSet::normalize(std::move(prefix), std::move(period));
}

// ---------------------------------------------------------------------------
// Suprema among finite and cofinite sets

UPSet affine_union(const AffineSingletonFamily& family) {
  return UPSet::progression(family.start, family.step);
}

UPSet shrink_upper_bound(const UPSet& lower, const UPSet& upper_bound) {
  if (veiled_admissible(lower)) {
    throw InvalidArgument("shrinking needs an infinite, co-infinite lower set");
  }
  if (!upper_bound.is_cofinite()) throw InvalidArgument("upper bound must be cofinite");
  if (!subset_of(lower, upper_bound)) throw InvalidArgument("not an upper bound");
  std::uint64_t n = upper_bound.max_missing() ? *upper_bound.max_missing() + 1 : 0;
  const std::uint64_t limit = n + lower.prefix().size() + lower.period().size();
  while (lower.contains(n)) {
    if (++n > limit) throw InvalidArgument("lower set has no gap past the bound");
  }
  return difference(upper_bound, UPSet::singleton(n));
}

SupremumDecision supremum_in_veiled(const AffineSingletonFamily& family) {
  if (family.step == 0) throw InvalidArgument("family step must be at least 1");
  SupremumDecision d{family, affine_union(family), std::nullopt};
  if (veiled_admissible(d.union_set)) d.supremum = d.union_set;
  return d;
}

std::vector<UPSet> candidate_upper_bounds(const SupremumDecision& decision, std::size_t count) {
  std::vector<UPSet> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c) out.push_back(unite(decision.union_set, UPSet::from(c)));
  return out;
}

JustificationCheck verify_justification(const SupremumDecision& decision,
                                        std::span<const UPSet> candidates) {
  JustificationCheck check;
  for (const auto& bound : candidates) {
    ++check.candidates;
    const std::string tag = "candidate " + bound.describe() + ": ";
    if (decision.supremum) {
      check.failures.push_back(tag + "family has a supremum; nothing to justify");
      continue;
    }
    if (!bound.is_cofinite() || !subset_of(decision.union_set, bound)) {
      check.failures.push_back(tag + "not a cofinite upper bound");
      continue;
    }
    UPSet smaller = decision.shrink(bound);
    if (!smaller.is_cofinite()) {
      check.failures.push_back(tag + "shrunk bound is not cofinite");
    } else if (!subset_of(decision.union_set, smaller)) {
      check.failures.push_back(tag + "shrunk bound lost a member of the union");
    } else if (smaller == bound || !subset_of(smaller, bound)) {
      check.failures.push_back(tag + "shrunk bound is not strictly smaller");
    } else {
      ++check.passed;
    }
  }
  return check;
}

// ---------------------------------------------------------------------------

UPSet random_upset(std::mt19937_64& rng, RandomShape shape) {
  std::uniform_int_distribution<std::size_t> prefix_len(0, shape.max_prefix);
  std::uniform_int_distribution<std::size_t> period_len(1, std::max<std::size_t>(1, shape.max_period));
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> prefix(prefix_len(rng));
  std::vector<bool> period(period_len(rng));
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = coin(rng);
  for (std::size_t i = 0; i < period.size(); ++i) period[i] = coin(rng);
  return UPSet::normalize(std::move(prefix), std::move(period));
}

UPSet random_admissible(std::mt19937_64& rng, std::uint64_t span_limit) {
  std::uniform_int_distribution<std::uint64_t> span(0, span_limit);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> prefix(span(rng));
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = coin(rng);
  const bool cofinite = coin(rng);
  return UPSet::normalize(std::move(prefix), {cofinite});
}

}  // namespace modalbao
