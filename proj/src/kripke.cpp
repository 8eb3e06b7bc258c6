#include "modalbao/kripke.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "modalbao/error.hpp"

namespace modalbao {

FiniteFrame::FiniteFrame(std::size_t size, std::vector<WorldSet> successors)
    : successors_(std::move(successors)) {
  if (size == 0) throw InvalidArgument("a frame needs at least one world");
  if (size > kMaxWorlds) throw BoundExceeded("frames are limited to 64 worlds");
  if (successors_.size() != size) throw InvalidArgument("relation rows must match frame size");
  for (auto row : successors_) {
    if (row & ~all_worlds(size)) throw InvalidArgument("relation refers to a world outside the frame");
  }
}

FiniteFrame FiniteFrame::from_relation_bits(std::size_t k, std::uint64_t relation_bits) {
  if (k == 0 || k > 8) throw InvalidArgument("relation bit encoding needs 1 <= k <= 8");
  std::vector<WorldSet> rows(k);
  for (std::size_t w = 0; w < k; ++w) rows[w] = (relation_bits >> (w * k)) & all_worlds(k);
  return FiniteFrame(k, std::move(rows));
}

FiniteFrame FiniteFrame::empty(std::size_t k) { return FiniteFrame(k, std::vector<WorldSet>(k, 0)); }

FiniteFrame FiniteFrame::identity(std::size_t k) {
  std::vector<WorldSet> rows(k);
  for (std::size_t w = 0; w < k; ++w) rows[w] = WorldSet{1} << w;
  return FiniteFrame(k, std::move(rows));
}

FiniteFrame FiniteFrame::total(std::size_t k) {
  return FiniteFrame(k, std::vector<WorldSet>(k, all_worlds(k)));
}

std::uint64_t FiniteFrame::relation_bits() const {
  const std::size_t k = size();
  if (k > 8) throw InvalidArgument("relation bit encoding needs k <= 8");
  std::uint64_t bits = 0;
  for (std::size_t w = 0; w < k; ++w) bits |= successors_[w] << (w * k);
  return bits;
}

WorldSet FiniteFrame::diamond(WorldSet x) const noexcept {
  WorldSet out = 0;
  for (std::size_t w = 0; w < successors_.size(); ++w) {
    if (successors_[w] & x) out |= WorldSet{1} << w;
  }
  return out;
}

WorldSet FiniteFrame::box(WorldSet x) const noexcept {
  const WorldSet all = worlds();
  return all & ~diamond(all & ~x);
}

std::string FiniteFrame::spec() const {
  std::string out = std::to_string(size()) + ";";
  bool first = true;
  for (std::size_t w = 0; w < size(); ++w) {
    for (std::size_t v = 0; v < size(); ++v) {
      if (!related(w, v)) continue;
      if (!first) out += ',';
      first = false;
      out += std::to_string(w) + "-" + std::to_string(v);
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t parse_number(std::string_view s, std::size_t offset) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(offset, "expected a number, found '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

FiniteFrame parse_frame_spec(std::string_view spec) {
  auto semi = spec.find(';');
  if (semi == std::string_view::npos) throw ParseError(spec.size(), "frame spec needs 'k;edges'");
  const std::size_t k = parse_number(trim(spec.substr(0, semi)), 0);
  if (k == 0) throw ParseError(0, "a frame needs at least one world");
  if (k > kMaxWorlds) throw ParseError(0, "frames are limited to 64 worlds");

  std::vector<WorldSet> rows(k, 0);
  std::size_t pos = semi + 1;
  while (pos <= spec.size()) {
    auto comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    auto item = trim(spec.substr(pos, comma - pos));
    if (item == "refl") {
      for (std::size_t w = 0; w < k; ++w) rows[w] |= WorldSet{1} << w;
    } else if (item == "total") {
      std::fill(rows.begin(), rows.end(), all_worlds(k));
    } else if (!item.empty()) {
      auto dash = item.find('-');
      if (dash == std::string_view::npos) throw ParseError(pos, "expected an edge 'w-v'");
      auto w = parse_number(trim(item.substr(0, dash)), pos);
      auto v = parse_number(trim(item.substr(dash + 1)), pos);
      if (w >= k || v >= k) throw ParseError(pos, "edge endpoint outside the frame");
      rows[w] |= WorldSet{1} << v;
    } else if (comma != spec.size()) {
      throw ParseError(pos, "empty edge");
    }
    pos = comma + 1;
  }
  return FiniteFrame(k, std::move(rows));
}

// ---------------------------------------------------------------------------

CompiledFormula::CompiledFormula(const Formula& f) {
  auto vars = f.variables();
  variables_.assign(vars.begin(), vars.end());
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const Formula& g) -> void {
    if (g.kind() == Connective::Variable) {
      auto it = std::lower_bound(variables_.begin(), variables_.end(), g.name());
      program_.push_back({Connective::Variable, static_cast<std::uint32_t>(it - variables_.begin())});
      ++depth;
    } else if (g.kind() == Connective::Bottom) {
      program_.push_back({Connective::Bottom, 0});
      ++depth;
    } else if (g.is_unary()) {
      self(self, g.operand());
      program_.push_back({g.kind(), 0});
    } else {
      self(self, g.left());
      self(self, g.right());
      program_.push_back({g.kind(), 0});
      --depth;
    }
    max_stack_ = std::max(max_stack_, depth);
  };
  emit(emit, f);
}

WorldSet CompiledFormula::eval(const FiniteFrame& fr, std::span<const WorldSet> values) const {
  const WorldSet all = fr.worlds();
  WorldSet stack[64]{};
  std::vector<WorldSet> heap;
  WorldSet* s = stack;
  if (max_stack_ > 64) {
    heap.resize(max_stack_);
    s = heap.data();
  }
  std::size_t top = 0;
  for (const auto& op : program_) {
    switch (op.kind) {
      case Connective::Variable: s[top++] = values[op.arg]; break;
      case Connective::Bottom: s[top++] = 0; break;
      case Connective::Negation: s[top - 1] = all & ~s[top - 1]; break;
      case Connective::Box: s[top - 1] = fr.box(s[top - 1]); break;
      case Connective::Diamond: s[top - 1] = fr.diamond(s[top - 1]); break;
      case Connective::Conjunction:
        --top;
        s[top - 1] &= s[top];
        break;
      case Connective::Disjunction:
        --top;
        s[top - 1] |= s[top];
        break;
      case Connective::Implication:
        --top;
        s[top - 1] = (all & ~s[top - 1]) | s[top];
        break;
    }
  }
  return s[0];
}

WorldSet eval_model(const FiniteFrame& fr, const Valuation& v, const Formula& f) {
  CompiledFormula compiled(f);
  std::vector<WorldSet> values;
  for (const auto& name : compiled.variables()) {
    auto it = v.find(name);
    if (it == v.end()) throw UnassignedVariable(name);
    if (it->second & ~fr.worlds()) {
      throw InvalidArgument("valuation of '" + name + "' has worlds outside the frame");
    }
    values.push_back(it->second);
  }
  return compiled.eval(fr, values);
}

FrameVerdict frame_validates(const FiniteFrame& fr, const Formula& f, ValidityLimits limits) {
  return frame_validates(fr, CompiledFormula(f), limits);
}

FrameVerdict frame_validates(const FiniteFrame& fr, const CompiledFormula& f,
                             ValidityLimits limits) {
  const std::size_t k = fr.size();
  const std::size_t n = f.variables().size();
  const std::size_t bits = n * k;
  if (bits > limits.max_valuation_bits || bits >= 64) {
    throw BoundExceeded("validity check needs 2^" + std::to_string(bits) +
                        " valuations, above the configured bound 2^" +
                        std::to_string(limits.max_valuation_bits));
  }
  const WorldSet mask = all_worlds(k);
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<WorldSet> values(n, 0);
  FrameVerdict verdict;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < n; ++j) values[j] = (i >> (j * k)) & mask;
    ++verdict.valuations_checked;
    WorldSet truth = f.eval(fr, values);
    if (truth != mask) {
      KripkeCounterexample cex;
      for (std::size_t j = 0; j < n; ++j) cex.valuation.emplace(f.variables()[j], values[j]);
      cex.world = static_cast<std::size_t>(std::countr_zero(~truth & mask));
      verdict.valid = false;
      verdict.counterexample = std::move(cex);
      return verdict;
    }
  }
  return verdict;
}

FrameEnumeration enumerate_frames(std::size_t k, EnumerationLimits limits) {
  if (k == 0) throw InvalidArgument("frames need at least one world");
  if (k > limits.max_worlds || k > 8) {
    throw BoundExceeded("exhaustive frame enumeration is limited to k <= " +
                        std::to_string(limits.max_worlds));
  }
  return FrameEnumeration(k);
}

FrameProperties frame_properties(const FiniteFrame& fr) {
  FrameProperties props{true, true};
  const std::size_t k = fr.size();
  for (std::size_t w = 0; w < k; ++w) {
    if (!fr.related(w, w)) props.reflexive = false;
    // Transitive iff every successor's successors are successors of w.
    for (std::size_t v = 0; v < k; ++v) {
      if (fr.related(w, v) && (fr.successors(v) & ~fr.successors(w))) props.transitive = false;
    }
  }
  return props;
}

std::vector<FiniteFrame> enumerate_preorders(std::size_t k) {
  if (k == 0 || k > 5) throw BoundExceeded("preorder enumeration supports 1 <= k <= 5");
  // Free bits are the off-diagonal pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t w = 0; w < k; ++w) {
    for (std::size_t v = 0; v < k; ++v) {
      if (w != v) pairs.emplace_back(w, v);
    }
  }
  std::vector<FiniteFrame> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs.size()); ++m) {
    std::vector<WorldSet> rows(k);
    for (std::size_t w = 0; w < k; ++w) rows[w] = WorldSet{1} << w;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if ((m >> b) & 1U) rows[pairs[b].first] |= WorldSet{1} << pairs[b].second;
    }
    FiniteFrame fr(k, std::move(rows));
    if (frame_properties(fr).transitive) out.push_back(std::move(fr));
  }
  return out;
}

}  // namespace modalbao
