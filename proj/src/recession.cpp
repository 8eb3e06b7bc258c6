#include "modalbao/recession.hpp"

#include "modalbao/error.hpp"

namespace modalbao {

RecessionContext::RecessionContext(RecessionFlavor flavor) : flavor_(flavor) {}

bool RecessionContext::admits(const UPSet& set) const noexcept {
  return flavor_ == RecessionFlavor::Full || veiled_admissible(set);
}

Element RecessionContext::element(const UPSet& set) const {
  if (!admits(set)) {
    throw NotAdmissible(set.describe() + " is neither finite nor cofinite");
  }
  return make(set);
}

const UPSet& RecessionContext::value(const Element& x) const {
  check_owned(x);
  return x.upset();
}

std::string RecessionContext::definition() const {
  return flavor_ == RecessionFlavor::Full ? "recession:full" : "recession:veiled";
}

Capabilities RecessionContext::capabilities() const {
  // The veiled flavor joins only families whose union is admissible.
  return {false, flavor_ == RecessionFlavor::Full, true};
}

Element RecessionContext::zero() const { return make(UPSet::empty()); }

Element RecessionContext::meet(const Element& x, const Element& y) const {
  return make(intersect(value(x), value(y)));
}

Element RecessionContext::complement(const Element& x) const {
  return make(modalbao::complement(value(x)));
}

Element RecessionContext::diamond(const Element& x) const { return make(dia_recession(value(x))); }

UPSet recession_layer_union(const UPSet& seed, std::size_t start, std::size_t step,
                            std::size_t diamonds) {
  if (step == 0) throw InvalidArgument("layer family step must be at least 1");
  auto dia_pow = [diamonds](UPSet s) {
    for (std::size_t i = 0; i < diamonds; ++i) s = dia_recession(s);
    return s;
  };
  // Layer 0 is seed minus box(seed); only it can be nonempty when the seed
  // is not cofinite, and none is when the seed is omega.
  UPSet out = start == 0 ? dia_pow(difference(seed, box_recession(seed))) : UPSet::empty();
  auto gap = seed.max_missing();
  if (!seed.is_cofinite() || !gap) return out;
  const std::size_t first = start == 0 ? step : start;
  UPSet singles = UPSet::progression(*gap + 1 + first, step);
  // Diamonds of singletons {k} are [0, k + d]; infinitely many cover omega.
  return unite(out, diamonds == 0 ? singles : UPSet::omega());
}

UPSet RecessionContext::closed_form_union(const Family& family) const {
  if (auto* f = std::get_if<FiniteFamily>(&family)) {
    UPSet acc;
    for (const auto& m : f->members) acc = unite(acc, value(m));
    return acc;
  }
  if (auto* l = std::get_if<LayerFamily>(&family)) {
    return recession_layer_union(value(l->seed), l->start, l->step, l->diamonds);
  }
  return affine_union(std::get<AffineSingletonFamily>(family));
}

Element RecessionContext::family_join(const Family& family) const {
  UPSet u = closed_form_union(family);
  if (admits(u)) return make(std::move(u));
  // Any cofinite upper bound of an infinite, co-infinite union can be shrunk
  // (shrink_upper_bound), so no least one exists among the admissible sets.
  throw CapabilityError("family join unavailable: " + u.describe() + " has no supremum");
}

std::optional<Element> RecessionContext::family_union(const Family& family) const {
  UPSet u = closed_form_union(family);
  if (!admits(u)) return std::nullopt;
  return make(std::move(u));
}

Element RecessionContext::sample_element(std::mt19937_64& rng) const {
  if (flavor_ == RecessionFlavor::Veiled) return make(random_admissible(rng, 24));
  // Bias towards finite and cofinite sets so that box is not always empty.
  switch (rng() % 3) {
    case 0: return make(random_admissible(rng, 24));
    case 1: return make(random_upset(rng, {8, 1}));
    default: return make(random_upset(rng, {12, 6}));
  }
}

std::string RecessionContext::render(const Element& x) const { return value(x).describe(); }

Element RecessionContext::parse_element(std::string_view text) const {
  return element(parse_upset(text));
}

std::shared_ptr<const RecessionContext> recession_algebra(RecessionFlavor flavor) {
  return std::make_shared<const RecessionContext>(flavor);
}

BaoHandle make_context(std::string_view definition) {
  if (definition == "recession:full") return recession_algebra(RecessionFlavor::Full);
  if (definition == "recession:veiled") return recession_algebra(RecessionFlavor::Veiled);
  constexpr std::string_view frame_tag = "frame:";
  if (definition.substr(0, frame_tag.size()) == frame_tag) {
    return powerset_bao_of_frame(parse_frame_spec(definition.substr(frame_tag.size())));
  }
  throw InvalidArgument("unknown algebra definition '" + std::string(definition) + "'");
}

}  // namespace modalbao
