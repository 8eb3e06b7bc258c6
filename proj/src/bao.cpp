#include "modalbao/bao.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <charconv>

#include "modalbao/error.hpp"

namespace modalbao {

WorldSet Element::worlds() const {
  if (auto* w = std::get_if<WorldSet>(&value_)) return *w;
  throw InvalidArgument("element is not a set of frame worlds");
}

const UPSet& Element::upset() const {
  if (auto* u = std::get_if<UPSet>(&value_)) return *u;
  throw InvalidArgument("element is not a subset of the naturals");
}

std::string describe_family(const Family& family) {
  struct Visitor {
    std::string operator()(const FiniteFamily& f) const {
      return "finite family of " + std::to_string(f.members.size()) + " elements";
    }
    std::string operator()(const LayerFamily& f) const {
      std::string member = "b_{" + std::to_string(f.start) + "+" + std::to_string(f.step) + "n}";
      for (std::size_t i = 0; i < f.diamonds; ++i) member = "<>" + member;
      return "{" + member + " : n >= 0}";
    }
    std::string operator()(const AffineSingletonFamily& f) const {
      return "{{" + std::to_string(f.start) + "+" + std::to_string(f.step) + "n} : n >= 0}";
    }
  };
  return std::visit(Visitor{}, family);
}

// ---------------------------------------------------------------------------

namespace {
std::atomic<ContextId> next_context_id{1};
}

BaoContext::BaoContext() : id_(next_context_id.fetch_add(1)) {}

void BaoContext::check_owned(const Element& x) const {
  if (x.owner() != id_) throw CrossContextError();
}

void BaoContext::missing(const char* capability) const {
  throw CapabilityError(std::string(capability) + " is not supported by " + definition());
}

Element BaoContext::join(const Element& x, const Element& y) const {
  return complement(meet(complement(x), complement(y)));
}

Element BaoContext::box_power(const Element& x, std::size_t n) const {
  Element out = x;
  for (std::size_t i = 0; i < n; ++i) out = box(out);
  return out;
}

Element BaoContext::diamond_power(const Element& x, std::size_t n) const {
  Element out = x;
  for (std::size_t i = 0; i < n; ++i) out = diamond(out);
  return out;
}

bool BaoContext::is_zero(const Element& x) const {
  check_owned(x);
  return x == zero();
}

bool BaoContext::is_top(const Element& x) const {
  check_owned(x);
  return x == top();
}

std::vector<Element> BaoContext::enumerate_elements() const { missing("enumerate_elements"); }

std::uint64_t BaoContext::element_count() const { missing("enumerate_elements"); }

Element BaoContext::family_join(const Family& family) const {
  if (auto* f = std::get_if<FiniteFamily>(&family)) {
    Element acc = zero();
    for (const auto& m : f->members) acc = join(acc, m);
    return acc;
  }
  missing("family_join of infinite families");
}

std::optional<Element> BaoContext::family_union(const Family& family) const {
  if (auto* f = std::get_if<FiniteFamily>(&family)) {
    Element acc = zero();
    for (const auto& m : f->members) acc = join(acc, m);
    return acc;
  }
  return std::nullopt;
}

Element BaoContext::sample_element(std::mt19937_64&) const { missing("sample_element"); }

Element BaoContext::union_layers_by_cycle(const LayerFamily& family) const {
  check_owned(family.seed);
  if (family.step == 0) throw InvalidArgument("layer family step must be at least 1");
  std::vector<Element> seen;
  Element state = box_power(family.seed, family.start);
  Element acc = zero();
  while (std::find(seen.begin(), seen.end(), state) == seen.end()) {
    acc = join(acc, diamond_power(difference(state, box(state)), family.diamonds));
    seen.push_back(state);
    state = box_power(state, family.step);
  }
  return acc;
}

std::vector<Element> family_members(const BaoContext& ctx, const Family& family, std::size_t limit) {
  std::vector<Element> out;
  if (auto* f = std::get_if<FiniteFamily>(&family)) {
    for (std::size_t i = 0; i < f->members.size() && i < limit; ++i) out.push_back(f->members[i]);
  } else if (auto* l = std::get_if<LayerFamily>(&family)) {
    Element state = ctx.box_power(l->seed, l->start);
    for (std::size_t i = 0; i < limit; ++i) {
      out.push_back(ctx.diamond_power(ctx.difference(state, ctx.box(state)), l->diamonds));
      state = ctx.box_power(state, l->step);
    }
  } else {
    const auto& a = std::get<AffineSingletonFamily>(family);
    for (std::size_t i = 0; i < limit; ++i) {
      out.push_back(ctx.parse_element(UPSet::singleton(a.start + i * a.step).bits()));
    }
  }
  return out;
}

Family diamond_image(const BaoContext& ctx, const Family& family) {
  if (auto* f = std::get_if<FiniteFamily>(&family)) {
    FiniteFamily out;
    for (const auto& m : f->members) out.members.push_back(ctx.diamond(m));
    return out;
  }
  if (auto* l = std::get_if<LayerFamily>(&family)) {
    LayerFamily out = *l;
    ++out.diamonds;
    return out;
  }
  throw CapabilityError("diamond image of an affine singleton family is not describable");
}

// ---------------------------------------------------------------------------

PowersetContext::PowersetContext(FiniteFrame frame) : frame_(std::move(frame)) {}

Element PowersetContext::element(WorldSet worlds) const {
  if (worlds & ~frame_.worlds()) throw InvalidArgument("set has worlds outside the frame");
  return make(worlds);
}

std::string PowersetContext::definition() const { return "frame:" + frame_.spec(); }

Element PowersetContext::zero() const { return make(WorldSet{0}); }

Element PowersetContext::meet(const Element& x, const Element& y) const {
  check_owned(x);
  check_owned(y);
  return make(x.worlds() & y.worlds());
}

Element PowersetContext::complement(const Element& x) const {
  check_owned(x);
  return make(frame_.worlds() & ~x.worlds());
}

Element PowersetContext::diamond(const Element& x) const {
  check_owned(x);
  return make(frame_.diamond(x.worlds()));
}

std::vector<Element> PowersetContext::enumerate_elements() const {
  const auto count = element_count();
  std::vector<Element> out;
  out.reserve(count);
  for (WorldSet w = 0; w < count; ++w) out.push_back(make(w));
  return out;
}

std::uint64_t PowersetContext::element_count() const {
  if (frame_.size() > 20) throw BoundExceeded("element enumeration is limited to 20 worlds");
  return std::uint64_t{1} << frame_.size();
}

Element PowersetContext::family_join(const Family& family) const {
  if (auto* l = std::get_if<LayerFamily>(&family)) return union_layers_by_cycle(*l);
  if (std::holds_alternative<AffineSingletonFamily>(family)) {
    throw CapabilityError("affine singleton families live over the naturals, not " + definition());
  }
  return BaoContext::family_join(family);
}

std::optional<Element> PowersetContext::family_union(const Family& family) const {
  if (std::holds_alternative<AffineSingletonFamily>(family)) return std::nullopt;
  // Complete set algebra: joins are unions.
  return family_join(family);
}

Element PowersetContext::sample_element(std::mt19937_64& rng) const {
  return make(rng() & frame_.worlds());
}

std::string PowersetContext::render(const Element& x) const {
  check_owned(x);
  std::string out = "{";
  bool first = true;
  for (std::size_t w = 0; w < frame_.size(); ++w) {
    if (!((x.worlds() >> w) & 1U)) continue;
    if (!first) out += ',';
    first = false;
    out += std::to_string(w);
  }
  return out + "}";
}

Element PowersetContext::parse_element(std::string_view text) const {
  auto body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body == "∅") return zero();
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
    throw ParseError(0, "expected a world set like {0,2}");
  }
  body = body.substr(1, body.size() - 2);
  WorldSet worlds = 0;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string_view::npos) comma = body.size();
    auto item = body.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    std::size_t w = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), w);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ParseError(pos + 1, "expected a world number");
    }
    if (w >= frame_.size()) throw ParseError(pos + 1, "world outside the frame");
    worlds |= WorldSet{1} << w;
    pos = comma + 1;
  }
  return make(worlds);
}

std::shared_ptr<const PowersetContext> powerset_bao_of_frame(const FiniteFrame& frame) {
  return std::make_shared<const PowersetContext>(frame);
}

// ---------------------------------------------------------------------------

Element eval_in_bao(const BaoContext& ctx, const Assignment& assignment, const Formula& f) {
  switch (f.kind()) {
    case Connective::Variable: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw UnassignedVariable(f.name());
      ctx.check_owned(it->second);
      return it->second;
    }
    case Connective::Bottom:
      return ctx.zero();
    case Connective::Negation:
      return ctx.complement(eval_in_bao(ctx, assignment, f.operand()));
    case Connective::Box:
      return ctx.box(eval_in_bao(ctx, assignment, f.operand()));
    case Connective::Diamond:
      return ctx.diamond(eval_in_bao(ctx, assignment, f.operand()));
    case Connective::Conjunction:
      return ctx.meet(eval_in_bao(ctx, assignment, f.left()), eval_in_bao(ctx, assignment, f.right()));
    case Connective::Disjunction:
      return ctx.join(eval_in_bao(ctx, assignment, f.left()), eval_in_bao(ctx, assignment, f.right()));
    case Connective::Implication:
      return ctx.implies(eval_in_bao(ctx, assignment, f.left()),
                         eval_in_bao(ctx, assignment, f.right()));
  }
  throw InvalidArgument("unknown connective");
}

BaoVerdict bao_validates_exhaustive(const BaoContext& ctx, const Formula& f, ExhaustiveLimits limits) {
  if (!ctx.capabilities().enumerate_elements) {
    throw CapabilityError("exhaustive validity needs enumerate_elements, which " + ctx.definition() +
                          " does not support");
  }
  const auto vars = f.variables();
  const std::vector<std::string> names(vars.begin(), vars.end());
  const auto elements = ctx.enumerate_elements();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (total > limits.max_assignments / elements.size()) {
      throw BoundExceeded("exhaustive validity needs more than " +
                          std::to_string(limits.max_assignments) + " assignments");
    }
    total *= elements.size();
  }

  BaoVerdict verdict;
  std::vector<std::size_t> index(names.size(), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    Assignment assignment;
    for (std::size_t j = 0; j < names.size(); ++j) assignment.emplace(names[j], elements[index[j]]);
    ++verdict.assignments_checked;
    if (!ctx.is_top(eval_in_bao(ctx, assignment, f))) {
      verdict.valid = false;
      verdict.counterexample = std::move(assignment);
      return verdict;
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (++index[j] < elements.size()) break;
      index[j] = 0;
    }
  }
  return verdict;
}

SampledVerdict bao_validates_sampled(const BaoContext& ctx, const Formula& f, std::uint64_t samples,
                                     std::uint64_t seed) {
  if (!ctx.capabilities().sample_element) {
    throw CapabilityError("sampled validity needs sample_element, which " + ctx.definition() +
                          " does not support");
  }
  const auto vars = f.variables();
  std::mt19937_64 rng(seed);
  SampledVerdict verdict;
  verdict.seed = seed;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Assignment assignment;
    for (const auto& name : vars) assignment.emplace(name, ctx.sample_element(rng));
    ++verdict.samples_run;
    if (!ctx.is_top(eval_in_bao(ctx, assignment, f))) {
      verdict.counterexample_found = true;
      verdict.counterexample = std::move(assignment);
      break;
    }
  }
  return verdict;
}

std::string render_assignment(const BaoContext& ctx, const Assignment& assignment) {
  std::string out;
  for (const auto& [name, value] : assignment) {
    if (!out.empty()) out += ", ";
    out += name + " = " + ctx.render(value);
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* fact_name(PreliminaryFact fact) {
  switch (fact) {
    case PreliminaryFact::SumSup: return "SumSup";
    case PreliminaryFact::Disjoint: return "Disjoint";
    case PreliminaryFact::Distr: return "Distr";
  }
  return "?";
}

bool PreliminaryFactsReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const FactCheck& c) { return c.passed; });
}

PreliminaryFactsReport check_preliminary_facts(const BaoContext& ctx,
                                               std::span<const FamilyPair> families) {
  PreliminaryFactsReport report;
  for (std::size_t idx = 0; idx < families.size(); ++idx) {
    const auto& [fa, fb] = families[idx];
    const Element ja = ctx.family_join(fa);
    const Element jb = ctx.family_join(fb);
    const auto ua = ctx.family_union(fa);
    const auto ub = ctx.family_union(fb);

    {
      FactCheck c;
      c.pair_index = idx;
      c.fact = PreliminaryFact::SumSup;
      // The unnamed companion fact: each union lies below its join.
      const bool unions_below = (!ua || ctx.leq(*ua, ja)) && (!ub || ctx.leq(*ub, jb));
      c.premise_holds = ua && ub && ctx.leq(*ua, *ub);
      c.passed = unions_below && (!c.premise_holds || ctx.leq(ja, jb));
      c.detail = "join a = " + ctx.render(ja) + ", join b = " + ctx.render(jb) +
                 (c.premise_holds ? "" : " (premise not met)");
      report.checks.push_back(std::move(c));
    }
    {
      FactCheck c;
      c.pair_index = idx;
      c.fact = PreliminaryFact::Disjoint;
      c.premise_holds = ua && ub && ctx.is_zero(ctx.meet(*ua, *ub));
      const Element m = ctx.meet(ja, jb);
      c.passed = !c.premise_holds || ctx.is_zero(m);
      c.detail = "join a meet join b = " + ctx.render(m) + (c.premise_holds ? "" : " (premise not met)");
      report.checks.push_back(std::move(c));
    }
    for (const Family* fam : {&fa, &fb}) {
      FactCheck c;
      c.pair_index = idx;
      c.fact = PreliminaryFact::Distr;
      const Element lhs = ctx.family_join(diamond_image(ctx, *fam));
      const Element rhs = ctx.diamond(ctx.family_join(*fam));
      c.passed = ctx.leq(lhs, rhs);
      c.detail = "join of diamonds = " + ctx.render(lhs) + ", diamond of join = " + ctx.render(rhs);
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace modalbao
