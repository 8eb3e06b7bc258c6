#pragma once

#include <memory>
#include <string>

#include "modalbao/bao.hpp"
#include "modalbao/upset.hpp"

namespace modalbao {

enum class RecessionFlavor {
  // Every ultimately periodic set; joins of describable families are unions.
  Full,
  // Only finite and cofinite sets. Closed under the operations but not complete.
  Veiled,
};

// Set algebra over the recession frame (naturals, w R v iff v >= w - 1),
// with ultimately periodic sets as the computable carrier.
class RecessionContext final : public BaoContext {
 public:
  explicit RecessionContext(RecessionFlavor flavor);

  RecessionFlavor flavor() const noexcept { return flavor_; }

  // Throws NotAdmissible for a non-admissible set in the veiled flavor.
  Element element(const UPSet& set) const;
  bool admits(const UPSet& set) const noexcept;

  std::string definition() const override;
  Capabilities capabilities() const override;
  Element zero() const override;
  Element meet(const Element& x, const Element& y) const override;
  Element complement(const Element& x) const override;
  Element diamond(const Element& x) const override;
  Element family_join(const Family& family) const override;
  std::optional<Element> family_union(const Family& family) const override;
  Element sample_element(std::mt19937_64& rng) const override;
  std::string render(const Element& x) const override;
  Element parse_element(std::string_view text) const override;

 private:
  const UPSet& value(const Element& x) const;
  UPSet closed_form_union(const Family& family) const;

  RecessionFlavor flavor_;
};

std::shared_ptr<const RecessionContext> recession_algebra(RecessionFlavor flavor);

// Closed form of the layer union for the recession diamond. For a cofinite
// seed with largest gap g, the layer of index m >= 1 is {g + 1 + m}.
UPSet recession_layer_union(const UPSet& seed, std::size_t start, std::size_t step,
                            std::size_t diamonds);

// Rebuilds a context from BaoContext::definition(): `frame:<k;edges>`,
// `recession:full` or `recession:veiled`.
BaoHandle make_context(std::string_view definition);

}  // namespace modalbao
