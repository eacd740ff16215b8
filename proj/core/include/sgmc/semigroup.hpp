#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sgmc {

using ElementId = std::uint32_t;
using LabelId = std::uint32_t;
using Word = std::vector<LabelId>;

inline constexpr const char* kBoxLabel = "□";

/// Left action of a generator on states 0..n-1.
struct Transformation {
  std::vector<std::uint32_t> images;

  std::size_t degree() const { return images.size(); }
  std::uint32_t operator()(std::uint32_t state) const { return images[state]; }
  /// (s*t)(w) = s(t(w)): the right factor acts first.
  friend Transformation operator*(const Transformation& s, const Transformation& t);
  friend bool operator==(const Transformation& a, const Transformation& b) = default;
  static Transformation identity(std::size_t n);
};

struct TransformationHash {
  std::size_t operator()(const Transformation& t) const;
};

struct GeneratorSpec {
  std::string label;
  Transformation action;
};

/// Subsemigroup of the full transformation monoid generated by the labels, with
/// a fresh identity adjoined and optionally an absorbing zero. Element ids:
/// generated elements 0..core_size()-1 in BFS order, then the identity, then
/// the zero if present.
class FiniteSemigroup {
 public:
  std::size_t degree() const { return degree_; }
  std::size_t core_size() const { return elements_.size(); }
  std::size_t size() const { return elements_.size() + 1 + (zero_ ? 1 : 0); }
  ElementId identity() const { return static_cast<ElementId>(elements_.size()); }
  std::optional<ElementId> zero() const { return zero_; }
  bool is_adjoined(ElementId e) const { return e >= elements_.size(); }

  std::size_t num_labels() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(LabelId a) const { return labels_.at(a); }
  std::optional<LabelId> find_label(const std::string& label) const;
  std::optional<LabelId> box_label() const { return box_label_; }
  ElementId generator(LabelId a) const { return generators_.at(a); }

  /// Only for generated elements.
  const Transformation& action(ElementId e) const { return elements_.at(e); }
  ElementId mul(ElementId s, ElementId t) const;
  /// s * generator(a), table lookup.
  ElementId right_mul(ElementId s, LabelId a) const { return right_[s * labels_.size() + a]; }
  ElementId evaluate(const Word& w) const;
  std::optional<ElementId> find(const Transformation& t) const;

  /// Shortest-first BFS word naming the element (empty for the identity).
  const Word& word(ElementId e) const { return words_.at(e); }
  std::string name(ElementId e) const;
  std::string format_word(const Word& w) const;

 private:
  friend FiniteSemigroup generate(const std::vector<GeneratorSpec>&, std::size_t);
  friend FiniteSemigroup adjoin_zero(const FiniteSemigroup&);

  std::size_t degree_ = 0;
  std::vector<std::string> labels_;
  std::vector<ElementId> generators_;
  std::vector<Transformation> elements_;
  std::unordered_map<Transformation, ElementId, TransformationHash> index_;
  std::vector<Word> words_;
  std::vector<ElementId> right_;
  std::optional<ElementId> zero_;
  std::optional<LabelId> box_label_;
};

/// Throws Error(kInvalidArgument) on malformed generators, Error(kCapExceeded)
/// when more than `cap` elements are generated.
FiniteSemigroup generate(const std::vector<GeneratorSpec>& generators, std::size_t cap = 100000);

/// Adds the zero as a new element and as a new generator labelled kBoxLabel.
FiniteSemigroup adjoin_zero(const FiniteSemigroup& s);

struct IdealInfo {
  std::vector<ElementId> members;  // sorted
  bool is_left_zero = false;
  bool contains(ElementId e) const;
};

/// K(S) over the non-identity elements.
IdealInfo minimal_ideal(const FiniteSemigroup& s);

/// Renders a word: labels juxtaposed when all are single code points, else joined by '.'.
std::string format_word(const std::vector<std::string>& labels, const Word& w);

}  // namespace sgmc
