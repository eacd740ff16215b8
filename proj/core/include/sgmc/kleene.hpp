#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sgmc/loop_graph.hpp"
#include "sgmc/rational_function.hpp"

namespace sgmc {

enum class KleeneKind { kEpsilon, kLetter, kConcat, kUnion, kStar, kPlaceholder };

struct KleeneNode;
/// Immutable and shared: expressions produced by algorithm2 are DAGs.
using Kleene = std::shared_ptr<const KleeneNode>;

struct KleeneNode {
  KleeneKind kind = KleeneKind::kEpsilon;
  LabelId letter = 0;            // kLetter
  std::uint32_t placeholder = 0;  // kPlaceholder, 1-based
  std::vector<Kleene> children;   // kConcat, kUnion (nonempty); kStar (one)
};

Kleene k_epsilon();
Kleene k_letter(LabelId a);
Kleene k_placeholder(std::uint32_t i);
/// Flattens nested concatenations; a single factor is returned as is.
Kleene k_concat(std::vector<Kleene> parts);
Kleene k_union(std::vector<Kleene> parts);
Kleene k_star(Kleene inner);
Kleene k_word(const Word& w);

struct Algorithm1Result {
  Kleene expr;
  std::vector<const Loop*> loops;  // placeholder i refers to loops[i-1]
};

/// Spine letters followed by {l_i,...}* wherever loops are attached.
Algorithm1Result algorithm1(const LoopGraph& lg);

/// Replaces every placeholder by the expression of its loop, recursively.
Kleene algorithm2(const Algorithm1Result& a1, const LoopGraph& lg);

/// Expression of a single loop: a1 {loops at v1}* a2 ... ak.
Kleene loop_expression(const Loop& loop);

/// Removes unions under stars via {a,b}* = (a*b)*a*, folding n-ary unions left.
Kleene zimin_unionless(const Kleene& e);

/// Letter a -> x_{var_of[a]}, concat -> product, union -> sum, star -> 1/(1-f).
/// Throws Error(kStarOfUnit) when a starred subexpression has nonzero constant
/// term, Error(kInvalidArgument) on placeholders.
RationalFunction kleene_to_rf(const Kleene& e, const std::vector<VarId>& var_of);

/// Words of length <= maxlen with multiplicity. Throws
/// Error(kAmbiguousExpression) if some word is produced twice.
std::map<Word, std::size_t> kleene_enumerate(const Kleene& e, std::size_t maxlen);

/// Same as kleene_enumerate without the ambiguity check.
std::map<Word, std::size_t> kleene_enumerate_multiset(const Kleene& e, std::size_t maxlen);

/// Commutative image of a word multiset: each word contributes its monomial.
Polynomial word_series(const std::map<Word, std::size_t>& words, const std::vector<VarId>& var_of);

/// Shared memo tables for many loop graphs cut from the same graph: loop
/// expressions and rational functions are built once per loop set.
class KleeneContext {
 public:
  explicit KleeneContext(std::vector<VarId> var_of);
  ~KleeneContext();
  KleeneContext(const KleeneContext&) = delete;
  KleeneContext& operator=(const KleeneContext&) = delete;

  Kleene expand(const Algorithm1Result& a1);
  const RationalFunction& to_rf(const Kleene& e);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Text with '*' for star, "{e1,e2}" for unions, "l<i>" for placeholders.
std::string to_string(const Kleene& e, const std::vector<std::string>& labels);
/// As above, cut off with "..." once the text exceeds max_chars.
std::string to_string(const Kleene& e, const std::vector<std::string>& labels, std::size_t max_chars);

/// Number of distinct nodes in the DAG.
std::size_t dag_size(const Kleene& e);

}  // namespace sgmc
