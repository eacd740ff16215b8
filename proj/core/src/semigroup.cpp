#include "sgmc/semigroup.hpp"

#include <algorithm>
#include <deque>

#include "sgmc/error.hpp"
#include "sgmc/graph.hpp"

namespace sgmc {

namespace {

std::size_t code_points(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0U) != 0x80U; }));
}

}  // namespace

Transformation operator*(const Transformation& s, const Transformation& t) {
  Transformation r;
  r.images.resize(t.images.size());
  for (std::size_t w = 0; w < t.images.size(); ++w) r.images[w] = s.images[t.images[w]];
  return r;
}

Transformation Transformation::identity(std::size_t n) {
  Transformation t;
  t.images.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.images[i] = static_cast<std::uint32_t>(i);
  return t;
}

std::size_t TransformationHash::operator()(const Transformation& t) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : t.images) h = (h ^ x) * 1099511628211ULL;
  return h;
}

std::string format_word(const std::vector<std::string>& labels, const Word& w) {
  bool compact = std::all_of(w.begin(), w.end(), [&](LabelId a) { return code_points(labels[a]) == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += labels[w[i]];
  }
  return out;
}

std::optional<LabelId> FiniteSemigroup::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<LabelId>(i);
  }
  return std::nullopt;
}

ElementId FiniteSemigroup::mul(ElementId s, ElementId t) const {
  if (s == identity()) return t;
  if (t == identity()) return s;
  if (zero_ && (s == *zero_ || t == *zero_)) return *zero_;
  return index_.at(elements_.at(s) * elements_.at(t));
}

ElementId FiniteSemigroup::evaluate(const Word& w) const {
  ElementId e = identity();
  for (LabelId a : w) e = right_mul(e, a);
  return e;
}

std::optional<ElementId> FiniteSemigroup::find(const Transformation& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string FiniteSemigroup::name(ElementId e) const {
  if (e == identity()) return "𝟙";
  if (zero_ && e == *zero_) return kBoxLabel;
  return format_word(words_.at(e));
}

std::string FiniteSemigroup::format_word(const Word& w) const {
  return sgmc::format_word(labels_, w);
}

FiniteSemigroup generate(const std::vector<GeneratorSpec>& generators, std::size_t cap) {
  if (generators.empty()) throw Error(ErrorKind::kInvalidArgument, "at least one generator is required");
  FiniteSemigroup s;
  s.degree_ = generators.front().action.degree();
  if (s.degree_ == 0) throw Error(ErrorKind::kInvalidArgument, "the state set is empty");
  for (const auto& g : generators) {
    if (g.label.empty()) throw Error(ErrorKind::kInvalidArgument, "empty generator label");
    if (std::find(s.labels_.begin(), s.labels_.end(), g.label) != s.labels_.end()) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate generator label '" + g.label + "'");
    }
    if (g.action.degree() != s.degree_) {
      throw Error(ErrorKind::kInvalidArgument, "generator '" + g.label + "' acts on a different number of states");
    }
    for (auto x : g.action.images) {
      if (x >= s.degree_) {
        throw Error(ErrorKind::kInvalidArgument, "generator '" + g.label + "' maps to a state out of range");
      }
    }
    s.labels_.push_back(g.label);
  }
  const std::size_t k = generators.size();

  auto intern = [&](Transformation t, Word w) -> ElementId {
    auto [it, inserted] = s.index_.try_emplace(std::move(t), static_cast<ElementId>(s.elements_.size()));
    if (inserted) {
      if (s.elements_.size() >= cap) {
        throw Error(ErrorKind::kCapExceeded, "semigroup exceeds " + std::to_string(cap) + " elements");
      }
      s.elements_.push_back(it->first);
      s.words_.push_back(std::move(w));
    }
    return it->second;
  };

  for (std::size_t a = 0; a < k; ++a) {
    s.generators_.push_back(intern(generators[a].action, Word{static_cast<LabelId>(a)}));
  }
  std::vector<ElementId> right;
  for (std::size_t e = 0; e < s.elements_.size(); ++e) {
    for (std::size_t a = 0; a < k; ++a) {
      Word w = s.words_[e];
      w.push_back(static_cast<LabelId>(a));
      Transformation prod = s.elements_[e] * generators[a].action;
      right.push_back(intern(std::move(prod), std::move(w)));
    }
  }
  // Identity row: 1 * a = a.
  for (std::size_t a = 0; a < k; ++a) right.push_back(s.generators_[a]);
  s.right_ = std::move(right);
  s.words_.push_back({});
  return s;
}

FiniteSemigroup adjoin_zero(const FiniteSemigroup& src) {
  if (src.zero_) return src;
  FiniteSemigroup s = src;
  const std::size_t n = s.elements_.size();
  const std::size_t k = s.labels_.size();
  std::string box = kBoxLabel;
  while (s.find_label(box)) box += "'";
  s.labels_.push_back(box);
  s.box_label_ = static_cast<LabelId>(k);
  const auto zero = static_cast<ElementId>(n + 1);
  s.zero_ = zero;
  s.generators_.push_back(zero);
  std::vector<ElementId> right;
  right.reserve((n + 2) * (k + 1));
  for (std::size_t e = 0; e < n + 1; ++e) {
    for (std::size_t a = 0; a < k; ++a) right.push_back(src.right_[e * k + a]);
    right.push_back(zero);
  }
  for (std::size_t a = 0; a <= k; ++a) right.push_back(zero);
  s.right_ = std::move(right);
  s.words_.push_back(Word{static_cast<LabelId>(k)});
  return s;
}

bool IdealInfo::contains(ElementId e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

IdealInfo minimal_ideal(const FiniteSemigroup& s) {
  IdealInfo info;
  if (auto z = s.zero()) {
    info.members = {*z};
    info.is_left_zero = true;
    return info;
  }
  const std::size_t n = s.core_size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t e = 0; e < n; ++e) {
    for (LabelId a = 0; a < s.num_labels(); ++a) {
      adj[e].push_back(s.right_mul(static_cast<ElementId>(e), a));
      adj[e].push_back(s.mul(s.generator(a), static_cast<ElementId>(e)));
    }
  }
  SccResult scc = strongly_connected(adj);
  std::vector<bool> has_exit(scc.count, false);
  for (std::size_t e = 0; e < n; ++e) {
    for (auto f : adj[e]) {
      if (scc.component_of[e] != scc.component_of[f]) has_exit[scc.component_of[e]] = true;
    }
  }
  // Every element reaches K(S), so exactly one component is a sink.
  auto sink = static_cast<std::uint32_t>(std::find(has_exit.begin(), has_exit.end(), false) - has_exit.begin());
  for (std::size_t e = 0; e < n; ++e) {
    if (scc.component_of[e] == sink) info.members.push_back(static_cast<ElementId>(e));
  }
  info.is_left_zero = true;
  for (auto x : info.members) {
    for (auto y : info.members) {
      if (s.mul(x, y) != x) {
        info.is_left_zero = false;
        break;
      }
    }
    if (!info.is_left_zero) break;
  }
  return info;
}

}  // namespace sgmc
