#include "sgmc/kleene.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sgmc/error.hpp"

namespace sgmc {

namespace {

Kleene make(KleeneKind kind, std::vector<Kleene> children = {}) {
  auto n = std::make_shared<KleeneNode>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

class LoopExpander {
 public:
  Kleene loop(const Loop& l) {
    std::vector<Kleene> parts;
    for (std::size_t i = 0; i < l.labels.size(); ++i) {
      parts.push_back(k_letter(l.labels[i]));
      if (i + 1 < l.labels.size()) {
        if (Kleene s = star_of(l.interior[i])) parts.push_back(s);
      }
    }
    return k_concat(std::move(parts));
  }

  /// {loops}* or null when the set is empty.
  Kleene star_of(const LoopSet& set) {
    if (!set || set->empty()) return nullptr;
    if (auto it = set_memo_.find(set.get()); it != set_memo_.end()) return it->second.second;
    std::vector<Kleene> alts;
    for (const Loop& l : *set) alts.push_back(loop(l));
    Kleene e = k_star(k_union(std::move(alts)));
    set_memo_.emplace(set.get(), std::make_pair(set, e));
    return e;
  }

 private:
  // The set is held so its address stays unique for the expander's lifetime.
  std::unordered_map<const void*, std::pair<LoopSet, Kleene>> set_memo_;
};

using WordCounts = std::map<Word, std::size_t>;

WordCounts concat_counts(const WordCounts& a, const WordCounts& b, std::size_t maxlen) {
  std::vector<std::vector<const WordCounts::value_type*>> by_length(maxlen + 1);
  for (const auto& entry : b) {
    if (entry.first.size() <= maxlen) by_length[entry.first.size()].push_back(&entry);
  }
  WordCounts out;
  Word w;
  for (const auto& [wa, ca] : a) {
    if (wa.size() > maxlen) continue;
    for (std::size_t len = 0; len + wa.size() <= maxlen; ++len) {
      for (const auto* entry : by_length[len]) {
        w = wa;
        w.insert(w.end(), entry->first.begin(), entry->first.end());
        out[w] += ca * entry->second;
      }
    }
  }
  return out;
}

class Enumerator {
 public:
  explicit Enumerator(std::size_t maxlen) : maxlen_(maxlen) {}

  const WordCounts& run(const Kleene& e) {
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    WordCounts out;
    switch (e->kind) {
      case KleeneKind::kEpsilon:
        out[{}] = 1;
        break;
      case KleeneKind::kLetter:
        if (maxlen_ >= 1) out[{e->letter}] = 1;
        break;
      case KleeneKind::kPlaceholder:
        throw Error(ErrorKind::kInvalidArgument, "cannot enumerate an expression with loop placeholders");
      case KleeneKind::kConcat: {
        out[{}] = 1;
        for (const auto& c : e->children) out = concat_counts(out, run(c), maxlen_);
        break;
      }
      case KleeneKind::kUnion:
        for (const auto& c : e->children) {
          for (const auto& [w, n] : run(c)) out[w] += n;
        }
        break;
      case KleeneKind::kStar: {
        const WordCounts& inner = run(e->children.front());
        if (inner.count({}) != 0) throw Error(ErrorKind::kStarOfUnit, "starred expression accepts the empty word");
        out[{}] = 1;
        WordCounts power = out;
        while (!power.empty()) {
          power = concat_counts(power, inner, maxlen_);
          for (const auto& [w, n] : power) out[w] += n;
        }
        break;
      }
    }
    return memo_.emplace(e.get(), std::move(out)).first->second;
  }

 private:
  std::size_t maxlen_;
  std::unordered_map<const KleeneNode*, WordCounts> memo_;
};

bool compact_labels(const std::vector<std::string>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0U) != 0x80U; }) ==
           1;
  });
}

constexpr std::size_t kNoLimit = static_cast<std::size_t>(-1);
thread_local std::size_t render_limit = kNoLimit;

void render(const Kleene& e, const std::vector<std::string>& labels, bool compact, std::string& out);

void render_star_operand(const Kleene& e, const std::vector<std::string>& labels, bool compact, std::string& out) {
  Kleene x = e;
  if (x->kind == KleeneKind::kUnion && x->children.size() == 1) x = x->children.front();
  if (x->kind == KleeneKind::kLetter || x->kind == KleeneKind::kPlaceholder || x->kind == KleeneKind::kUnion) {
    render(x, labels, compact, out);
  } else {
    out += '(';
    render(x, labels, compact, out);
    out += ')';
  }
  out += '*';
}

void render(const Kleene& e, const std::vector<std::string>& labels, bool compact, std::string& out) {
  if (out.size() > render_limit) return;
  switch (e->kind) {
    case KleeneKind::kEpsilon:
      out += "ε";
      return;
    case KleeneKind::kLetter:
      out += labels.at(e->letter);
      return;
    case KleeneKind::kPlaceholder:
      out += "l" + std::to_string(e->placeholder);
      return;
    case KleeneKind::kConcat:
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (!compact && i > 0) out += '.';
        render(e->children[i], labels, compact, out);
      }
      return;
    case KleeneKind::kUnion:
      if (e->children.size() == 1) {
        render(e->children.front(), labels, compact, out);
        return;
      }
      out += '{';
      for (std::size_t i = 0; i < e->children.size(); ++i) {
        if (i > 0) out += ',';
        render(e->children[i], labels, compact, out);
      }
      out += '}';
      return;
    case KleeneKind::kStar:
      render_star_operand(e->children.front(), labels, compact, out);
      return;
  }
}

class Zimin {
 public:
  Kleene run(const Kleene& e) {
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second;
    Kleene out;
    switch (e->kind) {
      case KleeneKind::kEpsilon:
      case KleeneKind::kLetter:
      case KleeneKind::kPlaceholder:
        out = e;
        break;
      case KleeneKind::kConcat:
      case KleeneKind::kUnion: {
        std::vector<Kleene> parts;
        for (const auto& c : e->children) parts.push_back(run(c));
        out = e->kind == KleeneKind::kConcat ? k_concat(std::move(parts)) : k_union(std::move(parts));
        break;
      }
      case KleeneKind::kStar: {
        // Unions nested in concatenations are distributed out first.
        auto alts = alternatives(run(e->children.front()));
        // {e1..en}* = ({e1..e(n-1)}* en)* {e1..e(n-1)}*
        Kleene acc = k_star(alts.front());
        for (std::size_t i = 1; i < alts.size(); ++i) acc = k_concat({k_star(k_concat({acc, alts[i]})), acc});
        out = acc;
        break;
      }
    }
    memo_.emplace(e.get(), out);
    return out;
  }

 private:
  // Union-free expressions whose union is e.
  static std::vector<Kleene> alternatives(const Kleene& e) {
    if (e->kind == KleeneKind::kUnion) {
      std::vector<Kleene> out;
      for (const auto& c : e->children) {
        auto sub = alternatives(c);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    if (e->kind != KleeneKind::kConcat) return {e};
    std::vector<Kleene> out{k_epsilon()};
    for (const auto& c : e->children) {
      auto sub = alternatives(c);
      std::vector<Kleene> next;
      for (const auto& prefix : out) {
        for (const auto& s : sub) next.push_back(k_concat({prefix, s}));
      }
      out = std::move(next);
    }
    return out;
  }

  std::unordered_map<const KleeneNode*, Kleene> memo_;
};

class ToRf {
 public:
  explicit ToRf(const std::vector<VarId>& var_of) : var_of_(var_of) {}

  const RationalFunction& run(const Kleene& e) {
    if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second.second;
    RationalFunction out;
    switch (e->kind) {
      case KleeneKind::kEpsilon:
        out = RationalFunction(1);
        break;
      case KleeneKind::kLetter:
        out = RationalFunction(Polynomial::variable(var_of_.at(e->letter)));
        break;
      case KleeneKind::kPlaceholder:
        throw Error(ErrorKind::kInvalidArgument, "cannot convert an expression with loop placeholders");
      case KleeneKind::kConcat:
        out = RationalFunction(1);
        for (const auto& c : e->children) out = out * run(c);
        break;
      case KleeneKind::kUnion:
        for (const auto& c : e->children) out = out + run(c);
        break;
      case KleeneKind::kStar: {
        const RationalFunction& f = run(e->children.front());
        if (constant_term(f) != 0) throw Error(ErrorKind::kStarOfUnit, "starred expression has a nonzero constant term");
        out = RationalFunction(1) / (RationalFunction(1) - f);
        break;
      }
    }
    return memo_.emplace(e.get(), std::make_pair(e, std::move(out))).first->second.second;
  }

 private:
  static Rational constant_term(const RationalFunction& f) {
    Rational den = 1;
    for (const auto& fac : f.factors()) {
      Rational c = fac.poly.constant_term();
      if (c == 0) throw Error(ErrorKind::kNonUnitDenominator, "starred expression is not a power series");
      for (std::uint32_t i = 0; i < fac.multiplicity; ++i) den *= c;
    }
    return f.numerator().constant_term() / den;
  }

  const std::vector<VarId>& var_of_;
  // Holding the node keeps its address from being reused by a later expression.
  std::unordered_map<const KleeneNode*, std::pair<Kleene, RationalFunction>> memo_;
};

}  // namespace

Kleene k_epsilon() {
  static const Kleene eps = make(KleeneKind::kEpsilon);
  return eps;
}

Kleene k_letter(LabelId a) {
  auto n = std::make_shared<KleeneNode>();
  n->kind = KleeneKind::kLetter;
  n->letter = a;
  return n;
}

Kleene k_placeholder(std::uint32_t i) {
  auto n = std::make_shared<KleeneNode>();
  n->kind = KleeneKind::kPlaceholder;
  n->placeholder = i;
  return n;
}

Kleene k_concat(std::vector<Kleene> parts) {
  std::vector<Kleene> flat;
  for (auto& p : parts) {
    if (p->kind == KleeneKind::kConcat) {
      flat.insert(flat.end(), p->children.begin(), p->children.end());
    } else if (p->kind != KleeneKind::kEpsilon) {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return k_epsilon();
  if (flat.size() == 1) return flat.front();
  return make(KleeneKind::kConcat, std::move(flat));
}

Kleene k_union(std::vector<Kleene> parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "empty union");
  return make(KleeneKind::kUnion, std::move(parts));
}

Kleene k_star(Kleene inner) {
  return make(KleeneKind::kStar, {std::move(inner)});
}

Kleene k_word(const Word& w) {
  std::vector<Kleene> parts;
  for (LabelId a : w) parts.push_back(k_letter(a));
  return k_concat(std::move(parts));
}

Algorithm1Result algorithm1(const LoopGraph& lg) {
  Algorithm1Result r;
  std::vector<Kleene> parts;
  auto loops_here = [&](std::size_t i) {
    const LoopSet& set = lg.attached.at(i);
    if (!set || set->empty()) return;
    std::vector<Kleene> alts;
    for (const Loop& l : *set) {
      r.loops.push_back(&l);
      alts.push_back(k_placeholder(static_cast<std::uint32_t>(r.loops.size())));
    }
    parts.push_back(k_star(k_union(std::move(alts))));
  };
  loops_here(0);
  for (std::size_t i = 0; i < lg.spine.size(); ++i) {
    parts.push_back(k_letter(lg.spine[i]));
    loops_here(i + 1);
  }
  r.expr = k_concat(std::move(parts));
  return r;
}

static Kleene expand_placeholders(LoopExpander& expander, const Algorithm1Result& a1) {
  std::unordered_map<const KleeneNode*, Kleene> memo;
  auto substitute = [&](auto&& self, const Kleene& e) -> Kleene {
    if (auto it = memo.find(e.get()); it != memo.end()) return it->second;
    Kleene out;
    switch (e->kind) {
      case KleeneKind::kPlaceholder:
        out = expander.loop(*a1.loops.at(e->placeholder - 1));
        break;
      case KleeneKind::kConcat:
      case KleeneKind::kUnion:
      case KleeneKind::kStar: {
        std::vector<Kleene> parts;
        for (const auto& c : e->children) parts.push_back(self(self, c));
        out = e->kind == KleeneKind::kConcat  ? k_concat(std::move(parts))
              : e->kind == KleeneKind::kUnion ? k_union(std::move(parts))
                                              : k_star(std::move(parts.front()));
        break;
      }
      default:
        out = e;
    }
    memo.emplace(e.get(), out);
    return out;
  };
  return substitute(substitute, a1.expr);
}

Kleene algorithm2(const Algorithm1Result& a1, const LoopGraph& /*lg*/) {
  LoopExpander expander;
  return expand_placeholders(expander, a1);
}

struct KleeneContext::Impl {
  std::vector<VarId> var_of;
  LoopExpander expander;
  ToRf converter;
  explicit Impl(std::vector<VarId> v) : var_of(std::move(v)), converter(var_of) {}
};

KleeneContext::KleeneContext(std::vector<VarId> var_of) : impl_(std::make_unique<Impl>(std::move(var_of))) {}
KleeneContext::~KleeneContext() = default;

Kleene KleeneContext::expand(const Algorithm1Result& a1) { return expand_placeholders(impl_->expander, a1); }

const RationalFunction& KleeneContext::to_rf(const Kleene& e) { return impl_->converter.run(e); }

Kleene loop_expression(const Loop& loop) {
  LoopExpander expander;
  return expander.loop(loop);
}

Kleene zimin_unionless(const Kleene& e) {
  Zimin z;
  return z.run(e);
}

RationalFunction kleene_to_rf(const Kleene& e, const std::vector<VarId>& var_of) {
  ToRf conv(var_of);
  return conv.run(e);
}

std::map<Word, std::size_t> kleene_enumerate_multiset(const Kleene& e, std::size_t maxlen) {
  Enumerator en(maxlen);
  return en.run(e);
}

std::map<Word, std::size_t> kleene_enumerate(const Kleene& e, std::size_t maxlen) {
  auto words = kleene_enumerate_multiset(e, maxlen);
  for (const auto& [w, n] : words) {
    if (n > 1) {
      throw Error(ErrorKind::kAmbiguousExpression,
                  "a word of length " + std::to_string(w.size()) + " is produced " + std::to_string(n) + " times");
    }
  }
  return words;
}

std::string to_string(const Kleene& e, const std::vector<std::string>& labels) {
  return to_string(e, labels, kNoLimit);
}

std::string to_string(const Kleene& e, const std::vector<std::string>& labels, std::size_t max_chars) {
  std::string out;
  render_limit = max_chars;
  render(e, labels, compact_labels(labels), out);
  render_limit = kNoLimit;
  if (out.size() > max_chars) {
    std::size_t cut = max_chars;
    while (cut > 0 && (static_cast<unsigned char>(out[cut]) & 0xC0U) == 0x80U) --cut;
    out.resize(cut);
    out += "...";
  }
  return out;
}

std::size_t dag_size(const Kleene& e) {
  std::unordered_set<const KleeneNode*> seen;
  std::vector<const KleeneNode*> stack{e.get()};
  while (!stack.empty()) {
    const KleeneNode* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return seen.size();
}

Polynomial word_series(const std::map<Word, std::size_t>& words, const std::vector<VarId>& var_of) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [w, count] : words) {
    Monomial m;
    for (LabelId a : w) m = m * Monomial::variable(var_of.at(a));
    terms.emplace_back(std::move(m), Rational(static_cast<unsigned long>(count)));
  }
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace sgmc
