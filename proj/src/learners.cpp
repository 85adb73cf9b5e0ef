#include "exlearn/learners.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "exlearn/errors.hpp"

namespace exlearn {

namespace {

struct LabelCounts {
  std::size_t zeros = 0;
  std::size_t ones = 0;
};

}  // namespace

std::string to_string(TieBreak tie_break) {
  return tie_break == TieBreak::lex_min ? "lex_min" : "lex_max";
}

TieBreak parse_tie_break(const std::string& name) {
  if (name == "lex_min") return TieBreak::lex_min;
  if (name == "lex_max") return TieBreak::lex_max;
  throw DomainError("unknown tie-break policy '" + name + "'");
}

LabeledSample restrict(const Concept& f, std::span<const double> sigma) {
  LabeledSample s;
  s.points.assign(sigma.begin(), sigma.end());
  s.labels.reserve(sigma.size());
  for (double x : sigma) s.labels.push_back(f(x));
  return s;
}

Concept erm(const ConceptClass& cls, const LabeledSample& sample, TieBreak tie_break) {
  if (sample.empty()) throw EmptySample("erm: empty sample");
  if (sample.labels.size() != sample.points.size()) {
    throw DomainError("erm: points and labels differ in length");
  }
  // Empirical risk depends only on per-point label counts.
  std::map<double, LabelCounts> tally;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    auto& slot = tally[sample.points[j]];
    switch (sample.labels[j]) {
      case 0: ++slot.zeros; break;
      case 1: ++slot.ones; break;
      default: throw DomainError("erm: labels must be 0 or 1");
    }
  }

  const auto& candidates = cls.candidates();
  std::size_t best_index = 0;
  std::size_t best_mistakes = std::numeric_limits<std::size_t>::max();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::size_t mistakes = 0;
    for (const auto& [x, counts] : tally) {
      mistakes += candidates[c](x) == 1 ? counts.zeros : counts.ones;
      if (mistakes > best_mistakes) break;
    }
    const bool better = tie_break == TieBreak::lex_min ? mistakes < best_mistakes
                                                       : mistakes <= best_mistakes;
    if (better) {
      best_mistakes = mistakes;
      best_index = c;
    }
  }
  return candidates[best_index];
}

bool is_consistent(const LearningRule& rule, const LabeledSample& sample) {
  if (sample.empty()) return true;
  const Concept h = rule.learn(sample);
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (h(sample.points[j]) != sample.labels[j]) return false;
  }
  return true;
}

bool is_consistent(const LearningRule& rule, const Concept& f, std::span<const double> sigma) {
  return is_consistent(rule, restrict(f, sigma));
}

double epsilon_n(const BoundSpec& bound, std::int64_t n) {
  return invert_bound(bound, 0.5, n);
}

}  // namespace exlearn
