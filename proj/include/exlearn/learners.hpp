#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "exlearn/bounds.hpp"
#include "exlearn/concepts.hpp"

namespace exlearn {

// Which empirical-risk minimizer to return when several tie.
enum class TieBreak {
  lex_min,  // lexicographically smallest parameter vector
  lex_max,  // lexicographically largest; only used to probe other consistent rules
};

std::string to_string(TieBreak tie_break);
TieBreak parse_tie_break(const std::string& name);

// f restricted to sigma: labels_j = f(sigma_j).
LabeledSample restrict(const Concept& f, std::span<const double> sigma);

// Exact empirical risk minimization over cls.candidates(). Throws EmptySample.
Concept erm(const ConceptClass& cls, const LabeledSample& sample, TieBreak tie_break = TieBreak::lex_min);

// Deterministic ERM rule bound to a class.
class LearningRule {
 public:
  explicit LearningRule(ConceptClass cls, TieBreak tie_break = TieBreak::lex_min)
      : cls_(std::move(cls)), tie_break_(tie_break) {}

  const ConceptClass& concept_class() const noexcept { return cls_; }
  TieBreak tie_break() const noexcept { return tie_break_; }

  Concept learn(const LabeledSample& sample) const { return erm(cls_, sample, tie_break_); }

 private:
  ConceptClass cls_;
  TieBreak tie_break_;
};

// Whether rule(f|sigma)|sigma == f|sigma. Vacuously true for empty sigma.
bool is_consistent(const LearningRule& rule, const Concept& f, std::span<const double> sigma);
// Same check on an arbitrary (possibly non-realizable) labeled sample.
bool is_consistent(const LearningRule& rule, const LabeledSample& sample);

// Smallest epsilon with bound(0.5, epsilon) <= n.
double epsilon_n(const BoundSpec& bound, std::int64_t n);

}  // namespace exlearn
