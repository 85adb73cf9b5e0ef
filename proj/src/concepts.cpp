#include "exlearn/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "exlearn/errors.hpp"

namespace exlearn {

namespace {

constexpr std::size_t kShatterLimit = 20;
constexpr int kVcCap = 6;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void visit_unions(std::span<const double> endpoints, std::size_t parts, std::size_t start,
                  std::vector<double>& params, const std::function<void(const Concept&)>& visit) {
  if (parts == 0) {
    visit(Concept::union_of(params));
    return;
  }
  for (std::size_t i = start; i < endpoints.size(); ++i) {
    for (std::size_t j = i; j < endpoints.size(); ++j) {
      params.push_back(endpoints[i]);
      params.push_back(endpoints[j]);
      visit_unions(endpoints, parts - 1, j + 1, params, visit);
      params.resize(params.size() - 2);
    }
  }
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string to_string(ConceptFamily family) {
  switch (family) {
    case ConceptFamily::threshold: return "threshold";
    case ConceptFamily::interval: return "interval";
    case ConceptFamily::union_intervals: return "union_intervals";
  }
  return "unknown";
}

Concept Concept::threshold(double t) {
  if (std::isnan(t)) throw DomainError("threshold: NaN parameter");
  return Concept(ConceptFamily::threshold, {t});
}

Concept Concept::interval(double a, double b) {
  if (!(a <= b)) throw DomainError("interval: requires a <= b");
  return Concept(ConceptFamily::interval, {a, b});
}

Concept Concept::union_of(std::vector<double> endpoints) {
  if (endpoints.empty() || endpoints.size() % 2 != 0) {
    throw DomainError("union of intervals: need a nonempty list of (a, b) pairs");
  }
  for (std::size_t i = 0; i < endpoints.size(); i += 2) {
    if (!(endpoints[i] <= endpoints[i + 1])) throw DomainError("union of intervals: requires a <= b");
    if (i > 0 && !(endpoints[i - 1] < endpoints[i])) {
      throw DomainError("union of intervals: parts must be disjoint and ordered");
    }
  }
  return Concept(ConceptFamily::union_intervals, std::move(endpoints));
}

std::size_t Concept::parts() const noexcept {
  return family_ == ConceptFamily::threshold ? 0 : params_.size() / 2;
}

int Concept::evaluate(double x) const noexcept {
  if (family_ == ConceptFamily::threshold) return x >= params_[0] ? 1 : 0;
  for (std::size_t i = 0; i < params_.size(); i += 2) {
    if (params_[i] <= x && x <= params_[i + 1]) return 1;
  }
  return 0;
}

std::string Concept::to_string() const {
  std::string out = family_ == ConceptFamily::union_intervals ? "union" : exlearn::to_string(family_);
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) out += ';';
    out += format_number(params_[i]);
  }
  out += ')';
  return out;
}

void for_each_concept(ConceptFamily family, std::size_t parts, std::span<const double> endpoints,
                      const std::function<void(const Concept&)>& visit) {
  switch (family) {
    case ConceptFamily::threshold:
      for (double t : endpoints) visit(Concept::threshold(t));
      return;
    case ConceptFamily::interval:
      for (std::size_t i = 0; i < endpoints.size(); ++i) {
        for (std::size_t j = i; j < endpoints.size(); ++j) {
          visit(Concept::interval(endpoints[i], endpoints[j]));
        }
      }
      return;
    case ConceptFamily::union_intervals: {
      std::vector<double> params;
      params.reserve(2 * parts);
      visit_unions(endpoints, parts, 0, params, visit);
      return;
    }
  }
}

ConceptClass::ConceptClass(ConceptFamily family, GridPtr grid, std::size_t parts, int declared_vc)
    : family_(family), grid_(std::move(grid)), parts_(parts) {
  if (!grid_) throw DomainError("concept class requires a grid");
  switch (family_) {
    case ConceptFamily::threshold: parts_ = 0; break;
    case ConceptFamily::interval: parts_ = 1; break;
    case ConceptFamily::union_intervals:
      if (parts_ == 0) throw DomainError("union_intervals: k must be at least 1");
      break;
  }
  const int natural_vc = family_ == ConceptFamily::threshold ? 1 : static_cast<int>(2 * parts_);
  declared_vc_ = declared_vc == 0 ? natural_vc : declared_vc;
  if (declared_vc_ < 1) throw DomainError("declared VC dimension must be at least 1");

  endpoints_.reserve(grid_->size() + 2);
  endpoints_.push_back(grid_->min() - 1.0);
  endpoints_.insert(endpoints_.end(), grid_->points().begin(), grid_->points().end());
  endpoints_.push_back(grid_->max() + 1.0);

  auto all = std::make_shared<std::vector<Concept>>();
  for_each_concept(family_, parts_, endpoints_, [&](const Concept& c) { all->push_back(c); });
  candidates_ = std::move(all);
}

bool ConceptClass::contains(const Concept& c) const {
  if (c.family() != family_ || c.parts() != parts_) return false;
  return std::binary_search(candidates_->begin(), candidates_->end(), c,
                            [](const Concept& l, const Concept& r) {
                              return l.parameters() < r.parameters();
                            });
}

std::string ConceptClass::describe() const {
  std::string out = to_string(family_);
  if (family_ == ConceptFamily::union_intervals) out += "(k=" + std::to_string(parts_) + ")";
  return out + " declared_vc=" + std::to_string(declared_vc_);
}

double risk(const Pmf& theta, const Concept& h, const Concept& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double x = theta.point(i);
    if (h(x) != f(x)) acc += theta.prob(i);
  }
  return acc;
}

double empirical_risk(const LabeledSample& sample, const Concept& h) {
  if (sample.empty()) throw EmptySample("empirical_risk: empty sample");
  std::size_t mistakes = 0;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (h(sample.points[j]) != sample.labels[j]) ++mistakes;
  }
  return static_cast<double>(mistakes) / static_cast<double>(sample.size());
}

bool shatter_check(const ConceptClass& cls, std::span<const double> points) {
  if (points.size() > kShatterLimit) throw SizeGuard("shatter_check: at most 20 points");
  const std::vector<double> query = sorted_unique({points.begin(), points.end()});
  if (query.size() != points.size()) return false;
  const std::size_t m = query.size();
  if (m == 0) return true;

  std::vector<double> endpoints = cls.endpoints();
  endpoints.insert(endpoints.end(), query.begin(), query.end());
  for (std::size_t i = 0; i + 1 < m; ++i) endpoints.push_back(0.5 * (query[i] + query[i + 1]));
  endpoints.push_back(query.front() - 1.0);
  endpoints.push_back(query.back() + 1.0);
  endpoints = sorted_unique(std::move(endpoints));

  const std::uint64_t labelings = std::uint64_t{1} << m;
  std::vector<bool> seen(labelings, false);
  std::uint64_t found = 0;
  // Enumeration cannot be interrupted from the visitor, so skip work once done.
  for_each_concept(cls.family(), cls.parts(), endpoints, [&](const Concept& c) {
    if (found == labelings) return;
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < m; ++i) mask |= static_cast<std::uint64_t>(c(query[i])) << i;
    if (!seen[mask]) {
      seen[mask] = true;
      ++found;
    }
  });
  return found == labelings;
}

int vc_dimension_bruteforce(const ConceptClass& cls, const DomainGrid& probe_grid, int cap) {
  if (cap > kVcCap) throw SizeGuard("vc_dimension_bruteforce: cap is limited to 6");
  if (cap < 0) throw DomainError("vc_dimension_bruteforce: negative cap");
  const auto& pts = probe_grid.points();
  const int limit = std::min<int>(cap, static_cast<int>(pts.size()));
  int best = 0;
  for (int m = 1; m <= limit; ++m) {
    // Walk all m-subsets via a selection mask in lexicographic order.
    std::vector<bool> pick(pts.size(), false);
    std::fill(pick.begin(), pick.begin() + m, true);
    bool shattered = false;
    do {
      std::vector<double> subset;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pick[i]) subset.push_back(pts[i]);
      }
      shattered = shatter_check(cls, subset);
    } while (!shattered && std::prev_permutation(pick.begin(), pick.end()));
    if (shattered) best = m;
  }
  return best;
}

}  // namespace exlearn
