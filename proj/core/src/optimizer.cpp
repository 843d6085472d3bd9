// Copyright 2026 The pram-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pramforge/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "pramforge/info.hpp"
#include "pramforge/parallel.hpp"
#include "pramforge/random.hpp"

namespace pramforge {
namespace {

constexpr double kTieTolerance = 1e-12;

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Level ranks in tie-break order: v_max < v_plus < v_minus < v_min < other.
enum Rank : std::uint8_t {
  kRankMax = 0,
  kRankPlus = 1,
  kRankMinus = 2,
  kRankMin = 3,
  kRankOther = 4
};

constexpr char kRankChars[] = {'M', '+', '-', 'm', '?'};

std::uint8_t classify_rank(double value, const VertexValues& v, double tol) {
  if (std::abs(value - v.v_plus) <= tol) return kRankPlus;
  if (std::abs(value - v.v_minus) <= tol) return kRankMinus;
  if (std::abs(value - v.v_min) <= tol) return kRankMin;
  if (std::abs(value - v.v_max) <= tol) return kRankMax;
  return kRankOther;
}

using Signature = std::vector<std::uint8_t>;

std::string signature_to_string(const Signature& sig) {
  std::string out;
  out.reserve(sig.size());
  for (std::uint8_t r : sig) out.push_back(kRankChars[r]);
  return out;
}

// Internal candidate handle: a sign pattern (special == kNoSpecial) or a
// special pattern over the implied constant background.
struct CandidateRef {
  std::uint64_t mask = 0;
  std::size_t special = kNoSpecial;
  bool special_is_min = false;
};

Signature signature_of(const CandidateRef& ref, std::size_t S) {
  Signature sig(S);
  if (ref.special == kNoSpecial) {
    for (std::size_t k = 0; k < S; ++k) {
      sig[k] = (ref.mask >> k) & 1 ? kRankPlus : kRankMinus;
    }
  } else {
    for (std::size_t k = 0; k < S; ++k) {
      sig[k] = ref.special_is_min ? kRankPlus : kRankMinus;
    }
    sig[ref.special] = ref.special_is_min ? kRankMin : kRankMax;
  }
  return sig;
}

RetentionVector realize(const CandidateRef& ref, std::size_t S,
                        const VertexValues& v) {
  std::vector<double> q(S);
  if (ref.special == kNoSpecial) {
    for (std::size_t k = 0; k < S; ++k) {
      q[k] = (ref.mask >> k) & 1 ? v.v_plus : v.v_minus;
    }
  } else {
    const double background = ref.special_is_min ? v.v_plus : v.v_minus;
    for (std::size_t k = 0; k < S; ++k) q[k] = background;
    q[ref.special] = ref.special_is_min ? v.v_min : v.v_max;
  }
  return RetentionVector(std::move(q));
}

// Evaluates the objective over the four vertex levels in O(S) per candidate.
// The conditional term of each level and the marginal contribution
// b(v) = v - (1-v)/(S-1) are precomputed; the marginal entropy loop remains.
class VertexScorer {
 public:
  VertexScorer(const CategoricalDistribution& p, const VertexValues& v)
      : p_(p.probs()), S_(p.size()), v_(v) {
    const double log_sm1 = std::log(static_cast<double>(S_ - 1));
    auto g = [log_sm1](double x) {
      return xlogx(x) + xlogx(1.0 - x) - (1.0 - x) * log_sm1;
    };
    auto b = [this](double x) {
      return x - (1.0 - x) / static_cast<double>(S_ - 1);
    };
    g_plus_ = g(v.v_plus);
    g_minus_ = g(v.v_minus);
    g_min_ = g(v.v_min);
    g_max_ = g(v.v_max);
    b_plus_ = b(v.v_plus);
    b_minus_ = b(v.v_minus);
    b_min_ = b(v.v_min);
    b_max_ = b(v.v_max);
  }

  double score(const CandidateRef& ref) const {
    return ref.special == kNoSpecial
               ? score_mask(ref.mask)
               : score_special(ref.special_is_min, ref.special);
  }

  double score_mask(std::uint64_t mask) const {
    double p_plus = 0.0;  // total probability of coordinates at v_plus
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      p_plus += p_[std::countr_zero(m)];
    }
    const double p_minus = 1.0 - p_plus;
    const double retained = v_.v_plus * p_plus + v_.v_minus * p_minus;
    const double shared = (1.0 - retained) / static_cast<double>(S_ - 1);
    double acc = g_plus_ * p_plus + g_minus_ * p_minus;
    for (std::size_t j = 0; j < S_; ++j) {
      const double bj = (mask >> j) & 1 ? b_plus_ : b_minus_;
      acc -= xlogx(p_[j] * bj + shared);
    }
    return acc;
  }

  double score_special(bool is_min, std::size_t index) const {
    const double p_i = p_[index];
    const double v_bg = is_min ? v_.v_plus : v_.v_minus;
    const double v_sp = is_min ? v_.v_min : v_.v_max;
    const double g_bg = is_min ? g_plus_ : g_minus_;
    const double g_sp = is_min ? g_min_ : g_max_;
    const double b_bg = is_min ? b_plus_ : b_minus_;
    const double b_sp = is_min ? b_min_ : b_max_;
    const double retained = v_bg * (1.0 - p_i) + v_sp * p_i;
    const double shared = (1.0 - retained) / static_cast<double>(S_ - 1);
    double acc = g_bg * (1.0 - p_i) + g_sp * p_i;
    for (std::size_t j = 0; j < S_; ++j) {
      acc -= xlogx(p_[j] * (j == index ? b_sp : b_bg) + shared);
    }
    return acc;
  }

 private:
  const std::vector<double>& p_;
  std::size_t S_;
  VertexValues v_;
  double g_plus_, g_minus_, g_min_, g_max_;
  double b_plus_, b_minus_, b_min_, b_max_;
};

struct Scored {
  double value;
  CandidateRef ref;
};

// Keeps the running best and every candidate within kTieTolerance of it.
class BestTracker {
 public:
  void offer(double value, const CandidateRef& ref) {
    if (value > best_) best_ = value;
    if (value >= best_ - kTieTolerance) {
      entries_.push_back({value, ref});
      if (entries_.size() >= 4096) prune();
    }
  }

  void absorb(const BestTracker& other) {
    if (other.best_ > best_) best_ = other.best_;
    entries_.insert(entries_.end(), other.entries_.begin(),
                    other.entries_.end());
  }

  double best() const noexcept { return best_; }

  std::vector<Scored> winners() const {
    std::vector<Scored> out;
    for (const Scored& s : entries_) {
      if (s.value >= best_ - kTieTolerance) out.push_back(s);
    }
    return out;
  }

 private:
  void prune() {
    std::erase_if(entries_,
                  [this](const Scored& s) {
                    return s.value < best_ - kTieTolerance;
                  });
  }

  double best_ = -std::numeric_limits<double>::infinity();
  std::vector<Scored> entries_;
};

// Turns the surviving tied candidates into the final report: the candidate
// with the smallest signature wins, the rest are listed as ties.
OptimizationReport assemble_report(const CategoricalDistribution& p,
                                   const VertexValues& v,
                                   const BestTracker& tracker,
                                   OptimizeMethod method,
                                   std::uint64_t evaluated) {
  const std::size_t S = p.size();
  std::vector<std::pair<Signature, CandidateRef>> tied;
  for (const Scored& s : tracker.winners()) {
    tied.emplace_back(signature_of(s.ref, S), s.ref);
  }
  std::sort(tied.begin(), tied.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  tied.erase(std::unique(tied.begin(), tied.end(),
                         [](const auto& a, const auto& b) {
                           return a.first == b.first;
                         }),
             tied.end());

  OptimizationReport report{realize(tied.front().second, S, v), 0.0, {},
                            method, evaluated, {}};
  report.mi_nats = mutual_information(p, report.q_star).value();
  report.pattern_summary = summarize_pattern(report.q_star, v);
  for (std::size_t i = 1; i < tied.size(); ++i) {
    report.ties.push_back(signature_to_string(tied[i].first));
  }
  return report;
}

OptimizationReport exhaustive_sweep(const CategoricalDistribution& p,
                                    PrivacyLevel alpha) {
  const std::size_t S = p.size();
  const VertexValues v = vertex_values(S, alpha);
  const VertexScorer scorer(p, v);
  const std::uint64_t mask_count = std::uint64_t{1} << S;

  std::vector<BestTracker> chunks(worker_count());
  parallel_chunks(mask_count, [&](unsigned w, std::uint64_t begin,
                                  std::uint64_t end) {
    BestTracker& tracker = chunks[w];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      const int pc = std::popcount(mask);
      // One lone v_plus or one lone v_minus is not a vertex; the special
      // patterns below take their place.
      if (pc == 1 || pc == static_cast<int>(S) - 1) continue;
      tracker.offer(scorer.score_mask(mask), CandidateRef{mask});
    }
  });

  BestTracker merged;
  for (const BestTracker& chunk : chunks) merged.absorb(chunk);
  for (std::size_t i = 0; i < S; ++i) {
    merged.offer(scorer.score_special(true, i),
                 CandidateRef{0, i, true});
    merged.offer(scorer.score_special(false, i),
                 CandidateRef{0, i, false});
  }
  return assemble_report(p, v, merged, OptimizeMethod::kExhaustive,
                         mask_count);
}

// Local-search state: a sign vector, or one special coordinate over its
// implied constant background.
struct SearchState {
  CandidateRef ref;
};

std::vector<SearchState> neighbors(const SearchState& state, std::size_t S) {
  std::vector<SearchState> out;
  const std::uint64_t full = (std::uint64_t{1} << S) - 1;
  if (state.ref.special == kNoSpecial) {
    out.reserve(S * 2);
    for (std::size_t k = 0; k < S; ++k) {
      out.push_back({CandidateRef{state.ref.mask ^ (std::uint64_t{1} << k)}});
    }
    if (state.ref.mask == full) {
      for (std::size_t k = 0; k < S; ++k) {
        out.push_back({CandidateRef{0, k, true}});
      }
    } else if (state.ref.mask == 0) {
      for (std::size_t k = 0; k < S; ++k) {
        out.push_back({CandidateRef{0, k, false}});
      }
    }
  } else {
    // remove the special coordinate, or relocate it
    out.push_back({CandidateRef{state.ref.special_is_min ? full : 0}});
    for (std::size_t k = 0; k < S; ++k) {
      if (k == state.ref.special) continue;
      out.push_back({CandidateRef{0, k, state.ref.special_is_min}});
    }
  }
  return out;
}

}  // namespace

std::string pattern_signature(const RetentionVector& q, const VertexValues& v,
                              double tol) {
  Signature sig(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    sig[k] = classify_rank(q[k], v, tol);
  }
  return signature_to_string(sig);
}

PatternSummary summarize_pattern(const RetentionVector& q,
                                 const VertexValues& v, double tol) {
  PatternSummary out;
  for (std::size_t k = 0; k < q.size(); ++k) {
    switch (classify_rank(q[k], v, tol)) {
      case kRankPlus: ++out.v_plus; break;
      case kRankMinus: ++out.v_minus; break;
      case kRankMin: ++out.v_min; break;
      case kRankMax: ++out.v_max; break;
      default: break;
    }
  }
  return out;
}

std::pair<RetentionVector, RetentionVector> optimize_binary(
    PrivacyLevel alpha) {
  const double ea = alpha.exp_alpha();
  const double v = ea / (1.0 + ea);
  const double w = 1.0 / (1.0 + ea);
  return {RetentionVector({v, v}), RetentionVector({w, w})};
}

std::pair<RetentionVector, RetentionVector> optimize_symmetric(
    std::size_t S, PrivacyLevel alpha) {
  if (S < 2) {
    throw Error(ErrorCode::kTooFewCategories,
                "symmetric optimum needs S >= 2");
  }
  const VertexValues v = vertex_values(S, alpha);
  return {RetentionVector(std::vector<double>(S, v.v_minus)),
          RetentionVector(std::vector<double>(S, v.v_plus))};
}

OptimizationReport local_search(const CategoricalDistribution& p,
                                PrivacyLevel alpha, int restarts,
                                std::uint64_t seed) {
  const std::size_t S = p.size();
  if (!prop2_applicable(S, alpha)) {
    throw Error(ErrorCode::kNotApplicable,
                "local search moves over the closed-form vertex patterns");
  }
  if (S > 62) {
    throw Error(ErrorCode::kTooLarge,
                "sign patterns are tracked in a 64-bit mask; S <= 62");
  }
  if (restarts < 2) restarts = 2;
  const VertexValues v = vertex_values(S, alpha);
  const VertexScorer scorer(p, v);
  const std::uint64_t full = (std::uint64_t{1} << S) - 1;

  std::uint64_t evaluated = 0;
  BestTracker overall;
  for (int r = 0; r < restarts; ++r) {
    SearchState state;
    if (r == 0) {
      state.ref.mask = full;
    } else if (r == 1) {
      state.ref.mask = 0;
    } else {
      state.ref.mask = CounterRng(seed, static_cast<std::uint64_t>(r))
                           .next_u64() &
                       full;
    }
    double current = scorer.score(state.ref);
    ++evaluated;
    while (true) {
      SearchState best_move;
      double best_value = current;
      Signature best_sig;
      bool improved = false;
      for (const SearchState& next : neighbors(state, S)) {
        const double value = scorer.score(next.ref);
        ++evaluated;
        if (value <= current) continue;
        Signature sig = signature_of(next.ref, S);
        if (!improved || value > best_value ||
            (value == best_value && sig < best_sig)) {
          improved = true;
          best_move = next;
          best_value = value;
          best_sig = std::move(sig);
        }
      }
      if (!improved) break;
      state = best_move;
      current = best_value;
    }
    overall.offer(current, state.ref);
  }
  return assemble_report(p, v, overall, OptimizeMethod::kLocalSearch,
                         evaluated);
}

namespace {

OptimizationReport binary_closed_form(const CategoricalDistribution& p,
                                      PrivacyLevel alpha) {
  const auto [upper, lower] = optimize_binary(alpha);
  const VertexValues v = vertex_values(2, alpha);
  // f(q) = f(1-q) in the binary case, so both boundary points are optimal;
  // the signature order picks the v_plus pattern.
  OptimizationReport report{upper, 0.0, {},
                            OptimizeMethod::kClosedFormBinary, 2, {}};
  report.mi_nats = mutual_information(p, report.q_star).value();
  report.pattern_summary = summarize_pattern(report.q_star, v);
  const std::string lower_sig = pattern_signature(lower, v);
  if (lower_sig != pattern_signature(upper, v)) {
    report.ties.push_back(lower_sig);
  }
  return report;
}

OptimizationReport oracle_sweep(const CategoricalDistribution& p,
                                PrivacyLevel alpha) {
  const std::size_t S = p.size();
  const std::vector<RetentionVector> vertices =
      enumerate_vertices_oracle(S, alpha);
  if (vertices.empty()) {
    throw Error(ErrorCode::kNotApplicable, "oracle found no vertex");
  }
  const VertexValues v = vertex_values(S, alpha);
  std::vector<double> values(vertices.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    values[i] = mutual_information(p, vertices[i]).value();
    best = std::max(best, values[i]);
  }
  // Compare tied candidates on rank vectors, not display strings: the level
  // order v_max < v_plus < v_minus < v_min is not the ASCII order.
  std::vector<std::pair<Signature, std::size_t>> tied;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (values[i] >= best - kTieTolerance) {
      Signature sig(S);
      for (std::size_t k = 0; k < S; ++k) {
        sig[k] = classify_rank(vertices[i][k], v, 1e-9);
      }
      tied.emplace_back(std::move(sig), i);
    }
  }
  std::sort(tied.begin(), tied.end());
  OptimizationReport report{vertices[tied.front().second], 0.0, {},
                            OptimizeMethod::kOracle, vertices.size(), {}};
  report.mi_nats = values[tied.front().second];
  report.pattern_summary = summarize_pattern(report.q_star, v);
  for (std::size_t i = 1; i < tied.size(); ++i) {
    if (tied[i].first == tied[i - 1].first) continue;
    report.ties.push_back(signature_to_string(tied[i].first));
  }
  return report;
}

}  // namespace

OptimizationReport optimize(const CategoricalDistribution& p,
                            PrivacyLevel alpha, Strategy strategy,
                            std::uint64_t seed, int restarts) {
  const std::size_t S = p.size();
  const bool applicable = prop2_applicable(S, alpha);
  switch (strategy) {
    case Strategy::kExhaustive:
      if (!applicable || S > kExhaustiveMaxDimension) {
        throw Error(ErrorCode::kInfeasibleStrategy,
                    "exhaustive sweep needs the closed-form vertex family "
                    "and S <= 24");
      }
      return exhaustive_sweep(p, alpha);
    case Strategy::kLocalSearch:
      return local_search(p, alpha, restarts, seed);
    case Strategy::kAuto:
      break;
  }
  if (S == 2) return binary_closed_form(p, alpha);
  if (!applicable && S <= 5) return oracle_sweep(p, alpha);
  if (applicable && S <= kExhaustiveMaxDimension) return exhaustive_sweep(p, alpha);
  if (applicable) return local_search(p, alpha, restarts, seed);
  throw Error(ErrorCode::kNotApplicable,
              "no method covers S = " + std::to_string(S) +
                  " with alpha above the closed-form threshold");
}

double best_objective_with_counts(const CategoricalDistribution& p,
                                  PrivacyLevel alpha,
                                  const PatternSummary& counts) {
  const std::size_t S = p.size();
  if (S > 62) {
    throw Error(ErrorCode::kTooLarge,
                "sign patterns are tracked in a 64-bit mask; S <= 62");
  }
  if (counts.total() != S || counts.v_min > 1 || counts.v_max > 1 ||
      (counts.v_min == 1 && counts.v_max == 1)) {
    throw Error(ErrorCode::kOutOfRange,
                "counts do not describe a vertex family");
  }
  const VertexValues v = vertex_values(S, alpha);
  if (counts.v_max == 1 && v.v_max > 1.0) {
    throw Error(ErrorCode::kNotApplicable,
                "v_max exceeds 1 at this budget; the pattern family is empty");
  }
  const VertexScorer scorer(p, v);
  double best = -std::numeric_limits<double>::infinity();
  if (counts.v_min == 1 || counts.v_max == 1) {
    const bool is_min = counts.v_min == 1;
    if ((is_min && (counts.v_minus != 0 || counts.v_plus != S - 1)) ||
        (!is_min && (counts.v_plus != 0 || counts.v_minus != S - 1))) {
      throw Error(ErrorCode::kOutOfRange,
                  "special patterns have a constant background");
    }
    for (std::size_t i = 0; i < S; ++i) {
      best = std::max(best, scorer.score_special(is_min, i));
    }
    return best;
  }
  // All sign placements with the requested number of v_plus coordinates.
  const std::size_t a = counts.v_plus;
  double combinations = 1.0;
  for (std::size_t i = 0; i < a; ++i) {
    combinations *= static_cast<double>(S - i) / static_cast<double>(i + 1);
  }
  if (combinations > 4e6) {
    throw Error(ErrorCode::kTooLarge, "too many placements to sweep");
  }
  if (a == 0 || a == S) {
    return scorer.score_mask(a == 0 ? 0 : (std::uint64_t{1} << S) - 1);
  }
  std::uint64_t mask = (std::uint64_t{1} << a) - 1;
  const std::uint64_t limit = std::uint64_t{1} << S;
  while (mask < limit) {
    best = std::max(best, scorer.score_mask(mask));
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t c = mask & -mask;
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return best;
}

const char* optimize_method_name(OptimizeMethod method) noexcept {
  switch (method) {
    case OptimizeMethod::kClosedFormBinary: return "closed_form_binary";
    case OptimizeMethod::kClosedFormSymmetric: return "closed_form_symmetric";
    case OptimizeMethod::kExhaustive: return "exhaustive";
    case OptimizeMethod::kOracle: return "oracle";
    case OptimizeMethod::kLocalSearch: return "local_search";
  }
  return "unknown";
}

}  // namespace pramforge
