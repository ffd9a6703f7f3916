#include <cmath>
#include <map>
#include <string>
#include <variant>

#include "freeprod/errors.hpp"
#include "freeprod/monte_carlo.hpp"
#include "freeprod/rng.hpp"
#include "trials.hpp"

namespace freeprod {

namespace {

void check_options(const MonteCarloOptions& opts) {
  if (opts.trials < 1) throw DomainError("trials must be positive, got " + std::to_string(opts.trials));
  if (opts.N < 1) throw AmbientTooSmall("N must be positive, got " + std::to_string(opts.N));
}

EmpiricalTrace reduce(const std::vector<std::complex<double>>& values, int N) {
  EmpiricalTrace e;
  e.N = N;
  e.trials = static_cast<int>(values.size());
  std::complex<double> sum = 0.0;
  for (const auto& v : values) sum += v;
  e.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double var = 0.0;
    for (const auto& v : values) var += std::norm(v - e.mean);
    var /= static_cast<double>(values.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return e;
}

bool component_is_zero(const SideElement::Component& c) {
  if (const auto* p = std::get_if<HaarPoly>(&c)) return p->is_zero();
  return std::get<ExactMatrix>(c).is_zero();
}

std::string letter_key(const Letter& l) { return (l.side == Side::Left ? "L:" : "R:") + l.element.str() + ' '; }

// Which right summands some right letter touches, and where their columns
// sit inside the isometry drawn per trial (-1 if never touched).
struct RightColumns {
  std::vector<int> col_offset;
  int cols = 0;
};

RightColumns needed_columns(const std::vector<std::vector<Letter>>& words, const BlockLayout& right) {
  std::vector<bool> used(right.sizes.size(), false);
  for (const auto& w : words) {
    for (const auto& l : w) {
      if (l.side != Side::Right) continue;
      for (std::size_t i = 0; i < used.size(); ++i) used[i] = used[i] || !component_is_zero(l.element.parts()[i]);
    }
  }
  RightColumns rc;
  for (std::size_t i = 0; i < used.size(); ++i) {
    rc.col_offset.push_back(used[i] ? rc.cols : -1);
    if (used[i]) rc.cols += right.sizes[i] * right.multiplicities[i];
  }
  return rc;
}

// Words often share prefixes ((pq)^k for several k). For each word, the
// longest proper prefix (at least two letters) that an earlier word also
// passes through; those partial products are kept for reuse.
struct PrefixPlan {
  std::vector<std::size_t> start;          // 0 = from scratch
  std::map<std::string, int> consumers;    // prefix key -> words still to use it
};

PrefixPlan plan_prefixes(const std::vector<std::vector<Letter>>& words) {
  PrefixPlan plan;
  std::map<std::string, bool> seen;
  for (const auto& w : words) {
    std::vector<std::string> keys;
    std::string k;
    for (const auto& l : w) keys.push_back(k += letter_key(l));
    std::size_t start = 0;
    for (std::size_t len = w.size() > 0 ? w.size() - 1 : 0; len >= 2; --len) {
      if (seen.count(keys[len - 1])) {
        start = len;
        ++plan.consumers[keys[len - 1]];
        break;
      }
    }
    plan.start.push_back(start);
    for (std::size_t len = 2; len <= keys.size(); ++len) seen[keys[len - 1]] = true;
  }
  return plan;
}

// Normalized traces of merged words in the model with rotation U. Right
// letters become U x U^*, cached per trial; only the columns of U that some
// right letter touches are ever drawn.
class TrialEvaluator {
 public:
  TrialEvaluator(const BlockLayout& left, const BlockLayout& right, const RightColumns& rc, CMatrix w,
                 PrefixPlan plan)
      : left_(left), right_(right), rc_(rc), w_(std::move(w)), plan_(std::move(plan)) {}

  std::complex<double> trace(const std::vector<Letter>& letters, std::size_t start) {
    const int N = left_.N;
    if (letters.empty()) return 1.0;
    std::string key;
    CMatrix m;
    std::size_t k = 0;
    if (start > 0) {
      for (std::size_t j = 0; j < start; ++j) key += letter_key(letters[j]);
      auto it = saved_.find(key);
      m = it->second;
      if (--plan_.consumers[key] == 0) saved_.erase(it);
      k = start;
    } else if (letters[0].side == Side::Left) {
      // a left letter followed by a right one is a row operation on the
      // rotated right letter
      if (letters.size() >= 2) {
        m = rotated(letters[1].element);
        multiply_left(letters[0].element, left_, m);
        key = letter_key(letters[0]) + letter_key(letters[1]);
        k = 2;
      } else {
        m = dense(letters[0].element, left_);
        k = 1;
      }
    } else {
      m = rotated(letters[0].element);
      key = letter_key(letters[0]);
      k = 1;
    }
    keep(key, m);
    for (; k < letters.size(); ++k) {
      const Letter& l = letters[k];
      key += letter_key(l);
      const bool last = k + 1 == letters.size();
      if (l.side == Side::Left) {
        multiply_right(m, l.element, left_);
      } else if (last && !plan_.consumers.count(key)) {
        // tr(m r) without forming the product
        const CMatrix& r = rotated(l.element);
        return (m.cwiseProduct(r.transpose())).sum() / static_cast<double>(N);
      } else {
        m = m * rotated(l.element);
      }
      keep(key, m);
    }
    return m.trace() / static_cast<double>(N);
  }

 private:
  void keep(const std::string& key, const CMatrix& m) {
    auto it = plan_.consumers.find(key);
    if (it != plan_.consumers.end() && it->second > 0 && !saved_.count(key)) saved_.emplace(key, m);
  }

  const CMatrix& rotated(const SideElement& x) {
    const std::string key = x.str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const int N = right_.N;
    // x U^* on the touched blocks, then U times it block by block
    CMatrix ru = CMatrix::Zero(N, N);
    for (std::size_t i = 0; i < right_.sizes.size(); ++i) {
      if (rc_.col_offset[i] < 0) continue;
      const int len = right_.sizes[i] * right_.multiplicities[i];
      ru.middleRows(right_.offsets[i], len) = w_.middleCols(rc_.col_offset[i], len).adjoint();
    }
    multiply_left(x, right_, ru);
    CMatrix out = CMatrix::Zero(N, N);
    for (std::size_t i = 0; i < right_.sizes.size(); ++i) {
      if (rc_.col_offset[i] < 0 || component_is_zero(x.parts()[i])) continue;
      const int len = right_.sizes[i] * right_.multiplicities[i];
      out.noalias() += w_.middleCols(rc_.col_offset[i], len) * ru.middleRows(right_.offsets[i], len);
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  const BlockLayout& left_;
  const BlockLayout& right_;
  const RightColumns& rc_;
  const CMatrix w_;
  PrefixPlan plan_;
  std::map<std::string, CMatrix> cache_;
  std::map<std::string, CMatrix> saved_;
};

}  // namespace

std::vector<EmpiricalTrace> empirical_word_traces(const TracialAlgebra& a, const TracialAlgebra& b,
                                                  const std::vector<FreeWord>& words, const MonteCarloOptions& opts) {
  check_options(opts);
  const BlockLayout left = realize(a, opts.N);
  const BlockLayout right = realize(b, opts.N);
  std::vector<std::vector<Letter>> merged;
  for (const auto& w : words) {
    for (const auto& l : w.letters) l.element.check_shape(l.side == Side::Left ? a : b);
    merged.push_back(merge_letters(w.letters));
  }

  std::vector<std::vector<std::complex<double>>> values(words.size(),
                                                        std::vector<std::complex<double>>(opts.trials));
  const RightColumns rc = needed_columns(merged, right);
  const PrefixPlan plan = plan_prefixes(merged);
  detail::for_each_trial(opts.trials, opts.threads, [&](int t) {
    std::mt19937_64 rng = stream_rng(opts.seed, static_cast<std::uint64_t>(t));
    TrialEvaluator ev(left, right, rc, haar_isometry(opts.N, rc.cols, rng), plan);
    for (std::size_t w = 0; w < merged.size(); ++w) {
      values[w][static_cast<std::size_t>(t)] = ev.trace(merged[w], plan.start[w]);
    }
  });

  std::vector<EmpiricalTrace> out;
  for (const auto& v : values) out.push_back(reduce(v, opts.N));
  return out;
}

EmpiricalTrace empirical_word_trace(const TracialAlgebra& a, const TracialAlgebra& b, const FreeWord& w,
                                    const MonteCarloOptions& opts) {
  return empirical_word_traces(a, b, {w}, opts).front();
}

}  // namespace freeprod
