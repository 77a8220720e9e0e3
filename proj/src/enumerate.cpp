#include "pte/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "pte/error.hpp"

namespace pte {

namespace {

using Prefix = std::vector<std::int8_t>;

void validate(const SearchSpec& spec) {
  if (spec.m < 0) throw PreconditionError("word length must be non-negative");
  if (spec.b < 2) throw PreconditionError("alphabet size must be at least 2");
  if (spec.b > 127) throw PreconditionError("alphabet size must be at most 127");
  if (spec.r < -1) throw PreconditionError("regularity must be at least -1");
  if (spec.jobs < 1) throw PreconditionError("jobs must be at least 1");
}

// Depth-first search filling positions m, m-1, ..., 1. Each letter carries
// its count and partial power sums; a branch survives only while every letter
// can still hit the per-block targets using the smallest or the largest free
// positions. Large positions first makes those bounds bite early. Canonical
// filtering follows the search order; callers canonicalize and sort.
template <class Int>
class Searcher {
 public:
  explicit Searcher(const SearchSpec& spec)
      : m_(spec.m), b_(spec.b), r_(spec.r), canonical_(spec.canonical_only) {
    block_ = r_ >= 0 ? m_ / b_ : m_;
    const int degrees = std::max(r_, 0);
    prefix_.assign(static_cast<std::size_t>(degrees + 1), std::vector<Int>(static_cast<std::size_t>(m_) + 1, 0));
    for (int j = 1; j <= degrees; ++j) {
      auto& table = prefix_[static_cast<std::size_t>(j)];
      for (int t = 1; t <= m_; ++t) {
        Int power = 1;
        for (int e = 0; e < j; ++e) power *= Int(t);
        table[static_cast<std::size_t>(t)] = table[static_cast<std::size_t>(t - 1)] + power;
      }
    }
    target_.assign(static_cast<std::size_t>(degrees + 1), 0);
    for (int j = 1; j <= r_; ++j) {
      const Int total = prefix_[static_cast<std::size_t>(j)][static_cast<std::size_t>(m_)];
      if (total % Int(b_) != 0) infeasible_ = true;
      target_[static_cast<std::size_t>(j)] = total / Int(b_);
    }
    letters_.assign(static_cast<std::size_t>(m_), 0);
    count_.assign(static_cast<std::size_t>(b_), 0);
    sums_.assign(static_cast<std::size_t>(b_ * (degrees + 1)), 0);
  }

  bool infeasible() const noexcept { return infeasible_; }

  // Surviving prefixes (in search order) of the given depth.
  std::vector<Prefix> prefixes(int depth) {
    std::vector<Prefix> out;
    if (infeasible_) return out;
    depth_limit_ = depth;
    auto collect = [&](std::span<const std::int8_t> letters) {
      out.emplace_back(letters.end() - depth, letters.end());
      std::reverse(out.back().begin(), out.back().end());
      return true;
    };
    dfs(0, -1, collect);
    depth_limit_ = -1;
    return out;
  }

  // Runs the search below a prefix; the visitor sees complete words and
  // returns false to stop.
  template <class Visit>
  void run(const Prefix& prefix, Visit&& visit) {
    if (infeasible_) return;
    int highest = -1;
    for (std::size_t d = 0; d < prefix.size(); ++d) {
      place(static_cast<int>(d), prefix[d]);
      highest = std::max<int>(highest, prefix[d]);
    }
    dfs(static_cast<int>(prefix.size()), highest, visit);
    for (std::size_t d = prefix.size(); d-- > 0;) unplace(static_cast<int>(d), prefix[d]);
  }

 private:
  Int& sum(int x, int j) { return sums_[static_cast<std::size_t>(x * (std::max(r_, 0) + 1) + j)]; }
  Int power(int j, int t) const {
    const auto& table = prefix_[static_cast<std::size_t>(j)];
    return table[static_cast<std::size_t>(t)] - table[static_cast<std::size_t>(t - 1)];
  }

  // Depth d fills position m - d.
  void place(int depth, int x) {
    const int t = m_ - depth;
    letters_[static_cast<std::size_t>(t - 1)] = static_cast<std::int8_t>(x);
    ++count_[static_cast<std::size_t>(x)];
    for (int j = 1; j <= r_; ++j) sum(x, j) += power(j, t);
  }

  void unplace(int depth, int x) {
    const int t = m_ - depth;
    --count_[static_cast<std::size_t>(x)];
    for (int j = 1; j <= r_; ++j) sum(x, j) -= power(j, t);
  }

  // Free positions are 1..m-depth.
  bool feasible(int depth) {
    const int hi = m_ - depth;
    for (int x = 0; x < b_; ++x) {
      const int k = block_ - count_[static_cast<std::size_t>(x)];
      for (int j = 1; j <= r_; ++j) {
        const auto& table = prefix_[static_cast<std::size_t>(j)];
        const Int need = target_[static_cast<std::size_t>(j)] - sum(x, j);
        if (need < table[static_cast<std::size_t>(k)]) return false;
        if (need > table[static_cast<std::size_t>(hi)] - table[static_cast<std::size_t>(hi - k)]) return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool dfs(int depth, int highest, Visit& visit) {
    if (depth == m_ || depth == depth_limit_) {
      return visit(std::span<const std::int8_t>(letters_));
    }
    const int limit = canonical_ ? std::min(highest + 1, b_ - 1) : b_ - 1;
    for (int x = 0; x <= limit; ++x) {
      if (r_ >= 0 && count_[static_cast<std::size_t>(x)] == block_) continue;
      place(depth, x);
      const bool ok = r_ <= 0 || feasible(depth + 1);
      if (ok && !dfs(depth + 1, std::max(highest, x), visit)) {
        unplace(depth, x);
        return false;
      }
      unplace(depth, x);
    }
    return true;
  }

  int m_;
  int b_;
  int r_;
  bool canonical_;
  int block_;
  int depth_limit_ = -1;
  bool infeasible_ = false;
  std::vector<std::vector<Int>> prefix_;  // prefix_[j][t] = sum of s^j for s <= t
  std::vector<Int> target_;
  std::vector<std::int8_t> letters_;
  std::vector<int> count_;
  std::vector<Int> sums_;
};

Word to_word(int b, std::span<const std::int8_t> letters) {
  std::vector<Letter> out(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) out[i] = letters[i] + 1;
  return Word(b, std::move(out));
}

struct TaskResult {
  std::uint64_t count = 0;
  std::vector<Word> words;
};

template <class Int>
SearchResult search(const SearchSpec& spec, const std::function<bool(const Word&)>* sink) {
  SearchResult result;
  Searcher<Int> root(spec);
  if (root.infeasible()) {
    result.divisibility_empty = true;
    return result;
  }

  const bool keep_words = spec.mode != SearchMode::count || sink != nullptr;
  const bool stop_at_first = spec.mode == SearchMode::first;

  // Fixed-depth prefix partitioning into at least 64 tasks per worker.
  std::vector<Prefix> tasks{Prefix{}};
  if (spec.jobs > 1) {
    const std::size_t wanted = 64 * static_cast<std::size_t>(spec.jobs);
    for (int depth = 1; depth <= spec.m && tasks.size() < wanted; ++depth) {
      tasks = root.prefixes(depth);
    }
  }

  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_hit{tasks.size()};
  auto worker = [&] {
    Searcher<Int> searcher(spec);
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      if (stop_at_first && t > first_hit.load()) continue;
      auto& out = results[t];
      searcher.run(tasks[t], [&](std::span<const std::int8_t> letters) {
        ++out.count;
        if (keep_words) out.words.push_back(to_word(spec.b, letters));
        if (stop_at_first) {
          std::size_t seen = first_hit.load();
          while (t < seen && !first_hit.compare_exchange_weak(seen, t)) {
          }
          return false;
        }
        return true;
      });
    }
  };

  const int threads = std::min<int>(spec.jobs, static_cast<int>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<Word> found;
  for (auto& task : results) {
    result.count += task.count;
    for (auto& w : task.words) found.push_back(spec.canonical_only ? canonicalize(w) : std::move(w));
    if (stop_at_first && result.count > 0) break;
  }
  if (stop_at_first) {
    result.count = std::min<std::uint64_t>(result.count, 1);
    found.resize(result.count);
  }
  std::sort(found.begin(), found.end());
  if (sink != nullptr) {
    for (const auto& w : found) {
      if (!(*sink)(w)) break;
    }
  } else if (spec.mode != SearchMode::count) {
    result.words = std::move(found);
  }
  return result;
}

SearchResult dispatch(const SearchSpec& spec, const std::function<bool(const Word&)>* sink) {
  validate(spec);
  SearchResult result;
  if (spec.r >= 0 && (spec.m == 0 || spec.m % spec.b != 0)) {
    // No r-regular partition for r >= 0: blocks would need equal sizes (and
    // the empty word is not 0-regular by convention).
    result.divisibility_empty = spec.m % spec.b != 0;
    return result;
  }
  // Largest value held is the sum of t^r over t <= m.
  const long double magnitude = std::pow(static_cast<long double>(std::max(spec.m, 1)), std::max(spec.r, 0) + 1);
  if (magnitude < 1.0e18L) return search<std::int64_t>(spec, sink);
  if (magnitude < 1.0e36L) return search<__int128>(spec, sink);
  return search<BigInt>(spec, sink);
}

}  // namespace

SearchResult enumerate_pte(const SearchSpec& spec) { return dispatch(spec, nullptr); }

void enumerate_pte(const SearchSpec& spec, const std::function<bool(const Word&)>& sink) {
  dispatch(spec, &sink);
}

std::uint64_t count_pte(const SearchSpec& spec) {
  SearchSpec counting = spec;
  counting.mode = SearchMode::count;
  return dispatch(counting, nullptr).count;
}

std::optional<int> min_length(int b, int r, int cap, int jobs) {
  if (b < 2 || r < 0 || cap < 1) throw PreconditionError("min_length needs b >= 2, r >= 0, cap >= 1");
  for (int m = b; m <= cap; m += b) {
    SearchSpec spec{m, b, r, true, SearchMode::first, jobs};
    if (enumerate_pte(spec).count > 0) return m;
  }
  return std::nullopt;
}

std::vector<Word> brute_force_oracle(int m, int b, int r, bool canonical_only) {
  if (m < 0 || b < 2 || r < -1) throw PreconditionError("oracle needs m >= 0, b >= 2, r >= -1");
  if (std::pow(static_cast<double>(b), m) > 1.0e8) throw PreconditionError("instance too large for the oracle");
  std::vector<Word> out;
  std::vector<Letter> digits(static_cast<std::size_t>(m), 1);
  while (true) {
    Word w(b, digits);
    if ((!canonical_only || is_canonical(w)) && is_regular(w, r)) out.push_back(std::move(w));
    // Odometer increment, last position fastest, so output is lexicographic.
    int i = m - 1;
    while (i >= 0 && digits[static_cast<std::size_t>(i)] == b) digits[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace pte
