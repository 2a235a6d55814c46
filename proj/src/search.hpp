#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "rangectl/control.hpp"

namespace rangectl::detail {

template <class Action>
struct SearchResult {
  Decision decision = Decision::No;
  std::optional<Action> witness;
  std::uint64_t explored = 0;
};

/// Finds the first action (in generator order) accepted by `accept`.
///
/// `Generator` exposes `std::optional<Action> next()`, yielding actions in
/// the canonical order. With threads > 1 actions are evaluated in waves; the
/// earliest success in a wave wins, so decision, witness and explored count
/// are the same for every thread count.
template <class Action, class Generator, class Accept>
SearchResult<Action> first_success(Generator& gen, const Accept& accept, const SearchOptions& options) {
  SearchResult<Action> result;
  std::optional<Action> pending = gen.next();

  if (options.threads <= 1) {
    while (pending) {
      if (result.explored >= options.budget) {
        result.decision = Decision::BudgetExceeded;
        return result;
      }
      ++result.explored;
      if (accept(*pending)) {
        result.decision = Decision::Yes;
        result.witness = std::move(pending);
        return result;
      }
      pending = gen.next();
    }
    return result;
  }

  const std::size_t wave_cap = static_cast<std::size_t>(options.threads) * 1024;
  std::vector<Action> wave;
  wave.reserve(wave_cap);
  while (pending) {
    if (result.explored >= options.budget) {
      result.decision = Decision::BudgetExceeded;
      return result;
    }
    wave.clear();
    const std::uint64_t room = options.budget - result.explored;
    while (pending && wave.size() < wave_cap && wave.size() < room) {
      wave.push_back(std::move(*pending));
      pending = gen.next();
    }

    std::atomic<std::size_t> next_index{0};
    std::atomic<std::size_t> best{wave.size()};
    auto worker = [&] {
      constexpr std::size_t kChunk = 32;
      for (;;) {
        const std::size_t start = next_index.fetch_add(kChunk);
        if (start >= wave.size() || start > best.load()) return;
        const std::size_t stop = std::min(start + kChunk, wave.size());
        for (std::size_t i = start; i < stop && i < best.load(); ++i) {
          if (!accept(wave[i])) continue;
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      pool.reserve(options.threads - 1);
      for (unsigned t = 1; t < options.threads; ++t) pool.emplace_back(worker);
      worker();
    }

    const std::size_t found = best.load();
    if (found < wave.size()) {
      result.decision = Decision::Yes;
      result.explored += found + 1;
      result.witness = std::move(wave[found]);
      return result;
    }
    result.explored += wave.size();
  }
  return result;
}

/// k-subsets of {0..n-1} for k = 0..max_size, each size in lexicographic
/// order of index tuples.
class SubsetGenerator {
 public:
  SubsetGenerator(std::size_t n, std::size_t max_size) : n_(n), max_size_(std::min(n, max_size)) {}

  std::optional<std::vector<std::size_t>> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return current_;
    }
    // Advance within the current size.
    const std::size_t k = current_.size();
    for (std::size_t i = k; i-- > 0;) {
      if (current_[i] < n_ - k + i) {
        ++current_[i];
        for (std::size_t j = i + 1; j < k; ++j) current_[j] = current_[j - 1] + 1;
        return current_;
      }
    }
    if (k + 1 > max_size_) {
      done_ = true;
      return std::nullopt;
    }
    current_.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) current_[j] = j;
    return current_;
  }

 private:
  std::size_t n_;
  std::size_t max_size_;
  std::vector<std::size_t> current_;
  bool started_ = false;
  bool done_ = false;
};

/// Vectors v with 0 <= v[i] <= radix[i] and sum(v) <= limit, in
/// lexicographic (mixed-radix, first digit most significant) order.
class CountVectorGenerator {
 public:
  CountVectorGenerator(std::vector<std::int64_t> radix, std::int64_t limit)
      : radix_(std::move(radix)), current_(radix_.size(), 0), limit_(limit) {}

  std::optional<std::vector<std::int64_t>> next() {
    if (done_) return std::nullopt;
    if (!started_) {
      started_ = true;
      return current_;
    }
    std::int64_t prefix_total = 0;
    for (auto v : current_) prefix_total += v;
    for (std::size_t i = current_.size(); i-- > 0;) {
      prefix_total -= current_[i];  // sum of digits before i
      if (current_[i] < radix_[i] && prefix_total + current_[i] + 1 <= limit_) {
        ++current_[i];
        std::fill(current_.begin() + static_cast<std::ptrdiff_t>(i) + 1, current_.end(), 0);
        return current_;
      }
    }
    done_ = true;
    return std::nullopt;
  }

 private:
  std::vector<std::int64_t> radix_;
  std::vector<std::int64_t> current_;
  std::int64_t limit_;
  bool started_ = false;
  bool done_ = false;
};

/// Bitmasks 0 .. 2^bits - 1 in increasing order.
class MaskGenerator {
 public:
  explicit MaskGenerator(std::size_t bits) : end_(std::uint64_t{1} << bits) {}

  std::optional<std::uint64_t> next() {
    if (current_ >= end_) return std::nullopt;
    return current_++;
  }

 private:
  std::uint64_t end_;
  std::uint64_t current_ = 0;
};

}  // namespace rangectl::detail
