#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "matroid/subsets.hpp"

namespace matroid {

/// An oracle-presented matroid: a deterministic membership predicate over
/// subsets of {0..n-1} plus a query counter.  Copies share the predicate and
/// the counter, so queries made through a derived oracle (restriction,
/// contraction, solver wrapper) remain visible on the original handle.
///
/// Counters are plain integers: an oracle must be confined to one thread.
class MatroidOracle {
 public:
  MatroidOracle(int ground_size, std::string label,
                std::function<bool(Subset)> pred)
      : state_(std::make_shared<State>()) {
    if (ground_size < 1 || ground_size > kMaxGroundSize)
      throw std::invalid_argument("ground set size must be in [1,64]");
    state_->n = ground_size;
    state_->label = std::move(label);
    state_->pred = std::move(pred);
  }

  int ground_size() const { return state_->n; }
  const std::string& label() const { return state_->label; }

  bool contains(Subset s) const {
    if ((s & ~full_set(state_->n)) != 0)
      throw std::invalid_argument("subset has elements outside the ground set");
    ++state_->queries;
    return state_->pred(s);
  }

  std::uint64_t queries() const { return state_->queries; }

 private:
  struct State {
    int n = 0;
    std::string label;
    std::function<bool(Subset)> pred;
    std::uint64_t queries = 0;
  };
  std::shared_ptr<State> state_;
};

/// Per-oracle query counts plus their total.
struct QueryReport {
  std::vector<std::pair<std::string, std::uint64_t>> per_oracle;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [name, c] : per_oracle) t += c;
    return t;
  }

  void add(const std::string& name, std::uint64_t count) {
    per_oracle.emplace_back(name, count);
  }
};

/// Snapshots a group of counters and reports the increments since capture.
class QueryCountScope {
 public:
  void watch(const std::string& name, const std::function<std::uint64_t()>& get) {
    entries_.push_back({name, get, get()});
  }
  void watch(const MatroidOracle& m) {
    watch(m.label(), [m] { return m.queries(); });
  }

  QueryReport report() const {
    QueryReport r;
    for (const auto& e : entries_) r.add(e.name, e.get() - e.start);
    return r;
  }

 private:
  struct Entry {
    std::string name;
    std::function<std::uint64_t()> get;
    std::uint64_t start;
  };
  std::vector<Entry> entries_;
};

}  // namespace matroid
