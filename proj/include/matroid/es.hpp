#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "matroid/errors.hpp"
#include "matroid/subsets.hpp"

namespace matroid {

/// An Empty Set instance: a universe {0..n-1}, a cardinality target k, and a
/// counted membership oracle for a family of k-subsets.  Queries of the wrong
/// cardinality are answered false (the family lives inside the k-subsets) but
/// are still counted.  Copies share the oracle state, including the counter
/// and the optional transcript of distinct k-subset queries.
class EmptySetInstance {
 public:
  EmptySetInstance(int n, int k, std::string label,
                   std::function<bool(Subset)> family)
      : n_(n), k_(k), state_(std::make_shared<State>()) {
    if (n < 1 || n > kMaxGroundSize)
      throw std::invalid_argument("universe size must be in [1,64]");
    if (k < 0 || k > n) throw std::invalid_argument("need 0 <= k <= n");
    state_->label = std::move(label);
    state_->family = std::move(family);
  }

  int universe_size() const { return n_; }
  int cardinality_target() const { return k_; }
  const std::string& label() const { return state_->label; }

  bool family_contains(Subset s) const {
    if ((s & ~full_set(n_)) != 0)
      throw std::invalid_argument("queried set outside the universe");
    ++state_->queries;
    if (subset_size(s) != k_) return false;
    if (state_->recording && state_->seen.insert(s).second)
      state_->transcript.push_back(s);
    return state_->family(s);
  }

  std::uint64_t queries() const { return state_->queries; }

  void start_transcript() const {
    state_->recording = true;
    state_->transcript.clear();
    state_->seen.clear();
  }
  const std::vector<Subset>& transcript() const { return state_->transcript; }
  bool was_queried(Subset s) const { return state_->seen.count(s) > 0; }

  static EmptySetInstance empty_family(int n, int k) {
    return EmptySetInstance(n, k, "F(empty)", [](Subset) { return false; });
  }

  static EmptySetInstance planted(int n, int k, Subset member) {
    if (subset_size(member) != k)
      throw std::invalid_argument("planted set has the wrong cardinality");
    return EmptySetInstance(n, k, "F(planted)",
                            [member](Subset s) { return s == member; });
  }

  static EmptySetInstance explicit_family(int n, int k, std::vector<Subset> members) {
    std::unordered_set<Subset> set;
    for (Subset m : members) {
      if (subset_size(m) != k)
        throw std::invalid_argument("family member has the wrong cardinality");
      if ((m & ~full_set(n)) != 0)
        throw std::invalid_argument("family member outside the universe");
      set.insert(m);
    }
    return EmptySetInstance(n, k, "F(explicit)",
                            [set = std::move(set)](Subset s) { return set.count(s) > 0; });
  }

 private:
  struct State {
    std::string label;
    std::function<bool(Subset)> family;
    std::uint64_t queries = 0;
    bool recording = false;
    std::vector<Subset> transcript;
    std::unordered_set<Subset> seen;
  };
  int n_;
  int k_;
  std::shared_ptr<State> state_;
};

/// Parses an explicit family: one k-subset per line, 1-based space-separated
/// element indices.  Blank lines and lines starting with '#' are skipped.
inline std::vector<Subset> parse_es_family(std::istream& in, int n, int k) {
  std::vector<Subset> members;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    Subset s = 0;
    int e;
    int count = 0;
    while (row >> e) {
      if (e < 1 || e > n)
        throw ParseError("family line " + std::to_string(lineno) +
                         ": element out of range");
      if (subset_test(s, e - 1))
        throw ParseError("family line " + std::to_string(lineno) +
                         ": repeated element");
      s = subset_with(s, e - 1);
      ++count;
    }
    if (!row.eof())
      throw ParseError("family line " + std::to_string(lineno) + ": bad token");
    if (count == 0) continue;
    if (count != k)
      throw ParseError("family line " + std::to_string(lineno) +
                       ": expected a " + std::to_string(k) + "-subset");
    members.push_back(s);
  }
  return members;
}

}  // namespace matroid
