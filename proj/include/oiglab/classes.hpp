#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "oiglab/error.hpp"

namespace oiglab {

/// A label vector; entries index into the owning class's label alphabet.
using Pattern = std::vector<int>;

/// Finite hypothesis class over interned point and label identifiers.
///
/// Hypotheses are stored duplicate-free in lexicographic order, so two
/// classes built from the same rows in any order compare equal.
class HypothesisClass {
 public:
  HypothesisClass() = default;

  static HypothesisClass make(std::vector<std::string> points, std::vector<std::string> labels,
                              std::vector<Pattern> table) {
    if (points.empty()) throw DomainError("domain must be nonempty");
    if (labels.empty()) throw DomainError("label alphabet must be nonempty");
    check_unique(points, "point");
    check_unique(labels, "label");
    if (table.empty()) throw DomainError("empty table");
    const auto width = points.size();
    const auto k = static_cast<int>(labels.size());
    for (std::size_t r = 0; r < table.size(); ++r) {
      if (table[r].size() != width)
        throw DomainError("ragged rows: row " + std::to_string(r) + " has length " +
                          std::to_string(table[r].size()) + ", expected " + std::to_string(width));
      for (int entry : table[r])
        if (entry < 0 || entry >= k)
          throw DomainError("unknown label index " + std::to_string(entry) + " in row " +
                            std::to_string(r));
    }
    std::sort(table.begin(), table.end());
    table.erase(std::unique(table.begin(), table.end()), table.end());

    HypothesisClass c;
    c.points_ = std::move(points);
    c.labels_ = std::move(labels);
    c.hypotheses_ = std::move(table);
    return c;
  }

  [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] const std::vector<Pattern>& hypotheses() const noexcept { return hypotheses_; }
  [[nodiscard]] std::size_t num_points() const noexcept { return points_.size(); }
  [[nodiscard]] std::size_t num_labels() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return hypotheses_.size(); }

  [[nodiscard]] int point_index(const std::string& id) const {
    auto it = std::find(points_.begin(), points_.end(), id);
    if (it == points_.end()) throw DomainError("unknown point '" + id + "'");
    return static_cast<int>(it - points_.begin());
  }

  friend bool operator==(const HypothesisClass&, const HypothesisClass&) = default;

 private:
  static void check_unique(const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second)
        throw DomainError(std::string("duplicate ") + what + " '" + id + "'");
  }

  std::vector<std::string> points_;
  std::vector<std::string> labels_;
  std::vector<Pattern> hypotheses_;
};

/// Ordered sequence of domain-point indices; repeats allowed.
class Sample {
 public:
  Sample() = default;

  static Sample make(std::vector<int> indices, std::size_t num_points) {
    if (indices.empty()) throw DomainError("sample must have length n >= 1");
    for (int i : indices)
      if (i < 0 || static_cast<std::size_t>(i) >= num_points)
        throw DomainError("invalid index " + std::to_string(i) + " in sample");
    Sample s;
    s.indices_ = std::move(indices);
    return s;
  }

  [[nodiscard]] const std::vector<int>& indices() const noexcept { return indices_; }
  [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
  [[nodiscard]] int operator[](std::size_t i) const { return indices_[i]; }

  friend bool operator==(const Sample&, const Sample&) = default;

 private:
  std::vector<int> indices_;
};

/// H|_S: the distinct projections of the class onto the sample, sorted.
inline std::vector<Pattern> restrict_to(const HypothesisClass& cls, const Sample& sample) {
  for (int i : sample.indices())
    if (i < 0 || static_cast<std::size_t>(i) >= cls.num_points())
      throw DomainError("invalid index " + std::to_string(i) + " in sample");
  std::vector<Pattern> out;
  out.reserve(cls.size());
  for (const auto& h : cls.hypotheses()) {
    Pattern p(sample.size());
    for (std::size_t j = 0; j < sample.size(); ++j) p[j] = h[sample[j]];
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline constexpr std::size_t kDefaultCantorCap = 12870;

/// Finite slice of the first Cantor class at even d.
///
/// Points are x1..xd. Labels are the half-size subsets actually used
/// (in increasing bitmask order, named like "{1,3}") followed by "*".
/// h_A maps x to the label of A when x is in A and to "*" otherwise.
inline HypothesisClass gen_cantor(int d, std::size_t cap = kDefaultCantorCap) {
  if (d < 2) throw DomainError("d must be at least 2");
  if (d % 2 != 0) throw DomainError("d must be even");
  if (d > 30) throw DomainError("cap exceeded: d = " + std::to_string(d));
  // C(d, d/2) computed exactly; d <= 30 keeps it in 64 bits.
  std::uint64_t count = 1;
  for (int i = 1; i <= d / 2; ++i) count = count * static_cast<std::uint64_t>(d / 2 + i) / i;
  if (count > cap)
    throw DomainError("cap exceeded: C(" + std::to_string(d) + "," + std::to_string(d / 2) +
                      ") = " + std::to_string(count) + " > " + std::to_string(cap));

  std::vector<std::string> points;
  for (int i = 1; i <= d; ++i) points.push_back("x" + std::to_string(i));

  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 0; mask < (1U << d); ++mask)
    if (std::popcount(mask) == d / 2) subsets.push_back(mask);

  std::vector<std::string> labels;
  std::vector<Pattern> rows;
  const int star = static_cast<int>(subsets.size());
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    std::string name = "{";
    Pattern row(d, star);
    for (int i = 0; i < d; ++i) {
      if ((subsets[a] >> i) & 1U) {
        if (name.size() > 1) name += ',';
        name += std::to_string(i + 1);
        row[i] = static_cast<int>(a);
      }
    }
    labels.push_back(name + "}");
    rows.push_back(std::move(row));
  }
  labels.emplace_back("*");
  return HypothesisClass::make(std::move(points), std::move(labels), std::move(rows));
}

/// Uniformly random class of exactly num_hypotheses distinct vectors.
/// Deterministic for a given seed; index draws use plain modular reduction
/// of mt19937_64 output so results agree across standard libraries.
inline HypothesisClass gen_random(int num_points, int num_labels, std::size_t num_hypotheses,
                                  std::uint64_t seed) {
  if (num_points < 1 || num_labels < 1) throw DomainError("need at least one point and label");
  if (num_hypotheses < 1) throw DomainError("need at least one hypothesis");
  // total = num_labels^num_points, saturating.
  std::uint64_t total = 1;
  bool huge = false;
  for (int i = 0; i < num_points; ++i) {
    if (total > (std::uint64_t{1} << 40) / static_cast<std::uint64_t>(num_labels)) {
      huge = true;
      break;
    }
    total *= static_cast<std::uint64_t>(num_labels);
  }
  if (!huge && num_hypotheses > total)
    throw DomainError("infeasible count: " + std::to_string(num_hypotheses) + " > " +
                      std::to_string(num_labels) + "^" + std::to_string(num_points));

  std::mt19937_64 rng(seed);
  auto decode = [&](std::uint64_t code) {
    Pattern p(num_points);
    for (int i = num_points - 1; i >= 0; --i) {
      p[i] = static_cast<int>(code % static_cast<std::uint64_t>(num_labels));
      code /= static_cast<std::uint64_t>(num_labels);
    }
    return p;
  };

  std::vector<Pattern> rows;
  if (!huge && num_hypotheses * 2 > total) {
    // Dense request: partial Fisher-Yates over all codes.
    std::vector<std::uint64_t> codes(total);
    for (std::uint64_t c = 0; c < total; ++c) codes[c] = c;
    for (std::size_t i = 0; i < num_hypotheses; ++i) {
      std::uint64_t j = i + rng() % (total - i);
      std::swap(codes[i], codes[j]);
      rows.push_back(decode(codes[i]));
    }
  } else {
    std::set<Pattern> seen;
    while (seen.size() < num_hypotheses) {
      Pattern p(num_points);
      for (auto& e : p) e = static_cast<int>(rng() % static_cast<std::uint64_t>(num_labels));
      seen.insert(std::move(p));
    }
    rows.assign(seen.begin(), seen.end());
  }

  std::vector<std::string> points, labels;
  for (int i = 0; i < num_points; ++i) points.push_back("p" + std::to_string(i));
  for (int i = 0; i < num_labels; ++i) labels.push_back(std::to_string(i));
  return HypothesisClass::make(std::move(points), std::move(labels), std::move(rows));
}

inline constexpr std::size_t kDefaultSequenceCap = 100'000;

/// All samples in X^n in lexicographic order, or only the nondecreasing ones
/// (one representative per point multiset) when `multisets` is set.
inline std::vector<Sample> enumerate_samples(std::size_t num_points, int n, bool multisets,
                                             std::size_t cap = kDefaultSequenceCap) {
  if (n < 1) throw DomainError("sample length n must be >= 1");
  if (num_points < 1) throw DomainError("domain must be nonempty");
  // Count first so the cap is checked before allocating.
  long double count = 1;
  if (multisets) {
    for (int i = 1; i <= n; ++i) count = count * static_cast<long double>(num_points + i - 1) / i;
  } else {
    for (int i = 0; i < n; ++i) count *= static_cast<long double>(num_points);
  }
  if (count > static_cast<long double>(cap) + 0.5L)
    throw DomainError("cap exceeded: " + std::to_string(static_cast<unsigned long long>(count)) +
                      " sequences > " + std::to_string(cap));
  std::vector<Sample> out;
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  const int k = static_cast<int>(num_points);
  for (;;) {
    out.push_back(Sample::make(s, num_points));
    int i = n - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == k - 1) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j)
      s[static_cast<std::size_t>(j)] = multisets ? s[static_cast<std::size_t>(i)] : 0;
  }
  return out;
}

}  // namespace oiglab
