#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace votelab {

/// Candidates are referenced by index into a CandidateSet; labels only matter
/// at the I/O boundary.
using CandidateId = int;

class CandidateSet {
public:
  explicit CandidateSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("CandidateSet: empty");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (static_cast<int>(seen.size()) != size()) {
      throw std::invalid_argument("CandidateSet: duplicate label");
    }
  }

  /// Labels "a", "b", ... for m <= 26, then "c27", "c28", ...
  static CandidateSet with_default_labels(int m) {
    if (m < 1) throw std::invalid_argument("CandidateSet: m must be positive");
    std::vector<std::string> labels;
    labels.reserve(m);
    for (int i = 0; i < m; ++i) {
      if (i < 26) labels.emplace_back(1, static_cast<char>('a' + i));
      else labels.push_back("c" + std::to_string(i + 1));
    }
    return CandidateSet(std::move(labels));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(CandidateId c) const { return labels_.at(c); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<CandidateId> find(std::string_view label) const {
    for (int i = 0; i < size(); ++i) {
      if (labels_[i] == label) return i;
    }
    return std::nullopt;
  }

  /// Candidate set over the given ids, keeping this set's label order.
  CandidateSet subset(std::vector<CandidateId> ids) const {
    std::sort(ids.begin(), ids.end());
    std::vector<std::string> labels;
    labels.reserve(ids.size());
    for (CandidateId c : ids) labels.push_back(label(c));
    return CandidateSet(std::move(labels));
  }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

private:
  std::vector<std::string> labels_;
};

/// Strict total order: order[j] is the candidate in position j (0-based; the
/// most preferred candidate sits at position 0). Comparison is lexicographic
/// on the order vector, which defines the canonical ranking order everywhere.
struct Ranking {
  std::vector<CandidateId> order;

  Ranking() = default;
  explicit Ranking(std::vector<CandidateId> o) : order(std::move(o)) {}

  int size() const { return static_cast<int>(order.size()); }
  CandidateId at(int position) const { return order.at(position); }

  int position_of(CandidateId c) const {
    for (int j = 0; j < size(); ++j) {
      if (order[j] == c) return j;
    }
    throw std::invalid_argument("Ranking: candidate not present");
  }

  bool prefers(CandidateId a, CandidateId b) const {
    return position_of(a) < position_of(b);
  }

  friend auto operator<=>(const Ranking&, const Ranking&) = default;
};

/// True when r ranks each of {0..m-1} exactly once.
inline bool is_valid_ranking(const Ranking& r, int m) {
  if (r.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (CandidateId c : r.order) {
    if (c < 0 || c >= m || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

/// Bijective relabeling of candidates; image(c) is the candidate that takes
/// c's place.
class Permutation {
public:
  explicit Permutation(std::vector<CandidateId> image) : image_(std::move(image)) {
    if (!is_valid_ranking(Ranking(image_), size())) {
      throw std::invalid_argument("Permutation: not a bijection");
    }
  }

  static Permutation identity(int m) {
    std::vector<CandidateId> image(m);
    for (int i = 0; i < m; ++i) image[i] = i;
    return Permutation(std::move(image));
  }

  /// Swaps a and b, fixing everything else.
  static Permutation transposition(int m, CandidateId a, CandidateId b) {
    if (a == b) throw std::invalid_argument("Permutation: transposition needs a != b");
    Permutation p = identity(m);
    std::swap(p.image_[a], p.image_[b]);
    return p;
  }

  int size() const { return static_cast<int>(image_.size()); }
  CandidateId operator()(CandidateId c) const { return image_.at(c); }
  const std::vector<CandidateId>& image() const { return image_; }

  Permutation inverse() const {
    std::vector<CandidateId> inv(image_.size());
    for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<CandidateId> image_;
};

/// Ranking over the subset, positions compressed, candidates reindexed by
/// ascending id (matching CandidateSet::subset). Subset ids must be distinct,
/// nonempty, and present in r.
inline Ranking restrict_ranking(const Ranking& r, std::vector<CandidateId> subset) {
  if (subset.empty()) throw std::invalid_argument("restrict_ranking: empty subset");
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) {
    throw std::invalid_argument("restrict_ranking: duplicate candidate");
  }
  std::vector<CandidateId> out;
  out.reserve(subset.size());
  for (CandidateId c : r.order) {
    auto it = std::lower_bound(subset.begin(), subset.end(), c);
    if (it != subset.end() && *it == c) {
      out.push_back(static_cast<CandidateId>(it - subset.begin()));
    }
  }
  if (out.size() != subset.size()) {
    throw std::invalid_argument("restrict_ranking: subset not contained in ranking");
  }
  return Ranking(std::move(out));
}

/// Relabels every entry: position j holds pi(r(j)).
inline Ranking permute_ranking(const Permutation& pi, const Ranking& r) {
  if (pi.size() != r.size()) throw std::invalid_argument("permute_ranking: size mismatch");
  std::vector<CandidateId> out(r.order.size());
  for (int j = 0; j < r.size(); ++j) out[j] = pi(r.order[j]);
  return Ranking(std::move(out));
}

} // namespace votelab
