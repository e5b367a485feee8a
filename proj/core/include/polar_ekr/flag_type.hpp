#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polar {

/// Type J of a flag: a nonempty strictly increasing subset of {1, ..., n}.
class FlagType {
public:
  FlagType() = default;
  /// Sorts and deduplicates; throws std::invalid_argument if empty or out of [1, n].
  FlagType(std::vector<int> dims, int rank);

  static FlagType single(int s, int rank) { return FlagType({s}, rank); }
  static FlagType chambers(int rank);
  /// "1,3" or "all".
  static FlagType parse(std::string_view text, int rank);

  const std::vector<int>& dims() const { return dims_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(dims_.size()); }
  int front() const { return dims_.front(); }
  int back() const { return dims_.back(); }
  bool contains(int s) const;
  bool is_chamber_type() const { return size() == rank_; }
  /// Position of dimension s inside dims(), or -1.
  int position(int s) const;

  std::string str() const;

  friend bool operator==(const FlagType&, const FlagType&) = default;

private:
  std::vector<int> dims_;
  int rank_ = 0;
};

}  // namespace polar
