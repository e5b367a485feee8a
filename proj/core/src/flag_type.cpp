#include "polar_ekr/flag_type.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace polar {

FlagType::FlagType(std::vector<int> dims, int rank) : dims_(std::move(dims)), rank_(rank) {
  std::sort(dims_.begin(), dims_.end());
  dims_.erase(std::unique(dims_.begin(), dims_.end()), dims_.end());
  if (dims_.empty()) throw std::invalid_argument("FlagType: type must be nonempty");
  if (dims_.front() < 1 || dims_.back() > rank_)
    throw std::invalid_argument("FlagType: dimensions must lie in [1, " + std::to_string(rank_) + "]");
}

FlagType FlagType::chambers(int rank) {
  std::vector<int> all(rank);
  for (int i = 0; i < rank; ++i) all[i] = i + 1;
  return FlagType(std::move(all), rank);
}

FlagType FlagType::parse(std::string_view text, int rank) {
  if (text == "all") return chambers(rank);
  std::vector<int> dims;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      throw std::invalid_argument("FlagType: cannot parse '" + std::string(token) + "'");
    dims.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return FlagType(std::move(dims), rank);
}

bool FlagType::contains(int s) const { return position(s) >= 0; }

int FlagType::position(int s) const {
  const auto it = std::lower_bound(dims_.begin(), dims_.end(), s);
  if (it == dims_.end() || *it != s) return -1;
  return static_cast<int>(it - dims_.begin());
}

std::string FlagType::str() const {
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims_[i]);
  }
  return out;
}

}  // namespace polar
