#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace degpd {

// Validated sample of non-negative integer counts, stored as a sorted
// frequency table. Permutation of the raw observations cannot change it,
// which makes every downstream fit permutation-invariant for free.
class CountSample {
 public:
  CountSample() = default;
  explicit CountSample(const std::vector<std::int64_t>& observations);
  static CountSample from_frequencies(
      std::vector<std::pair<std::int64_t, std::int64_t>> value_count_pairs);

  std::int64_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& frequencies() const {
    return freq_;
  }

  std::int64_t max_value() const;
  std::int64_t count_of_zero() const;
  double zero_fraction() const;
  double mean() const;
  double mean_of_positive() const;

  // Observations in sorted order (expanded from the table).
  std::vector<std::int64_t> sorted_values() const;

  // New sample of the exceedances y - u over y >= u. Throws if none exceed.
  CountSample exceedances_above(std::int64_t threshold) const;

  // Order-independent fingerprint; lets fits remember which data they saw.
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> freq_;  // value -> count
  std::int64_t n_ = 0;
};

// Reads either one count per line or two-column `value,count` CSV (header
// optional, auto-detected). Blank lines are skipped. Malformed or negative
// entries raise std::runtime_error naming the line number.
CountSample ingest_counts(const std::string& path);
CountSample parse_counts(const std::string& text, const std::string& origin);

}  // namespace degpd
