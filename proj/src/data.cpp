#include "degpd/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "degpd/rng.hpp"

namespace degpd {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool parse_int(const std::string& field, std::int64_t& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  const auto result = std::from_chars(first, last, out);
  return result.ec == std::errc() && result.ptr == last;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no,
                       const std::string& why) {
  std::ostringstream msg;
  msg << origin << ":" << line_no << ": " << why;
  throw std::runtime_error(msg.str());
}

}  // namespace

CountSample::CountSample(const std::vector<std::int64_t>& observations) {
  std::map<std::int64_t, std::int64_t> table;
  for (const auto value : observations) {
    if (value < 0)
      throw std::invalid_argument("CountSample: negative observation");
    ++table[value];
  }
  freq_.assign(table.begin(), table.end());
  n_ = static_cast<std::int64_t>(observations.size());
}

CountSample CountSample::from_frequencies(
    std::vector<std::pair<std::int64_t, std::int64_t>> value_count_pairs) {
  std::map<std::int64_t, std::int64_t> table;
  for (const auto& [value, count] : value_count_pairs) {
    if (value < 0) throw std::invalid_argument("CountSample: negative value");
    if (count <= 0) throw std::invalid_argument("CountSample: count must be positive");
    table[value] += count;
  }
  CountSample sample;
  sample.freq_.assign(table.begin(), table.end());
  for (const auto& [value, count] : sample.freq_) sample.n_ += count;
  return sample;
}

std::int64_t CountSample::max_value() const {
  if (freq_.empty()) throw std::logic_error("CountSample: empty sample");
  return freq_.back().first;
}

std::int64_t CountSample::count_of_zero() const {
  if (!freq_.empty() && freq_.front().first == 0) return freq_.front().second;
  return 0;
}

double CountSample::zero_fraction() const {
  return n_ == 0 ? 0.0 : static_cast<double>(count_of_zero()) / static_cast<double>(n_);
}

double CountSample::mean() const {
  double total = 0.0;
  for (const auto& [value, count] : freq_)
    total += static_cast<double>(value) * static_cast<double>(count);
  return n_ == 0 ? 0.0 : total / static_cast<double>(n_);
}

double CountSample::mean_of_positive() const {
  double total = 0.0;
  std::int64_t positives = 0;
  for (const auto& [value, count] : freq_) {
    if (value > 0) {
      total += static_cast<double>(value) * static_cast<double>(count);
      positives += count;
    }
  }
  return positives == 0 ? 0.0 : total / static_cast<double>(positives);
}

std::vector<std::int64_t> CountSample::sorted_values() const {
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(n_));
  for (const auto& [value, count] : freq_)
    values.insert(values.end(), static_cast<std::size_t>(count), value);
  return values;
}

CountSample CountSample::exceedances_above(std::int64_t threshold) const {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (const auto& [value, count] : freq_)
    if (value >= threshold) pairs.emplace_back(value - threshold, count);
  if (pairs.empty())
    throw std::runtime_error("no exceedances above threshold " +
                             std::to_string(threshold));
  return from_frequencies(std::move(pairs));
}

std::uint64_t CountSample::fingerprint() const {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const auto& [value, count] : freq_) {
    std::uint64_t x = h ^ static_cast<std::uint64_t>(value);
    h = Rng::splitmix64(x);
    x = h ^ static_cast<std::uint64_t>(count);
    h = Rng::splitmix64(x);
  }
  return h ^ static_cast<std::uint64_t>(n_);
}

CountSample parse_counts(const std::string& text, const std::string& origin) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const bool may_be_header = first_content_line;
    first_content_line = false;
    const auto comma = t.find(',');
    if (comma == std::string::npos) {
      std::int64_t value;
      if (!parse_int(t, value)) fail(origin, line_no, "expected an integer count");
      if (value < 0) fail(origin, line_no, "negative count value");
      pairs.emplace_back(value, 1);
    } else {
      std::int64_t value, count;
      const bool ok = parse_int(t.substr(0, comma), value) &&
                      parse_int(t.substr(comma + 1), count);
      if (!ok) {
        // Only the first row of a two-column file may be a header.
        if (may_be_header) continue;
        fail(origin, line_no, "expected `value,count`");
      }
      if (value < 0) fail(origin, line_no, "negative count value");
      if (count < 0) fail(origin, line_no, "negative frequency");
      if (count > 0) pairs.emplace_back(value, count);
    }
  }
  if (pairs.empty())
    throw std::runtime_error(origin + ": no observations found");
  return CountSample::from_frequencies(std::move(pairs));
}

CountSample ingest_counts(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_counts(buffer.str(), path);
}

}  // namespace degpd
