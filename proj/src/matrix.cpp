#include "boise/matrix.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace boise {

namespace {

void check_axes(const std::vector<std::string>& targets,
                const std::vector<std::string>& compounds) {
  require(!targets.empty(), "matrix needs at least one target");
  require(!compounds.empty(), "matrix needs at least one compound");
  std::unordered_set<std::string> seen;
  for (const auto& t : targets)
    require(seen.insert(t).second, "duplicate target id: " + t);
  seen.clear();
  for (const auto& c : compounds)
    require(seen.insert(c).second, "duplicate compound id: " + c);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, int row, int col) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    fail("parse error at row " + std::to_string(row) + ", column " +
         std::to_string(col) + ": not a number: '" + cell + "'");
  return v;
}

struct RawCsv {
  std::string corner;
  std::vector<std::string> targets, compounds;
  std::vector<double> values;
  std::vector<std::uint8_t> observed;
};

RawCsv read_csv(const std::string& path, const std::string& missing_token) {
  std::ifstream in(path);
  require(in.good(), "cannot open file: " + path);
  RawCsv raw;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "empty file: " + path);
  auto header = split_csv_line(line);
  require(header.size() >= 2, "header must list at least one compound");
  raw.corner = trim(header[0]);
  for (std::size_t j = 1; j < header.size(); ++j)
    raw.compounds.push_back(trim(header[j]));
  const std::size_t n = raw.compounds.size();

  int row = 1;  // header was row 0
  while (std::getline(in, line)) {
    std::string stripped = trim(line);
    if (stripped.empty()) {
      ++row;
      continue;
    }
    auto cells = split_csv_line(line);
    if (cells.size() != n + 1)
      fail("malformed row " + std::to_string(row) + ": expected " +
           std::to_string(n + 1) + " cells, got " + std::to_string(cells.size()));
    raw.targets.push_back(trim(cells[0]));
    for (std::size_t j = 1; j <= n; ++j) {
      std::string cell = trim(cells[j]);
      if (cell == missing_token) {
        raw.values.push_back(0.0);
        raw.observed.push_back(0);
      } else {
        raw.values.push_back(parse_number(cell, row, static_cast<int>(j)));
        raw.observed.push_back(1);
      }
    }
    ++row;
  }
  require(!raw.targets.empty(), "no data rows in " + path);
  return raw;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

BioactivityMatrix::BioactivityMatrix(std::vector<std::string> targets,
                                     std::vector<std::string> compounds,
                                     std::vector<std::uint8_t> values,
                                     std::vector<std::uint8_t> observed,
                                     std::string corner_label)
    : m_(static_cast<int>(targets.size())),
      n_(static_cast<int>(compounds.size())),
      targets_(std::move(targets)),
      compounds_(std::move(compounds)),
      values_(std::move(values)),
      observed_(std::move(observed)),
      corner_(std::move(corner_label)) {
  check_axes(targets_, compounds_);
  const std::size_t cells = static_cast<std::size_t>(m_) * n_;
  require(values_.size() == cells && observed_.size() == cells,
          "matrix buffers do not match the declared shape");
  for (std::size_t c = 0; c < cells; ++c)
    if (observed_[c]) require(values_[c] <= 1, "observed cell must be 0 or 1");
}

std::vector<int> BioactivityMatrix::column_sums() const {
  std::vector<int> sums(n_, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j)
      if (is_observed(i, j)) sums[j] += value(i, j);
  return sums;
}

std::vector<int> BioactivityMatrix::column_observed() const {
  std::vector<int> counts(n_, 0);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j)
      if (is_observed(i, j)) ++counts[j];
  return counts;
}

double BioactivityMatrix::observed_mean() const {
  long long total = 0, count = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j)
      if (is_observed(i, j)) {
        total += value(i, j);
        ++count;
      }
  require(count > 0, "matrix has no observed cells");
  return static_cast<double>(total) / static_cast<double>(count);
}

bool BioactivityMatrix::fully_observed() const {
  for (auto o : observed_)
    if (!o) return false;
  return true;
}

BioactivityMatrix BioactivityMatrix::without_target(int i) const {
  require(i >= 0 && i < m_, "target index out of range");
  require(m_ > 1, "cannot drop the only target");
  std::vector<std::string> targets;
  std::vector<std::uint8_t> values, observed;
  targets.reserve(m_ - 1);
  values.reserve(static_cast<std::size_t>(m_ - 1) * n_);
  observed.reserve(static_cast<std::size_t>(m_ - 1) * n_);
  for (int r = 0; r < m_; ++r) {
    if (r == i) continue;
    targets.push_back(targets_[r]);
    for (int j = 0; j < n_; ++j) {
      values.push_back(values_[idx(r, j)]);
      observed.push_back(observed_[idx(r, j)]);
    }
  }
  return BioactivityMatrix(std::move(targets), compounds_, std::move(values),
                           std::move(observed), corner_);
}

ContinuousMatrix::ContinuousMatrix(std::vector<std::string> targets,
                                   std::vector<std::string> compounds,
                                   std::vector<double> values,
                                   std::vector<std::uint8_t> observed,
                                   std::string corner_label)
    : m_(static_cast<int>(targets.size())),
      n_(static_cast<int>(compounds.size())),
      targets_(std::move(targets)),
      compounds_(std::move(compounds)),
      values_(std::move(values)),
      observed_(std::move(observed)),
      corner_(std::move(corner_label)) {
  check_axes(targets_, compounds_);
  const std::size_t cells = static_cast<std::size_t>(m_) * n_;
  require(values_.size() == cells && observed_.size() == cells,
          "matrix buffers do not match the declared shape");
  for (std::size_t c = 0; c < cells; ++c)
    if (observed_[c])
      require(std::isfinite(values_[c]), "observed cell must be finite");
}

TwoSdResult binarize_2sd(const ContinuousMatrix& z) {
  const int m = z.num_targets(), n = z.num_compounds();
  std::vector<std::uint8_t> values(static_cast<std::size_t>(m) * n, 0);
  std::vector<std::uint8_t> observed(static_cast<std::size_t>(m) * n, 0);
  std::vector<double> thresholds(m, 0.0);
  std::vector<int> constant_rows;
  for (int i = 0; i < m; ++i) {
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < n; ++j)
      if (z.is_observed(i, j)) {
        sum += z.value(i, j);
        ++count;
      }
    if (count < 2)
      fail("2sd rule needs at least two observed entries in row '" +
           z.target_id(i) + "'");
    const double mean = sum / count;
    double ss = 0.0;
    for (int j = 0; j < n; ++j)
      if (z.is_observed(i, j)) {
        const double d = z.value(i, j) - mean;
        ss += d * d;
      }
    const double sd = std::sqrt(ss / (count - 1));
    if (sd == 0.0) constant_rows.push_back(i);
    const double tau = mean + 2.0 * sd;
    thresholds[i] = tau;
    for (int j = 0; j < n; ++j) {
      const std::size_t c = static_cast<std::size_t>(i) * n + j;
      if (z.is_observed(i, j)) {
        observed[c] = 1;
        values[c] = z.value(i, j) >= tau ? 1 : 0;
      }
    }
  }
  BioactivityMatrix out(z.target_ids(), z.compound_ids(), std::move(values),
                        std::move(observed), z.corner_label());
  return TwoSdResult{std::move(out), std::move(thresholds),
                     std::move(constant_rows)};
}

BioactivityMatrix binarize_zscore(const ContinuousMatrix& z, double threshold) {
  require(std::isfinite(threshold), "z-score threshold must be finite");
  const int m = z.num_targets(), n = z.num_compounds();
  std::vector<std::uint8_t> values(static_cast<std::size_t>(m) * n, 0);
  std::vector<std::uint8_t> observed(static_cast<std::size_t>(m) * n, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t c = static_cast<std::size_t>(i) * n + j;
      if (z.is_observed(i, j)) {
        observed[c] = 1;
        values[c] = z.value(i, j) < threshold ? 1 : 0;
      }
    }
  return BioactivityMatrix(z.target_ids(), z.compound_ids(), std::move(values),
                           std::move(observed), z.corner_label());
}

LoadedMatrix load_csv(const std::string& path, const std::string& missing_token) {
  RawCsv raw = read_csv(path, missing_token);
  bool binary = true;
  for (std::size_t c = 0; c < raw.values.size(); ++c)
    if (raw.observed[c] && raw.values[c] != 0.0 && raw.values[c] != 1.0) {
      binary = false;
      break;
    }
  if (binary) {
    std::vector<std::uint8_t> values(raw.values.size());
    for (std::size_t c = 0; c < raw.values.size(); ++c)
      values[c] = raw.values[c] == 1.0 ? 1 : 0;
    return BioactivityMatrix(std::move(raw.targets), std::move(raw.compounds),
                             std::move(values), std::move(raw.observed),
                             std::move(raw.corner));
  }
  return ContinuousMatrix(std::move(raw.targets), std::move(raw.compounds),
                          std::move(raw.values), std::move(raw.observed),
                          std::move(raw.corner));
}

BioactivityMatrix load_binary_csv(const std::string& path,
                                  const std::string& missing_token) {
  LoadedMatrix loaded = load_csv(path, missing_token);
  if (auto* b = std::get_if<BioactivityMatrix>(&loaded)) return std::move(*b);
  fail("expected a binary matrix in " + path +
       " but found non-{0,1} observed cells");
}

ContinuousMatrix load_continuous_csv(const std::string& path,
                                     const std::string& missing_token) {
  RawCsv raw = read_csv(path, missing_token);
  return ContinuousMatrix(std::move(raw.targets), std::move(raw.compounds),
                          std::move(raw.values), std::move(raw.observed),
                          std::move(raw.corner));
}

void write_csv(const BioactivityMatrix& x, std::ostream& out,
               const std::string& missing_token) {
  out << x.corner_label();
  for (int j = 0; j < x.num_compounds(); ++j) out << ',' << x.compound_id(j);
  out << '\n';
  for (int i = 0; i < x.num_targets(); ++i) {
    out << x.target_id(i);
    for (int j = 0; j < x.num_compounds(); ++j) {
      out << ',';
      if (x.is_observed(i, j))
        out << x.value(i, j);
      else
        out << missing_token;
    }
    out << '\n';
  }
}

void write_csv(const ContinuousMatrix& z, std::ostream& out,
               const std::string& missing_token) {
  out << z.corner_label();
  for (int j = 0; j < z.num_compounds(); ++j) out << ',' << z.compound_id(j);
  out << '\n';
  for (int i = 0; i < z.num_targets(); ++i) {
    out << z.target_id(i);
    for (int j = 0; j < z.num_compounds(); ++j) {
      out << ',';
      if (z.is_observed(i, j))
        out << format_double(z.value(i, j));
      else
        out << missing_token;
    }
    out << '\n';
  }
}

}  // namespace boise
