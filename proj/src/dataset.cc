// Copyright 2026 The dprank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprank/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "dprank/csv_util.h"
#include "dprank/errors.h"

namespace dprank {

namespace {

constexpr std::string_view kCsvHeader = "user_id,item_i,item_j,value,kind";
constexpr std::string_view kPreferenceHeader = "user_id,item_i,item_j,choice";

std::string LineError(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

bool IsBinaryKind(ValueKind kind) {
  return kind == ValueKind::kRawBinary || kind == ValueKind::kRRBinary;
}

// Draws per-user records into `out[l]` from an independent stream for user l.
template <typename PerUser>
std::vector<Comparison> ForEachUser(int users, std::uint64_t base,
                                    PerUser&& per_user) {
  std::vector<std::vector<Comparison>> chunks(users);
#pragma omp parallel for schedule(static)
  for (int l = 0; l < users; ++l) {
    Rng rng = MakeRng(base, {static_cast<std::uint64_t>(l)});
    per_user(l, rng, chunks[l]);
  }
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.size();
  std::vector<Comparison> records;
  records.reserve(total);
  for (auto& c : chunks) records.insert(records.end(), c.begin(), c.end());
  return records;
}

}  // namespace

PreferenceVector CenteredUniformTheta(int items, Rng& rng) {
  if (items < 1) throw ValidationError("need at least one item");
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PreferenceVector theta(items);
  for (double& t : theta) t = dist(rng);
  Center(theta);
  return theta;
}

PreferenceVector EvenlySpacedTheta(int items, double delta) {
  if (items < 1) throw ValidationError("need at least one item");
  PreferenceVector theta(items);
  for (int i = 0; i < items; ++i) theta[i] = -delta * i;
  Center(theta);
  return theta;
}

void Center(PreferenceVector& theta) {
  if (theta.empty()) return;
  const double mean =
      std::accumulate(theta.begin(), theta.end(), 0.0) / theta.size();
  for (double& t : theta) t -= mean;
}

std::string_view ToString(ValueKind kind) {
  switch (kind) {
    case ValueKind::kRawBinary: return "raw_binary";
    case ValueKind::kRRBinary: return "rr_binary";
    case ValueKind::kDebiasedWeighted: return "debiased_weighted";
    case ValueKind::kLaplaceReal: return "laplace_real";
  }
  return "?";
}

ValueKind ParseValueKind(std::string_view token) {
  for (auto k : {ValueKind::kRawBinary, ValueKind::kRRBinary,
                 ValueKind::kDebiasedWeighted, ValueKind::kLaplaceReal}) {
    if (token == ToString(k)) return k;
  }
  throw ValidationError("unknown record kind '" + std::string(token) + "'");
}

std::string_view ToString(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kClassicRR: return "rr";
    case Mechanism::kADRR: return "adrr";
    case Mechanism::kLaplace: return "laplace";
  }
  return "?";
}

Mechanism ParseMechanism(std::string_view token) {
  for (auto m : {Mechanism::kClassicRR, Mechanism::kADRR, Mechanism::kLaplace}) {
    if (token == ToString(m)) return m;
  }
  throw ValidationError("unknown mechanism '" + std::string(token) +
                        "' (expected rr, adrr or laplace)");
}

PairwiseDataset::PairwiseDataset(int items, int users, ValueKind kind,
                                 std::vector<Comparison> records,
                                 std::optional<PrivacyProfile> profile)
    : items_(items),
      users_(users),
      kind_(kind),
      records_(std::move(records)),
      profile_(std::move(profile)) {
  if (items_ < 0 || users_ < 0) {
    throw ValidationError("item and user counts must be non-negative");
  }
  if (profile_ && profile_->size() != static_cast<std::size_t>(users_)) {
    throw ValidationError("privacy profile has " +
                          std::to_string(profile_->size()) +
                          " users, dataset has " + std::to_string(users_));
  }
  for (const auto& r : records_) {
    if (r.user < 0 || r.user >= users_) {
      throw ValidationError("user index " + std::to_string(r.user + 1) +
                            " out of range");
    }
    if (r.i < 0 || r.j >= items_ || r.i >= r.j) {
      throw ValidationError("item pair (" + std::to_string(r.i + 1) + ", " +
                            std::to_string(r.j + 1) +
                            ") must satisfy 1 <= i < j <= m");
    }
    if (!std::isfinite(r.value)) {
      throw ValidationError("record values must be finite");
    }
    if (IsBinaryKind(kind_) && r.value != 0.0 && r.value != 1.0) {
      throw ValidationError("binary record value must be 0 or 1");
    }
  }
  std::vector<std::size_t> order(records_.size());
  std::iota(order.begin(), order.end(), 0);
  const auto key = [&](std::size_t k) {
    const auto& r = records_[k];
    return std::tie(r.user, r.i, r.j);
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (key(order[k]) == key(order[k - 1])) {
      const auto& r = records_[order[k]];
      throw ValidationError("duplicate comparison (user " +
                            std::to_string(r.user + 1) + ", items " +
                            std::to_string(r.i + 1) + ", " +
                            std::to_string(r.j + 1) + ")");
    }
  }
}

PairwiseDataset PairwiseDataset::WithProfile(PrivacyProfile profile) const {
  return PairwiseDataset(items_, users_, kind_, records_, std::move(profile));
}

std::vector<std::int64_t> PairwiseDataset::CountsPerUser() const {
  std::vector<std::int64_t> counts(users_, 0);
  for (const auto& r : records_) ++counts[r.user];
  return counts;
}

std::vector<int> PairwiseDataset::IsolatedItems() const {
  std::vector<bool> seen(items_, false);
  for (const auto& r : records_) seen[r.i] = seen[r.j] = true;
  std::vector<int> isolated;
  for (int i = 0; i < items_; ++i) {
    if (!seen[i]) isolated.push_back(i);
  }
  return isolated;
}

PairwiseDataset generate(const PreferenceVector& theta_star,
                         const ComparisonModel& model, int users, double p,
                         Rng& rng) {
  const int m = static_cast<int>(theta_star.size());
  if (!(p > 0 && p <= 1)) {
    throw ValidationError("observation probability p must lie in (0, 1]");
  }
  if (users < 1) throw ValidationError("need at least one user");
  if (m < 2) throw ValidationError("need at least two items");

  // Pair win probabilities are shared by every user.
  std::vector<double> prob;
  prob.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      prob.push_back(model.cdf(theta_star[i] - theta_star[j]));
    }
  }
  const std::uint64_t base = rng();
  auto records = ForEachUser(
      users, base, [&](int l, Rng& r, std::vector<Comparison>& out) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::size_t k = 0;
        for (int i = 0; i < m; ++i) {
          for (int j = i + 1; j < m; ++j, ++k) {
            if (p < 1 && u(r) >= p) continue;
            out.push_back({l, i, j, u(r) < prob[k] ? 1.0 : 0.0});
          }
        }
      });
  return PairwiseDataset(m, users, ValueKind::kRawBinary, std::move(records));
}

PairwiseDataset privatize(const PairwiseDataset& raw,
                          const PrivacyProfile& profile, Mechanism mechanism,
                          Rng& rng) {
  if (raw.kind() != ValueKind::kRawBinary) {
    throw ValidationError("privatize expects a raw binary dataset, got " +
                          std::string(ToString(raw.kind())));
  }
  if (profile.size() != static_cast<std::size_t>(raw.users())) {
    throw ValidationError("privacy profile length must equal the user count");
  }
  std::vector<double> weights;
  if (mechanism == Mechanism::kADRR) {
    auto w = profile.weights();  // throws when some eps_l == 0
    weights.assign(w.begin(), w.end());
  }
  // Group record offsets by user so every user draws from its own stream.
  std::vector<std::vector<std::size_t>> by_user(raw.users());
  const auto src = raw.records();
  for (std::size_t k = 0; k < src.size(); ++k) by_user[src[k].user].push_back(k);

  const std::uint64_t base = rng();
  auto records = ForEachUser(
      raw.users(), base, [&](int l, Rng& r, std::vector<Comparison>& out) {
        const double eps = profile.epsilon(l);
        out.reserve(by_user[l].size());
        for (std::size_t k : by_user[l]) {
          Comparison c = src[k];
          const int y = static_cast<int>(c.value);
          switch (mechanism) {
            case Mechanism::kClassicRR:
              c.value = randomized_response(y, eps, r);
              break;
            case Mechanism::kADRR:
              c.value = weights[l] * debias(randomized_response(y, eps, r), eps);
              break;
            case Mechanism::kLaplace:
              c.value = laplace_perturb(y, eps, r);
              break;
          }
          out.push_back(c);
        }
      });
  // Restore the raw record order so the index set lines up row for row.
  std::vector<Comparison> ordered(records.size());
  std::size_t pos = 0;
  for (int l = 0; l < raw.users(); ++l) {
    for (std::size_t k : by_user[l]) ordered[k] = records[pos++];
  }
  const ValueKind kind = mechanism == Mechanism::kClassicRR ? ValueKind::kRRBinary
                         : mechanism == Mechanism::kADRR    ? ValueKind::kDebiasedWeighted
                                                            : ValueKind::kLaplaceReal;
  return PairwiseDataset(raw.items(), raw.users(), kind, std::move(ordered),
                         profile);
}

PairwiseDataset load_csv(const std::filesystem::path& path, int min_items,
                         int min_users) {
  auto in = csv::OpenForRead(path);
  csv::ExpectHeader(in, kCsvHeader, path);
  std::vector<Comparison> records;
  std::optional<ValueKind> kind;
  int items = min_items;
  int users = min_users;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = csv::SplitRow(line);
    if (f.size() != 5) throw ValidationError(LineError(line_no, "expected 5 fields"));
    const auto user = csv::ParseInt(f[0], line_no);
    const auto i = csv::ParseInt(f[1], line_no);
    const auto j = csv::ParseInt(f[2], line_no);
    const double value = csv::ParseDouble(f[3], line_no);
    ValueKind k;
    try {
      k = ParseValueKind(f[4]);
    } catch (const ValidationError& e) {
      throw ValidationError(LineError(line_no, e.what()));
    }
    if (kind && *kind != k) {
      throw ValidationError(LineError(line_no, "mixed record kinds in one file"));
    }
    kind = k;
    if (user < 1 || i < 1 || j <= i) {
      throw ValidationError(
          LineError(line_no, "need user_id >= 1 and 1 <= item_i < item_j"));
    }
    if (IsBinaryKind(k) && value != 0.0 && value != 1.0) {
      throw ValidationError(LineError(line_no, "binary value must be 0 or 1"));
    }
    records.push_back({static_cast<std::int32_t>(user - 1),
                       static_cast<std::int32_t>(i - 1),
                       static_cast<std::int32_t>(j - 1), value});
    users = std::max<int>(users, static_cast<int>(user));
    items = std::max<int>(items, static_cast<int>(j));
  }
  return PairwiseDataset(items, users, kind.value_or(ValueKind::kRawBinary),
                         std::move(records));
}

void write_csv(const PairwiseDataset& dataset,
               const std::filesystem::path& path) {
  auto out = csv::OpenForWrite(path);
  out << kCsvHeader << '\n';
  const auto kind = ToString(dataset.kind());
  const bool binary = IsBinaryKind(dataset.kind());
  for (const auto& r : dataset.records()) {
    out << r.user + 1 << ',' << r.i + 1 << ',' << r.j + 1 << ',';
    if (binary) {
      out << (r.value != 0.0 ? '1' : '0');
    } else {
      out << csv::FormatDouble(r.value);
    }
    out << ',' << kind << '\n';
  }
}

PairwiseDataset load_preference_csv(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw MissingDataError(
        "dataset not installed: " + path.string() +
        "\nConvert the car-preference data to CSV with header '" +
        std::string(kPreferenceHeader) +
        "' (1-based ids, choice = 1 when item_i is preferred; one row per "
        "user and shown pair) and pass its path with --data.");
  }
  auto in = csv::OpenForRead(path);
  csv::ExpectHeader(in, kPreferenceHeader, path);
  std::vector<Comparison> records;
  int items = 0;
  int users = 0;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = csv::SplitRow(line);
    if (f.size() != 4) throw ValidationError(LineError(line_no, "expected 4 fields"));
    const auto user = csv::ParseInt(f[0], line_no);
    auto i = csv::ParseInt(f[1], line_no);
    auto j = csv::ParseInt(f[2], line_no);
    auto choice = csv::ParseInt(f[3], line_no);
    if (user < 1 || i < 1 || j < 1 || i == j) {
      throw ValidationError(LineError(line_no, "bad user or item id"));
    }
    if (choice != 0 && choice != 1) {
      throw ValidationError(LineError(line_no, "choice must be 0 or 1"));
    }
    if (i > j) {
      std::swap(i, j);
      choice = 1 - choice;
    }
    records.push_back({static_cast<std::int32_t>(user - 1),
                       static_cast<std::int32_t>(i - 1),
                       static_cast<std::int32_t>(j - 1),
                       static_cast<double>(choice)});
    users = std::max<int>(users, static_cast<int>(user));
    items = std::max<int>(items, static_cast<int>(j));
  }
  return PairwiseDataset(items, users, ValueKind::kRawBinary, std::move(records));
}

IntransitivityReport intransitivity_report(const PairwiseDataset& raw) {
  if (!IsBinaryKind(raw.kind())) {
    throw ValidationError("intransitivity report needs binary records");
  }
  std::vector<std::vector<Comparison>> by_user(raw.users());
  for (const auto& r : raw.records()) by_user[r.user].push_back(r);

  IntransitivityReport report;
  int active_users = 0;
  std::vector<int> wins(raw.items());
  std::vector<int> order(raw.items());
  std::vector<int> position(raw.items());
  for (const auto& recs : by_user) {
    if (recs.empty()) continue;
    ++active_users;
    std::fill(wins.begin(), wins.end(), 0);
    for (const auto& r : recs) ++wins[r.value != 0.0 ? r.i : r.j];
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return wins[a] > wins[b]; });
    for (int k = 0; k < raw.items(); ++k) position[order[k]] = k;
    std::int64_t conflicts = 0;
    for (const auto& r : recs) {
      const int winner = r.value != 0.0 ? r.i : r.j;
      const int loser = r.value != 0.0 ? r.j : r.i;
      if (position[winner] > position[loser]) ++conflicts;
    }
    if (conflicts > 0) ++report.flagged_users;
    report.conflicting_comparisons += conflicts;
  }
  if (active_users > 0) {
    report.user_fraction = static_cast<double>(report.flagged_users) / active_users;
  }
  if (!raw.empty()) {
    report.comparison_fraction =
        static_cast<double>(report.conflicting_comparisons) / raw.size();
  }
  return report;
}

}  // namespace dprank
