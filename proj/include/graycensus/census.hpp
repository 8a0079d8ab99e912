#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graycensus/big_count.hpp"
#include "graycensus/bounds.hpp"
#include "graycensus/number_theory.hpp"

namespace graycensus {

enum class Provenance { computed, paper_reported };
std::string_view to_string(Provenance p);

struct CountField {
  BigCount value;
  Provenance source = Provenance::computed;
};

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CensusOptions {
  unsigned threads = 1;
  std::uint64_t memory_limit = 0;
  std::filesystem::path checkpoint_dir;
  /// Allow the long tasks: H_6 and the n = 5 classification.
  bool extended = false;
  std::function<void(const std::string&)> log;
};

struct CensusReport {
  int n = 0;
  CountField h, oh, eh, m, m2, aut, weight;
  Factorization h_factors;
  std::optional<int> odd_primes;  // distinct odd primes of H/n!, n >= 3
  std::vector<BoundValue> bounds;
  std::vector<CheckResult> checks;
  unsigned threads = 1;
  double wall_seconds = 0;

  bool ok() const;
};

/// Published values for n = 2..6 (H_n, Aut_n, Weight_n; M_n^2 as printed).
struct PublishedRow {
  int n;
  std::string_view h;
  std::string_view m2;
  std::string_view aut;
  std::string_view weight;
};
const std::vector<PublishedRow>& published_table();
/// Throws std::out_of_range outside 2..6.
const PublishedRow& published_row(int n);

/// Computes what is feasible for n (2..6), fills the rest from the published
/// table, and runs the consistency checks. Counting errors propagate
/// (ResourceExhausted among them).
CensusReport run_census(int n, const CensusOptions& options = {});

/// Recomputes the checks of a report from its fields.
std::vector<CheckResult> consistency_checks(const CensusReport& r);

/// Values below 10^6 exactly ("73,984"), larger ones to four significant
/// digits ("3.471 * 10^11"), the way the published table prints M_n^2.
std::string table_cell_rounded(const BigCount& v);

enum class ReportFormat { json, csv, table };
/// Throws std::invalid_argument on anything but json|csv|table.
ReportFormat parse_report_format(std::string_view text);

std::string emit(const CensusReport& report, ReportFormat format);
/// Several reports; the table form puts one row per n.
std::string emit(std::span<const CensusReport> reports, ReportFormat format);

}  // namespace graycensus
