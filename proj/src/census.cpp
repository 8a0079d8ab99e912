#include "graycensus/census.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "graycensus/classification.hpp"
#include "graycensus/frontier.hpp"

namespace graycensus {

std::string_view to_string(Provenance p) {
  return p == Provenance::computed ? "computed" : "paper-reported";
}

const std::vector<PublishedRow>& published_table() {
  static const std::vector<PublishedRow> rows = {
      {2, "1", "4", "1", "1"},
      {3, "6", "81", "1", "1"},
      {4, "1344", "73984", "9", "4"},
      {5, "906545760", "3.471 * 10^11", "237675", "28"},
      {6, "14754666508334433250560", "2.667 * 10^26", "147365405634413085", "550"},
  };
  return rows;
}

const PublishedRow& published_row(int n) {
  for (const auto& r : published_table()) {
    if (r.n == n) return r;
  }
  throw std::out_of_range("no published census row for n = " + std::to_string(n));
}

bool CensusReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

namespace {

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> consistency_checks(const CensusReport& r) {
  std::vector<CheckResult> out;
  const BigCount half_fact = BigCount::factorial(static_cast<unsigned>(r.n)).divide_exact(2);

  out.push_back(check("OH = 2H", r.oh.value == directed_count(r.h.value)));
  out.push_back(check("EH * n!/2 = H", r.eh.value * half_fact == r.h.value));
  out.push_back(check("M2 = M * M", r.m2.value == r.m.value * r.m.value));
  out.push_back(check("n!/2 divides H", check_half_factorial_divisibility(r.h.value, r.n)));
  out.push_back(check("factorization recombines to H", r.h_factors.product() == r.h.value, r.h_factors.str()));
  if (r.n >= 3) {
    const bool ok = r.odd_primes.has_value() && *r.odd_primes == r.n - 3;
    out.push_back(check("H/n! has n-3 odd prime divisors", ok,
                        r.odd_primes ? std::to_string(*r.odd_primes) : std::string("H not divisible by n!")));
  }
  out.push_back(check("H <= M2", r.h.value <= r.m2.value));
  out.push_back(check("Weight <= Aut <= H", r.weight.value <= r.aut.value && r.aut.value <= r.h.value));

  const auto& pub = published_row(r.n);
  if (r.h.source == Provenance::computed) {
    out.push_back(check("H matches published value", r.h.value == BigCount::from_string(pub.h)));
  }
  if (r.aut.source == Provenance::computed) {
    out.push_back(check("Aut matches published value", r.aut.value == BigCount::from_string(pub.aut)));
  }
  if (r.weight.source == Provenance::computed) {
    out.push_back(check("Weight matches published value", r.weight.value == BigCount::from_string(pub.weight)));
  }
  return out;
}

CensusReport run_census(int n, const CensusOptions& options) {
  require_dimension(n, 2, 6, "run_census");
  const auto start = std::chrono::steady_clock::now();
  auto log = [&](const std::string& s) {
    if (options.log) options.log(s);
  };
  const auto& pub = published_row(n);

  CountOptions count_opts;
  count_opts.threads = options.threads;
  count_opts.memory_limit = options.memory_limit;
  count_opts.checkpoint_dir = options.checkpoint_dir;

  CensusReport r;
  r.n = n;
  r.threads = options.threads;

  if (n <= 5 || options.extended) {
    log("counting Hamiltonian cycles of Q" + std::to_string(n));
    r.h = {count_hamiltonian_cycles(n, count_opts), Provenance::computed};
  } else {
    r.h = {BigCount::from_string(pub.h), Provenance::paper_reported};
  }
  r.oh = {directed_count(r.h.value), r.h.source};
  r.eh = {equivalence_count(r.h.value, n), r.h.source};

  log("counting perfect matchings of Q" + std::to_string(n));
  r.m = {count_perfect_matchings(n, count_opts), Provenance::computed};
  r.m2 = {feder_subi_upper(r.m.value), Provenance::computed};

  if (n <= 4 || (n == 5 && options.extended)) {
    log("classifying cycles of Q" + std::to_string(n));
    const auto summary = classify_automorphism(n, {options.threads, {}});
    r.aut = {summary.aut_count(), Provenance::computed};
    r.weight = {classify_weights(summary).size(), Provenance::computed};
  } else {
    r.aut = {BigCount::from_string(pub.aut), Provenance::paper_reported};
    r.weight = {BigCount::from_string(pub.weight), Provenance::paper_reported};
  }

  r.h_factors = factorize(r.h.value);
  if (n >= 3 && r.h.value.divisible_by(BigCount::factorial(static_cast<unsigned>(n)))) {
    r.odd_primes = odd_prime_divisor_count(r.h.value, n);
  }

  for (double o : {0.0, 1.0}) {
    auto [a, b] = perezhogin_potapov_bounds(n, o);
    r.bounds.push_back(a);
    r.bounds.push_back(b);
  }
  r.bounds.push_back(knuth_lower_bound(n, 0.0));

  r.checks = consistency_checks(r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "table") return ReportFormat::table;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected json|csv|table)");
}

namespace {

struct NamedField {
  const char* name;
  const CountField* field;
};

std::vector<NamedField> fields(const CensusReport& r) {
  return {{"H", &r.h},   {"OH", &r.oh},   {"EH", &r.eh},        {"M", &r.m},
          {"M2", &r.m2}, {"Aut", &r.aut}, {"Weight", &r.weight}};
}

nlohmann::ordered_json to_json(const CensusReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  nlohmann::ordered_json prov;
  for (const auto& f : fields(r)) {
    j[f.name] = f.field->value.to_string();
    prov[f.name] = to_string(f.field->source);
  }
  j["H_factorization"] = r.h_factors.str();
  if (r.odd_primes) {
    j["odd_prime_divisors"] = *r.odd_primes;
  } else {
    j["odd_prime_divisors"] = nullptr;
  }
  prov["H_factorization"] = to_string(r.h.source);
  prov["odd_prime_divisors"] = to_string(r.h.source);
  auto& bounds = j["bounds"] = nlohmann::ordered_json::array();
  for (const auto& b : r.bounds) {
    nlohmann::ordered_json e;
    e["name"] = b.name;
    e["formula"] = b.formula;
    e["o_term"] = b.o_term;
    e["display"] = b.display();
    e["asymptotic_only"] = b.asymptotic_only;
    e["vacuous"] = b.vacuous;
    bounds.push_back(std::move(e));
  }
  prov["bounds"] = "computed";
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["ok"] = r.ok();
  j["provenance"] = std::move(prov);
  j["threads"] = r.threads;
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

void append_csv(std::ostringstream& out, const CensusReport& r) {
  const std::string n = std::to_string(r.n);
  for (const auto& f : fields(r)) {
    out << n << "," << f.name << "," << f.field->value.to_string() << "," << to_string(f.field->source) << "\n";
  }
  out << n << ",H_factorization," << csv_quote(r.h_factors.str()) << "," << to_string(r.h.source) << "\n";
  out << n << ",odd_prime_divisors," << (r.odd_primes ? std::to_string(*r.odd_primes) : "") << ","
      << to_string(r.h.source) << "\n";
  for (const auto& b : r.bounds) {
    out << n << "," << b.name << "(o=" << b.o_term << ")," << b.display() << ",computed\n";
  }
  for (const auto& c : r.checks) {
    out << n << "," << csv_quote("check: " + c.name) << "," << (c.ok ? "pass" : "FAIL") << ",computed\n";
  }
}

}  // namespace

std::string table_cell_rounded(const BigCount& v) {
  if (v < BigCount(1'000'000)) return v.to_grouped_string();
  const auto s = round_significant(v, 4);
  return s.mantissa + " * 10^" + std::to_string(s.exponent);
}

std::string emit(std::span<const CensusReport> reports, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::json: {
      if (reports.size() == 1) return to_json(reports[0]).dump() + "\n";
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      return arr.dump() + "\n";
    }
    case ReportFormat::csv:
      out << "n,field,value,provenance\n";
      for (const auto& r : reports) append_csv(out, r);
      return out.str();
    case ReportFormat::table: {
      const std::vector<std::string> head = {"n", "H_n", "M_n^2", "M_n^2 (4 s.f.)", "Aut_n", "Weight_n"};
      std::vector<std::vector<std::string>> rows;
      bool any_reported = false;
      auto cell = [&](const CountField& f) {
        std::string s = f.value.to_grouped_string();
        if (f.source == Provenance::paper_reported) {
          s += "*";
          any_reported = true;
        }
        return s;
      };
      for (const auto& r : reports) {
        rows.push_back({std::to_string(r.n), cell(r.h), cell(r.m2), table_cell_rounded(r.m2.value), cell(r.aut),
                        cell(r.weight)});
      }
      std::vector<std::size_t> width(head.size());
      for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = head[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c != 0) out << "  ";
          out << std::setw(static_cast<int>(width[c])) << cells[c];
        }
        out << "\n";
      };
      line(head);
      for (const auto& row : rows) line(row);
      if (any_reported) out << "* paper-reported, not reproduced\n";
      return out.str();
    }
  }
  throw std::invalid_argument("unknown report format");
}

std::string emit(const CensusReport& report, ReportFormat format) {
  return emit(std::span<const CensusReport>(&report, 1), format);
}

}  // namespace graycensus
