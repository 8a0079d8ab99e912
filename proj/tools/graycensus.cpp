// graycensus: counts and classifies Hamiltonian cycles of the n-cube.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graycensus/bounds.hpp"
#include "graycensus/census.hpp"
#include "graycensus/classification.hpp"
#include "graycensus/cube.hpp"
#include "graycensus/frontier.hpp"
#include "graycensus/number_theory.hpp"

namespace gc = graycensus;
using ordered_json = nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kInternal = 1, kConsistency = 2, kResourceAbort = 3, kUsage = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned threads = 1;
  std::uint64_t memory_limit = 0;
  std::string checkpoint_dir;
  std::string format = "table";
  bool extended = false;
  bool progress = false;
};

gc::CountOptions count_options(const Globals& g) {
  gc::CountOptions o;
  o.threads = g.threads;
  o.memory_limit = g.memory_limit;
  o.checkpoint_dir = g.checkpoint_dir;
  if (g.progress) {
    o.on_level = [](const gc::LevelStats& s) {
      std::cerr << "level " << s.level << ": " << s.states << " states, frontier " << s.width << ", " << s.seconds
                << " s\n";
    };
  }
  return o;
}

std::string status_name(gc::RunStatus s) {
  switch (s) {
    case gc::RunStatus::completed: return "completed";
    case gc::RunStatus::stopped: return "stopped";
    case gc::RunStatus::resource_abort: return "resource_abort";
  }
  return "unknown";
}

int report_count(const Globals& g, int n, gc::CountTask task, const gc::CountResult& r, std::string_view order) {
  const bool done = r.status == gc::RunStatus::completed;
  const char* symbol = task == gc::CountTask::hamiltonian_cycles ? "H" : "M";
  if (g.format == "json") {
    ordered_json j;
    j["n"] = n;
    j["task"] = gc::to_string(task);
    j["order"] = order;
    j["status"] = status_name(r.status);
    j["levels_completed"] = r.levels_completed;
    j["total_levels"] = r.total_levels;
    j["peak_states"] = r.peak_states;
    if (done) {
      j["count"] = r.count.to_string();
      if (task == gc::CountTask::hamiltonian_cycles) {
        j["directed"] = gc::directed_count(r.count).to_string();
        j["equivalence_classes"] = gc::equivalence_count(r.count, n).to_string();
      }
    } else {
      j["partial_total"] = r.count.to_string();
    }
    if (r.checkpoint) j["checkpoint"] = r.checkpoint->string();
    j["table_digest"] = gc::to_hex(r.table_digest);
    std::cout << j.dump() << "\n";
  } else if (g.format == "csv") {
    std::cout << "n,task,status,levels_completed,total_levels,count\n"
              << n << "," << gc::to_string(task) << "," << status_name(r.status) << "," << r.levels_completed << ","
              << r.total_levels << "," << (done ? r.count.to_string() : "") << "\n";
  } else if (done) {
    std::cout << symbol << "_" << n << " = " << r.count.to_grouped_string() << "\n";
  } else {
    std::cout << status_name(r.status) << " after " << r.levels_completed << " of " << r.total_levels << " levels"
              << (r.checkpoint ? ", checkpoint " + r.checkpoint->string() : std::string()) << "\n";
  }
  if (r.status == gc::RunStatus::resource_abort) return kResourceAbort;
  return kOk;
}

gc::EdgeOrderKind parse_order(const std::string& s) {
  if (s == "layered") return gc::EdgeOrderKind::layered;
  if (s == "binary") return gc::EdgeOrderKind::binary;
  throw UsageError("unknown edge order '" + s + "' (expected layered|binary)");
}

int cmd_count(const Globals& g, int n, gc::CountTask task, const std::string& order, const std::string& resume,
              std::optional<std::size_t> stop_after, std::size_t every) {
  gc::CountOptions opts = count_options(g);
  opts.stop_after_level = stop_after;
  opts.checkpoint_every = every;
  if (!resume.empty()) {
    const auto r = gc::resume_from_checkpoint(resume, opts, n > 0 ? std::optional<int>(n) : std::nullopt);
    const auto ckpt = gc::read_checkpoint(resume);
    return report_count(g, ckpt.n, ckpt.task, r, "from checkpoint");
  }
  if (n <= 0) throw UsageError("--dimension is required");
  if (task == gc::CountTask::hamiltonian_cycles && n >= 6 && !g.extended) {
    throw UsageError("counting Hamiltonian cycles for n >= 6 is a multi-day run; pass --extended to attempt it");
  }
  const gc::FrontierCounter counter(task, gc::EdgeOrder::make(n, parse_order(order)));
  return report_count(g, n, task, counter.run(opts), order);
}

void require_classify_dimension(const Globals& g, int n) {
  if (n < 2 || n > 5) throw UsageError("classification is available for 2 <= n <= 5");
  if (n == 5 && !g.extended) throw UsageError("classifying Q5 is an extended run; pass --extended");
}

gc::ClassifyOptions classify_options(const Globals& g) {
  gc::ClassifyOptions o;
  o.threads = g.threads;
  if (g.progress) o.on_progress = [](std::uint64_t v) { std::cerr << v << " cycles visited\n"; };
  return o;
}

int cmd_classify(const Globals& g, int n) {
  require_classify_dimension(g, n);
  const auto s = gc::classify_automorphism(n, classify_options(g));
  if (g.format == "json") {
    std::cout << gc::orbit_summary_json(s) << "\n";
  } else if (g.format == "csv") {
    std::cout << "canonical,orbit_size,spectrum\n";
    for (const auto& o : s.orbits) {
      std::cout << "\"" << gc::format_delta(o.canonical) << "\"," << o.size << "," << o.spectrum.str() << "\n";
    }
  } else {
    std::cout << gc::format_orbit_lines(s);
  }
  return kOk;
}

int cmd_weights(const Globals& g, int n) {
  require_classify_dimension(g, n);
  const auto classes = gc::classify_weights(n, classify_options(g));
  if (g.format == "json") {
    ordered_json j;
    j["n"] = n;
    j["weight_count"] = classes.size();
    auto& arr = j["spectra"] = ordered_json::array();
    for (const auto& [w, c] : classes) {
      arr.push_back({{"spectrum", w.str()}, {"orbits", c.orbits}, {"cycles", c.cycles.to_string()}});
    }
    std::cout << j.dump() << "\n";
  } else {
    if (g.format == "csv") std::cout << "spectrum,orbits,cycles\n";
    for (const auto& [w, c] : classes) {
      if (g.format == "csv") {
        std::cout << w.str() << "," << c.orbits << "," << c.cycles << "\n";
      } else {
        std::cout << w.str() << " " << c.orbits << " " << c.cycles << "\n";
      }
    }
  }
  return kOk;
}

int cmd_bounds(const Globals& g, int n) {
  if (n < 2) throw UsageError("bounds need n >= 2");
  if (g.format != "json") {
    std::cout << gc::bounds_csv(n);
    return kOk;
  }
  ordered_json j;
  j["n"] = n;
  auto& rows = j["bounds"] = ordered_json::array();
  auto add = [&](const gc::BoundValue& b) {
    rows.push_back({{"name", b.name},
                    {"formula", b.formula},
                    {"o_term", b.o_term},
                    {"log10_value", b.zero ? ordered_json(nullptr) : ordered_json(b.log10_value)},
                    {"display", b.display()},
                    {"asymptotic_only", b.asymptotic_only},
                    {"vacuous", b.vacuous}});
  };
  for (double o : {0.0, 1.0}) {
    const auto [a, b] = gc::perezhogin_potapov_bounds(n, o);
    add(a);
    add(b);
  }
  add(gc::knuth_lower_bound(n, 0.0));
  auto& hist = j["historical_upper_bounds_h6"] = ordered_json::array();
  for (const auto& h : gc::historical_bounds_table()) {
    hist.push_back({{"source", h.source}, {"value", h.display()}, {"provenance", "paper-reported"}});
  }
  std::cout << j.dump() << "\n";
  return kOk;
}

int cmd_factor(const Globals& g, const std::vector<std::string>& values) {
  if (values.empty()) throw UsageError("factor needs at least one value");
  auto arr = ordered_json::array();
  int code = kOk;
  for (const auto& text : values) {
    const auto v = gc::BigCount::from_string(text);
    try {
      const auto f = gc::factorize(v);
      if (g.format == "json") {
        arr.push_back({{"value", v.to_string()}, {"factorization", f.str()}});
      } else {
        std::cout << v << " = " << f.str() << "\n";
      }
    } catch (const gc::FactorRangeError& e) {
      std::cerr << "graycensus: " << e.what() << "\n";
      if (g.format == "json") {
        arr.push_back({{"value", v.to_string()},
                       {"partial", e.partial().str()},
                       {"unfactored", e.cofactor().to_string()}});
      }
      code = kConsistency;
    }
  }
  if (g.format == "json") std::cout << arr.dump() << "\n";
  return code;
}

int cmd_verify_partition(const Globals& g, int dim, std::vector<std::string> parts, const std::string& file) {
  if (dim <= 0) throw UsageError("--dimension is required");
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line[0] != '#') parts.push_back(line);
    }
  }
  std::vector<gc::CycleEdgeSet> cycles;
  for (const auto& p : parts) {
    // "u-v,..." is an edge set; plain "d,d,..." a delta sequence.
    if (p.find('-') != std::string::npos) {
      cycles.push_back(gc::parse_edge_set(p, dim));
    } else {
      const auto d = gc::parse_delta(p, dim);
      if (!gc::validate_delta(d)) {
        cycles.push_back(gc::CycleEdgeSet{dim, {}});
      } else {
        cycles.push_back(gc::delta_to_edge_set(d));
      }
    }
  }
  const auto res = gc::verify_cycle_partition(dim, cycles);
  if (g.format == "json") {
    ordered_json j{{"dimension", dim}, {"ok", res.ok}, {"reason", std::string(gc::to_string(res.reason))}};
    if (!res.ok) j["part"] = res.part;
    j["orientations"] = gc::hamilton_orientations_per_partition(dim / 2).to_string();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (res.ok ? "valid" : "invalid") << " (" << std::string(gc::to_string(res.reason)) << ")";
    if (!res.ok) std::cout << " at part " << res.part;
    std::cout << "\n";
    if (res.ok) {
      std::cout << "orientations: " << gc::hamilton_orientations_per_partition(dim / 2) << "\n";
    }
  }
  return res.ok ? kOk : kConsistency;
}

int cmd_census(const Globals& g, const std::vector<int>& dims) {
  if (dims.empty()) throw UsageError("--dimension is required");
  gc::CensusOptions o;
  o.threads = g.threads;
  o.memory_limit = g.memory_limit;
  o.checkpoint_dir = g.checkpoint_dir;
  o.extended = g.extended;
  if (g.progress) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  std::vector<gc::CensusReport> reports;
  for (int n : dims) {
    if (n < 2 || n > 6) throw UsageError("census covers 2 <= n <= 6");
    reports.push_back(gc::run_census(n, o));
  }
  std::cout << gc::emit(reports, gc::parse_report_format(g.format));
  int code = kOk;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      if (!c.ok) {
        std::cerr << "graycensus: n=" << r.n << " check failed: " << c.name << " " << c.detail << "\n";
        code = kConsistency;
      }
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counts and classification of Hamiltonian cycles in the n-cube"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--memory-limit", g.memory_limit, "State-table budget in bytes (suffixes K, M, G accepted)")
      ->transform(CLI::AsSizeValue(false));
  app.add_option("--checkpoint-dir", g.checkpoint_dir, "Directory for checkpoints")
      ->envname("GRAYCENSUS_CHECKPOINT_DIR");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_flag("--extended", g.extended, "Permit multi-hour or multi-day tasks");
  app.add_flag("--progress", g.progress, "Report progress on stderr");

  int n = 0;
  std::vector<int> dims;
  std::string task = "hamiltonian", order = "layered", resume;
  std::optional<std::size_t> stop_after;
  std::size_t every = 0;
  std::vector<std::string> values, parts;
  std::string parts_file;

  auto* census = app.add_subcommand("census", "Full census report for one or more dimensions");
  census->add_option("-n,--dimension", dims, "Dimensions (2..6)")->expected(1, -1);

  auto* count = app.add_subcommand("count", "Count Hamiltonian cycles or perfect matchings");
  auto add_count_opts = [&](CLI::App* c) {
    c->add_option("-n,--dimension", n, "Cube dimension");
    c->add_option("--order", order, "Edge order")->check(CLI::IsMember({"layered", "binary"}));
    c->add_option("--resume", resume, "Continue from a checkpoint file");
    c->add_option("--stop-after-level", stop_after, "Stop (and checkpoint) after this many levels");
    c->add_option("--checkpoint-every", every, "Checkpoint every k levels");
  };
  add_count_opts(count);
  count->add_option("--task", task, "What to count")->check(CLI::IsMember({"hamiltonian", "matchings"}));

  auto* matchings = app.add_subcommand("matchings", "Count perfect matchings");
  add_count_opts(matchings);

  auto* classify = app.add_subcommand("classify", "Hamiltonian cycles up to automorphism");
  classify->add_option("-n,--dimension", n, "Cube dimension (2..5)")->required();
  auto* weights = app.add_subcommand("weights", "Realised weight spectra");
  weights->add_option("-n,--dimension", n, "Cube dimension (2..5)")->required();

  auto* bounds = app.add_subcommand("bounds", "Asymptotic bounds and the historical table");
  bounds->add_option("-n,--dimension", n, "Cube dimension")->default_val(6);

  auto* factor = app.add_subcommand("factor", "Prime factorization");
  factor->add_option("values", values, "Decimal integers")->required();

  auto* verify = app.add_subcommand("verify-partition", "Check a decomposition into Hamiltonian cycles");
  verify->add_option("-n,--dimension", n, "Cube dimension (even)")->required();
  verify->add_option("parts", parts, "Cycles as edge sets \"0-1,...\" or delta sequences \"1,2,...\"");
  verify->add_option("--file", parts_file, "Read one cycle per line");

  auto* resume_cmd = app.add_subcommand("resume", "Continue a checkpointed count");
  resume_cmd->add_option("checkpoint", resume, "Checkpoint file")->required();
  resume_cmd->add_option("-n,--dimension", n, "Expected dimension");
  resume_cmd->add_option("--stop-after-level", stop_after, "Stop (and checkpoint) after this many levels");
  resume_cmd->add_option("--checkpoint-every", every, "Checkpoint every k levels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*census) return cmd_census(g, dims);
    if (*count) return cmd_count(g, n, gc::parse_count_task(task), order, resume, stop_after, every);
    if (*matchings) return cmd_count(g, n, gc::CountTask::perfect_matchings, order, resume, stop_after, every);
    if (*classify) return cmd_classify(g, n);
    if (*weights) return cmd_weights(g, n);
    if (*bounds) return cmd_bounds(g, n);
    if (*factor) return cmd_factor(g, values);
    if (*verify) return cmd_verify_partition(g, n, parts, parts_file);
    if (*resume_cmd) return cmd_count(g, n, gc::CountTask::hamiltonian_cycles, order, resume, stop_after, every);
  } catch (const UsageError& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    return kUsage;
  } catch (const gc::ResourceExhausted& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    if (e.checkpoint()) std::cerr << "checkpoint written to " << e.checkpoint()->string() << "\n";
    return kResourceAbort;
  } catch (const gc::CheckpointError& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::domain_error& e) {
    std::cerr << "graycensus: consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "graycensus: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
