#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "graycensus/frontier.hpp"
#include "oracles.hpp"

using namespace graycensus;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("graycensus-test-" + tag + "-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CountResult run(CountTask task, int n, const CountOptions& opts = {}, EdgeOrderKind kind = EdgeOrderKind::layered) {
  return FrontierCounter(task, EdgeOrder::make(n, kind)).run(opts);
}

}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("published Hamiltonian cycle counts") {
    CHECK(count_hamiltonian_cycles(2) == BigCount(1));
    CHECK(count_hamiltonian_cycles(3) == BigCount(6));
    CHECK(count_hamiltonian_cycles(4) == BigCount(1344));
  }

  TEST_CASE("frontier counts match backtracking") {
    for (int n = 2; n <= 4; ++n) {
      CHECK(count_hamiltonian_cycles(n) == BigCount(oracle::hamiltonian_cycles(n)));
    }
    for (int n = 1; n <= 3; ++n) {
      CHECK(count_perfect_matchings(n) == BigCount(oracle::perfect_matchings(n)));
    }
  }

  TEST_CASE("perfect matchings") {
    CHECK(count_perfect_matchings(1) == BigCount(1));
    CHECK(count_perfect_matchings(2) == BigCount(2));
    CHECK(count_perfect_matchings(3) == BigCount(9));
    CHECK(count_perfect_matchings(4) == BigCount(272));
    // Q4 x K2 oracle.
    CHECK(count_perfect_matchings(5) == BigCount(oracle::perfect_matchings_product(4)));
    CHECK(oracle::perfect_matchings_product(4) == 589185);
  }

  TEST_CASE("thread count does not change tables or totals") {
    for (auto task : {CountTask::hamiltonian_cycles, CountTask::perfect_matchings}) {
      const auto base = run(task, 4);
      for (unsigned t : {2u, 3u, 8u}) {
        CountOptions o;
        o.threads = t;
        const auto r = run(task, 4, o);
        CHECK(r.count == base.count);
        CHECK(r.table_digest == base.table_digest);
        CHECK(r.peak_states == base.peak_states);
      }
      // A mid-sweep table too.
      CountOptions stop;
      stop.stop_after_level = 17;
      const auto one = run(task, 4, stop);
      stop.threads = 8;
      CHECK(run(task, 4, stop).table_digest == one.table_digest);
    }
  }

  TEST_CASE("edge orders agree") {
    std::mt19937 rng(3);
    for (int n = 2; n <= 4; ++n) {
      const auto expected = count_hamiltonian_cycles(n);
      CHECK(count_hamiltonian_cycles(n, {}, EdgeOrderKind::binary) == expected);
      CHECK(count_perfect_matchings(n, {}, EdgeOrderKind::binary) == count_perfect_matchings(n));
      // A few arbitrary orders as well.
      for (int trial = 0; trial < 3; ++trial) {
        auto edges = build_cube(n).edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        const FrontierCounter c(CountTask::hamiltonian_cycles, EdgeOrder::from_edges(n, edges));
        CHECK(c.run().count == expected);
      }
    }
  }

  TEST_CASE("edge orders are permutations of the edge set") {
    for (int n = 1; n <= 6; ++n) {
      for (auto kind : {EdgeOrderKind::layered, EdgeOrderKind::binary}) {
        const auto o = EdgeOrder::make(n, kind);
        auto edges = o.edges();
        std::sort(edges.begin(), edges.end());
        CHECK(edges == build_cube(n).edges());
        const auto sizes = o.frontier_sizes();
        CHECK(sizes.size() == o.size());
        CHECK(sizes.back() == 0);
        CHECK(o.max_frontier() == *std::max_element(sizes.begin(), sizes.end()));
      }
    }
    CHECK(EdgeOrder::make(5).max_frontier() < EdgeOrder::make(5, EdgeOrderKind::binary).max_frontier());
    auto edges = build_cube(3).edges();
    edges.pop_back();
    CHECK_THROWS_AS(EdgeOrder::from_edges(3, edges), std::invalid_argument);
    edges.push_back(edges.front());
    CHECK_THROWS_AS(EdgeOrder::from_edges(3, edges), std::invalid_argument);
  }

  TEST_CASE("edge order hashes identify orders") {
    CHECK(EdgeOrder::make(4).hash() == EdgeOrder::make(4).hash());
    CHECK(EdgeOrder::make(4).hash() != EdgeOrder::make(4, EdgeOrderKind::binary).hash());
    CHECK(EdgeOrder::make(4).hash() != EdgeOrder::make(5).hash());
  }

  TEST_CASE("directed and equivalence counts") {
    CHECK(directed_count(1) == BigCount(2));
    CHECK(directed_count(1344) == BigCount(2688));
    CHECK(directed_count(906545760) == BigCount(1813091520));
    CHECK(equivalence_count(6, 3) == BigCount(2));
    CHECK(equivalence_count(1344, 4) == BigCount(112));
    CHECK(equivalence_count(906545760, 5) == BigCount(15109096));
    CHECK_THROWS_AS(equivalence_count(1343, 4), std::domain_error);
  }

  TEST_CASE("divisibility and cross bound on computed values") {
    for (int n = 2; n <= 4; ++n) {
      const auto h = count_hamiltonian_cycles(n);
      const auto m = count_perfect_matchings(n);
      CHECK(h.divisible_by(BigCount::factorial(static_cast<unsigned>(n)).divide_exact(2)));
      CHECK(h <= m * m);
    }
  }

  TEST_CASE("interrupted run resumes to the same result") {
    TempDir dir("resume");
    const auto full = run(CountTask::hamiltonian_cycles, 4);
    for (std::size_t stop : {1u, 9u, 16u, 31u}) {
      CountOptions o;
      o.checkpoint_dir = dir.path;
      o.stop_after_level = stop;
      const auto part = run(CountTask::hamiltonian_cycles, 4, o);
      REQUIRE(part.status == RunStatus::stopped);
      REQUIRE(part.checkpoint);
      CHECK(part.checkpoint->filename() == "hamiltonian-n4-L" + std::to_string(stop) + ".gckp");
      const auto resumed = resume_from_checkpoint(*part.checkpoint, {}, 4);
      CHECK(resumed.status == RunStatus::completed);
      CHECK(resumed.count == BigCount(1344));
      CHECK(resumed.table_digest == full.table_digest);
    }
  }

  TEST_CASE("stop, resume, stop gives the uninterrupted table") {
    TempDir dir("identity");
    TempDir other("identity-direct");
    CountOptions straight;
    straight.checkpoint_dir = other.path;
    straight.stop_after_level = 24;
    const auto direct = run(CountTask::perfect_matchings, 4, straight);

    CountOptions first;
    first.checkpoint_dir = dir.path;
    first.stop_after_level = 10;
    const auto part = run(CountTask::perfect_matchings, 4, first);
    CountOptions second;
    second.checkpoint_dir = dir.path;
    second.stop_after_level = 24;
    const auto rest = resume_from_checkpoint(*part.checkpoint, second);
    CHECK(rest.table_digest == direct.table_digest);
    CHECK(rest.levels_completed == 24);

    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string((std::istreambuf_iterator<char>(in)), {});
    };
    CHECK(slurp(*rest.checkpoint) == slurp(*direct.checkpoint));
  }

  TEST_CASE("resume refuses mismatches and damage") {
    TempDir dir("bad");
    CountOptions o;
    o.checkpoint_dir = dir.path;
    o.stop_after_level = 12;
    const auto part = run(CountTask::hamiltonian_cycles, 4, o);
    const auto path = *part.checkpoint;

    CHECK_THROWS_AS(resume_from_checkpoint(path, {}, 5), CheckpointError);
    const auto ckpt = read_checkpoint(path);
    CHECK_THROWS_AS(FrontierCounter(CountTask::hamiltonian_cycles, EdgeOrder::make(5)).resume(ckpt), CheckpointError);
    CHECK_THROWS_AS(FrontierCounter(CountTask::perfect_matchings, EdgeOrder::make(4)).resume(ckpt), CheckpointError);
    CHECK_THROWS_AS(FrontierCounter(CountTask::hamiltonian_cycles, EdgeOrder::make(4, EdgeOrderKind::binary)).resume(ckpt),
                    CheckpointError);

    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    in.close();

    SUBCASE("altered state byte") {
      auto bad = bytes;
      bad[bad.size() - 40] ^= 0x01;
      const auto p = dir.path / "tampered.gckp";
      std::ofstream(p, std::ios::binary) << bad;
      CHECK_THROWS_AS(resume_from_checkpoint(p), CheckpointError);
    }
    SUBCASE("truncated") {
      const auto p = dir.path / "short.gckp";
      std::ofstream(p, std::ios::binary) << bytes.substr(0, bytes.size() / 2);
      CHECK_THROWS_AS(resume_from_checkpoint(p), CheckpointError);
    }
    SUBCASE("wrong version") {
      auto bad = bytes;
      bad[4] = 9;
      const auto p = dir.path / "version.gckp";
      std::ofstream(p, std::ios::binary) << bad;
      CHECK_THROWS_AS(resume_from_checkpoint(p), CheckpointError);
    }
    SUBCASE("trailing bytes") {
      const auto p = dir.path / "long.gckp";
      std::ofstream(p, std::ios::binary) << bytes << "x";
      CHECK_THROWS_AS(resume_from_checkpoint(p), CheckpointError);
    }
  }

  TEST_CASE("memory budget aborts with a resumable checkpoint") {
    TempDir dir("budget");
    CountOptions o;
    o.checkpoint_dir = dir.path;
    o.memory_limit = 16 * 1024;
    try {
      count_hamiltonian_cycles(4, o);
      FAIL("expected ResourceExhausted");
    } catch (const ResourceExhausted& e) {
      REQUIRE(e.checkpoint());
      CHECK(fs::exists(*e.checkpoint()));
      CHECK(e.level() > 0);
      CHECK(e.level() < 32);
      CHECK(resume_from_checkpoint(*e.checkpoint()).count == BigCount(1344));
    }
  }

  TEST_CASE("periodic checkpoints are cleaned up on completion") {
    TempDir dir("periodic");
    CountOptions o;
    o.checkpoint_dir = dir.path;
    o.checkpoint_every = 5;
    CHECK(count_hamiltonian_cycles(4, o) == BigCount(1344));
    CHECK(fs::is_empty(dir.path));
  }

  TEST_CASE("checkpoint encoding round trip") {
    Checkpoint c;
    c.n = 3;
    c.task = CountTask::perfect_matchings;
    c.level = 2;
    c.partial_total = BigCount::from_string("123456789012345678901234567890");
    c.add(std::vector<std::uint8_t>{3, 1}, 5);
    c.add(std::vector<std::uint8_t>{1, 2}, static_cast<Multiplicity>(1) << 100);
    c.sort();
    const auto bytes = c.encode();
    const auto back = Checkpoint::decode(bytes);
    CHECK(back.encode() == bytes);
    CHECK(back.counts[0] == (static_cast<Multiplicity>(1) << 100));
    CHECK(back.partial_total == c.partial_total);
    CHECK(back.digest() == c.digest());

    Checkpoint unsorted = c;
    std::swap(unsorted.counts[0], unsorted.counts[1]);
    std::swap(unsorted.states[0], unsorted.states[2]);
    std::swap(unsorted.states[1], unsorted.states[3]);
    CHECK_THROWS_AS(unsorted.encode(), CheckpointError);
    CHECK_THROWS_AS(c.add(std::vector<std::uint8_t>{1}, 1), CheckpointError);
  }

  TEST_CASE("dimension limits") {
    CHECK_THROWS_AS(count_hamiltonian_cycles(1), std::out_of_range);
    CHECK_THROWS_AS(count_perfect_matchings(0), std::out_of_range);
  }
}
