#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "graycensus/big_count.hpp"
#include "graycensus/cube.hpp"

namespace graycensus {

/// Sorted per-direction edge counts of a Hamiltonian cycle.
struct WeightSpectrum {
  std::vector<int> counts;

  /// "2+2+4"
  std::string str() const;
  friend auto operator<=>(const WeightSpectrum&, const WeightSpectrum&) = default;
};

/// Throws std::invalid_argument unless `d` is a valid delta sequence.
WeightSpectrum weight_spectrum(const DeltaSequence& d);

/// Receives each cycle's deltas (length 2^n) and the index of the worker
/// that found it.
using PrefixCycleVisitor = std::function<void(unsigned worker, std::span<const Direction> deltas)>;

/// Visits, once each, every Hamiltonian cycle traversal from vertex 0 whose
/// directions first appear in the order 1, 2, ..., n. Each bit-permutation
/// class of directed cycles has exactly one such member, so the visit count
/// is OH_n / n! = EH_n.
///
/// With threads > 1 the search forks on disjoint prefixes and the visitor is
/// called concurrently with distinct worker indices.
std::uint64_t enumerate_canonical_prefix_cycles(int n, const PrefixCycleVisitor& visitor, unsigned threads = 1);

/// Least delta sequence among all images of a cycle under Aut(Q_n), both
/// traversal directions and every starting vertex.
///
/// Flips only move the start vertex, so the images are the rotations of the
/// sequence and of its reverse, each relabelled by order of first appearance
/// (the lexicographically least coordinate renaming).
DeltaSequence canonical_form(const DeltaSequence& d);
DeltaSequence canonical_form(const CycleEdgeSet& c);
/// Same, writing into `out` (size 2^n); for hot loops.
void canonical_form(std::span<const Direction> deltas, int n, std::span<Direction> out);

struct Orbit {
  DeltaSequence canonical;
  BigCount size;  // undirected cycles in the orbit
  WeightSpectrum spectrum;
};

struct OrbitSummary {
  int n = 0;
  std::vector<Orbit> orbits;  // sorted by canonical form
  BigCount total_cycles;      // sum of orbit sizes

  std::uint64_t aut_count() const { return orbits.size(); }
};

struct ClassifyOptions {
  unsigned threads = 1;
  /// Called now and then with the number of cycles visited so far.
  std::function<void(std::uint64_t visited)> on_progress;
};

/// Hamiltonian cycles of Q_n up to automorphism, 2 <= n <= 5.
OrbitSummary classify_automorphism(int n, const ClassifyOptions& options = {});

struct SpectrumClass {
  std::uint64_t orbits = 0;
  BigCount cycles;
};

/// Realised weight spectra with the number of orbits and undirected cycles
/// having each; the map size is Weight_n.
std::map<WeightSpectrum, SpectrumClass> classify_weights(const OrbitSummary& summary);
std::map<WeightSpectrum, SpectrumClass> classify_weights(int n, const ClassifyOptions& options = {});

/// Every Hamiltonian cycle of Q_n, n <= 4, by plain backtracking.
const std::vector<CycleEdgeSet>& all_hamiltonian_cycles(int n);

/// Hamiltonian cycles of Q_n (n <= 4) whose edge set g maps onto itself.
BigCount count_fixed_cycles(const SignedPermutation& g, int n);

/// Orbit count by averaging count_fixed_cycles over Aut(Q_n), n <= 4.
BigCount burnside_orbit_count(int n);

/// One line per orbit: "<canonical> <size> <k1+...+kn>".
std::string format_orbit_lines(const OrbitSummary& summary);
/// {"n":..,"aut_count":..,"weight_count":..,"total_cycles":".."}
std::string orbit_summary_json(const OrbitSummary& summary);

}  // namespace graycensus
