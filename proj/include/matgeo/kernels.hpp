#pragma once

#include <compare>
#include <optional>

#include "matgeo/maptable.hpp"

// Exhaustive scans. Every kernel has a plain serial loop kept as the reference and an
// OpenMP version; both return identical results (minimum witness, sorted lists).
namespace matgeo::kernels {

enum class Exec { Serial, Parallel };

void set_workers(int n);
int workers();

struct CodePair {
  std::uint64_t a;
  std::uint64_t b;
  auto operator<=>(const CodePair&) const = default;
};

struct DistanceScan {
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  std::optional<CodePair> first;
};

// BFS from every vertex compared with the rank of the difference
DistanceScan distance_scan(const MatSpace& sp, Exec ex);

struct HomScan {
  std::uint64_t pairs = 0;
  std::optional<CodePair> first;
};

// all unordered adjacent pairs a < b
HomScan hom_violations(const MapTable& f, Exec ex);
// n adjacent pairs drawn from a seeded generator
HomScan sampled_hom_violations(const MapTable& f, std::uint64_t n, std::uint64_t seed, Exec ex);

struct CenterCover {
  std::uint64_t center;
  Vec u;  // column axis of the TypeOne set
  Vec v;  // row axis of the TypeTwo set
};

// first rank <= 1 centre whose ball image fits in two opposite-kind sets
std::optional<CenterCover> first_degenerate_center(const MapTable& f, Exec ex);

struct PointScan {
  std::uint64_t qualifying = 0;
  std::uint64_t branch_xa = 0;
  std::uint64_t branch_zero = 0;
  std::vector<std::uint64_t> failures;
};

// points: RREF m x (m+n) representations, flattened. bset: matrices B with the
// hypothesis ad((X,Y),(I,B)) = 1. a: the conclusion matrix.
PointScan scan_points(const Field& f, int m, int n, const std::vector<Elem>& points, const std::vector<Mat>& bset,
                      const Mat& a, bool allow_zero, Exec ex);

// rank of a - b for flat buffers
int rank_diff(const Field& f, const Elem* a, const Elem* b, int rows, int cols, Elem* scratch);

}  // namespace matgeo::kernels
