#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace finegrain {

// Axis-parallel box in R^{k-1}, the test set for the k-point correlation.
struct BoxRegion {
  int k = 2;  // correlation order, >= 2
  std::vector<std::pair<double, double>> intervals;  // k-1 closed intervals

  double volume() const;
  void validate() const;
  double max_abs_coord() const;
};

struct CorrResult {
  std::int64_t raw_count = 0;  // tuples hitting the box
  double value = 0.0;          // raw_count / N
  double poisson_reference = 0.0;  // vol(box)
  int k = 2;
  std::int64_t n_points = 0;
};

// #B_k / N^k = (1-1/N)...(1-(k-1)/N).
double ck_factor(int k, std::int64_t n);

// O(N^k) reference counter over all ordered distinct k-tuples.
CorrResult correlate_box_bruteforce(std::span<const double> points, const BoxRegion& box);

// Sorted-window chain counter; identical raw_count to the brute force.
CorrResult correlate_box(std::span<const double> points, const BoxRegion& box);

// R_k with the product triangle f(x) = prod (1-|x_i|/s_i)_+ ; reference
// value is prod s_i.
double correlate_triangle(std::span<const double> points, std::span<const double> widths);

// Empirical CDF of the normalized nearest-neighbour gaps.
struct GapHistogram {
  std::vector<double> s_grid;
  std::vector<double> cdf;
  std::int64_t n_gaps = 0;

  double sup_deviation_from_poisson() const;
};

// Uses all N+1 supplied points and the N interior gaps of the sorted list
// (no wraparound gap).
GapHistogram gap_distribution(std::span<const double> points, std::vector<double> s_grid);

double poisson_gap_cdf(double s);  // 1 - e^-s

std::vector<double> lattice_points(std::int64_t n);  // i/n, i = 0..n-1
std::vector<double> sqrt_mod_one(std::int64_t n);    // {sqrt(i)}, i = 1..n

}  // namespace finegrain
