#ifndef HYPERAFF_ORBIT_HPP
#define HYPERAFF_ORBIT_HPP

#include <complex>
#include <cstdint>
#include <string>

#include "hyperaff/affine.hpp"

namespace hyperaff {

/// Float-only orbit sampling. Everything here is evidence, never a
/// certificate; reports label the output heuristic.
struct SimConfig {
    std::size_t max_samples = 100000;      // stored points budget
    std::size_t max_word_length = 100000;  // word-length cap (effectively off)
    double box_radius = 2.0;
    std::size_t grid = 8;  // cells per axis of the 2n-dim box
    std::uint64_t seed = 0;
    std::vector<std::complex<double>> start;  // length n
    /// Budgets at which coverage is recorded; empty = {1e3, 1e4, max}.
    std::vector<std::size_t> checkpoints;
    /// Also apply generator inverses (group orbit instead of semigroup
    /// words). Off by default: the decision criterion's Z-module side vs the
    /// N-word orbit is exactly the gap this knob exposes.
    bool include_inverses = false;
};

struct OrbitSample {
    std::vector<std::vector<std::complex<double>>> points;  // in sampling order
    std::size_t escaped = 0;  // norm > 1e12, dropped by the overflow guard
};

/// Breadth-first word enumeration of the semigroup orbit from cfg.start,
/// preferring frontier points inside the box (otherwise contracting
/// directions drown everything else). States are deduplicated at 1e-12.
/// Deterministic for a fixed seed.
OrbitSample sample_orbit(const std::vector<AffineMap>& fs, const SimConfig& cfg);

struct CoverageCheckpoint {
    std::size_t budget = 0;          // requested prefix length
    std::size_t points = 0;          // points actually available
    double coverage = 0.0;           // cells hit / cells total
    double escape_fraction = 0.0;    // points outside the box
};

struct CoverageResult {
    std::size_t points_sampled = 0;
    std::size_t cells_hit = 0;
    double cells_total = 0.0;  // grid^(2n); double to avoid overflow
    double escape_fraction = 0.0;
    std::vector<CoverageCheckpoint> checkpoints;
};

/// Histogram of the points into the grid^(2n) cells of [-R, R]^(2n), with
/// real/imaginary coordinates interleaved.
CoverageResult coverage(const std::vector<std::vector<std::complex<double>>>& points,
                        const SimConfig& cfg);

/// sample_orbit + coverage at each configured checkpoint (prefix-nested, so
/// coverage is monotone in the budget).
CoverageResult run_simulation(const std::vector<AffineMap>& fs, const SimConfig& cfg);

/// One row per checkpoint: budget, points, coverage, escape_fraction.
std::string coverage_csv(const CoverageResult& result);

}  // namespace hyperaff

#endif
