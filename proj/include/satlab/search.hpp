#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "satlab/arith.hpp"
#include "satlab/bigint.hpp"
#include "satlab/varieties.hpp"

namespace satlab {

// ---------------------------------------------------------------------------
// Parallel helper

/// Worker count: `requested` (0 = hardware concurrency), capped by the
/// SATLAB_THREADS environment variable when it holds a positive integer.
unsigned resolve_threads(unsigned requested);

/// Splits [0, n) into `threads` contiguous chunks and runs body(begin, end)
/// on each. Chunks share no state; the caller merges.
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

// ---------------------------------------------------------------------------
// Boxes and records

/// ∏ [lo_i B, hi_i B] ∩ (first_i + step Z), first_i = ceil(lo_i B).
struct BoxSpec {
  std::vector<std::pair<Rational, Rational>> intervals;
  Rational scale = 1;
  Int step = 1;

  static BoxSpec cube(std::size_t dim, const Int& lo, const Int& hi, const Int& step = Int(1));
  /// Lattice values along coordinate i. Throws Error(empty_box) if none.
  std::vector<Int> axis(std::size_t i) const;
};

struct SkewBookkeeping {
  Omega phi, phi_prime, uv;  // Ω(Φ(u,v)), Ω(Φ'(u,v)), Ω(uv)
  bool holds() const;
};

struct SearchRecord {
  ProjectivePoint point;
  Omega omega;
  std::vector<Int> fiber;   // (s, t) or (p1, p2, p3); empty for Elkies
  std::vector<Int> params;  // (u, v) or (y0, y1, y2)
  Int height;
  std::optional<SkewBookkeeping> skew;
  std::optional<bool> coprime_to_D;  // gcd(F(u, v), D) = 1 on threefold fibers
};

/// (Ω, height, coordinates, fiber, params)
bool record_less(const SearchRecord& a, const SearchRecord& b);

struct ScanOptions {
  std::optional<std::uint64_t> omega_budget;  // nullopt = ∞
  FactorOptions factor;
  unsigned threads = 1;
  /// Recompute Ω with an independently seeded factorization.
  bool verify_twice = true;
};

struct ScanStats {
  std::size_t visited = 0;
  std::size_t degenerate = 0;  // zero coordinate or zero vector
  std::size_t unfactored = 0;  // factor budget exceeded
  std::size_t over_budget = 0;
  ScanStats& operator+=(const ScanStats& o);
};

struct ScanResult {
  std::vector<SearchRecord> records;  // sorted by record_less
  ScanStats stats;
};

struct ElkiesMap {};
struct SkewFiberMap {
  SkewCubicModel model;
  Int s, t;
};
struct ThreefoldFiberMap {
  ThreefoldFiber fiber;
};
using VarietyMap = std::variant<ElkiesMap, SkewFiberMap, ThreefoldFiberMap>;

/// Box dimension 3 for Elkies (y-box) and 2 otherwise ((u, v)-box).
/// Throws Error(empty_box) or Error(arity_mismatch).
ScanResult scan_map(const VarietyMap& map, const BoxSpec& box, const ScanOptions& opts = {});

// ---------------------------------------------------------------------------
// Approximation of a real point

struct ApproxTarget {
  VarietyMap map;              // Elkies, or skew with the fiber ignored
  std::vector<double> xi;      // real point on the variety
};

struct ApproxResult {
  std::optional<SearchRecord> record;
  Rational distance;            // of `record`, or of the best near miss
  std::optional<SearchRecord> near_miss;
  std::size_t candidates = 0;
};

/// Max-norm distance between x/|x|_∞ and ±ξ/|ξ|_∞, minimised over the sign,
/// computed exactly with ξ read as the rationals its doubles denote.
Rational normalized_distance(std::span<const Int> x, std::span<const double> xi);

/// Scans lattice points near B·(real preimage of ξ) for each B in the
/// schedule; `record` is the least one (by record_less) strictly within ε,
/// or nullopt with the closest candidate in `near_miss`.
ApproxResult approximate_point(const ApproxTarget& target, double eps,
                               const std::vector<Int>& schedule, const ScanOptions& opts = {});

// ---------------------------------------------------------------------------
// Simultaneous primes of linear forms

using LinearForm = std::array<Int, 2>;  // c0 u + c1 v

struct PrimeFormsOptions {
  /// +1 or -1 forces the sign of L_i; 0 accepts |L_i| prime. Empty = all 0.
  std::vector<int> signs;
  bool enforce_local_condition = true;
  unsigned threads = 1;
};

/// First prime p <= 100 dividing ∏ L_i at every (u, v) of the box.
std::optional<unsigned> local_obstruction(const std::vector<LinearForm>& forms,
                                          const BoxSpec& box);

/// All (u, v) of the box where each L_i is prime (up to the allowed sign),
/// in lexicographic order. Throws Error(local_obstruction),
/// Error(invalid_argument) for more than five, zero or proportional forms.
std::vector<std::array<Int, 2>> prime_forms_search(const std::vector<LinearForm>& forms,
                                                   const BoxSpec& box,
                                                   const PrimeFormsOptions& opts = {});

// ---------------------------------------------------------------------------
// Reports

struct DensitySummary {
  std::size_t records = 0;
  std::map<Omega, std::size_t> histogram;
  std::optional<Omega> min_omega;
  std::size_t distinct_points = 0;
  std::size_t distinct_fibers = 0;
};

DensitySummary density_report(const std::vector<SearchRecord>& records);

struct Threshold {
  std::string name;
  unsigned value;
};

struct SearchReport {
  std::string kind;
  std::vector<SearchRecord> records;
  ScanStats stats;
  DensitySummary summary;
  std::vector<Threshold> thresholds;
  /// Extra key/value facts (exact decimal strings), printed in key order.
  std::map<std::string, std::string> facts;
  /// Per-fiber minimum Ω, keyed by the fiber's comma-joined coordinates.
  std::map<std::string, Omega> fiber_min;
};

// ---------------------------------------------------------------------------
// Skew surface search

enum class FiberStrategy { split, admissible };

struct SkewSearchOptions {
  FiberStrategy strategy = FiberStrategy::admissible;
  /// Fibers to visit; 0 gives an empty report.
  std::size_t fiber_budget = 4;
  /// |s|, |t| <= fiber_bound.
  Int fiber_bound = 60;
  /// Split strategy: searched on this fiber only when set.
  std::optional<std::array<Int, 2>> fiber;
  /// u in [1, uv_bound], v in [-uv_bound, uv_bound], gcd(u, v) = 1.
  Int uv_bound = 12;
  ScanOptions scan;
};

struct SplitForms {
  std::array<Int, 2> fiber;
  std::array<LinearForm, 5> forms;  // u, v, G, L4, L5
  bool product_identity = false;    // u v G L4 L5 = Φ'
};

SplitForms assemble_split_forms(const SkewCubicModel& m, const Int& s, const Int& t);

/// Throws the model-level gate failure as Error(condition_violated), and
/// Error(local_obstruction) when an explicitly requested split fiber is obstructed.
SearchReport skew_surface_search(const SkewCubicModel& m, const SkewSearchOptions& opts = {});

// ---------------------------------------------------------------------------
// Threefold search

struct ThreefoldSearchOptions {
  /// Real point of the threefold; picks the triple whose (p1, -p2^2, p3^2)
  /// is closest in direction to (ζ0, ζ1, ζ2).
  std::optional<std::array<double, 5>> target;
  std::size_t triple_budget = 1;
  /// (u, v) = (u0 + 210 i, v0 + 210 j) for 0 <= i, j < uv_steps.
  std::size_t uv_steps = 4;
  std::size_t triple_pool = 16;
  ScanOptions scan;
};

/// Throws Error(no_admissible_triples) when the pool yields none.
SearchReport threefold_search(const ThreefoldSearchOptions& opts = {});

SearchReport elkies_search(const BoxSpec& box, const ScanOptions& opts = {});

/// "# satlab-records v1" header, column line, one record per line.
std::string records_tsv(const std::vector<SearchRecord>& records);
/// Structured report with sorted keys and no timing data.
std::string report_json(const SearchReport& report);
/// Human-readable summary lines.
std::string report_text(const SearchReport& report);

}  // namespace satlab
