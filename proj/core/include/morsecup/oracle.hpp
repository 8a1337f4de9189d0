#pragma once

// Brute-force cross-checks for the symbolic engine. Nothing here calls the
// intersections module: limits are read off eigen-coefficient supports and
// confirmed by a matrix exponential, and candidate intersection points come
// from a separately assembled linear system.

#include "morsecup/complex.hpp"
#include "morsecup/eigenflow.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace morsecup {

struct OracleConfig {
  double horizon = 50.0;
  double step = 0.1;  // grid resolution h, also the time step of the Z-set check
  int samples_per_cell = 3;
  std::uint64_t seed = 0;
  double eps_near = 1e-4;
  double eps_support = 1e-10;
  double boundary_clearance = 0.05;  // d_int
  int max_base_dim = 4;              // brute-force counts only up to n = 3
};

/// Throws InvalidConfig unless horizon > 0, step > 0, samples_per_cell >= 1.
void validate(const OracleConfig& cfg);

enum class Direction { Forward, Backward };

/// The critical point x flows to (forward) or comes from (backward).
/// Throws AmbiguousSupport, ExitsNeighborhood, OracleMismatch.
CriticalPointLabel classify_limit(const MorseDatum& d, const Point& x, Direction direction,
                                  const OracleConfig& cfg = {});

/// Number of flow lines from hi to lo, mod 2.
int count_connections_bruteforce(const MorseDatum& d, const CriticalPointLabel& hi, const CriticalPointLabel& lo,
                                 const OracleConfig& cfg = {});

/// Points of W^u(z; gamma) cap W^s(x; alpha) cap W^s(y; beta), mod 2.
int count_triple_bruteforce(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                            const CriticalPointLabel& z, const CriticalPointLabel& x, const CriticalPointLabel& y,
                            const OracleConfig& cfg = {});

/// Sampled test that the mixed invariant set Z stays boundary_clearance away
/// from the boundary of N. No flagged sample at all counts as false.
bool z_set_sample_check(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                        const OracleConfig& cfg = {});

struct OracleDiscrepancy {
  std::string what;  // "connection" or "triple"
  std::vector<std::string> generators;
  int oracle = 0;
  int engine = 0;
};

struct OracleCounts {
  std::map<std::pair<std::string, std::string>, int> connections;           // (hi, lo)
  std::map<std::tuple<std::string, std::string, std::string>, int> triples;  // (z, x, y)
  std::vector<OracleDiscrepancy> discrepancies;
};

/// Recounts every adjacent-index differential entry of `engine` (a complex
/// built from d) and records disagreements mod 2.
OracleCounts compare_connections(const MorseDatum& d, const GradedComplex& engine, const OracleConfig& cfg = {});

/// engine(z, x, y) is the symbolic structure constant; compared mod 2 over
/// every triple with matching indices.
using TripleLookup = std::function<Integer(const std::string&, const std::string&, const std::string&)>;
OracleCounts compare_triples(const MorseDatum& gamma, const MorseDatum& alpha, const MorseDatum& beta,
                             const TripleLookup& engine, const OracleConfig& cfg = {});

}  // namespace morsecup
