#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vorlat/lattice.hpp"

namespace vorlat {

enum class RelevantStatus { Relevant, WeakOnly, NotRelevant, Undecided };
const char* status_name(RelevantStatus s);
RelevantStatus status_from_name(const std::string& s);

struct SearchParams {
  int grid_per_axis = 33;    // coarse grid resolution per complement axis
  int refine_starts = 3;     // best grid samples used as refinement starts
  double shrink = 0.2;       // step shrink factor in the pattern refinement
  double step_tol = 1e-10;   // refinement stops below this step
  double extent_scale = 2.0; // grid half-width = extent_scale * mu_upper
  double tol = 1e-9;         // classification tolerance on margins
  std::uint64_t seed = 0;    // recorded in reports; the search is deterministic
};

// Result of searching the bisector of (0, v) for a point at least as close
// to {0, v} as to every competitor.  margin is the best found value of
// g(x) = max over competitors w of (||x|| - ||x - w||):
//   g < -tol  => strictly closer to 0 and v than to anything else (Relevant)
//   |g| <= tol => closest, with a tie (WeakOnly)
//   g > +tol at the refined minimum => no qualifying point found (NotRelevant)
struct WitnessResult {
  RelevantStatus status = RelevantStatus::Undecided;
  bool has_witness = false;
  Eigen::VectorXd witness;  // best bisector sample (meaningful when found)
  double margin = 0.0;
};

// Searches the bisector of (0, v) over a grid on the hyperplane through v/2
// orthogonal (euclidean) to v, each base point projected onto the bisector
// along v, followed by pattern refinement.  Non-strictly-convex norms
// (p = 1, inf) require an explicit witness hint; otherwise
// NonConvexNormRouting is thrown (2D callers use the planar cell tracer).
WitnessResult witness_search(const Basis& basis, const NormSpec& norm, const LatticeVector& v,
                             const std::vector<LatticeVector>& competitors,
                             const SearchParams& params = {},
                             const Eigen::VectorXd* witness_hint = nullptr);

struct RelevantEntry {
  LatticeVector v;
  RelevantStatus status = RelevantStatus::Undecided;
  bool has_witness = false;
  Eigen::VectorXd witness;
  double margin = 0.0;
};

struct RelevantCounts {
  int relevant = 0;
  int weak_only = 0;
  int not_relevant = 0;
  int undecided = 0;
};

struct RelevantReport {
  NormSpec norm;
  double lambda1 = 0.0;
  double mu_upper = 0.0;
  double candidate_radius = 0.0;  // 2 * mu_upper
  RelevantCounts counts;
  std::vector<RelevantEntry> results;  // sorted lexicographically by coeffs
};

// Classifies every nonzero lattice vector with ||v|| <= 2*mu_upper.
// Competitors for each v: lattice vectors w != 0, v with
// ||w - v/2|| <= ||v/2|| + 2*mu_upper.  Results are computed once per +-v
// pair and mirrored (x witnesses v iff x - v witnesses -v).  Checks the
// packing bound  #(relevant + weak) <= (1 + 4*mu_upper/lambda1)^n  and
// throws CountViolation on breach.
RelevantReport enumerate_relevant(const Basis& basis, const NormSpec& norm,
                                  const SearchParams& params = {},
                                  std::int64_t budget = 10'000'000);

struct EuclideanRelevantResult {
  std::vector<LatticeVector> relevant;  // +- pairs, sorted lexicographically
  int tie_cosets = 0;                   // cosets with non-unique minimizers
};

// Exact euclidean relevant vectors: v is relevant iff +-v are the unique
// minimizers of the coset v + 2L.  Ties within 1e-9 relative mark the coset
// as contributing nothing.
EuclideanRelevantResult euclidean_relevant_oracle(const Basis& basis,
                                                  std::int64_t budget = 10'000'000);

struct CvpResult {
  LatticeVector closest;
  double distance = 0.0;
};

// Closest lattice point by enumeration within mu_upper of the target
// (guaranteed nonempty); ties resolved to lexicographically smallest coeffs.
CvpResult cvp_bruteforce(const Basis& basis, const NormSpec& norm,
                         const Eigen::VectorXd& target, std::int64_t budget = 10'000'000);

// Greedy walk over euclidean relevant vectors: repeatedly add the relevant
// vector giving the largest distance reduction until none improves.  The
// end point is a closest vector (the relevant vectors define the cell).
// norm must be l2 (NotEuclidean otherwise).
CvpResult cvp_walk_euclidean(const Basis& basis, const NormSpec& norm,
                             const Eigen::VectorXd& target,
                             const std::vector<LatticeVector>* relevant = nullptr,
                             std::int64_t max_steps = 1'000'000);

}  // namespace vorlat
