#ifndef ZEROSET_CONSISTENCY_HPP
#define ZEROSET_CONSISTENCY_HPP

#include <optional>
#include <span>
#include <vector>

#include "zeroset/grid.hpp"

namespace zeroset {

/// Greedy matching of high-resolution zeros into low-resolution detections.
/// Indices refer to the PointSets passed to greedy_match.
struct MatchResult {
  std::vector<std::size_t> U;             // matched indices into Z_hi, in processing order
  std::vector<std::size_t> phi;           // phi[i] is the Z_lo index matched to U[i]
  std::vector<std::size_t> unmatched_hi;  // indices into Z_hi with no partner
  double max_distortion = 0;              // max sup-norm |lambda - phi(lambda)|
  std::optional<int> certificate;         // 0 certified, 1 failure; set by match_and_certify
};

/// Processes Z_hi in row-major lattice order; each point takes the closest still
/// unmatched detection within 2 delta_lo (ties: row-major smallest), if any.
MatchResult greedy_match(const PointSet& Z_hi, const PointSet& Z_lo, double delta_lo);

/// 0 iff every point of Z_hi is matched and every detection of Z_lo inside
/// Omega_{target - 2 delta_lo} is an image of phi; 1 otherwise. `target_halfwidth`
/// is the half-width of the box both sets were computed on.
int certificate(const MatchResult& match, const PointSet& Z_hi, const PointSet& Z_lo,
                double target_halfwidth, double delta_lo);

/// greedy_match followed by certificate.
MatchResult match_and_certify(const PointSet& Z_hi, const PointSet& Z_lo,
                              double target_halfwidth, double delta_lo);

/// Mean of the certificates: estimated failure probability.
double failure_rate(std::span<const int> certificates);

/// Decides W_{L,theta}(U, V) <= bound: whether an injective map Phi: U -> V with
/// |Phi(z) - z|_inf <= bound exists whose image contains V inside Omega_{L - theta}.
/// Exact, via maximum bipartite matching on the threshold graph.
bool wasserstein_within(const PointSet& U, const PointSet& V, double L, double theta,
                        double bound);

}  // namespace zeroset

#endif  // ZEROSET_CONSISTENCY_HPP
