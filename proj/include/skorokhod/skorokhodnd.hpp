#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skorokhod/core/convex_domain.hpp"
#include "skorokhod/core/sampled_path.hpp"

namespace skorokhod::reflectnd {

/// X = w + phi on a convex domain. phi is piecewise constant on the grid:
/// increment k (from t_k to t_{k+1}) is a jump at t_{k+1}.
struct SkorokhodNdSolution {
  SampledPath X;
  SampledPath phi;
  std::vector<double> total_variation;  ///< |phi|(t_k), sum of increment norms
  /// Unit direction of increment k, empty where the increment is zero.
  std::vector<std::optional<Point>> directions;

  /// w = X - phi, recovered pointwise.
  SampledPath driver() const;
};

/// Step-function construction: X(t_{k+1}) = project(X(t_k) + w(t_{k+1}) - w(t_k)).
/// Requires w.kind() == Step and w(0) in closure(D); throws PreconditionError
/// otherwise. Projection failures propagate.
SkorokhodNdSolution solve_skorokhod_step(const SampledPath& w, const ConvexDomain& domain,
                                         const ProjectionOptions& projection = {});

struct RefinementOptions {
  /// Stop when successive levels agree within this sup distance. Unset means
  /// 1e-4 * (1 + sup|w|).
  std::optional<double> refine_tol;
  std::size_t max_levels = 6;
  std::size_t factor = 2;  ///< 2 = dyadic, 3 = triadic
  ProjectionOptions projection;
};

struct ContinuousSolution {
  SkorokhodNdSolution solution;  ///< on w.grid().refined(factor^levels)
  std::size_t levels = 0;
  std::size_t stride = 1;        ///< factor^levels; input grid point k sits at index k * stride
  double refine_tol = 0.0;
  std::vector<double> gaps;      ///< gaps[l-1] = sup distance between levels l-1 and l
  std::vector<double> terminal_variation;  ///< |phi|(T) per level

  /// Solution values at the input grid points.
  SampledPath X_on_input_grid() const;
  SampledPath phi_on_input_grid() const;
};

/// Approximates the solution for continuous (piecewise-linear) w by step
/// solutions on successively refined grids. Stops at level l >= 2 once
/// gaps[l-1] <= refine_tol and gaps[l-2] <= 2 refine_tol, where a gap is the
/// sup distance between successive levels at the coarser level's points (or
/// at once on a zero gap). If level 0 never touches the boundary, it is
/// already exact and is returned with no refinement.
/// Throws RefinementLimitError (carrying the gaps) after max_levels.
ContinuousSolution solve_skorokhod_continuous(const SampledPath& w, const ConvexDomain& domain,
                                              const RefinementOptions& options = {});

/// min over grid times t of RHS(t) - LHS(t) in
///   |X - X~|^2(t) <= |w - w~|^2(t) + 2 int_0^t <(w - w~)(t) - (w - w~)(s), phi(ds) - phi~(ds)>,
/// with the integral evaluated exactly for the piecewise-constant phi.
/// A correct pair of solutions gives a value >= -1e-9 * scale.
double tanaka_inequality_gap(const SkorokhodNdSolution& sol, const SkorokhodNdSolution& other);

/// RHS - LHS of |X(t) - X(s)|^2 <= |w(t) - w(s)|^2 + 2 int_(s,t] <w(t) - w(u), phi(du)>
/// for grid times s <= t. Throws PreconditionError when s > t or off-grid.
double modulus_gap(const SkorokhodNdSolution& sol, double s, double t);

/// Association diagnostics of a solution against its domain.
struct AssociationReport {
  double max_identity_error = 0.0;         ///< max |X - (w + phi)|, w = driver used
  double max_violation = 0.0;              ///< max constraint violation of X
  double interior_mass = 0.0;              ///< sum of |dphi| at steps landing off the boundary
  double max_normal_angle = 0.0;           ///< worst angle of dphi to the normal cone
  double max_variation_mismatch = 0.0;     ///< max ||dphi| - d|phi||
  bool variation_monotone = true;
};

/// Checks X = w + phi against the given driver, containment, complementarity
/// and the normal-direction condition. `tol_bd` unset uses the default
/// 1e-8 * (1 + |x|).
AssociationReport check_association(const SkorokhodNdSolution& sol, const SampledPath& w,
                                    const ConvexDomain& domain,
                                    std::optional<double> tol_bd = std::nullopt);

enum class ConditionStatus { Holds, Fails, Unknown };

std::string to_string(ConditionStatus status);

/// Condition A: some unit e with <e, n> >= c > 0 for every inward normal n.
struct ConditionAReport {
  ConditionStatus status = ConditionStatus::Unknown;
  Point e;
  double c = 0.0;
  std::string reason;
};

/// Condition B: a uniform interior-ball condition; decided here only through
/// the sufficient conditions "D bounded" or "d = 2".
struct ConditionBReport {
  ConditionStatus status = ConditionStatus::Unknown;
  std::optional<double> delta;
  std::string reason;
};

struct DomainConditionReport {
  ConditionAReport condition_a;
  ConditionBReport condition_b;
};

/// Maximizes min_i <e, n_i> over unit e. This equals the distance from 0 to
/// the convex hull of the normals; the search starts from the normalized
/// centroid and refines with Frank-Wolfe steps (`search_iterations` of them),
/// then polishes on the active set. Domains with balls report Unknown.
/// Throws UnsupportedError for dimension > 8.
ConditionAReport check_condition_a(const ConvexDomain& domain, std::size_t search_iterations = 2000);

ConditionBReport check_condition_b(const ConvexDomain& domain);

DomainConditionReport check_conditions(const ConvexDomain& domain);

}  // namespace skorokhod::reflectnd
