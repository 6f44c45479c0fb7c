#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "traffic/macro.hpp"
#include "traffic/params.hpp"

namespace traffic::roe {

/// Periodic 1-D grid of conserved states.
struct RoadField {
  std::vector<macro::ConservedState> cells;
  double dx = 0.0;  ///< cell size [m]

  double length() const { return dx * static_cast<double>(cells.size()); }
  std::size_t size() const { return cells.size(); }

  /// Total vehicle count sum(rho_i) dx.
  double total_vehicles() const;
};

/// Eigenstructure of the linearized interface problem.
struct RoeDecomposition {
  std::array<double, 2> lambda{};                 ///< eigenvalues [m/s]
  std::array<double, 2> sigma{};                  ///< wave strengths
  std::array<std::array<double, 2>, 2> evec{};    ///< right eigenvectors (columns)
};

struct SolverConfig {
  double cfl = 0.9;                ///< Courant number in (0, 1]
  double t_end = 300.0;            ///< horizon [s]
  double snapshot_interval = 10.0; ///< [s]
  double density_floor = 2e-7;     ///< [veh/m]; default 1e-6 * rho_0
  int threads = 1;                 ///< worker threads for fluxes/sources

  /// Cells at or below this density are treated as empty road when
  /// evaluating source terms (no relaxation, no viscous coupling across
  /// their interfaces). Defaults to 10 * density_floor when <= 0.
  double vacuum_threshold = -1.0;

  double resolved_vacuum_threshold() const {
    return vacuum_threshold > 0.0 ? vacuum_threshold : 10.0 * density_floor;
  }

  void validate() const;
};

/// Per-step diagnostics accumulated by run().
struct RunStats {
  long steps = 0;
  double max_courant = 0.0;       ///< max over steps of dt max|lambda| / dx
  double floor_mass_added = 0.0;  ///< total vehicles created by density flooring
  long expansion_flags = 0;       ///< interfaces where an eigenvalue changes sign
                                  ///< across the cells (plain Roe has no entropy fix)
};

/// Density-weighted interface velocity
///   vbar = (sqrt(rho_l) v_l + sqrt(rho_r) v_r) / (sqrt(rho_l) + sqrt(rho_r)).
/// Degenerate rule: both densities at the floor return the arithmetic mean.
double roe_average_velocity(const macro::ConservedState& left,
                            const macro::ConservedState& right, double density_floor);

/// Eigenvalues, wave strengths and right eigenvectors at the averaged state.
/// Satisfies dF = A(Ubar) dU and sigma_1 e_1 + sigma_2 e_2 = dU.
RoeDecomposition roe_decomposition(const macro::ConservedState& left,
                                   const macro::ConservedState& right, double alpha,
                                   double density_floor);

/// Upwind interface flux
///   F = (F(left) + F(right))/2 - (1/2) sum_k sigma_k |lambda_k| e_k.
macro::FluxVector roe_flux(const macro::ConservedState& left,
                           const macro::ConservedState& right, double alpha,
                           double density_floor);

/// Hyperbolic time-step bound dt = cfl dx / max|lambda|; falls back to
/// cfl dx / v_0 on an all-zero velocity field.
double cfl_dt(const RoadField& field, const SolverConfig& cfg, const ModelParams& p);

/// Stability bound an explicit treatment of the viscous source would need,
/// dt <= dx^2 / (2 max mu/rho) with a 0.8 safety factor; infinite when no
/// viscous coupling is active. Diagnostic only: step() integrates the
/// viscous flux implicitly, so run() does not restrict dt by this bound
/// (near-empty cells drive it to microseconds while mu stays finite).
double viscous_dt(const RoadField& field, const SolverConfig& cfg, const ModelParams& p);

/// Full semi-discrete source of cell i: relaxation to the equilibrium speed,
/// anticipation with a central velocity difference over 2 dx, and the
/// conservative second difference of mu v_x with arithmetically averaged
/// interface viscosities. Periodic neighbor indexing. Cells at or below the
/// vacuum threshold carry no source and transmit no viscous momentum. step()
/// splits this operator: the first two parts enter its trapezoidal stage,
/// the viscous part its implicit stage.
macro::SourceVector source_discretization(const RoadField& field, std::size_t i,
                                          const ModelParams& p, const SolverConfig& cfg);

/// One fractional step: conservative Roe update with a donor-cell positivity
/// limiter on the interface fluxes, trapezoidal stage for the
/// relaxation and anticipation sources  U^{n+1} = U* + (dt/2)(S(U^n) + S(U*)),
/// then a backward-Euler solve for the viscous flux (cyclic tridiagonal in
/// the velocities). The density floor is applied after each sub-stage (mass
/// added is accumulated into stats) and flow is floored to q >= 0 between
/// the source stages. Throws StepError on NaN or density negative beyond
/// round-off of the floor.
void step(RoadField& field, double dt, const ModelParams& p, const SolverConfig& cfg,
          RunStats* stats = nullptr);

/// Advances the field from t = 0 to cfg.t_end, bounding dt by the CFL
/// condition and truncating steps so snapshot times are hit exactly. The
/// sink receives (t, field) at t = 0, at every snapshot_interval boundary
/// and at t_end. Deterministic, independent of cfg.threads.
RunStats run(RoadField& field, const SolverConfig& cfg, const ModelParams& p,
             const std::function<void(double, const RoadField&)>& sink);

}  // namespace traffic::roe
