#pragma once

// Central numeric tolerance table. Every fixed threshold used by the library
// lives here so the acceptance values stay pinned in one place.

namespace qcorr {
namespace tol {

// matrix layer
inline constexpr double symmetry_check   = 1e-12;  // SymMat3 construction gate
inline constexpr double hermiticity      = 1e-10;  // eig_herm4 / state input gate
inline constexpr double jacobi_offdiag   = 1e-12;  // 4x4 Jacobi convergence (Frobenius)
inline constexpr double cardano_disc     = 1e-14;  // switch 3x3 closed form -> Jacobi
inline constexpr double eig_root_scale   = 1e-10;  // |det(m - lambda I)| <= scale*(1+||m||)

// state layer
inline constexpr double trace_one        = 1e-10;
inline constexpr double psd_eigen_floor  = -1e-9;  // smallest admissible eigenvalue
inline constexpr double off_x_entry      = 1e-10;  // as_x_state rejection gate
inline constexpr double x_block_slack    = 1e-12;  // |rho14| <= sqrt(rho11 rho44) + slack

// correlation measures
inline constexpr double x_branch_eps     = 1e-9;   // ||x|| below this uses the x = 0 branch
inline constexpr double direction_norm   = 1e-12;  // measurement axis normalization gate
inline constexpr double value_clamp_ceiling = 0.5 + 1e-9;
inline constexpr double oracle_agree     = 1e-8;   // closed form vs search oracle

// channels
inline constexpr double cptp_check       = 1e-10;  // || sum E^dag E - I ||_max
inline constexpr double unital_shift     = 1e-12;

// dynamics
inline constexpr double law_residual     = 1e-9;   // engine vs closed-form decay laws
inline constexpr double ode_halving      = 1e-8;   // RK4 step acceptance (sup norm)
inline constexpr double ode_min_step     = 1e-7;
inline constexpr double amplitude_norm   = 1e-9;   // |p(t)| <= 1 + slack

}  // namespace tol
}  // namespace qcorr
