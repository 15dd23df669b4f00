#pragma once

#include "ipad/sdl.hpp"
#include "ipad/sdl_solvers.hpp"
#include "ipad/solver.hpp"

#include <string_view>
#include <vector>

namespace ipad {

enum class WScheme { prox_linear, pith };
enum class DScheme { prox_linear, admm, linear_system_project, columnwise_palm };

struct VariantPreset {
  std::string_view name;
  WScheme w_scheme;
  bool w_criterion;  // W block goes through the acceptance loop
  long w_fixed_steps;
  DScheme d_scheme;
  bool d_criterion;
  double default_c;      // 0 for the exact-step baselines
  double default_d_scale;  // Lipschitz-bound multiplier of the D prox-linear step
  bool descent_exempt;   // INV: no descent contract, oscillations recorded
};

// Preset names are stable CLI identifiers: palm, mpalm, inv, ipad-pith,
// ipad-admm, ipad-p2a.
const VariantPreset* find_variant(std::string_view name);
std::vector<std::string_view> variant_names();

// Options resolved against a variant: sentinel values (negative C, eta <= 0,
// tol <= 0, rho <= 0, steps <= 0) select the documented defaults.
struct SdlRunOptions {
  double c_x = -1.0;
  double c_y = -1.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  long max_outer = 500;
  long max_inner = 20;
  double outer_tol = 0.0;
  StopMode stop_mode = StopMode::synthetic;
  double abs_error_floor = 1e-12;
  std::uint64_t seed = 0;
  double pith_step_scale = 1.01;
  double dict_step_scale = 0.0;  // <= 0: preset default (PALM uses a
                                 // conservative bound, IPAD presets a tight one)
  long pith_max_steps = 0;
  double admm_rho = 0.0;
  long admm_max_steps = 0;
};

struct ResolvedRun {
  IpadConfig ipad;
  PithConfig pith;
  AdmmConfig admm;
  double dict_step_scale = 1.01;
};

ResolvedRun resolve_options(const VariantPreset& preset, const SdlRunOptions& opts);

// Shared outer loop over the preset's block schemes; identical trace schema
// and stop machinery across every variant.
SolveResult run_sdl_variant(const SdlInstance& inst, const VariantPreset& preset,
                            const SdlRunOptions& opts, const Matrix& d0,
                            const Matrix& w0);

SolveResult palm_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                       const Matrix& d0, const Matrix& w0);
SolveResult mpalm_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                        const Matrix& d0, const Matrix& w0);
SolveResult inv_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                      const Matrix& d0, const Matrix& w0);

// Sign changes of successive objective differences along a trace.
long psi_oscillations(const std::vector<IterationRecord>& trace);

}  // namespace ipad
