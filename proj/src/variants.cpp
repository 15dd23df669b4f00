#include "ipad/variants.hpp"

#include <algorithm>
#include <array>
#include <memory>

namespace ipad {

namespace {

// PALM's dictionary step carries the conservative Lipschitz upper bound the
// paper singles out; the IPAD presets use the tight spectral estimate.
constexpr std::array<VariantPreset, 6> kPresets = {{
    // name, w_scheme, w_crit, w_steps, d_scheme, d_crit, C, d_scale, exempt
    {"palm", WScheme::prox_linear, false, 1, DScheme::prox_linear, false, 0.0,
     10.0, false},
    {"mpalm", WScheme::prox_linear, false, 1, DScheme::columnwise_palm, false,
     0.0, 1.01, false},
    {"inv", WScheme::prox_linear, false, 1, DScheme::linear_system_project,
     false, 0.0, 1.01, true},
    {"ipad-pith", WScheme::pith, true, 0, DScheme::prox_linear, false, 1.0,
     1.01, false},
    {"ipad-admm", WScheme::prox_linear, false, 1, DScheme::admm, true, 1.0,
     1.01, false},
    {"ipad-p2a", WScheme::pith, false, 2, DScheme::admm, true, 1.0, 1.01,
     false},
}};

}  // namespace

const VariantPreset* find_variant(std::string_view name) {
  for (const VariantPreset& p : kPresets) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<std::string_view> variant_names() {
  std::vector<std::string_view> names;
  for (const VariantPreset& p : kPresets) names.push_back(p.name);
  return names;
}

namespace {

// Stop-rule dynamics at the benchmark sizes favor a stronger margin over the
// 2C bound than the generic 2.5C default.
double sdl_default_eta(double c) { return std::max(6.0 * c, 1e-3); }

}  // namespace

ResolvedRun resolve_options(const VariantPreset& preset,
                            const SdlRunOptions& opts) {
  ResolvedRun r;
  r.ipad.c_x = opts.c_x >= 0.0 ? opts.c_x : preset.default_c;
  r.ipad.c_y = opts.c_y >= 0.0 ? opts.c_y : preset.default_c;
  r.ipad.eta1 = Schedule(opts.eta1 > 0.0 ? opts.eta1
                                         : sdl_default_eta(r.ipad.c_x));
  // INV reuses the IPAD proximal weight in its linear system
  const double eta2_c =
      preset.d_scheme == DScheme::linear_system_project ? 1.0 : r.ipad.c_y;
  r.ipad.eta2 = Schedule(opts.eta2 > 0.0 ? opts.eta2 : sdl_default_eta(eta2_c));
  r.ipad.max_outer = opts.max_outer > 0 ? opts.max_outer : 500;
  r.ipad.max_inner = opts.max_inner > 0 ? opts.max_inner : 20;
  r.ipad.stop_mode = opts.stop_mode;
  r.ipad.outer_tol =
      opts.outer_tol > 0.0
          ? opts.outer_tol
          : (opts.stop_mode == StopMode::synthetic ? 1e-4 : 1e-2);
  r.ipad.abs_error_floor = opts.abs_error_floor;
  r.ipad.seed = opts.seed;

  r.pith.step_scale = opts.pith_step_scale >= 1.0 ? opts.pith_step_scale : 1.01;
  if (opts.pith_max_steps > 0) {
    r.pith.max_steps = opts.pith_max_steps;
  } else {
    r.pith.max_steps = preset.name == "ipad-p2a" ? preset.w_fixed_steps : 20;
  }
  r.dict_step_scale = opts.dict_step_scale > 0.0 ? opts.dict_step_scale
                                                  : preset.default_d_scale;
  r.admm.rho = opts.admm_rho;
  r.admm.relaxation = 1.7;
  r.admm.max_steps = opts.admm_max_steps > 0 ? opts.admm_max_steps
                                             : r.ipad.max_inner;
  return r;
}

SolveResult run_sdl_variant(const SdlInstance& inst, const VariantPreset& preset,
                            const SdlRunOptions& opts, const Matrix& d0,
                            const Matrix& w0) {
  const ResolvedRun r = resolve_options(preset, opts);
  NnpProblem problem = as_nnp(inst);

  PithSolver w_solver(inst, r.pith);
  std::unique_ptr<InnerSolver> d_solver;
  switch (preset.d_scheme) {
    case DScheme::prox_linear:
      d_solver = std::make_unique<DictProxLinearSolver>(inst, r.dict_step_scale);
      break;
    case DScheme::admm:
      d_solver = std::make_unique<AdmmDictSolver>(inst, r.admm);
      break;
    case DScheme::linear_system_project:
      d_solver = std::make_unique<InvDictSolver>(inst);
      break;
    case DScheme::columnwise_palm:
      d_solver = std::make_unique<MpalmDictSolver>(inst, r.dict_step_scale);
      break;
  }

  BlockPolicy policy_w;
  policy_w.solver = &w_solver;
  if (preset.w_criterion) {
    policy_w.kind = BlockPolicy::Kind::criterion;
    policy_w.step_budget = std::min(r.ipad.max_inner, r.pith.max_steps);
  } else {
    policy_w.kind = BlockPolicy::Kind::fixed_steps;
    policy_w.step_budget =
        preset.w_scheme == WScheme::pith ? r.pith.max_steps : preset.w_fixed_steps;
  }

  BlockPolicy policy_d;
  policy_d.solver = d_solver.get();
  if (preset.d_criterion) {
    policy_d.kind = BlockPolicy::Kind::criterion;
    policy_d.step_budget = r.admm.max_steps;
  } else {
    policy_d.kind = BlockPolicy::Kind::fixed_steps;
    policy_d.step_budget = 1;
  }

  BlockPoint init{w0, d0};
  return run_outer_loop(problem, r.ipad, policy_w, policy_d, init);
}

SolveResult palm_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                       const Matrix& d0, const Matrix& w0) {
  return run_sdl_variant(inst, *find_variant("palm"), opts, d0, w0);
}

SolveResult mpalm_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                        const Matrix& d0, const Matrix& w0) {
  return run_sdl_variant(inst, *find_variant("mpalm"), opts, d0, w0);
}

SolveResult inv_solve(const SdlInstance& inst, const SdlRunOptions& opts,
                      const Matrix& d0, const Matrix& w0) {
  return run_sdl_variant(inst, *find_variant("inv"), opts, d0, w0);
}

long psi_oscillations(const std::vector<IterationRecord>& trace) {
  long count = 0;
  double last_sign = 0.0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double diff = trace[i].psi - trace[i - 1].psi;
    const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    if (sign != 0.0 && last_sign != 0.0 && sign != last_sign) ++count;
    if (sign != 0.0) last_sign = sign;
  }
  return count;
}

}  // namespace ipad
