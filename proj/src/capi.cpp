#include "ipad/ipad.h"

#include "ipad/denoise.hpp"
#include "ipad/solver.hpp"
#include "ipad/synthetic.hpp"
#include "ipad/variants.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace {

thread_local std::string g_last_error;

ipad_status fail(ipad_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
ipad_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return IPAD_OK;
  } catch (const ipad::io_error& e) {
    return fail(IPAD_EIO, e.what());
  } catch (const ipad::config_error& e) {
    return fail(IPAD_EINVAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(IPAD_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(IPAD_ENUMERIC, e.what());
  }
}

ipad::SdlRunOptions to_run_options(const ipad_options& o) {
  ipad::SdlRunOptions r;
  r.c_x = o.c_x;
  r.c_y = o.c_y;
  r.eta1 = o.eta1;
  r.eta2 = o.eta2;
  r.max_outer = o.max_outer;
  r.max_inner = o.max_inner;
  r.outer_tol = o.outer_tol;
  r.stop_mode = o.stop_mode == IPAD_STOP_REAL ? ipad::StopMode::real
                                              : ipad::StopMode::synthetic;
  r.abs_error_floor = o.abs_error_floor;
  r.seed = o.seed;
  r.pith_step_scale = o.pith_step_scale;
  r.pith_max_steps = o.pith_max_steps;
  r.dict_step_scale = o.dict_step_scale;
  r.admm_rho = o.admm_rho;
  r.admm_max_steps = o.admm_max_steps;
  return r;
}

ipad_options from_resolved(const ipad::ResolvedRun& r, const ipad_options& base) {
  ipad_options o = base;
  o.c_x = r.ipad.c_x;
  o.c_y = r.ipad.c_y;
  o.eta1 = r.ipad.eta1.at(1);
  o.eta2 = r.ipad.eta2.at(1);
  o.max_outer = r.ipad.max_outer;
  o.max_inner = r.ipad.max_inner;
  o.outer_tol = r.ipad.outer_tol;
  o.stop_mode = r.ipad.stop_mode == ipad::StopMode::real ? IPAD_STOP_REAL
                                                         : IPAD_STOP_SYNTH;
  o.abs_error_floor = r.ipad.abs_error_floor;
  o.seed = r.ipad.seed;
  o.pith_step_scale = r.pith.step_scale;
  o.pith_max_steps = r.pith.max_steps;
  o.dict_step_scale = r.dict_step_scale;
  o.admm_rho = r.admm.rho;
  o.admm_max_steps = r.admm.max_steps;
  return o;
}

ipad_trace_row to_row(const ipad::IterationRecord& rec) {
  ipad_trace_row row;
  row.t = rec.t;
  row.psi = rec.psi;
  row.dx_rel = rec.dx_rel;
  row.dy_rel = rec.dy_rel;
  row.ex_norm = rec.ex_norm;
  row.ey_norm = rec.ey_norm;
  row.inner_x = rec.inner_x;
  row.inner_y = rec.inner_y;
  row.elapsed_s = rec.elapsed_s;
  row.dx_norm = rec.dx_norm;
  row.dy_norm = rec.dy_norm;
  row.dpsi_rel = rec.dpsi_rel;
  row.x_prev_norm = rec.x_prev_norm;
  row.y_prev_norm = rec.y_prev_norm;
  return row;
}

std::vector<ipad::IterationRecord> from_rows(const ipad_trace_row* rows,
                                             long count) {
  std::vector<ipad::IterationRecord> trace;
  trace.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    ipad::IterationRecord rec;
    rec.t = rows[i].t;
    rec.psi = rows[i].psi;
    rec.dx_rel = rows[i].dx_rel;
    rec.dy_rel = rows[i].dy_rel;
    rec.ex_norm = rows[i].ex_norm;
    rec.ey_norm = rows[i].ey_norm;
    rec.inner_x = rows[i].inner_x;
    rec.inner_y = rows[i].inner_y;
    rec.elapsed_s = rows[i].elapsed_s;
    rec.dx_norm = rows[i].dx_norm;
    rec.dy_norm = rows[i].dy_norm;
    rec.dpsi_rel = rows[i].dpsi_rel;
    rec.x_prev_norm = rows[i].x_prev_norm;
    rec.y_prev_norm = rows[i].y_prev_norm;
    trace.push_back(rec);
  }
  return trace;
}

int to_termination(ipad::Termination t) {
  switch (t) {
    case ipad::Termination::converged:
      return IPAD_TERM_CONVERGED;
    case ipad::Termination::max_outer:
      return IPAD_TERM_MAX_OUTER;
    case ipad::Termination::stalled:
      return IPAD_TERM_STALLED;
  }
  return IPAD_TERM_MAX_OUTER;
}

}  // namespace

struct ipad_instance {
  ipad::SdlInstance inst;
};

struct ipad_run {
  ipad::SolveResult result;
  ipad_options resolved;
};

extern "C" {

const char* ipad_status_str(ipad_status status) {
  switch (status) {
    case IPAD_OK:
      return "ok";
    case IPAD_EINVAL:
      return "invalid argument";
    case IPAD_EIO:
      return "i/o failure";
    case IPAD_ENUMERIC:
      return "numeric failure";
  }
  return "unknown";
}

const char* ipad_last_error(void) { return g_last_error.c_str(); }

const char* ipad_version(void) { return "0.1.0"; }

void ipad_options_default(ipad_options* options) {
  if (options == nullptr) return;
  options->c_x = -1.0;
  options->c_y = -1.0;
  options->eta1 = 0.0;
  options->eta2 = 0.0;
  options->max_outer = 500;
  options->max_inner = 20;
  options->outer_tol = 0.0;
  options->stop_mode = IPAD_STOP_SYNTH;
  options->abs_error_floor = 1e-12;
  options->seed = 0;
  options->pith_step_scale = 1.01;
  options->pith_max_steps = 0;
  options->dict_step_scale = 0.0;
  options->admm_rho = 0.0;
  options->admm_max_steps = 0;
}

int ipad_variant_is_valid(const char* name) {
  return name != nullptr && ipad::find_variant(name) != nullptr ? 1 : 0;
}

const char* ipad_variant_list(void) {
  static const std::string joined = [] {
    std::string s;
    for (std::string_view name : ipad::variant_names()) {
      if (!s.empty()) s += ",";
      s += name;
    }
    return s;
  }();
  return joined.c_str();
}

ipad_status ipad_instance_synth(long n, long m, long p, long k, double sigma,
                                double lambda, uint64_t seed,
                                ipad_instance** out) {
  if (out == nullptr) return fail(IPAD_EINVAL, "null output handle");
  *out = nullptr;
  return guarded([&] {
    ipad::SyntheticSpec spec;
    spec.n = n;
    spec.m = m;
    spec.p = p;
    spec.k = k;
    spec.noise_sigma = sigma;
    spec.lambda = lambda;
    spec.seed = seed;
    auto generated = ipad::gen_synthetic(spec);
    *out = new ipad_instance{std::move(generated.instance)};
  });
}

ipad_status ipad_instance_create(const double* data, long n, long p, long m,
                                 double lambda, double box_bound,
                                 ipad_instance** out) {
  if (out == nullptr) return fail(IPAD_EINVAL, "null output handle");
  *out = nullptr;
  if (data == nullptr) return fail(IPAD_EINVAL, "null data pointer");
  return guarded([&] {
    ipad::Matrix mat = Eigen::Map<const ipad::Matrix>(data, n, p);
    std::optional<double> box;
    if (box_bound > 0.0) box = box_bound;
    *out = new ipad_instance{ipad::SdlInstance(std::move(mat), m, lambda, box)};
  });
}

void ipad_instance_free(ipad_instance* instance) { delete instance; }

long ipad_instance_n(const ipad_instance* instance) { return instance->inst.n; }
long ipad_instance_m(const ipad_instance* instance) { return instance->inst.m; }
long ipad_instance_p(const ipad_instance* instance) { return instance->inst.p; }

ipad_status ipad_solve(const ipad_instance* instance, const char* variant,
                       const ipad_options* options, ipad_run** out) {
  if (out == nullptr) return fail(IPAD_EINVAL, "null output handle");
  *out = nullptr;
  if (instance == nullptr) return fail(IPAD_EINVAL, "null instance");
  if (variant == nullptr) return fail(IPAD_EINVAL, "null variant name");
  const ipad::VariantPreset* preset = ipad::find_variant(variant);
  if (preset == nullptr) {
    return fail(IPAD_EINVAL,
                std::string("unknown variant '") + variant + "'");
  }
  ipad_options opts;
  if (options != nullptr) {
    opts = *options;
  } else {
    ipad_options_default(&opts);
  }
  return guarded([&] {
    const ipad::SdlRunOptions run_opts = to_run_options(opts);
    const ipad::Matrix d0 = ipad::random_unit_dictionary(
        instance->inst.n, instance->inst.m, run_opts.seed);
    const ipad::Matrix w0 =
        ipad::Matrix::Zero(instance->inst.p, instance->inst.m);
    ipad::SolveResult result =
        ipad::run_sdl_variant(instance->inst, *preset, run_opts, d0, w0);
    const ipad::ResolvedRun resolved = ipad::resolve_options(*preset, run_opts);
    *out = new ipad_run{std::move(result), from_resolved(resolved, opts)};
  });
}

void ipad_run_free(ipad_run* run) { delete run; }

long ipad_run_steps(const ipad_run* run) {
  return static_cast<long>(run->result.trace.size());
}

ipad_status ipad_run_row(const ipad_run* run, long index, ipad_trace_row* out) {
  if (run == nullptr || out == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  if (index < 0 || index >= static_cast<long>(run->result.trace.size())) {
    return fail(IPAD_EINVAL, "trace index out of range");
  }
  *out = to_row(run->result.trace[static_cast<std::size_t>(index)]);
  return IPAD_OK;
}

int ipad_run_termination(const ipad_run* run) {
  return to_termination(run->result.termination);
}

double ipad_run_objective(const ipad_run* run) {
  return run->result.trace.back().psi;
}

double ipad_run_seconds(const ipad_run* run) {
  return run->result.total_seconds;
}

long ipad_run_outer_iters(const ipad_run* run) {
  return run->result.trace.back().t;
}

void ipad_run_resolved_options(const ipad_run* run, ipad_options* out) {
  if (run == nullptr || out == nullptr) return;
  *out = run->resolved;
}

ipad_status ipad_run_dictionary(const ipad_run* run, double* out,
                                size_t capacity) {
  if (run == nullptr || out == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  const ipad::Matrix& d = run->result.final.y;
  const size_t need = static_cast<size_t>(d.size());
  if (capacity < need) return fail(IPAD_EINVAL, "buffer too small");
  std::memcpy(out, d.data(), need * sizeof(double));
  return IPAD_OK;
}

ipad_status ipad_run_codes(const ipad_run* run, double* out, size_t capacity) {
  if (run == nullptr || out == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  const ipad::Matrix& w = run->result.final.x;
  const size_t need = static_cast<size_t>(w.size());
  if (capacity < need) return fail(IPAD_EINVAL, "buffer too small");
  std::memcpy(out, w.data(), need * sizeof(double));
  return IPAD_OK;
}

ipad_status ipad_descent_constants(const ipad_options* options,
                                   const char* variant, double lipschitz_m,
                                   double* a, double* b) {
  if (options == nullptr || a == nullptr || b == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  const ipad::VariantPreset* preset =
      ipad::find_variant(variant != nullptr ? variant : "ipad-admm");
  if (preset == nullptr) return fail(IPAD_EINVAL, "unknown variant");
  return guarded([&] {
    const ipad::ResolvedRun r =
        ipad::resolve_options(*preset, to_run_options(*options));
    const ipad::DescentConstants c =
        ipad::descent_constants(r.ipad, lipschitz_m);
    *a = c.a;
    *b = c.b;
  });
}

ipad_status ipad_audit_rows(const ipad_trace_row* rows, long count, double a,
                            double rel_tol, long* violations,
                            double* worst_margin) {
  if (rows == nullptr || violations == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  return guarded([&] {
    const auto trace = from_rows(rows, count);
    const ipad::DescentAudit audit = ipad::audit_descent(trace, a, rel_tol);
    *violations = audit.violations;
    if (worst_margin != nullptr) *worst_margin = audit.worst_margin;
  });
}

ipad_status ipad_criterion_violations(const ipad_trace_row* rows, long count,
                                      double c_x, double c_y, double abs_floor,
                                      long* violations) {
  if (rows == nullptr || violations == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  return guarded([&] {
    const auto trace = from_rows(rows, count);
    *violations = ipad::criterion_violations(trace, c_x, c_y, abs_floor);
  });
}

ipad_status ipad_pgm_read(const char* path, uint8_t** pixels, long* width,
                          long* height) {
  if (path == nullptr || pixels == nullptr || width == nullptr ||
      height == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  *pixels = nullptr;
  return guarded([&] {
    ipad::GrayImage img = ipad::pgm_read(path);
    auto* buffer = static_cast<uint8_t*>(std::malloc(img.pixels.size()));
    if (buffer == nullptr) throw std::bad_alloc();
    std::memcpy(buffer, img.pixels.data(), img.pixels.size());
    *pixels = buffer;
    *width = img.width;
    *height = img.height;
  });
}

ipad_status ipad_pgm_write(const char* path, const uint8_t* pixels, long width,
                           long height) {
  if (path == nullptr || pixels == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  return guarded([&] {
    ipad::GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(pixels, pixels + width * height);
    ipad::pgm_write(img, path);
  });
}

void ipad_buffer_free(void* buffer) { std::free(buffer); }

ipad_status ipad_add_noise(const uint8_t* pixels, long width, long height,
                           double sigma, uint64_t seed, uint8_t* out) {
  if (pixels == nullptr || out == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  return guarded([&] {
    ipad::GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(pixels, pixels + width * height);
    const ipad::GrayImage noisy = ipad::add_noise(img, sigma, seed);
    std::memcpy(out, noisy.pixels.data(), noisy.pixels.size());
  });
}

ipad_status ipad_psnr(const uint8_t* a, const uint8_t* b, long width,
                      long height, double* out_db) {
  if (a == nullptr || b == nullptr || out_db == nullptr) {
    return fail(IPAD_EINVAL, "null argument");
  }
  return guarded([&] {
    ipad::GrayImage ia;
    ia.width = width;
    ia.height = height;
    ia.pixels.assign(a, a + width * height);
    ipad::GrayImage ib = ia;
    ib.pixels.assign(b, b + width * height);
    *out_db = ipad::psnr(ia, ib);
  });
}

ipad_status ipad_denoise(const uint8_t* clean, long width, long height,
                         double sigma, uint64_t noise_seed, const char* variant,
                         const ipad_options* options, long stride, long atoms,
                         double lambda, uint8_t* noisy, uint8_t* recovered,
                         ipad_denoise_report* report, ipad_run** run_out) {
  if (clean == nullptr || noisy == nullptr || recovered == nullptr) {
    return fail(IPAD_EINVAL, "null image buffer");
  }
  if (variant == nullptr) return fail(IPAD_EINVAL, "null variant name");
  if (run_out != nullptr) *run_out = nullptr;
  ipad_options opts;
  if (options != nullptr) {
    opts = *options;
  } else {
    ipad_options_default(&opts);
  }
  return guarded([&] {
    ipad::GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(clean, clean + width * height);

    ipad::DenoiseParams params;
    params.stride = stride > 0 ? stride : 4;
    params.atoms = atoms > 0 ? atoms : 256;
    params.lambda = lambda;
    params.sigma = sigma;
    params.noise_seed = noise_seed;
    params.variant = variant;

    ipad::DenoiseResult result =
        ipad::denoise_image(img, params, to_run_options(opts));

    std::memcpy(noisy, result.noisy.pixels.data(), result.noisy.pixels.size());
    std::memcpy(recovered, result.recovered.pixels.data(),
                result.recovered.pixels.size());
    if (report != nullptr) {
      report->psnr_noisy = result.psnr_noisy;
      report->psnr_recovered = result.psnr_recovered;
      report->lambda = result.lambda;
      report->outer_iters = result.run.trace.back().t;
      report->termination = to_termination(result.run.termination);
      report->seconds = result.run.total_seconds;
    }
    if (run_out != nullptr) {
      const ipad::VariantPreset* preset = ipad::find_variant(variant);
      ipad::SdlRunOptions run_opts = to_run_options(opts);
      run_opts.stop_mode = ipad::StopMode::real;
      const ipad::ResolvedRun resolved =
          ipad::resolve_options(*preset, run_opts);
      *run_out = new ipad_run{std::move(result.run),
                              from_resolved(resolved, opts)};
    }
  });
}

}  // extern "C"
