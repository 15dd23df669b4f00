// Batch entry point over the C API: run and compare the solver variants on
// synthetic and image data, audit traces, and emit plot-ready CSV files.

#include "ipad/ipad.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kBadConfig = 1, kIoFailure = 2, kStalled = 3 };

struct RunConfig {
  std::string mode = "synth";
  std::string variant = "ipad-admm";
  std::string out = "out";
  // synthetic instance
  long n = 64, m = 600, p = 4000, k = 5;
  double sigma = 0.01;
  double lambda = 0.1;
  std::uint64_t data_seed = 0;
  // denoising
  std::string image;
  double noise_sigma = 20.0;
  long stride = 4;
  long atoms = 256;
  double denoise_lambda = 0.0;  // <= 0: sigma-dependent default
  // solver options (sentinels select per-variant defaults)
  ipad_options opts{};
};

[[noreturn]] void fail(ExitCode code, const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::exit(code);
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

// ---- flat key-value config files -------------------------------------------

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kBadConfig, "cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string trimmed = strip(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      fail(kBadConfig, path + ":" + std::to_string(lineno) +
                           ": expected key = value");
    }
    kv[strip(trimmed.substr(0, eq))] = strip(trimmed.substr(eq + 1));
  }
  return kv;
}

void apply_config_map(const std::map<std::string, std::string>& kv,
                      RunConfig& cfg) {
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  const auto as_long = [](const std::string& s) { return std::stol(s); };
  const auto as_double = [](const std::string& s) { return std::stod(s); };

  if (const auto* v = get("mode")) cfg.mode = *v;
  if (const auto* v = get("variant")) cfg.variant = *v;
  if (const auto* v = get("out")) cfg.out = *v;
  if (const auto* v = get("synth.n")) cfg.n = as_long(*v);
  if (const auto* v = get("synth.m")) cfg.m = as_long(*v);
  if (const auto* v = get("synth.p")) cfg.p = as_long(*v);
  if (const auto* v = get("synth.k")) cfg.k = as_long(*v);
  if (const auto* v = get("synth.sigma")) cfg.sigma = as_double(*v);
  if (const auto* v = get("synth.lambda")) cfg.lambda = as_double(*v);
  if (const auto* v = get("synth.seed")) cfg.data_seed = std::stoull(*v);
  if (const auto* v = get("denoise.image")) cfg.image = *v;
  if (const auto* v = get("denoise.sigma")) cfg.noise_sigma = as_double(*v);
  if (const auto* v = get("denoise.stride")) cfg.stride = as_long(*v);
  if (const auto* v = get("denoise.atoms")) cfg.atoms = as_long(*v);
  if (const auto* v = get("denoise.lambda")) cfg.denoise_lambda = as_double(*v);
  if (const auto* v = get("denoise.seed")) cfg.data_seed = std::stoull(*v);
  if (const auto* v = get("ipad.cx")) cfg.opts.c_x = as_double(*v);
  if (const auto* v = get("ipad.cy")) cfg.opts.c_y = as_double(*v);
  if (const auto* v = get("ipad.eta1")) cfg.opts.eta1 = as_double(*v);
  if (const auto* v = get("ipad.eta2")) cfg.opts.eta2 = as_double(*v);
  if (const auto* v = get("ipad.max_outer")) cfg.opts.max_outer = as_long(*v);
  if (const auto* v = get("ipad.max_inner")) cfg.opts.max_inner = as_long(*v);
  if (const auto* v = get("ipad.tol")) cfg.opts.outer_tol = as_double(*v);
  if (const auto* v = get("ipad.floor")) cfg.opts.abs_error_floor = as_double(*v);
  if (const auto* v = get("ipad.seed")) cfg.opts.seed = std::stoull(*v);
  if (const auto* v = get("ipad.stop_mode")) {
    cfg.opts.stop_mode = *v == "real" ? IPAD_STOP_REAL : IPAD_STOP_SYNTH;
  }
  if (const auto* v = get("pith.scale")) cfg.opts.pith_step_scale = as_double(*v);
  if (const auto* v = get("pith.steps")) cfg.opts.pith_max_steps = as_long(*v);
  if (const auto* v = get("dict.scale")) cfg.opts.dict_step_scale = as_double(*v);
  if (const auto* v = get("admm.rho")) cfg.opts.admm_rho = as_double(*v);
  if (const auto* v = get("admm.steps")) cfg.opts.admm_max_steps = as_long(*v);
}

// ---- run outputs -------------------------------------------------------------

struct RunOutput {
  std::vector<ipad_trace_row> rows;
  ipad_options resolved{};
  int termination = IPAD_TERM_MAX_OUTER;
  double total_seconds = 0.0;
  double final_psi = 0.0;
  long outer_iters = 0;
  long criterion_violations = 0;
  long psi_oscillations = 0;
  double psnr_noisy = -1.0;
  double psnr_recovered = -1.0;
  double lambda_used = 0.0;
};

long count_oscillations(const std::vector<ipad_trace_row>& rows) {
  long count = 0;
  double last_sign = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double diff = rows[i].psi - rows[i - 1].psi;
    const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    if (sign != 0.0 && last_sign != 0.0 && sign != last_sign) ++count;
    if (sign != 0.0) last_sign = sign;
  }
  return count;
}

RunOutput collect_run(ipad_run* run) {
  RunOutput out;
  const long steps = ipad_run_steps(run);
  out.rows.resize(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    ipad_run_row(run, i, &out.rows[static_cast<std::size_t>(i)]);
  }
  ipad_run_resolved_options(run, &out.resolved);
  out.termination = ipad_run_termination(run);
  out.total_seconds = ipad_run_seconds(run);
  out.final_psi = ipad_run_objective(run);
  out.outer_iters = ipad_run_outer_iters(run);
  ipad_criterion_violations(out.rows.data(), steps, out.resolved.c_x,
                            out.resolved.c_y, out.resolved.abs_error_floor,
                            &out.criterion_violations);
  out.psi_oscillations = count_oscillations(out.rows);
  return out;
}

void write_trace_csv(const RunOutput& run, const fs::path& path) {
  std::ofstream out(path);
  if (!out) fail(kIoFailure, "cannot write '" + path.string() + "'");
  out << "t,psi,dx_rel,dy_rel,ex_norm,ey_norm,inner_x,inner_y,elapsed_s,"
         "dx_norm,dy_norm,dpsi_rel,x_prev_norm,y_prev_norm\n";
  for (const auto& r : run.rows) {
    out << r.t << ',' << format_double(r.psi) << ','
        << format_double(r.dx_rel) << ',' << format_double(r.dy_rel) << ','
        << format_double(r.ex_norm) << ',' << format_double(r.ey_norm) << ','
        << r.inner_x << ',' << r.inner_y << ','
        << format_double(r.elapsed_s) << ',' << format_double(r.dx_norm)
        << ',' << format_double(r.dy_norm) << ','
        << format_double(r.dpsi_rel) << ',' << format_double(r.x_prev_norm)
        << ',' << format_double(r.y_prev_norm) << '\n';
  }
  if (!out) fail(kIoFailure, "failed writing '" + path.string() + "'");
}

void write_plot_files(const RunOutput& run, const fs::path& dir) {
  const auto write_panel = [&](const char* name, auto getter) {
    std::ofstream out(dir / name);
    out << "t,value\n";
    for (const auto& r : run.rows) {
      if (r.t == 0) continue;
      out << r.t << ',' << format_double(getter(r)) << '\n';
    }
  };
  write_panel("plot_rel_w.csv", [](const ipad_trace_row& r) { return r.dx_rel; });
  write_panel("plot_rel_d.csv", [](const ipad_trace_row& r) { return r.dy_rel; });
  write_panel("plot_rel_psi.csv",
              [](const ipad_trace_row& r) { return r.dpsi_rel; });
  std::ofstream inner(dir / "plot_inner.csv");
  inner << "t,inner_w,inner_d\n";
  for (const auto& r : run.rows) {
    if (r.t == 0) continue;
    inner << r.t << ',' << r.inner_x << ',' << r.inner_y << '\n';
  }
}

const char* termination_name(int t) {
  switch (t) {
    case IPAD_TERM_CONVERGED:
      return "converged";
    case IPAD_TERM_MAX_OUTER:
      return "max_outer";
    case IPAD_TERM_STALLED:
      return "stalled";
  }
  return "unknown";
}

json options_json(const ipad_options& o) {
  return json{{"cx", o.c_x},
              {"cy", o.c_y},
              {"eta1", o.eta1},
              {"eta2", o.eta2},
              {"max_outer", o.max_outer},
              {"max_inner", o.max_inner},
              {"tol", o.outer_tol},
              {"stop_mode", o.stop_mode == IPAD_STOP_REAL ? "real" : "synth"},
              {"floor", o.abs_error_floor},
              {"seed", o.seed},
              {"pith_scale", o.pith_step_scale},
              {"pith_steps", o.pith_max_steps},
              {"dict_scale", o.dict_step_scale},
              {"admm_rho", o.admm_rho},
              {"admm_steps", o.admm_max_steps}};
}

json summary_json(const RunConfig& cfg, const RunOutput& run) {
  json j{{"mode", cfg.mode},
         {"variant", cfg.variant},
         {"termination", termination_name(run.termination)},
         {"outer_iters", run.outer_iters},
         {"total_seconds", run.total_seconds},
         {"final_psi", run.final_psi},
         {"criterion_violations", run.criterion_violations},
         {"psi_oscillations", run.psi_oscillations},
         {"config", options_json(run.resolved)}};
  if (cfg.mode == "synth") {
    j["instance"] = json{{"n", cfg.n},          {"m", cfg.m},
                         {"p", cfg.p},          {"k", cfg.k},
                         {"sigma", cfg.sigma},  {"lambda", cfg.lambda},
                         {"seed", cfg.data_seed}};
  } else if (cfg.mode == "denoise") {
    j["instance"] = json{{"image", cfg.image},
                         {"sigma", cfg.noise_sigma},
                         {"stride", cfg.stride},
                         {"atoms", cfg.atoms},
                         {"lambda", run.lambda_used},
                         {"seed", cfg.data_seed}};
    j["psnr_noisy"] = run.psnr_noisy;
    j["psnr_recovered"] = run.psnr_recovered;
  }
  return j;
}

void write_outputs(const RunConfig& cfg, const RunOutput& run) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  write_trace_csv(run, fs::path(cfg.out) / "trace.csv");
  write_plot_files(run, cfg.out);
  std::ofstream summary(fs::path(cfg.out) / "summary.json");
  if (!summary) fail(kIoFailure, "cannot write summary.json");
  summary << summary_json(cfg, run).dump(2) << '\n';
}

void check(ipad_status status, ExitCode on_error) {
  if (status != IPAD_OK) {
    fail(on_error, std::string(ipad_status_str(status)) + ": " +
                       ipad_last_error());
  }
}

// ---- run modes ---------------------------------------------------------------

RunOutput execute_synth(const RunConfig& cfg) {
  ipad_instance* inst = nullptr;
  check(ipad_instance_synth(cfg.n, cfg.m, cfg.p, cfg.k, cfg.sigma, cfg.lambda,
                            cfg.data_seed, &inst),
        kBadConfig);
  ipad_run* run = nullptr;
  const ipad_status status =
      ipad_solve(inst, cfg.variant.c_str(), &cfg.opts, &run);
  ipad_instance_free(inst);
  check(status, kBadConfig);
  RunOutput out = collect_run(run);
  ipad_run_free(run);
  return out;
}

RunOutput execute_denoise(const RunConfig& cfg) {
  if (cfg.image.empty()) fail(kBadConfig, "denoise requires --image");
  uint8_t* clean = nullptr;
  long width = 0, height = 0;
  check(ipad_pgm_read(cfg.image.c_str(), &clean, &width, &height), kIoFailure);

  std::vector<uint8_t> noisy(static_cast<std::size_t>(width * height));
  std::vector<uint8_t> recovered(noisy.size());
  ipad_denoise_report report{};
  ipad_run* run = nullptr;
  const ipad_status status = ipad_denoise(
      clean, width, height, cfg.noise_sigma, cfg.data_seed,
      cfg.variant.c_str(), &cfg.opts, cfg.stride, cfg.atoms,
      cfg.denoise_lambda, noisy.data(), recovered.data(), &report, &run);
  ipad_buffer_free(clean);
  check(status, kBadConfig);

  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  check(ipad_pgm_write((fs::path(cfg.out) / "noisy.pgm").string().c_str(),
                       noisy.data(), width, height),
        kIoFailure);
  check(ipad_pgm_write((fs::path(cfg.out) / "recovered.pgm").string().c_str(),
                       recovered.data(), width, height),
        kIoFailure);

  RunOutput out = collect_run(run);
  ipad_run_free(run);
  out.psnr_noisy = report.psnr_noisy;
  out.psnr_recovered = report.psnr_recovered;
  out.lambda_used = report.lambda;
  return out;
}

RunOutput execute_run(const RunConfig& cfg) {
  if (cfg.mode == "synth") return execute_synth(cfg);
  if (cfg.mode == "denoise") return execute_denoise(cfg);
  fail(kBadConfig, "unknown mode '" + cfg.mode + "'");
}

int finish_run(const RunConfig& cfg, const RunOutput& run) {
  write_outputs(cfg, run);
  std::printf("%s %s: termination=%s outer=%ld psi=%.6g seconds=%.2f\n",
              cfg.mode.c_str(), cfg.variant.c_str(),
              termination_name(run.termination), run.outer_iters,
              run.final_psi, run.total_seconds);
  if (run.psnr_recovered >= 0.0) {
    std::printf("psnr_noisy=%.2f psnr_recovered=%.2f\n", run.psnr_noisy,
                run.psnr_recovered);
  }
  return run.termination == IPAD_TERM_STALLED ? kStalled : kOk;
}

// ---- audit -------------------------------------------------------------------

std::vector<ipad_trace_row> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kIoFailure, "cannot read '" + path + "'");
  std::string header;
  std::getline(in, header);
  std::vector<ipad_trace_row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 14) fail(kIoFailure, "malformed trace row: " + line);
    ipad_trace_row r{};
    r.t = std::stol(fields[0]);
    r.psi = std::stod(fields[1]);
    r.dx_rel = std::stod(fields[2]);
    r.dy_rel = std::stod(fields[3]);
    r.ex_norm = std::stod(fields[4]);
    r.ey_norm = std::stod(fields[5]);
    r.inner_x = std::stol(fields[6]);
    r.inner_y = std::stol(fields[7]);
    r.elapsed_s = std::stod(fields[8]);
    r.dx_norm = std::stod(fields[9]);
    r.dy_norm = std::stod(fields[10]);
    r.dpsi_rel = std::stod(fields[11]);
    r.x_prev_norm = std::stod(fields[12]);
    r.y_prev_norm = std::stod(fields[13]);
    rows.push_back(r);
  }
  return rows;
}

// ---- compare -----------------------------------------------------------------

long worker_cap() {
  const char* env = std::getenv("IPAD_THREADS");
  long cap = env != nullptr ? std::atol(env) : 0;
  if (cap < 1) {
    cap = static_cast<long>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
  }
  return cap;
}

int run_compare(const std::vector<std::string>& config_paths,
                const std::string& out_dir) {
  if (config_paths.size() < 2) {
    fail(kBadConfig, "compare needs at least two --config files");
  }
  std::vector<RunConfig> configs;
  for (std::size_t i = 0; i < config_paths.size(); ++i) {
    RunConfig cfg;
    ipad_options_default(&cfg.opts);
    apply_config_map(load_config_file(config_paths[i]), cfg);
    if (!ipad_variant_is_valid(cfg.variant.c_str())) {
      fail(kBadConfig, "unknown variant '" + cfg.variant + "' in " +
                           config_paths[i]);
    }
    cfg.out = (fs::path(out_dir) /
               ("run_" + std::to_string(i) + "_" + cfg.variant))
                  .string();
    configs.push_back(cfg);
  }
  for (const RunConfig& cfg : configs) {
    if (cfg.data_seed != configs.front().data_seed) {
      fail(kBadConfig, "compare requires a shared data seed");
    }
  }

  // independent solves, capped worker pool, output order fixed by position
  std::vector<RunOutput> results(configs.size());
  const long cap = worker_cap();
  std::size_t next = 0;
  while (next < configs.size()) {
    const std::size_t batch = std::min<std::size_t>(
        static_cast<std::size_t>(cap), configs.size() - next);
    std::vector<std::future<RunOutput>> futures;
    for (std::size_t i = 0; i < batch; ++i) {
      const RunConfig& run_cfg = configs[next + i];
      futures.push_back(std::async(std::launch::async,
                                   [&run_cfg] { return execute_run(run_cfg); }));
    }
    for (std::size_t i = 0; i < batch; ++i) {
      results[next + i] = futures[i].get();
    }
    next += batch;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const fs::path table_path = fs::path(out_dir) / "comparison.csv";
  std::ofstream table(table_path);
  if (!table) fail(kIoFailure, "cannot write '" + table_path.string() + "'");
  table << "variant,outer_iters,time_s,final_psi,criterion_violations\n";
  bool stalled = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    write_outputs(configs[i], results[i]);
    table << configs[i].variant << ',' << results[i].outer_iters << ','
          << format_double(results[i].total_seconds) << ','
          << format_double(results[i].final_psi) << ','
          << results[i].criterion_violations << '\n';
    stalled = stalled || results[i].termination == IPAD_TERM_STALLED;
  }
  std::printf("comparison written to %s\n", table_path.string().c_str());
  return stalled ? kStalled : kOk;
}

std::string prescan_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 &&
        std::strcmp(argv[1], "compare") != 0) {
      return argv[i + 1];
    }
  }
  return {};
}

void add_solver_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--variant", cfg.variant, "algorithm preset");
  app->add_option("--out", cfg.out, "output directory");
  app->add_option("--cx", cfg.opts.c_x, "error constant of the code block");
  app->add_option("--cy", cfg.opts.c_y, "error constant of the dictionary block");
  app->add_option("--eta1", cfg.opts.eta1, "proximal weight, code block");
  app->add_option("--eta2", cfg.opts.eta2, "proximal weight, dictionary block");
  app->add_option("--max-outer", cfg.opts.max_outer, "outer iteration cap");
  app->add_option("--max-inner", cfg.opts.max_inner, "acceptance round cap");
  app->add_option("--tol", cfg.opts.outer_tol, "stop-rule tolerance");
  app->add_option("--floor", cfg.opts.abs_error_floor, "absolute error floor");
  app->add_option("--seed", cfg.opts.seed, "solver seed (initial dictionary)");
  app->add_option("--pith-steps", cfg.opts.pith_max_steps, "PITH step cap");
  app->add_option("--pith-scale", cfg.opts.pith_step_scale,
                  "PITH Lipschitz-bound multiplier");
  app->add_option("--dict-scale", cfg.opts.dict_step_scale,
                  "dictionary-step Lipschitz-bound multiplier");
  app->add_option("--rho", cfg.opts.admm_rho, "ADMM penalty (0 = auto)");
  app->add_option("--admm-steps", cfg.opts.admm_max_steps,
                  "ADMM sweep cap (0 = max-inner)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IPAD toolkit: inexact proximal alternating direction solvers "
               "for l0 sparse dictionary learning"};
  app.require_subcommand(1);

  RunConfig cfg;
  ipad_options_default(&cfg.opts);
  const std::string config_path = prescan_config(argc, argv);
  if (!config_path.empty()) {
    apply_config_map(load_config_file(config_path), cfg);
  }
  std::string config_dummy;

  auto* synth = app.add_subcommand("synth", "run a variant on synthetic data");
  synth->add_option("--config", config_dummy, "flat key=value config file");
  synth->add_option("--n", cfg.n, "signal dimension");
  synth->add_option("--m", cfg.m, "dictionary atoms");
  synth->add_option("--p", cfg.p, "number of signals");
  synth->add_option("--k", cfg.k, "nonzeros per code row");
  synth->add_option("--sigma", cfg.sigma, "noise level");
  synth->add_option("--lambda", cfg.lambda, "l0 penalty");
  synth->add_option("--data-seed", cfg.data_seed, "instance seed");
  add_solver_flags(synth, cfg);

  auto* denoise = app.add_subcommand("denoise", "denoise a PGM image");
  denoise->add_option("--config", config_dummy, "flat key=value config file");
  denoise->add_option("--image", cfg.image, "clean 8-bit PGM input");
  denoise->add_option("--sigma", cfg.noise_sigma, "Gaussian noise level");
  denoise->add_option("--stride", cfg.stride, "patch stride");
  denoise->add_option("--atoms", cfg.atoms, "dictionary atoms");
  denoise->add_option("--lambda", cfg.denoise_lambda,
                      "l0 penalty (0 = sigma-dependent default)");
  denoise->add_option("--noise-seed", cfg.data_seed, "noise seed");
  add_solver_flags(denoise, cfg);

  auto* audit = app.add_subcommand("audit", "audit a trace.csv");
  std::string trace_path;
  double audit_a = 0.0, audit_rel_tol = 1e-8;
  double audit_cx = -1.0, audit_cy = -1.0, audit_floor = 1e-12;
  audit->add_option("--trace", trace_path, "trace.csv path")->required();
  audit->add_option("--a", audit_a, "sufficient-descent constant")->required();
  audit->add_option("--rel-tol", audit_rel_tol, "relative tolerance");
  audit->add_option("--cx", audit_cx, "recheck the criterion with this C_x");
  audit->add_option("--cy", audit_cy, "recheck the criterion with this C_y");
  audit->add_option("--floor", audit_floor, "absolute error floor");

  auto* compare = app.add_subcommand("compare", "run several configs");
  std::vector<std::string> compare_configs;
  std::string compare_out = "out";
  compare->add_option("--config", compare_configs, "config file per run")
      ->required();
  compare->add_option("--out", compare_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  if (synth->parsed() || denoise->parsed()) {
    cfg.mode = synth->parsed() ? "synth" : "denoise";
    if (!ipad_variant_is_valid(cfg.variant.c_str())) {
      fail(kBadConfig, "unknown variant '" + cfg.variant + "' (choose from " +
                           ipad_variant_list() + ")");
    }
    return finish_run(cfg, execute_run(cfg));
  }
  if (audit->parsed()) {
    const auto rows = read_trace_csv(trace_path);
    long violations = 0;
    double worst = 0.0;
    check(ipad_audit_rows(rows.data(), static_cast<long>(rows.size()), audit_a,
                          audit_rel_tol, &violations, &worst),
          kBadConfig);
    json report{{"descent_violations", violations}, {"worst_margin", worst}};
    if (audit_cx >= 0.0 && audit_cy >= 0.0) {
      long criterion = 0;
      check(ipad_criterion_violations(rows.data(),
                                      static_cast<long>(rows.size()), audit_cx,
                                      audit_cy, audit_floor, &criterion),
            kBadConfig);
      report["criterion_violations"] = criterion;
    }
    std::printf("%s\n", report.dump(2).c_str());
    return kOk;
  }
  if (compare->parsed()) {
    return run_compare(compare_configs, compare_out);
  }
  return kBadConfig;
}
