// remlab: reproducible experiments on the complex random energy model.
//
// Subcommands write CSV outputs plus a JSON manifest; `rerun` replays a
// manifest and verifies that the outputs are byte-identical.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>

#include "remlab/analytic.hpp"
#include "remlab/fluct.hpp"
#include "remlab/io.hpp"
#include "remlab/partition.hpp"
#include "remlab/phase.hpp"
#include "remlab/zeros.hpp"

namespace fs = std::filesystem;
using namespace remlab;

namespace {

constexpr const char* kVersion = "remlab 1.0.0";

struct Window {
  double s0 = 0, s1 = 0, t0 = 0, t1 = 0;
};

Window parse_window(const std::string& spec) {
  Window w;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf:%lf", &w.s0, &w.s1, &w.t0, &w.t1) != 4)
    throw CLI::ValidationError("--window", "expected sigma0:sigma1:tau0:tau1");
  if (w.s1 <= w.s0 || w.t1 <= w.t0)
    throw CLI::ValidationError("--window", "empty window");
  return w;
}

cplx parse_beta(const std::string& spec) {
  double a = 0, b = 0;
  if (std::sscanf(spec.c_str(), "%lf+%lfi", &a, &b) == 2) return {a, b};
  if (std::sscanf(spec.c_str(), "%lf-%lfi", &a, &b) == 2) return {a, -b};
  if (std::sscanf(spec.c_str(), "%lf,%lf", &a, &b) == 2) return {a, b};
  if (std::sscanf(spec.c_str(), "%lf", &a) == 1) return {a, 0.0};
  throw CLI::ValidationError("--beta", "expected a+bi or a,b");
}

double arg_d(const std::map<std::string, std::string>& args, const std::string& key) {
  return std::stod(args.at(key));
}
long long arg_i(const std::map<std::string, std::string>& args, const std::string& key) {
  return std::stoll(args.at(key));
}

RemConfig config_from_args(const std::map<std::string, std::string>& args) {
  const double rho = arg_d(args, "rho");
  const std::uint64_t seed = static_cast<std::uint64_t>(arg_i(args, "seed"));
  RemConfig cfg = args.count("N") && args.at("N") != "0"
                      ? RemConfig::from_N(arg_i(args, "N"), rho, seed)
                      : RemConfig::from_n(arg_d(args, "n"), rho, seed);
  if (args.count("force-large-n") && args.at("force-large-n") == "1") cfg.allow_large_n = true;
  return cfg;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_phase(const std::map<std::string, std::string>& args, const fs::path& out,
              RunManifest& man) {
  const Window w = parse_window(args.at("window"));
  const double step = arg_d(args, "grid-step");
  if (step <= 0.0) throw std::invalid_argument("phase: grid-step must be positive");

  const fs::path csv = out / "phase.csv";
  std::ofstream f(csv);
  f << "sigma,tau,region,p\n";
  char buf[160];
  const long long ns = std::llround((w.s1 - w.s0) / step);
  const long long nt = std::llround((w.t1 - w.t0) / step);
  for (long long i = 0; i <= ns; ++i) {
    const double s = w.s0 + i * step;
    for (long long j = 0; j <= nt; ++j) {
      const double t = w.t0 + j * step;
      const ComplexParam b{s, t};
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%s,%.17g\n", s, t, to_string(classify(b)),
                    limit_p(b));
      f << buf;
    }
  }
  f.close();
  man.digests[csv.filename()] = file_digest(csv);
  return 0;
}

int cmd_zeros(const std::map<std::string, std::string>& args, const fs::path& out,
              RunManifest& man) {
  const Window w = parse_window(args.at("window"));
  const RemConfig cfg = config_from_args(args);
  const int replicas = static_cast<int>(arg_i(args, "replicas"));
  if (cfg.rho != 1.0)
    throw std::invalid_argument("zeros: the zero set of Z_N needs an analytic Z_N (rho = 1)");
  const Rect region{w.s0, w.s1, w.t0, w.t1};

  const int hist_bins = 16;
  std::vector<double> hist(hist_bins * hist_bins, 0.0);
  for (int r = 0; r < replicas; ++r) {
    const SampleBatch batch = gaussian_pairs(cfg, stream_index(r, Purpose::Batch));
    const ZeroSet zs = zeros_in_window(batch, cfg.n, region);
    char name[64];
    std::snprintf(name, sizeof(name), "zeros_r%03d.csv", r);
    const fs::path path = out / name;
    write_zeroset_csv(zs, path);
    man.digests[path.filename()] = file_digest(path);
    for (const Zero& z : zs.zeros) {
      if (!region.contains(z.z)) continue;
      const int bi = std::min(hist_bins - 1, static_cast<int>((z.z.real() - w.s0) /
                                                              (w.s1 - w.s0) * hist_bins));
      const int bj = std::min(hist_bins - 1, static_cast<int>((z.z.imag() - w.t0) /
                                                              (w.t1 - w.t0) * hist_bins));
      hist[bi * hist_bins + bj] += z.multiplicity;
    }
  }
  const fs::path hp = out / "density.csv";
  std::ofstream hf(hp);
  hf << "sigma_lo,tau_lo,mean_count_per_unit_area\n";
  const double cell_area = (w.s1 - w.s0) / hist_bins * (w.t1 - w.t0) / hist_bins;
  char buf[120];
  for (int i = 0; i < hist_bins; ++i) {
    for (int j = 0; j < hist_bins; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                    w.s0 + i * (w.s1 - w.s0) / hist_bins, w.t0 + j * (w.t1 - w.t0) / hist_bins,
                    hist[i * hist_bins + j] / replicas / cell_area);
      hf << buf;
    }
  }
  hf.close();
  man.digests[hp.filename()] = file_digest(hp);
  return 0;
}

int cmd_fluct(const std::map<std::string, std::string>& args, const fs::path& out,
              RunManifest& man) {
  const RemConfig cfg = config_from_args(args);
  const cplx beta = parse_beta(args.at("beta"));
  const int replicas = static_cast<int>(arg_i(args, "replicas"));
  const NormalizationPlan plan = make_plan(ComplexParam(beta), cfg.rho, cfg.n);
  const ReplicaEnsemble ens = run_ensemble(plan, cfg, replicas);

  const fs::path sp = out / "samples.csv";
  write_samples_csv(ens.samples, sp);
  man.digests[sp.filename()] = file_digest(sp);

  FluctReport report;
  bool gated = true;
  switch (plan.limit.kind) {
    case LimitKind::ComplexGaussian: report = test_gaussian_limit(ens); break;
    case LimitKind::IsotropicStable: report = test_stable_limit(ens).gates; break;
    case LimitKind::ZetaP: report = test_zetap_limit(ens, replicas); break;
    case LimitKind::RealGaussianOutOfScope:
      gated = false;  // normalizations emitted, no distributional gate
      break;
  }
  const fs::path rp = out / "report.json";
  write_report_json(report, plan, rp);
  man.digests[rp.filename()] = file_digest(rp);
  return (gated && !report.all_pass()) ? 2 : 0;
}

int cmd_zeta(const std::map<std::string, std::string>& args, const fs::path& out,
             RunManifest& man) {
  const cplx beta = parse_beta(args.at("beta"));
  const double tol = arg_d(args, "horizon-tol");
  const int replicas = static_cast<int>(arg_i(args, "replicas"));
  const std::uint64_t seed = static_cast<std::uint64_t>(arg_i(args, "seed"));
  if (std::abs(beta - 1.0) < 1e-6)
    throw std::invalid_argument("zeta: pole at beta = 1 (evaluate the tilde form nearby)");
  const double T = zetap_choose_horizon(beta, tol);
  man.args["chosen_horizon"] = fmt(T);

  std::vector<cplx> vals(replicas);
  for (int r = 0; r < replicas; ++r) {
    const auto zp = zetap_sample(T, seed, stream_index(r, Purpose::Zeta));
    vals[r] = zetap_eval(zp, beta);
  }
  const fs::path sp = out / "zeta_samples.csv";
  write_samples_csv(vals, sp);
  man.digests[sp.filename()] = file_digest(sp);
  return 0;
}

int cmd_gaf(const std::map<std::string, std::string>& args, const fs::path& out,
            RunManifest& man) {
  const double radius = arg_d(args, "radius");
  const int replicas = static_cast<int>(arg_i(args, "replicas"));
  const std::uint64_t seed = static_cast<std::uint64_t>(arg_i(args, "seed"));
  const GafZeroStats stats = gaf_zero_stats(radius, replicas, seed);
  const fs::path cp = out / "gaf_counts.csv";
  std::ofstream f(cp);
  f << "replica,count\n";
  for (std::size_t i = 0; i < stats.counts.size(); ++i)
    f << i << "," << stats.counts[i] << "\n";
  f.close();
  man.args["mean_count"] = fmt(stats.mean_count);
  man.digests[cp.filename()] = file_digest(cp);
  return 0;
}

int dispatch(const std::string& cmd, std::map<std::string, std::string> args,
             const fs::path& out) {
  fs::create_directories(out);
  RunManifest man;
  man.command = cmd;
  man.args = args;
  man.tool_version = kVersion;
  man.started = iso_timestamp();
  int rc = 0;
  if (cmd == "phase")
    rc = cmd_phase(args, out, man);
  else if (cmd == "zeros")
    rc = cmd_zeros(args, out, man);
  else if (cmd == "fluct")
    rc = cmd_fluct(args, out, man);
  else if (cmd == "zeta")
    rc = cmd_zeta(args, out, man);
  else if (cmd == "gaf")
    rc = cmd_gaf(args, out, man);
  else
    throw std::invalid_argument("unknown command: " + cmd);
  man.finished = iso_timestamp();
  man.write((out / "manifest.json").string());
  return rc;
}

int cmd_rerun(const std::string& manifest_path, const fs::path& out) {
  const RunManifest man = RunManifest::read(manifest_path);
  std::map<std::string, std::string> args = man.args;
  args.erase("chosen_horizon");
  args.erase("mean_count");
  const int rc = dispatch(man.command, args, out);
  // byte-identical outputs required
  for (const auto& [file, digest] : man.digests) {
    const std::string got = file_digest((out / file).string());
    if (got != digest) {
      std::cerr << "rerun: digest mismatch on " << file << "\n";
      return 1;
    }
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the complex random energy model"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::map<std::string, std::string> args{{"n", "10"},       {"N", "0"},
                                          {"rho", "1"},      {"seed", "0"},
                                          {"replicas", "100"}, {"grid-step", "0.01"},
                                          {"horizon-tol", "0.05"}, {"radius", "2"},
                                          {"threads", "1"},  {"force-large-n", "0"}};
  std::string window_spec, beta_spec, out_dir = "remlab_out", format = "csv",
              manifest_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", args["seed"]);
    sub->add_option("--threads", args["threads"]);
    sub->add_option("--out", out_dir);
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--n", args["n"]);
    sub->add_option("--N", args["N"]);
    sub->add_option("--rho", args["rho"]);
    sub->add_option("--replicas", args["replicas"]);
    sub->add_flag_callback("--force-large-n", [&] { args["force-large-n"] = "1"; });
  };

  CLI::App* phase = app.add_subcommand("phase", "phase diagram and limiting p on a grid");
  phase->add_option("--window", window_spec)->required();
  phase->add_option("--grid-step", args["grid-step"]);
  add_common(phase);

  CLI::App* zeros = app.add_subcommand("zeros", "zero sets of Z_N in a window");
  zeros->add_option("--window", window_spec)->required();
  add_model(zeros);
  add_common(zeros);

  CLI::App* fluct = app.add_subcommand("fluct", "fluctuation ensemble and limit-law gates");
  fluct->add_option("--beta", beta_spec)->required();
  add_model(fluct);
  add_common(fluct);

  CLI::App* zeta = app.add_subcommand("zeta", "Poisson zeta-function sampling");
  zeta->add_option("--beta", beta_spec)->required();
  zeta->add_option("--horizon-tol", args["horizon-tol"]);
  zeta->add_option("--replicas", args["replicas"]);
  add_common(zeta);

  CLI::App* gaf = app.add_subcommand("gaf", "Gaussian analytic function zero statistics");
  gaf->add_option("--radius", args["radius"]);
  gaf->add_option("--replicas", args["replicas"]);
  add_common(gaf);

  CLI::App* rerun = app.add_subcommand("rerun", "replay a manifest and verify digests");
  rerun->add_option("manifest", manifest_path)->required();
  rerun->add_option("--out", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rerun->parsed()) return cmd_rerun(manifest_path, out_dir);
    if (!window_spec.empty()) args["window"] = window_spec;
    if (!beta_spec.empty()) args["beta"] = beta_spec;
    for (CLI::App* sub : {phase, zeros, fluct, zeta, gaf})
      if (sub->parsed()) return dispatch(sub->get_name(), args, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
