#ifndef LATTICECOND_RUN_HPP
#define LATTICECOND_RUN_HPP

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latticecond/bands.hpp"
#include "latticecond/conductivity.hpp"
#include "latticecond/config.hpp"
#include "latticecond/csv.hpp"
#include "latticecond/scattering.hpp"
#include "latticecond/verify.hpp"

namespace latticecond {

namespace detail {

inline std::string fermi_tag(double fermi) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", fermi);
  return buf;
}

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v;
  if (count == 1) {
    v.push_back(lo);
    return v;
  }
  for (int i = 0; i < count; ++i)
    v.push_back(lo + (hi - lo) * double(i) / double(count - 1));
  return v;
}

inline std::string join_doubles(const std::vector<double>& vals, char sep) {
  std::string s;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) s += sep;
    s += format_double(vals[i]);
  }
  return s;
}

}  // namespace detail

/// Executes one mode and writes its CSVs plus manifest.txt into output_dir.
/// All files are assembled in memory first and written atomically, so a
/// failed run leaves no partial outputs. Returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& log = std::cout) {
  namespace fs = std::filesystem;
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(cfg.output_dir);

  std::map<std::string, std::string> outputs;  // filename -> content
  std::ostringstream manifest;
  int status = 0;

  manifest << "mode=" << mode_name(cfg.mode) << "\n";
  if (cfg.mode != RunMode::scatter) {
    const ModelParams& p = cfg.params;
    manifest << "m=" << format_double(p.m) << "\ne=" << format_double(p.e)
             << "\nlambda=" << format_double(p.lambda)
             << "\nUx=" << format_double(p.Ux) << "\nUy=" << format_double(p.Uy)
             << "\nEfield=" << format_double(p.Efield) << "\nN=" << p.N
             << "\nQ=" << p.Q << "\nJ=" << p.J << "\nspin=" << p.spin
             << "\nM=" << cfg.M << "\nL=" << format_double(p.L())
             << "\na=" << format_double(p.a()) << "\nq_max=" << p.q_max()
             << "\nn_max=" << p.n_max() << "\nD=" << p.dim()
             << "\ndrop_duplicate_edge=" << (cfg.drop_duplicate_edge ? 1 : 0)
             << "\n";
  }
  manifest << "threads=" << cfg.threads << "\n";

  switch (cfg.mode) {
    case RunMode::bands: {
      const BandData bd =
          compute_bands(cfg.params, cfg.M, cfg.threads, cfg.drop_duplicate_edge);
      std::string csv = "band,l,k,energy,px_mean\n";
      for (int b = 0; b < cfg.M; ++b)
        for (size_t ik = 0; ik < bd.kvalues.size(); ++ik)
          csv += std::to_string(b) + "," + std::to_string(bd.lvalues[ik]) + "," +
                 format_double(bd.kvalues[ik]) + "," +
                 format_double(bd.energies(b, Eigen::Index(ik))) + "," +
                 format_double(bd.px(b, Eigen::Index(ik))) + "\n";
      outputs["bands.csv"] = csv;
      std::string sum = "band,mean_energy,Pi\n";
      for (int b = 0; b < cfg.M; ++b)
        sum += std::to_string(b) + "," +
               format_double(bd.band_mean_energy[size_t(b)]) + "," +
               format_double(bd.band_momentum_sum[size_t(b)]) + "\n";
      outputs["band_summary.csv"] = sum;
      if (bd.degenerate_clusters_found > 0)
        manifest << "degenerate_clusters=" << bd.degenerate_clusters_found << "\n";
      break;
    }
    case RunMode::sweep: {
      const std::vector<double> efields =
          detail::linspace(cfg.efield_min, cfg.efield_max, cfg.efield_count);
      SweepResult sr = sweep(cfg.params, efields, cfg.fermi_levels, cfg.M,
                             cfg.threads, cfg.drop_duplicate_edge);
      std::string quant_note;
      Sigma0Estimate est;
      bool have_est = false;
      try {
        est = estimate_sigma0(sr.curves);
        annotate_quantization(sr.curves, est);
        have_est = true;
      } catch (const NoPlateauError& e) {
        quant_note = e.what();
      } catch (const AmbiguousUnitError& e) {
        quant_note = e.what();
      }
      for (const auto& c : sr.curves) {
        std::string csv = "efield,sigma_over_alpha,n_bands_included\n";
        for (size_t i = 0; i < c.efield_values.size(); ++i)
          csv += format_double(c.efield_values[i]) + "," +
                 format_double(c.sigma_over_alpha[i]) + "," +
                 std::to_string(c.n_bands_included[i]) + "\n";
        outputs["sweep_" + detail::fermi_tag(c.fermi_level) + ".csv"] = csv;
      }
      std::string sum = "fermi_level,sigma0_over_alpha,residual,jump_locations\n";
      for (const auto& c : sr.curves)
        sum += format_double(c.fermi_level) + "," +
               (have_est ? format_double(est.sigma0_over_alpha) : "") + "," +
               (have_est ? format_double(est.residual) : "") + "," +
               detail::join_doubles(c.jump_locations, ';') + "\n";
      outputs["sigma0_summary.csv"] = sum;
      if (!quant_note.empty()) manifest << "quantization_note=" << quant_note << "\n";
      if (sr.tie_warnings > 0)
        manifest << "fermi_tie_exclusions=" << sr.tie_warnings << "\n";
      break;
    }
    case RunMode::scatter: {
      std::string csv = "theta,re_ratio,im_ratio,reflection_prob\n";
      for (int i = 0; i < cfg.scatter_theta_count; ++i) {
        const double theta =
            pi * double(i) / double(cfg.scatter_theta_count - 1);
        ScatteringInput in{cfg.scatter_U, theta, cfg.scatter_kwave, cfg.scatter_m};
        const auto ratio = reflection_ratio(in);
        csv += format_double(theta) + "," + format_double(ratio.real()) + "," +
               format_double(ratio.imag()) + "," +
               format_double(std::norm(ratio)) + "\n";
      }
      outputs["scatter.csv"] = csv;
      manifest << "scatter_U=" << format_double(cfg.scatter_U)
               << "\nscatter_kwave=" << format_double(cfg.scatter_kwave)
               << "\nscatter_m=" << format_double(cfg.scatter_m)
               << "\nscatter_theta_count=" << cfg.scatter_theta_count << "\n";
      break;
    }
    case RunMode::verify: {
      const VerificationReport rep = run_verification(cfg.params, cfg.verify_level);
      std::string csv = "suite,property,deviation,tolerance,pass\n";
      for (const auto& e : rep.entries) {
        csv += e.suite + "," + e.property + "," + format_double(e.deviation) +
               "," + format_double(e.tolerance) + "," + (e.pass ? "1" : "0") + "\n";
        log << (e.pass ? "PASS " : "FAIL ") << e.suite << " / " << e.property
            << "  deviation=" << e.deviation << "  tolerance=" << e.tolerance
            << "\n";
      }
      outputs["verify.csv"] = csv;
      manifest << "verify_level="
               << (cfg.verify_level == VerifyLevel::quick ? "quick" : "full")
               << "\nall_pass=" << (rep.all_pass() ? 1 : 0) << "\n";
      status = rep.all_pass() ? 0 : 1;
      break;
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest << "wall_seconds=" << wall << "\n";

  for (const auto& [name, content] : outputs)
    write_file_atomic(cfg.output_dir / name, content);
  write_file_atomic(cfg.output_dir / "manifest.txt", manifest.str());
  log << manifest.str();
  return status;
}

}  // namespace latticecond

#endif
