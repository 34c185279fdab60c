#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmscatter/scatter2d.hpp"
#include "tmscatter/threed.hpp"

namespace tmscatter {

struct GridConfig {
  int n_osc = 64;
  int n_ev = 32;
  double p_max_over_k = 4.0;
};

struct Grid3Config {
  int n_radial = 16;
  int n_azimuthal = 32;
  double p_max_over_k = 3.0;
  int n_ev_radial = 8;
};

struct IncidenceConfig {
  double k = 1.0;
  double theta0 = 0.0;
  double phi0 = 0.0;  // 3D only
  std::string side = "right";
};

struct SolverConfig {
  int steps = 256;
  int slices = 1;
  std::string scheme = "magnus";
  int n_theta = 64;
  int n_phi = 16;  // 3D mesh
  double grazing_margin = 1e-3;
};

struct CertifyConfig {
  double alpha = 1.0;
  std::vector<double> k_samples;
  std::vector<double> theta0_samples;
};

struct ScanConfig {
  double k_lo = 0.5;
  double k_hi = 2.0;
  int n_k = 16;
};

struct ComposeBenchConfig {
  std::vector<int> slice_counts{1, 2, 4, 8};
};

struct OracleConfig {
  int order = 8;
  int cells = 64;
  std::vector<double> angles;
};

struct RunConfig {
  bool is_3d = false;
  GridConfig grid;
  Grid3Config grid3;
  PotentialSpec pot2;
  PotentialSpec3 pot3;
  IncidenceConfig incidence;
  SolverConfig solver;
  std::string output_path;
  std::optional<CertifyConfig> certify;
  std::optional<ScanConfig> scan;
  std::optional<ComposeBenchConfig> compose_bench;
  std::optional<OracleConfig> oracle;
  std::string config_hash;  // digest of the canonical config document
};

/// Parse and validate a config file.  Unknown keys anywhere are errors.
RunConfig load_config(const std::string& path);

/// Execute one subcommand pipeline.  Returns the process exit status:
/// 0 success, 2 config error, 3 numerical failure, 4 premise failure.
int run_subcommand(const std::string& subcommand,
                   const std::string& config_path);

}  // namespace tmscatter
