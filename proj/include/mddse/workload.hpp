#pragma once

#include <string>

namespace mddse {

// Cubic solvated benchmark system. Lengths in Angstrom, time step in femtoseconds.
struct MdSystem {
  std::string name;
  long n_particles = 0;
  double box_edge_a = 0.0;
  double timestep_fs = 2.0;
  double base_cutoff_a = 0.0;
  int base_grid = 0;  // PME grid points per dimension
};

// A (cutoff, grid) operating point. Accuracy stays constant as long as
// cutoff*grid is preserved relative to base_cutoff*base_grid.
struct TunedParams {
  double cutoff_a = 0.0;
  int grid = 0;
};

// Per-step host/device traffic. Positions carry 12 B coordinates plus 4 B
// metadata per particle; forces are three 4 B accumulators.
struct TransferVolumes {
  double h2d_bytes_total = 0.0;
  double d2h_bytes_total = 0.0;
  double halo_bytes_per_card = 0.0;
};

// Work shape of one 3D FFT side of the PME pipeline.
struct PmeWork {
  long grid_points = 0;
  long rows_per_pass = 0;
  int fft_length = 0;
  int passes_per_direction = 3;
  int directions = 2;  // forward and inverse transforms both count
};

inline constexpr double kH2dBytesPerParticle = 16.0;
inline constexpr double kD2hBytesPerParticle = 12.0;

// Expected unique in-range pair interactions per step under a uniform-density
// model: N * rho * (2/3) * pi * cutoff^3. Throws std::invalid_argument when
// cutoff >= box_edge/2 (minimum-image violation) or cutoff < 0.
double pair_count(const MdSystem& system, double cutoff_a);

// Throws std::invalid_argument for grid < 2.
PmeWork pme_work(int grid);

// Fraction of one decomposition slab covered by the half-shell import region
// of thickness `cutoff` when the box splits into n_pp_cards slabs: clamped to 1.
double shell_fraction(double cutoff_a, double box_edge_a, int n_pp_cards);

TransferVolumes transfer_volumes(const MdSystem& system, double cutoff_a, int n_pp_cards);

// cutoff = base_cutoff * scale, grid = nearest even integer to base_grid / scale.
// scale must lie in [0.5, 2.0].
TunedParams coupled_params(const MdSystem& system, double scale);

}  // namespace mddse
