#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "admb/rhs.hpp"

namespace admb {

/// Binary state file, all numbers little-endian:
///
///   char[8]  "ADMB1\0\0\0"
///   i32      modes per axis n
///   i32      truncation radius m
///   f64      box length L
///   f64      nu, epsilon, alpha
///   i32      deconvolution order N
///   f64      time
///   u32      field count, then per field: u8 name length, name bytes
///   u64      mode count
///   payload  per field, per mode: f64 real, f64 imaginary
///
/// Modes are every retained (k1, k2, k3), both members of each conjugate
/// pair, in lexicographic order of the integer indices. Fields are w1, w2,
/// w3, rho.
struct SnapshotHeader {
  int modes_per_axis = 0;
  int truncation_radius = 0;
  double box_length = 0.0;
  double nu = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  int order = 0;
  double time = 0.0;
  std::vector<std::string> fields;
  std::uint64_t mode_count = 0;
};

struct Snapshot {
  SnapshotHeader header;
  SolverState state;
};

std::string encode_snapshot(const ModelParams& params, const SolverState& state);
Snapshot decode_snapshot(const std::string& bytes);

/// Throws IoError on any file or format problem.
void write_snapshot(const std::string& path, const ModelParams& params, const SolverState& state);
Snapshot read_snapshot(const std::string& path);

/// Model parameters recorded in the header, on the snapshot's grid.
ModelParams snapshot_params(const Snapshot& snap);

}  // namespace admb
