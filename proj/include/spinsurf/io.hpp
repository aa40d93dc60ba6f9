#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include "spinsurf/evolve.hpp"
#include "spinsurf/geometry.hpp"
#include "spinsurf/zc.hpp"

namespace spinsurf {

/// printf("%.17g"): round-trips every double; 0 prints as "0".
std::string format_real(double v);

// ---- field CSV -------------------------------------------------------------
//
//   # spinsurf-field v1
//   # nx=<int> ny=<int> dx=<%.17g> dy=<%.17g> boundary=<periodic|clamped> comps=<1|3>
//   i,j,v1[,v2,v3]          one row per node, row-major

std::string format_field(const ScalarField& f);
std::string format_field(const VecField& f);
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const VecField& f);

struct FieldFile {
  Grid grid;
  int comps;
  std::optional<ScalarField> scalar; ///< comps == 1
  std::optional<VecField> vec;       ///< comps == 3
};

/// Throws FormatError with the 1-based line of the first problem and
/// NonFiniteValue for nan/inf entries.
FieldFile parse_field(std::istream& in);
FieldFile read_field(const std::string& path);
ScalarField read_scalar_field(const std::string& path);
VecField read_vec_field(const std::string& path);
SpinField read_spin_field(const std::string& path);

// ---- curve data for the zero-curvature check ---------------------------------
//
//   # spinsurf-curve v1
//   # nx=<int> nt=<int> dx=<%.17g> dt=<%.17g> boundary=<periodic|clamped>
//   i,n,k,tau,omega1,omega2,omega3

std::string format_curve(const CurveData& c);
void write_curve(const std::string& path, const CurveData& c);
CurveData parse_curve(std::istream& in);
CurveData read_curve(const std::string& path);

// ---- OBJ mesh ---------------------------------------------------------------

/// `v x y z` per node (row-major, %.9g), optional `vn` per node, then one
/// `f a b c d` quad per cell with 1-based row-major indices.
/// Row-major node array, quads (i,j) (i+1,j) (i+1,j+1) (i,j+1) with 1-based indices.
std::string format_obj(int nx, int ny, const std::vector<Vec3>& positions,
                       const std::vector<Vec3>* normals = nullptr);
std::string format_mesh(const SurfaceMesh& mesh, const VecField* normals = nullptr);
void export_mesh(const std::string& path, const SurfaceMesh& mesh,
                 const VecField* normals = nullptr);

// ---- JSON reports -----------------------------------------------------------

struct Report {
  std::string model;
  Grid grid;
  double vector_max = 0, vector_l2 = 0;
  double scalar_max = 0, scalar_l2 = 0;
  std::vector<std::string> notes;
};

Report make_report(const std::string& model, const ResidualReport& r,
                   std::vector<std::string> notes = {});

/// {"model","grid":{"nx","ny","dx","dy","boundary"},"vector_residual":{"max","l2"},
///  "scalar_residual":{"max","l2"},"notes":[...]} on one line plus newline.
std::string format_report(const Report& r);
void write_report(const std::string& path, const Report& r);

/// {"model","grid","dt","steps","snapshot_every","renormalize","snapshots":
///  [{"step","t","max_norm_drift","energy_proxy"[,"constraint_residual"]}],
///  "max_step_drift","notes"}
std::string format_trajectory_report(const std::string& model, const EvolveOptions& opts,
                                     const Trajectory& tr, const std::vector<std::string>& notes);

void write_text(const std::string& path, const std::string& text);

// ---- deterministic initial data ----------------------------------------------

/// mt19937_64 draws are fixed by the standard but the distributions are not,
/// so doubles are built from the top 53 bits by hand.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

private:
  std::mt19937_64 eng_;
};

/// Random smooth unit field from a few low Fourier modes (periodic on the
/// grid extent) with a bias towards +e3.
SpinField random_spin_field(const Grid& g, std::uint64_t seed, int modes = 2);
ScalarField random_scalar_field(const Grid& g, std::uint64_t seed, int modes = 2,
                                double amplitude = 0.5);

} // namespace spinsurf
