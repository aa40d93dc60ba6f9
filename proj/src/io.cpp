#include "spinsurf/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinsurf/errors.hpp"

namespace spinsurf {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

constexpr const char* kFieldMagic = "# spinsurf-field v1";
constexpr const char* kCurveMagic = "# spinsurf-curve v1";

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFiniteValue(std::string("non-finite value in ") + what);
}

std::string boundary_token(Boundary b) { return to_string(b); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_int(const std::string& s, std::size_t line, const char* what) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty())
    throw FormatError(line, std::string("bad integer for ") + what + ": '" + s + "'");
  return v;
}

double parse_real(const std::string& s, std::size_t line, const char* what) {
  if (s.empty()) throw FormatError(line, std::string("empty value for ") + what);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError(line, std::string("bad number for ") + what + ": '" + s + "'");
  if (!std::isfinite(v))
    throw NonFiniteValue("non-finite value for " + std::string(what) + " at line " +
                         std::to_string(line));
  return v;
}

/// "# k1=v1 k2=v2 ..." with the keys in exactly this order.
std::vector<std::string> parse_header(const std::string& text, std::size_t line,
                                      const std::vector<std::string>& keys) {
  if (text.rfind("# ", 0) != 0) throw FormatError(line, "expected a '# key=value' header");
  const auto toks = split(text.substr(2), ' ');
  if (toks.size() != keys.size()) throw FormatError(line, "wrong number of header entries");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto eq = toks[k].find('=');
    if (eq == std::string::npos || toks[k].substr(0, eq) != keys[k])
      throw FormatError(line, "expected header key '" + keys[k] + "'");
    out.push_back(toks[k].substr(eq + 1));
  }
  return out;
}

Grid header_grid(const std::vector<std::string>& v, std::size_t line) {
  const long nx = parse_int(v[0], line, "nx"), ny = parse_int(v[1], line, "ny");
  const double dx = parse_real(v[2], line, "dx"), dy = parse_real(v[3], line, "dy");
  Boundary b;
  try {
    b = boundary_from_string(v[4]);
  } catch (const Error&) {
    throw FormatError(line, "unknown boundary '" + v[4] + "'");
  }
  try {
    return Grid(static_cast<int>(nx), static_cast<int>(ny), dx, dy, b);
  } catch (const GridError& e) {
    throw FormatError(line, e.what());
  }
}

bool next_line(std::istream& in, std::string& s) {
  if (!std::getline(in, s)) return false;
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return true;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

template <class Put>
std::string format_grid_rows(const Grid& g, int comps, Put&& put) {
  std::string out = kFieldMagic;
  out += "\n# nx=" + std::to_string(g.nx()) + " ny=" + std::to_string(g.ny()) +
         " dx=" + format_real(g.dx()) + " dy=" + format_real(g.dy()) +
         " boundary=" + boundary_token(g.boundary()) + " comps=" + std::to_string(comps) + "\n";
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      out += std::to_string(i) + "," + std::to_string(j);
      put(out, g.index(i, j));
      out += "\n";
    }
  return out;
}

} // namespace

// ---- fields -------------------------------------------------------------------

std::string format_field(const ScalarField& f) {
  return format_grid_rows(f.grid(), 1, [&](std::string& out, std::size_t k) {
    require_finite(f[k], "field");
    out += "," + format_real(f[k]);
  });
}

std::string format_field(const VecField& f) {
  return format_grid_rows(f.grid(), 3, [&](std::string& out, std::size_t k) {
    for (int c = 0; c < 3; ++c) {
      require_finite(f[k][c], "field");
      out += "," + format_real(f[k][c]);
    }
  });
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_field(const std::string& path, const ScalarField& f) { write_text(path, format_field(f)); }
void write_field(const std::string& path, const VecField& f) { write_text(path, format_field(f)); }

FieldFile parse_field(std::istream& in) {
  std::string line;
  std::size_t ln = 1;
  if (!next_line(in, line) || line != kFieldMagic)
    throw FormatError(1, std::string("expected '") + kFieldMagic + "'");
  ++ln;
  if (!next_line(in, line)) throw FormatError(ln, "missing grid header");
  const auto h = parse_header(line, ln, {"nx", "ny", "dx", "dy", "boundary", "comps"});
  const Grid g = header_grid(h, ln);
  const long comps = parse_int(h[5], ln, "comps");
  if (comps != 1 && comps != 3) throw FormatError(ln, "comps must be 1 or 3");

  FieldFile out{g, static_cast<int>(comps), std::nullopt, std::nullopt};
  std::vector<double> vals(g.size() * comps);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      ++ln;
      if (!next_line(in, line)) throw FormatError(ln, "file ends before all nodes were read");
      const auto t = split(line, ',');
      if (t.size() != static_cast<std::size_t>(2 + comps))
        throw FormatError(ln, "expected " + std::to_string(2 + comps) + " columns");
      if (parse_int(t[0], ln, "i") != i || parse_int(t[1], ln, "j") != j)
        throw FormatError(ln, "node indices out of row-major order");
      for (int c = 0; c < comps; ++c)
        vals[g.index(i, j) * comps + c] = parse_real(t[2 + c], ln, "value");
    }
  while (next_line(in, line)) {
    ++ln;
    if (!line.empty()) throw FormatError(ln, "unexpected data after the last node");
  }
  if (comps == 1) {
    out.scalar = ScalarField(g, std::move(vals));
  } else {
    VecField v(g);
    for (std::size_t k = 0; k < g.size(); ++k) v[k] = Vec3(vals[3 * k], vals[3 * k + 1], vals[3 * k + 2]);
    out.vec = std::move(v);
  }
  return out;
}

FieldFile read_field(const std::string& path) {
  auto in = open_in(path);
  return parse_field(in);
}

ScalarField read_scalar_field(const std::string& path) {
  FieldFile f = read_field(path);
  if (!f.scalar) throw FormatError(2, "'" + path + "' holds a vector field, expected comps=1");
  return std::move(*f.scalar);
}

VecField read_vec_field(const std::string& path) {
  FieldFile f = read_field(path);
  if (!f.vec) throw FormatError(2, "'" + path + "' holds a scalar field, expected comps=3");
  return std::move(*f.vec);
}

SpinField read_spin_field(const std::string& path) { return SpinField(read_vec_field(path)); }

// ---- curve data ---------------------------------------------------------------

std::string format_curve(const CurveData& c) {
  const Grid& g = c.k.grid();
  for (const ScalarField* f : {&c.tau, &c.omega1, &c.omega2, &c.omega3})
    require_same_grid(g, f->grid(), "curve data");
  std::string out = kCurveMagic;
  out += "\n# nx=" + std::to_string(g.nx()) + " nt=" + std::to_string(g.ny()) +
         " dx=" + format_real(g.dx()) + " dt=" + format_real(g.dy()) +
         " boundary=" + boundary_token(g.boundary()) + "\n";
  for (int n = 0; n < g.ny(); ++n)
    for (int i = 0; i < g.nx(); ++i) {
      out += std::to_string(i) + "," + std::to_string(n);
      for (const ScalarField* f : {&c.k, &c.tau, &c.omega1, &c.omega2, &c.omega3}) {
        require_finite((*f)(i, n), "curve data");
        out += "," + format_real((*f)(i, n));
      }
      out += "\n";
    }
  return out;
}

void write_curve(const std::string& path, const CurveData& c) { write_text(path, format_curve(c)); }

CurveData parse_curve(std::istream& in) {
  std::string line;
  std::size_t ln = 1;
  if (!next_line(in, line) || line != kCurveMagic)
    throw FormatError(1, std::string("expected '") + kCurveMagic + "'");
  ++ln;
  if (!next_line(in, line)) throw FormatError(ln, "missing grid header");
  const auto h = parse_header(line, ln, {"nx", "nt", "dx", "dt", "boundary"});
  const Grid g = header_grid(h, ln);
  CurveData c{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  ScalarField* cols[] = {&c.k, &c.tau, &c.omega1, &c.omega2, &c.omega3};
  for (int n = 0; n < g.ny(); ++n)
    for (int i = 0; i < g.nx(); ++i) {
      ++ln;
      if (!next_line(in, line)) throw FormatError(ln, "file ends before all nodes were read");
      const auto t = split(line, ',');
      if (t.size() != 7) throw FormatError(ln, "expected 7 columns");
      if (parse_int(t[0], ln, "i") != i || parse_int(t[1], ln, "n") != n)
        throw FormatError(ln, "node indices out of row-major order");
      for (int q = 0; q < 5; ++q) (*cols[q])(i, n) = parse_real(t[2 + q], ln, "value");
    }
  while (next_line(in, line)) {
    ++ln;
    if (!line.empty()) throw FormatError(ln, "unexpected data after the last node");
  }
  return c;
}

CurveData read_curve(const std::string& path) {
  auto in = open_in(path);
  return parse_curve(in);
}

// ---- mesh -------------------------------------------------------------------

std::string format_obj(int nx, int ny, const std::vector<Vec3>& positions,
                       const std::vector<Vec3>* normals) {
  if (nx < 1 || ny < 1 || positions.size() != static_cast<std::size_t>(nx) * ny)
    throw GridError("format_obj: node count does not match nx*ny");
  if (normals && normals->size() != positions.size())
    throw GridError("format_obj: normal count does not match node count");
  auto idx = [nx](int i, int j) { return std::to_string(static_cast<std::size_t>(j) * nx + i + 1); };
  std::string out;
  for (const auto& p : positions)
    out += "v " + format9(p.x()) + " " + format9(p.y()) + " " + format9(p.z()) + "\n";
  if (normals)
    for (const auto& n : *normals)
      out += "vn " + format9(n.x()) + " " + format9(n.y()) + " " + format9(n.z()) + "\n";
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i)
      out += "f " + idx(i, j) + " " + idx(i + 1, j) + " " + idx(i + 1, j + 1) + " " + idx(i, j + 1) + "\n";
  return out;
}

std::string format_mesh(const SurfaceMesh& mesh, const VecField* normals) {
  const Grid& g = mesh.grid();
  if (normals) require_same_grid(g, normals->grid(), "export_mesh");
  return format_obj(g.nx(), g.ny(), mesh.positions.values(), normals ? &normals->values() : nullptr);
}

void export_mesh(const std::string& path, const SurfaceMesh& mesh, const VecField* normals) {
  write_text(path, format_mesh(mesh, normals));
}

// ---- reports -------------------------------------------------------------------

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default:
      if (c < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", c);
        out += buf;
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
  }
  return out + "\"";
}

/// Non-finite numbers have no JSON form; they are written as null.
std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string json_grid(const Grid& g) {
  return "{\"nx\":" + std::to_string(g.nx()) + ",\"ny\":" + std::to_string(g.ny()) +
         ",\"dx\":" + json_real(g.dx()) + ",\"dy\":" + json_real(g.dy()) +
         ",\"boundary\":" + json_string(to_string(g.boundary())) + "}";
}

std::string json_notes(const std::vector<std::string>& notes) {
  std::string out = "[";
  for (std::size_t k = 0; k < notes.size(); ++k) out += (k ? "," : "") + json_string(notes[k]);
  return out + "]";
}

} // namespace

Report make_report(const std::string& model, const ResidualReport& r,
                   std::vector<std::string> notes) {
  return {model, r.vector_residual.grid(), r.vector_max, r.vector_l2, r.scalar_max, r.scalar_l2,
          std::move(notes)};
}

std::string format_report(const Report& r) {
  return "{\"model\":" + json_string(r.model) + ",\"grid\":" + json_grid(r.grid) +
         ",\"vector_residual\":{\"max\":" + json_real(r.vector_max) +
         ",\"l2\":" + json_real(r.vector_l2) + "},\"scalar_residual\":{\"max\":" +
         json_real(r.scalar_max) + ",\"l2\":" + json_real(r.scalar_l2) +
         "},\"notes\":" + json_notes(r.notes) + "}\n";
}

void write_report(const std::string& path, const Report& r) { write_text(path, format_report(r)); }

std::string format_trajectory_report(const std::string& model, const EvolveOptions& opts,
                                     const Trajectory& tr, const std::vector<std::string>& notes) {
  std::string out = "{\"model\":" + json_string(model) +
                    ",\"grid\":" + json_grid(tr.snapshots.front().s.grid()) +
                    ",\"dt\":" + json_real(opts.dt) + ",\"steps\":" + std::to_string(opts.steps) +
                    ",\"snapshot_every\":" + std::to_string(opts.snapshot_every) +
                    ",\"renormalize\":" + (opts.renormalize ? "true" : "false") + ",\"snapshots\":[";
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const Diagnostics& d = tr.diagnostics[k];
    out += (k ? "," : "");
    out += "{\"step\":" + std::to_string(k * opts.snapshot_every) + ",\"t\":" + json_real(tr.times[k]) +
           ",\"max_norm_drift\":" + json_real(d.max_norm_drift) +
           ",\"energy_proxy\":" + json_real(d.energy_proxy);
    if (d.constraint_residual) out += ",\"constraint_residual\":" + json_real(*d.constraint_residual);
    out += "}";
  }
  out += "],\"max_step_drift\":" + json_real(tr.max_step_drift) + ",\"notes\":" + json_notes(notes) +
         "}\n";
  return out;
}

// ---- initial data ---------------------------------------------------------------

namespace {

VecField smooth_modes(const Grid& g, Rng& rng, int modes, int comps, double amplitude) {
  const double lx = g.nx() * g.dx();
  const double ly = g.ny() * g.dy();
  const double two_pi = 2.0 * std::numbers::pi;
  VecField out(g);
  for (int c = 0; c < comps; ++c) {
    const double base = rng.uniform(-amplitude, amplitude);
    for (auto& v : out.values()) v[c] = base;
    for (int kx = 0; kx <= modes; ++kx)
      for (int ky = 0; ky <= (g.is_1d() ? 0 : modes); ++ky) {
        if (kx == 0 && ky == 0) continue;
        const double amp = rng.uniform(-amplitude, amplitude) / (kx + ky);
        const double phase = rng.uniform(0.0, two_pi);
        for (int j = 0; j < g.ny(); ++j)
          for (int i = 0; i < g.nx(); ++i)
            out(i, j)[c] +=
                amp * std::cos(two_pi * (kx * g.x(i) / lx + ky * g.y(j) / ly) + phase);
      }
  }
  return out;
}

} // namespace

SpinField random_spin_field(const Grid& g, std::uint64_t seed, int modes) {
  Rng rng(seed);
  VecField v = smooth_modes(g, rng, modes, 3, 0.6);
  for (auto& x : v.values()) x.z() += 2.0;
  return project_sphere(v);
}

ScalarField random_scalar_field(const Grid& g, std::uint64_t seed, int modes, double amplitude) {
  Rng rng(seed);
  return component(smooth_modes(g, rng, modes, 1, amplitude), 0);
}

} // namespace spinsurf
