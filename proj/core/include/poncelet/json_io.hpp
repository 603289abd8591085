#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poncelet/abeljacobi.hpp"
#include "poncelet/conditions.hpp"
#include "poncelet/dynamics.hpp"

namespace poncelet {

inline constexpr int kFormatVersion = 1;

// Parsed scene file.  Exactly one of `walls` / `game` is populated.
struct Scene {
  std::vector<double> semi_axes;
  std::vector<Wall> walls;
  std::vector<double> game_betas;
  Signature game_signature;
  bool constrained = false;  // billiard on the ellipsoid, walls as boundary curves

  bool start_auto = true;
  std::vector<double> start_point;
  std::vector<double> start_direction;

  std::vector<double> caustics;  // optional, for auto starts
  unsigned precision_bits = 256;
  double tolerance_position = 1e-9;
  double tolerance_residual = 1e-10;

  bool is_game() const { return !game_betas.empty(); }
  ConfocalFamily family() const { return ConfocalFamily(semi_axes); }
};

Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);
std::string scene_to_json(const Scene& sc);

// Fills in start_point / start_direction when the scene says "auto".
void resolve_start(Scene& sc);

// Trajectory document; carries the scene geometry so a renderer needs no
// second input.
std::string trajectory_to_json(const Scene& sc, const Trajectory& traj);

std::string condition_report_to_json(const ConditionReport& rep);
std::string check_report_to_json(const CheckReport& rep);

// Decimal string with enough digits to round-trip `bits` of precision.
std::string format_real(const BigReal& v, unsigned bits);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// FNV-1a of the raw bytes, as fixed-width hex; used for input digests.
std::string content_digest(const std::string& bytes);

}  // namespace poncelet
