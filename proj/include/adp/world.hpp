#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adp/geometry.hpp"

namespace adp {

struct CaParams {
  double fill_prob = 0.45;
  int smoothing_iters = 4;
  int birth_limit = 5;
  int death_limit = 4;
};

// Boolean occupancy grid in a world frame whose origin is the grid's
// min corner; cell (cx, cy) spans [cx*res, (cx+1)*res) x [cy*res, (cy+1)*res).
// Immutable after construction; safe to share across threads.
struct OccupancyWorld {
  int width_cells = 0;
  int height_cells = 0;
  double resolution = 0.15;
  std::vector<std::uint8_t> cells;  // row-major, row 0 = min y; nonzero = obstacle
  Pose2 start;
  Vec2 goal;
  std::uint64_t seed = 0;

  bool in_bounds(int cx, int cy) const {
    return cx >= 0 && cx < width_cells && cy >= 0 && cy < height_cells;
  }
  bool occupied(int cx, int cy) const {
    if (!in_bounds(cx, cy)) return true;
    return cells[static_cast<std::size_t>(cy) * width_cells + cx] != 0;
  }
  double width_m() const { return width_cells * resolution; }
  double height_m() const { return height_cells * resolution; }
  int cell_x(double x) const { return static_cast<int>(std::floor(x / resolution)); }
  int cell_y(double y) const { return static_cast<int>(std::floor(y / resolution)); }
  Vec2 cell_center(int cx, int cy) const {
    return {(cx + 0.5) * resolution, (cy + 0.5) * resolution};
  }
};

struct LidarScan {
  static constexpr int kBeams = 720;
  static constexpr double kFovDeg = 270.0;

  std::vector<double> ranges;  // meters, size kBeams
  double max_range = 10.0;
  Pose2 frame_pose;

  // Bearing of beam k relative to the robot heading.
  static double bearing(int k) {
    return (-135.0 + k * (kFovDeg / (kBeams - 1))) * M_PI / 180.0;
  }
};

// Cellular-automata world generation. Deterministic in its arguments;
// retries seed+1..seed+50 internally until the largest free component
// yields a connected bottom-to-top start/goal pair.
OccupancyWorld generate_world(std::uint64_t seed, int width_cells, int height_cells,
                              double resolution, const CaParams& params = {});

// Disc-footprint collision test: true iff any occupied cell lies within
// robot_radius of (x, y), or the point is outside the grid.
bool is_collision(const OccupancyWorld& world, double x, double y, double robot_radius);

// Distance from (x, y) to the nearest occupied cell, capped at `cap`.
double min_obstacle_distance(const OccupancyWorld& world, double x, double y, double cap);

// 720-beam scan over a 270 degree FOV via grid DDA traversal. Each range is
// the distance to the first occupied cell boundary, clamped to max_range.
LidarScan cast_lidar(const OccupancyWorld& world, const Pose2& pose, double max_range);

// The k smallest ranges, ascending. Ranges at max_range stay eligible.
std::vector<double> k_nearest_obstacle_distances(const LidarScan& scan, int k);

// 4-connected BFS over free cells from the start cell to the goal cell.
bool free_path_exists(const OccupancyWorld& world);

// Text world-file format, versioned header "ADPWORLD 1".
std::string world_to_string(const OccupancyWorld& world);
OccupancyWorld world_from_string(const std::string& text);
void save_world(const OccupancyWorld& world, const std::string& path);
OccupancyWorld load_world(const std::string& path);

}  // namespace adp
