#include "adp/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include "adp/errors.hpp"
#include "adp/rng.hpp"

namespace adp {
namespace {

constexpr std::uint64_t kWorldStream = 0x57524C44;  // "WRLD"

std::vector<std::uint8_t> ca_grid(std::uint64_t seed, int w, int h, const CaParams& p) {
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(w) * h, 0);
  auto at = [&](std::vector<std::uint8_t>& g, int x, int y) -> std::uint8_t& {
    return g[static_cast<std::size_t>(y) * w + x];
  };

  Rng rng = Rng::derive(seed, {kWorldStream});
  // Fill order is part of the format: row-major, row 0 first.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool boundary = x == 0 || y == 0 || x == w - 1 || y == h - 1;
      if (boundary) {
        at(grid, x, y) = 1;
      } else {
        at(grid, x, y) = rng.uniform01() < p.fill_prob ? 1 : 0;
      }
    }
  }

  std::vector<std::uint8_t> next = grid;
  for (int iter = 0; iter < p.smoothing_iters; ++iter) {
    for (int y = 1; y < h - 1; ++y) {
      for (int x = 1; x < w - 1; ++x) {
        int count = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            count += grid[static_cast<std::size_t>(y + dy) * w + (x + dx)];
          }
        }
        std::uint8_t cur = at(grid, x, y);
        at(next, x, y) = count >= p.birth_limit ? 1 : (count < p.death_limit ? 0 : cur);
      }
    }
    grid.swap(next);
  }
  return grid;
}

struct Placement {
  bool ok = false;
  int start_x = 0, start_y = 0;
  int goal_x = 0, goal_y = 0;
};

// Start = lowest-y cell of the largest free 4-connected component, goal =
// highest-y cell (ties: column nearest grid center, then lowest x). The
// component must span at least half the interior height so every world is
// a bottom-to-top traversal task.
Placement place_endpoints(const std::vector<std::uint8_t>& grid, int w, int h) {
  Placement out;
  std::vector<int> label(grid.size(), -1);
  int best_label = -1;
  std::size_t best_size = 0;
  int n_labels = 0;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (grid[idx] != 0 || label[idx] != -1) continue;
      const int cur = n_labels++;
      std::size_t size = 0;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      label[idx] = cur;
      while (!q.empty()) {
        auto [cx, cy] = q.front();
        q.pop();
        ++size;
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nx = cx + dx[k], ny = cy + dy[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
          if (grid[nidx] != 0 || label[nidx] != -1) continue;
          label[nidx] = cur;
          q.push({nx, ny});
        }
      }
      if (size > best_size) {
        best_size = size;
        best_label = cur;
      }
    }
  }
  if (best_label < 0 || best_size < 2) return out;

  const double mid_x = (w - 1) / 2.0;
  bool have_start = false, have_goal = false;
  auto better_low = [&](int x, int y, int bx, int by) {
    if (y != by) return y < by;
    const double dx = std::abs(x - mid_x), dbx = std::abs(bx - mid_x);
    if (dx != dbx) return dx < dbx;
    return x < bx;
  };
  auto better_high = [&](int x, int y, int bx, int by) {
    if (y != by) return y > by;
    const double dx = std::abs(x - mid_x), dbx = std::abs(bx - mid_x);
    if (dx != dbx) return dx < dbx;
    return x < bx;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (label[static_cast<std::size_t>(y) * w + x] != best_label) continue;
      if (!have_start || better_low(x, y, out.start_x, out.start_y)) {
        out.start_x = x;
        out.start_y = y;
        have_start = true;
      }
      if (!have_goal || better_high(x, y, out.goal_x, out.goal_y)) {
        out.goal_x = x;
        out.goal_y = y;
        have_goal = true;
      }
    }
  }
  out.ok = have_start && have_goal && (out.goal_y - out.start_y) >= (h - 2) / 2;
  return out;
}

}  // namespace

OccupancyWorld generate_world(std::uint64_t seed, int width_cells, int height_cells,
                              double resolution, const CaParams& params) {
  if (width_cells < 10 || height_cells < 10)
    throw InvalidParams("world must be at least 10x10 cells");
  if (resolution <= 0.0) throw InvalidParams("resolution must be positive");
  if (params.fill_prob < 0.0 || params.fill_prob >= 1.0)
    throw InvalidParams("fill_prob must be in [0, 1)");

  constexpr int kMaxRetries = 50;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    auto grid = ca_grid(seed + static_cast<std::uint64_t>(attempt), width_cells,
                        height_cells, params);
    const Placement p = place_endpoints(grid, width_cells, height_cells);
    if (!p.ok) continue;

    OccupancyWorld world;
    world.width_cells = width_cells;
    world.height_cells = height_cells;
    world.resolution = resolution;
    world.cells = std::move(grid);
    world.seed = seed;
    const Vec2 s = world.cell_center(p.start_x, p.start_y);
    world.start = {s.x, s.y, M_PI / 2.0};
    world.goal = world.cell_center(p.goal_x, p.goal_y);
    if (!free_path_exists(world)) continue;  // cannot happen within one component
    return world;
  }
  throw ConnectivityFailure("no start-goal connected world within " +
                            std::to_string(kMaxRetries) + " retries of seed " +
                            std::to_string(seed));
}

namespace {

// Squared distance from a point to a cell's axis-aligned box.
inline double cell_dist_sq(const OccupancyWorld& w, int cx, int cy, double x, double y) {
  const double min_x = cx * w.resolution, max_x = (cx + 1) * w.resolution;
  const double min_y = cy * w.resolution, max_y = (cy + 1) * w.resolution;
  const double dx = std::max({min_x - x, 0.0, x - max_x});
  const double dy = std::max({min_y - y, 0.0, y - max_y});
  return dx * dx + dy * dy;
}

}  // namespace

bool is_collision(const OccupancyWorld& world, double x, double y, double robot_radius) {
  if (x < 0.0 || y < 0.0 || x > world.width_m() || y > world.height_m()) return true;
  const double r = robot_radius;
  const int cx_lo = std::max(0, world.cell_x(x - r));
  const int cx_hi = std::min(world.width_cells - 1, world.cell_x(x + r));
  const int cy_lo = std::max(0, world.cell_y(y - r));
  const int cy_hi = std::min(world.height_cells - 1, world.cell_y(y + r));
  const double r_sq = r * r;
  for (int cy = cy_lo; cy <= cy_hi; ++cy) {
    for (int cx = cx_lo; cx <= cx_hi; ++cx) {
      if (!world.occupied(cx, cy)) continue;
      if (cell_dist_sq(world, cx, cy, x, y) <= r_sq) return true;
    }
  }
  return false;
}

double min_obstacle_distance(const OccupancyWorld& world, double x, double y, double cap) {
  const int cx_lo = std::max(0, world.cell_x(x - cap));
  const int cx_hi = std::min(world.width_cells - 1, world.cell_x(x + cap));
  const int cy_lo = std::max(0, world.cell_y(y - cap));
  const int cy_hi = std::min(world.height_cells - 1, world.cell_y(y + cap));
  double best_sq = cap * cap;
  for (int cy = cy_lo; cy <= cy_hi; ++cy) {
    for (int cx = cx_lo; cx <= cx_hi; ++cx) {
      if (!world.occupied(cx, cy)) continue;
      best_sq = std::min(best_sq, cell_dist_sq(world, cx, cy, x, y));
    }
  }
  return std::sqrt(best_sq);
}

LidarScan cast_lidar(const OccupancyWorld& world, const Pose2& pose, double max_range) {
  LidarScan scan;
  scan.max_range = max_range;
  scan.frame_pose = pose;
  scan.ranges.resize(LidarScan::kBeams);

  const double res = world.resolution;
  for (int k = 0; k < LidarScan::kBeams; ++k) {
    const double theta = pose.yaw + LidarScan::bearing(k);
    const double dx = std::cos(theta);
    const double dy = std::sin(theta);

    int cx = world.cell_x(pose.x);
    int cy = world.cell_y(pose.y);
    double hit = max_range;
    if (world.occupied(cx, cy)) {
      hit = 0.0;
    } else {
      // Amanatides-Woo traversal; the hit distance is the ray parameter at
      // which the occupied cell is entered.
      const int step_x = dx > 0.0 ? 1 : -1;
      const int step_y = dy > 0.0 ? 1 : -1;
      const double inv_dx = dx != 0.0 ? 1.0 / dx : 0.0;
      const double inv_dy = dy != 0.0 ? 1.0 / dy : 0.0;
      double t_max_x = std::numeric_limits<double>::infinity();
      double t_max_y = std::numeric_limits<double>::infinity();
      double t_delta_x = std::numeric_limits<double>::infinity();
      double t_delta_y = std::numeric_limits<double>::infinity();
      if (dx != 0.0) {
        const double next_x = (dx > 0.0 ? (cx + 1) * res : cx * res);
        t_max_x = (next_x - pose.x) * inv_dx;
        t_delta_x = res * std::abs(inv_dx);
      }
      if (dy != 0.0) {
        const double next_y = (dy > 0.0 ? (cy + 1) * res : cy * res);
        t_max_y = (next_y - pose.y) * inv_dy;
        t_delta_y = res * std::abs(inv_dy);
      }
      for (;;) {
        double t_enter;
        if (t_max_x < t_max_y) {
          t_enter = t_max_x;
          t_max_x += t_delta_x;
          cx += step_x;
        } else {
          t_enter = t_max_y;
          t_max_y += t_delta_y;
          cy += step_y;
        }
        if (t_enter > max_range) break;
        if (!world.in_bounds(cx, cy)) break;
        if (world.occupied(cx, cy)) {
          hit = t_enter;
          break;
        }
      }
    }
    scan.ranges[k] = std::clamp(hit, 1e-6, max_range);
  }
  return scan;
}

std::vector<double> k_nearest_obstacle_distances(const LidarScan& scan, int k) {
  if (k < 0 || k > static_cast<int>(scan.ranges.size()))
    throw InvalidParams("k out of range for scan size");
  std::vector<double> sorted = scan.ranges;
  std::partial_sort(sorted.begin(), sorted.begin() + k, sorted.end());
  sorted.resize(k);
  return sorted;
}

bool free_path_exists(const OccupancyWorld& world) {
  const int sx = world.cell_x(world.start.x);
  const int sy = world.cell_y(world.start.y);
  const int gx = world.cell_x(world.goal.x);
  const int gy = world.cell_y(world.goal.y);
  if (world.occupied(sx, sy) || world.occupied(gx, gy)) return false;

  std::vector<std::uint8_t> seen(world.cells.size(), 0);
  std::queue<std::pair<int, int>> q;
  q.push({sx, sy});
  seen[static_cast<std::size_t>(sy) * world.width_cells + sx] = 1;
  while (!q.empty()) {
    auto [cx, cy] = q.front();
    q.pop();
    if (cx == gx && cy == gy) return true;
    constexpr int dx[4] = {1, -1, 0, 0};
    constexpr int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = cx + dx[k], ny = cy + dy[k];
      if (!world.in_bounds(nx, ny) || world.occupied(nx, ny)) continue;
      std::uint8_t& mark = seen[static_cast<std::size_t>(ny) * world.width_cells + nx];
      if (mark) continue;
      mark = 1;
      q.push({nx, ny});
    }
  }
  return false;
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string world_to_string(const OccupancyWorld& world) {
  std::ostringstream os;
  os << "ADPWORLD 1\n";
  os << world.width_cells << ' ' << world.height_cells << ' '
     << fmt_double(world.resolution) << ' ' << world.seed << '\n';
  os << fmt_double(world.start.x) << ' ' << fmt_double(world.start.y) << ' '
     << fmt_double(world.start.yaw) << ' ' << fmt_double(world.goal.x) << ' '
     << fmt_double(world.goal.y) << '\n';
  for (int y = 0; y < world.height_cells; ++y) {
    for (int x = 0; x < world.width_cells; ++x) {
      os << (world.occupied(x, y) ? '#' : '.');
    }
    os << '\n';
  }
  return os.str();
}

OccupancyWorld world_from_string(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "ADPWORLD" || version != 1)
    throw InvalidInput("not an ADPWORLD 1 file");

  OccupancyWorld world;
  if (!(is >> world.width_cells >> world.height_cells >> world.resolution >> world.seed))
    throw InvalidInput("malformed world header");
  if (world.width_cells <= 0 || world.height_cells <= 0 || world.resolution <= 0.0)
    throw InvalidInput("invalid world dimensions");
  if (!(is >> world.start.x >> world.start.y >> world.start.yaw >> world.goal.x >>
        world.goal.y))
    throw InvalidInput("malformed start/goal line");

  world.cells.assign(static_cast<std::size_t>(world.width_cells) * world.height_cells, 0);
  std::string row;
  for (int y = 0; y < world.height_cells; ++y) {
    if (!(is >> row) || static_cast<int>(row.size()) != world.width_cells)
      throw InvalidInput("malformed grid row " + std::to_string(y));
    for (int x = 0; x < world.width_cells; ++x) {
      const char c = row[static_cast<std::size_t>(x)];
      if (c != '.' && c != '#') throw InvalidInput("invalid grid character");
      world.cells[static_cast<std::size_t>(y) * world.width_cells + x] = c == '#' ? 1 : 0;
    }
  }
  return world;
}

void save_world(const OccupancyWorld& world, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open for write: " + path);
  f << world_to_string(world);
}

OccupancyWorld load_world(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return world_from_string(os.str());
}

}  // namespace adp
