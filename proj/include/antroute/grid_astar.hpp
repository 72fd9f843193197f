#ifndef ANTROUTE_GRID_ASTAR_HPP
#define ANTROUTE_GRID_ASTAR_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antroute::grid {

inline constexpr int kOrthogonalStep = 10;
inline constexpr int kDiagonalStep = 14;

struct Cell {
  int col = 0;
  int row = 0;

  auto operator<=>(const Cell&) const = default;
};

class GridMap {
 public:
  GridMap(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
    blocked_.assign(static_cast<std::size_t>(width) * height, 0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool in_bounds(Cell c) const noexcept {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }

  bool blocked(Cell c) const { return blocked_[index(c)] != 0; }
  bool walkable(Cell c) const { return in_bounds(c) && !blocked(c); }

  void set_blocked(Cell c, bool value = true) {
    if (!in_bounds(c)) throw std::out_of_range("cell outside grid");
    blocked_[index(c)] = value ? 1 : 0;
  }

  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.row) * width_ + c.col;
  }

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
};

/// One entry of the open or closed list.
struct ScoredSquare {
  Cell cell;
  int g = 0;
  int h = 0;
  int f = 0;
  std::optional<Cell> parent;
};

struct GridPath {
  std::vector<Cell> cells;
  int g = 0;
};

inline int manhattan_h(Cell cell, Cell goal) {
  return kOrthogonalStep * (std::abs(cell.col - goal.col) + std::abs(cell.row - goal.row));
}

/// A* over a square grid with Manhattan scoring and 10/14 step costs.
///
/// Equal-f entries pop most-recent-first. Diagonal moves may not cut a blocked corner.
/// Returns nullopt when the open list runs dry before the goal is closed.
inline std::optional<GridPath> grid_astar(const GridMap& map, Cell start, Cell goal,
                                          bool allow_diagonal) {
  if (!map.walkable(start) || !map.walkable(goal)) {
    throw std::invalid_argument("start and goal must be walkable cells inside the grid");
  }

  struct OpenEntry {
    int f;
    std::uint64_t seq;
    Cell cell;
  };
  // Min-heap on f, then max on insertion sequence (LIFO among equal f).
  auto worse = [](const OpenEntry& a, const OpenEntry& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.seq < b.seq;
  };
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, decltype(worse)> open(worse);

  const std::size_t n = static_cast<std::size_t>(map.width()) * map.height();
  std::vector<ScoredSquare> squares(n);
  std::vector<char> seen(n, 0);
  std::vector<char> closed(n, 0);
  std::uint64_t seq = 0;

  auto& s = squares[map.index(start)];
  s = {start, 0, manhattan_h(start, goal), manhattan_h(start, goal), std::nullopt};
  seen[map.index(start)] = 1;
  open.push({s.f, seq++, start});

  static constexpr int kOrtho[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static constexpr int kDiag[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

  while (!open.empty()) {
    const auto top = open.top();
    open.pop();
    const auto idx = map.index(top.cell);
    if (closed[idx] || top.f != squares[idx].f) continue;
    closed[idx] = 1;
    const auto& current = squares[idx];

    if (top.cell == goal) {
      GridPath path;
      path.g = current.g;
      for (std::optional<Cell> c = goal; c; c = squares[map.index(*c)].parent) {
        path.cells.push_back(*c);
      }
      std::reverse(path.cells.begin(), path.cells.end());
      return path;
    }

    auto relax = [&](Cell next, int step) {
      if (!map.walkable(next)) return;
      const auto nidx = map.index(next);
      if (closed[nidx]) return;
      const int g = current.g + step;
      auto& sq = squares[nidx];
      if (seen[nidx] && g >= sq.g) return;
      seen[nidx] = 1;
      const int h = manhattan_h(next, goal);
      sq = {next, g, h, g + h, top.cell};
      open.push({sq.f, seq++, next});
    };

    for (const auto& d : kOrtho) relax({top.cell.col + d[0], top.cell.row + d[1]}, kOrthogonalStep);
    if (allow_diagonal) {
      for (const auto& d : kDiag) {
        const Cell side_a{top.cell.col + d[0], top.cell.row};
        const Cell side_b{top.cell.col, top.cell.row + d[1]};
        if (!map.walkable(side_a) || !map.walkable(side_b)) continue;
        relax({top.cell.col + d[0], top.cell.row + d[1]}, kDiagonalStep);
      }
    }
  }
  return std::nullopt;
}

struct GridFixture {
  GridMap map;
  Cell start;
  Cell goal;
};

/// Reads "<width> <height>" followed by `height` rows of '.', '#', 'S', 'G'.
inline GridFixture parse_grid(std::istream& in) {
  int width = 0;
  int height = 0;
  if (!(in >> width >> height)) throw std::runtime_error("grid header must be '<width> <height>'");
  GridMap map(width, height);
  std::optional<Cell> start;
  std::optional<Cell> goal;
  std::string row;
  std::getline(in, row);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, row)) {
      throw std::runtime_error("grid has fewer than " + std::to_string(height) + " rows");
    }
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (static_cast<int>(row.size()) != width) {
      throw std::runtime_error("grid row " + std::to_string(r + 1) + " has wrong width");
    }
    for (int c = 0; c < width; ++c) {
      switch (row[c]) {
        case '.': break;
        case '#': map.set_blocked({c, r}); break;
        case 'S':
          if (start) throw std::runtime_error("grid has more than one S");
          start = Cell{c, r};
          break;
        case 'G':
          if (goal) throw std::runtime_error("grid has more than one G");
          goal = Cell{c, r};
          break;
        default:
          throw std::runtime_error(std::string("unexpected grid character '") + row[c] + "'");
      }
    }
  }
  if (!start || !goal) throw std::runtime_error("grid needs exactly one S and one G");
  return {std::move(map), *start, *goal};
}

inline GridFixture parse_grid(const std::string& text) {
  std::istringstream in(text);
  return parse_grid(in);
}

}  // namespace antroute::grid

#endif
