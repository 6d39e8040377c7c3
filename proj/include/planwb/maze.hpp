#pragma once

#include <string>
#include <utility>
#include <vector>

namespace planwb {

// Cardinal directions, fixed order used for action indices, observation bits,
// and feature emission alike.
enum class Dir : uint8_t { North = 0, South = 1, East = 2, West = 3 };
inline constexpr int kDirCount = 4;
inline const char* dir_name(Dir d) {
  switch (d) {
    case Dir::North: return "north";
    case Dir::South: return "south";
    case Dir::East: return "east";
    default: return "west";
  }
}
// Unit offsets with y growing upward.
inline std::pair<int, int> dir_delta(Dir d) {
  switch (d) {
    case Dir::North: return {0, 1};
    case Dir::South: return {0, -1};
    case Dir::East: return {1, 0};
    default: return {-1, 0};
  }
}

// Rectangular grid maze parsed from ASCII art: '#' wall, '.' floor, 'P' agent
// spawn, 'G' ghost spawn. The first text row is the TOP of the maze; cells are
// addressed with y growing upward so (0,0) is the bottom-left corner.
class Maze {
 public:
  static Maze parse(const std::string& text);
  static Maze load(const std::string& path);

  int width() const { return width_; }
  int height() const { return height_; }
  // Out-of-bounds cells count as walls.
  bool wall(int x, int y) const {
    return x < 0 || y < 0 || x >= width_ || y >= height_ || wall_[index(x, y)];
  }
  int index(int x, int y) const { return y * width_ + x; }
  int floor_count() const { return floor_count_; }
  std::pair<int, int> agent_spawn() const { return agent_spawn_; }
  const std::vector<std::pair<int, int>>& ghost_spawns() const { return ghost_spawns_; }
  // True when every floor cell is reachable from the agent spawn.
  bool connected() const;

 private:
  int width_ = 0;
  int height_ = 0;
  int floor_count_ = 0;
  std::vector<uint8_t> wall_;
  std::pair<int, int> agent_spawn_{-1, -1};
  std::vector<std::pair<int, int>> ghost_spawns_;
};

}  // namespace planwb
