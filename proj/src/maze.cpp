#include "planwb/maze.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "planwb/text.hpp"

namespace planwb {

Maze Maze::parse(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty()) rows.emplace_back(t);
  }
  if (rows.empty()) throw std::invalid_argument("maze: empty layout");
  Maze m;
  m.height_ = static_cast<int>(rows.size());
  m.width_ = static_cast<int>(rows[0].size());
  m.wall_.assign(static_cast<size_t>(m.width_) * m.height_, 0);
  for (int r = 0; r < m.height_; ++r) {
    if (static_cast<int>(rows[r].size()) != m.width_)
      throw std::invalid_argument("maze: ragged row " + std::to_string(r));
    int y = m.height_ - 1 - r;  // first text row is the top
    for (int x = 0; x < m.width_; ++x) {
      char c = rows[r][static_cast<size_t>(x)];
      switch (c) {
        case '#': m.wall_[m.index(x, y)] = 1; break;
        case '.': ++m.floor_count_; break;
        case 'P':
          ++m.floor_count_;
          if (m.agent_spawn_.first >= 0) throw std::invalid_argument("maze: duplicate agent spawn");
          m.agent_spawn_ = {x, y};
          break;
        case 'G':
          ++m.floor_count_;
          m.ghost_spawns_.emplace_back(x, y);
          break;
        default:
          throw std::invalid_argument(std::string("maze: bad cell character '") + c + "'");
      }
    }
  }
  if (m.agent_spawn_.first < 0) throw std::invalid_argument("maze: missing agent spawn 'P'");
  return m;
}

Maze Maze::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("maze: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Maze::connected() const {
  std::vector<uint8_t> seen(wall_.size(), 0);
  std::vector<std::pair<int, int>> stack{agent_spawn_};
  seen[index(agent_spawn_.first, agent_spawn_.second)] = 1;
  int visited = 0;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    ++visited;
    for (int d = 0; d < kDirCount; ++d) {
      auto [dx, dy] = dir_delta(static_cast<Dir>(d));
      int nx = x + dx, ny = y + dy;
      if (wall(nx, ny) || seen[index(nx, ny)]) continue;
      seen[index(nx, ny)] = 1;
      stack.emplace_back(nx, ny);
    }
  }
  return visited == floor_count_;
}

}  // namespace planwb
