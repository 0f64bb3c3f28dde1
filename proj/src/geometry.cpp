#include "nhl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace nhl {

namespace {

// Packs a (possibly negative) coordinate pair for hash lookups.
long long cell_key(int x, int y) {
  return (static_cast<long long>(x) << 32) ^ (static_cast<unsigned int>(y));
}

}  // namespace

std::vector<Cell> square_mask(int L) {
  if (L <= 0) throw std::invalid_argument("square_mask: L must be positive");
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(L) * L);
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) cells.push_back({x, y});
  return cells;
}

std::vector<Cell> rotated_mask(double theta, int L) {
  if (L <= 0) throw std::invalid_argument("rotated_mask: L must be positive");
  const double c = (L - 1) / 2.0;
  const double S = L / (std::cos(theta) + std::sin(theta));
  const double ct = std::cos(theta), st = std::sin(theta);
  const double eps = 1e-9;
  std::vector<Cell> cells;
  for (int y = -L; y < 2 * L; ++y) {
    for (int x = -L; x < 2 * L; ++x) {
      const double vx = x - c, vy = y - c;
      const double ux = ct * vx - st * vy;
      const double uy = st * vx + ct * vy;
      if (ux >= -S / 2 - eps && ux < S / 2 - eps && uy >= -S / 2 - eps &&
          uy < S / 2 - eps)
        cells.push_back({x, y});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  return cells;
}

std::vector<Cell> diamond_mask(int L) { return rotated_mask(pi / 4, L); }

int rotated_bounding_side(double theta, int side) {
  return static_cast<int>(std::lround(side * (std::cos(theta) + std::sin(theta))));
}

std::vector<char> boundary_shell(const std::vector<Cell>& cells, int depth) {
  std::unordered_set<long long> remaining;
  remaining.reserve(cells.size() * 2);
  for (const Cell& cl : cells) remaining.insert(cell_key(cl.x, cl.y));

  std::unordered_set<long long> shell;
  for (int layer = 0; layer < depth && !remaining.empty(); ++layer) {
    std::vector<long long> peel;
    for (const Cell& cl : cells) {
      const long long key = cell_key(cl.x, cl.y);
      if (!remaining.count(key)) continue;
      int neighbors = remaining.count(cell_key(cl.x + 1, cl.y)) +
                      remaining.count(cell_key(cl.x - 1, cl.y)) +
                      remaining.count(cell_key(cl.x, cl.y + 1)) +
                      remaining.count(cell_key(cl.x, cl.y - 1));
      if (neighbors < 4) peel.push_back(key);
    }
    for (long long key : peel) {
      remaining.erase(key);
      shell.insert(key);
    }
  }

  std::vector<char> mask(cells.size(), 0);
  for (size_t i = 0; i < cells.size(); ++i)
    mask[i] = shell.count(cell_key(cells[i].x, cells[i].y)) ? 1 : 0;
  return mask;
}

}  // namespace nhl
