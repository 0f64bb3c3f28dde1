#pragma once

#include <vector>

#include "nhl/types.hpp"

namespace nhl {

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

// Sites of an axis-aligned L x L square, listed row-major (y outer, x inner).
std::vector<Cell> square_mask(int L);

// Sites whose centers lie inside a square of side L/(cos theta + sin theta)
// rotated clockwise by theta about the center of the L x L bounding box.
// The boundary test is half-open (lower-left edges inclusive) so that ties
// break deterministically; theta = 0 reproduces square_mask(L) and
// theta = pi/4 gives the diamond whose diagonal spans L cells.
std::vector<Cell> rotated_mask(double theta, int L);

// Diamond with diagonal length L (rotated_mask at theta = pi/4).
std::vector<Cell> diamond_mask(int L);

// Bounding-box side L that keeps the rotated square's side close to `side`
// cells: L = round(side * (cos theta + sin theta)).
int rotated_bounding_side(double theta, int side);

// Membership flags for the outermost `depth` layers, peeled iteratively:
// a layer is the set of remaining cells with fewer than four nearest
// neighbors still remaining.
std::vector<char> boundary_shell(const std::vector<Cell>& cells, int depth = 2);

}  // namespace nhl
