#ifndef SLUNG_SENSING_HPP
#define SLUNG_SENSING_HPP

#include "slung/config.hpp"
#include "slung/types.hpp"

#include <vector>

namespace slung {

/// Positions of all other agents strictly inside the sensing radius,
/// in ascending agent-index order.
std::vector<Vec3> senseNeighbors(int agentIndex, const std::vector<Vec3>& agentPositions,
                                 double radius);

/// Configured obstacles strictly inside the sensing radius, in config order.
std::vector<Vec3> senseObstacles(const Vec3& agentPos, const std::vector<Vec3>& obstacles,
                                 double radius);

}  // namespace slung

#endif
