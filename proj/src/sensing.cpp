#include "slung/sensing.hpp"

namespace slung {

std::vector<Vec3> senseNeighbors(int agentIndex, const std::vector<Vec3>& agentPositions,
                                 double radius) {
    std::vector<Vec3> sensed;
    const Vec3& self = agentPositions[agentIndex];
    for (std::size_t j = 0; j < agentPositions.size(); ++j) {
        if (static_cast<int>(j) == agentIndex) continue;
        if ((agentPositions[j] - self).norm() < radius) sensed.push_back(agentPositions[j]);
    }
    return sensed;
}

std::vector<Vec3> senseObstacles(const Vec3& agentPos, const std::vector<Vec3>& obstacles,
                                 double radius) {
    std::vector<Vec3> sensed;
    for (const auto& obs : obstacles) {
        if ((obs - agentPos).norm() < radius) sensed.push_back(obs);
    }
    return sensed;
}

}  // namespace slung
