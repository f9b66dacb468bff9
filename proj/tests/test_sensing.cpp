#include "slung/sensing.hpp"

#include <doctest.h>

using namespace slung;

TEST_CASE("neighbor sensing excludes self and respects the strict radius") {
    const std::vector<Vec3> agents = {
        Vec3(0, 0, 0), Vec3(5, 0, 0), Vec3(4.999, 0, 0), Vec3(0, 2, 0), Vec3(0, 0, -7)};

    const auto sensed = senseNeighbors(0, agents, 5.0);
    REQUIRE(sensed.size() == 2);  // the one at exactly 5 m and the far one are out
    // ascending agent-index order
    CHECK(sensed[0] == Vec3(4.999, 0, 0));
    CHECK(sensed[1] == Vec3(0, 2, 0));
}

TEST_CASE("an isolated agent senses nothing") {
    const std::vector<Vec3> agents = {Vec3(0, 0, 0), Vec3(100, 0, 0), Vec3(0, 100, 0)};
    CHECK(senseNeighbors(0, agents, 5.0).empty());
}

TEST_CASE("obstacle sensing filters by distance and keeps config order") {
    const std::vector<Vec3> obstacles = {Vec3(9, 0, 0), Vec3(0, 3, 0), Vec3(1, 0, 0),
                                         Vec3(6, 0, 0)};
    const auto sensed = senseObstacles(Vec3::Zero(), obstacles, 6.0);
    REQUIRE(sensed.size() == 2);
    CHECK(sensed[0] == Vec3(0, 3, 0));
    CHECK(sensed[1] == Vec3(1, 0, 0));  // the one at exactly 6 m is excluded
}

TEST_CASE("no obstacles configured means nothing sensed") {
    CHECK(senseObstacles(Vec3::Zero(), {}, 10.0).empty());
}
