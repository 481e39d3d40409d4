#pragma once

#include <cmath>
#include <random>

#include "canesim/grid.hpp"
#include "oracle/dijkstra.hpp"

namespace testsupport {

struct RandomInstance {
    canesim::GridMap map;
    canesim::Cell start;
    canesim::Cell goal;
};

// Solvable size x size grid with obstacle density drawn from [0, max_density].
inline RandomInstance random_instance(std::mt19937_64& rng, int size = 20, double max_density = 0.30)
{
    std::uniform_real_distribution<double> density(0.0, max_density);
    std::uniform_int_distribution<int> coord(0, size - 1);
    while (true) {
        canesim::GridMap map(size, size);
        const int obstacles = static_cast<int>(std::floor(density(rng) * size * size));
        for (int k = 0; k < obstacles; ++k) map.set_state({coord(rng), coord(rng)}, canesim::CellState::StaticObstacle);
        const canesim::Cell start{coord(rng), coord(rng)};
        const canesim::Cell goal{coord(rng), coord(rng)};
        if (!map.is_traversable(start) || !map.is_traversable(goal)) continue;
        if (!std::isfinite(oracle::dijkstra_cost(map, start, goal))) continue;
        return {map, start, goal};
    }
}

} // namespace testsupport
