#pragma once

/**
 * @file constructions.hpp
 * @brief Snake enumeration of the half-plane grid Z x N.
 *
 * The walk starts at (0,0) and, for r = 1, 2, ..., traverses the shell of the
 * l-infinity ball of radius r as a U: up one vertical side, across the top
 * row, down the other side. Consecutive shells alternate direction so that
 * each one starts next to where the previous ended. Ball r, which has
 * (2r+1)(r+1) cells, is therefore exactly the first (2r+1)(r+1) cells.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace surfdecide {

struct GridCell {
    std::int64_t x = 0;
    std::int64_t y = 0; ///< y >= 0
    friend bool operator==(const GridCell&, const GridCell&) = default;
};

class SnakeWalk {
public:
    GridCell next() {
        const GridCell out = cur_;
        advance();
        return out;
    }

private:
    void advance() {
        if (radius_ == 0) {
            start_shell(1);
            return;
        }
        const std::int64_t r = radius_;
        // dir_ = +1 walks the right side up and the left side down, -1 the mirror
        const std::int64_t near = dir_ * r, far = -dir_ * r;
        if (cur_.x == near && cur_.y < r) {
            ++cur_.y;
        } else if (cur_.y == r && cur_.x != far) {
            cur_.x -= dir_;
        } else if (cur_.x == far && cur_.y > 0) {
            --cur_.y;
        } else {
            start_shell(r + 1);
        }
    }

    void start_shell(std::int64_t r) {
        // previous shell ended at (far, 0); the next one starts one step further out
        dir_ = (r % 2 == 1) ? 1 : -1;
        radius_ = r;
        cur_ = {dir_ * r, 0};
    }

    GridCell cur_{};
    std::int64_t radius_ = 0;
    std::int64_t dir_ = 1;
};

/// First `count` cells of the snake bijection N -> Z x N.
inline std::vector<GridCell> snake_bijection(std::size_t count) {
    if (count == 0) throw std::invalid_argument("snake_bijection: count must be positive");
    std::vector<GridCell> path;
    path.reserve(count);
    SnakeWalk walk;
    for (std::size_t i = 0; i < count; ++i) path.push_back(walk.next());
    return path;
}

/// Number of cells in the half-plane l-infinity ball of radius r.
constexpr std::uint64_t ball_size(std::uint64_t r) { return (2 * r + 1) * (r + 1); }

} // namespace surfdecide
