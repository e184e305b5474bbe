#pragma once
// GIT data of the common blow-up across a crepant wall.

#include "toricwc/git.hpp"

namespace twc {

struct Blowup {
    GitData git;       // rank r+1, m+1 characters; the last one is (0,...,0,1)
    RatVec omega0;     // point inside the shared facet
    Rat epsilon;       // stability is (omega0, -epsilon), scaled to an integer vector
    RatVec omega;
    Chamber chamber;
};

/// Characters of the blow-up: D_i (+) min(-D_i.e, 0), plus (0,1).
IntMatrix blowup_characters(const GitData& git, const WallData& wall);

/// Chooses omega0 inside the facet and epsilon below every critical value,
/// so the anticone system is the epsilon -> 0+ limit.
Blowup blowup_git(const GitData& git, const WallData& wall, const Chamber& plus, const Chamber& minus);

}  // namespace twc
