#pragma once

#include <memory>

#include "dgmg/mesh.hpp"
#include "dgmg/physics.hpp"

namespace dgmg
{

/// Everything a spatial operator needs besides the mesh: constants,
/// environmental atmosphere and boundary kinds.
struct FlowModel
{
    PhysConstants constants{};
    std::shared_ptr<const Atmosphere> atmosphere;
    BoundarySpec boundary{};
};

}  // namespace dgmg
