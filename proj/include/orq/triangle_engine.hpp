#pragma once

#include <cstdint>

#include "orq/geometry.hpp"
#include "orq/point_set.hpp"

namespace orq {

struct TriQueryStats {
    std::uint64_t nodes_visited{0};         // tree-level nodes touched
    std::uint64_t substructures_queried{0};  // half-plane structures invoked
    std::uint64_t hp_vertices_visited{0};    // ring vertices inside those structures
    std::uint64_t list_nodes_visited{0};     // persistent/secondary list steps
};

/// Common interface of the two orthogonal-triangle reporting engines.
class TriangleEngine {
  public:
    virtual ~TriangleEngine() = default;

    struct Result {
        IdSet ids;
        TriQueryStats stats;
    };

    virtual Result query_triangle(const OrthoTriangle& q) const = 0;
    virtual Result query_rect(const AxisRect& r) const = 0;
    virtual const char* name() const = 0;
};

}  // namespace orq
