#pragma once

#include <cstdint>

namespace gom::detail {

// Corner numbering: v0=(0,0,0) v1=(1,0,0) v2=(1,1,0) v3=(0,1,0), v4..v7 the
// same at z=1. Edges: 0:(0,1) 1:(1,2) 2:(2,3) 3:(3,0) 4:(4,5) 5:(5,6)
// 6:(6,7) 7:(7,4) 8:(0,4) 9:(1,5) 10:(2,6) 11:(3,7).
extern const uint16_t kMcEdgeTable[256];
extern const int8_t kMcTriTable[256][16];

}  // namespace gom::detail
