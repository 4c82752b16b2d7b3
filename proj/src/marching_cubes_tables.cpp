#include "marching_cubes_tables.hpp"

namespace gom::detail {

// 256-case marching-cubes tables; bit i of the case index = grid corner i
// inside the surface. Rows list cube-edge ids per triangle, -1 terminated;
// winding is counter-clockwise seen from outside the surface.
const uint16_t kMcEdgeTable[256] = {
    0x0000, 0x0109, 0x0203, 0x030a, 0x0406, 0x050f, 0x0605, 0x070c,
    0x080c, 0x0905, 0x0a0f, 0x0b06, 0x0c0a, 0x0d03, 0x0e09, 0x0f00,
    0x0190, 0x0099, 0x0393, 0x029a, 0x0596, 0x049f, 0x0795, 0x069c,
    0x099c, 0x0895, 0x0b9f, 0x0a96, 0x0d9a, 0x0c93, 0x0f99, 0x0e90,
    0x0230, 0x0339, 0x0033, 0x013a, 0x0636, 0x073f, 0x0435, 0x053c,
    0x0a3c, 0x0b35, 0x083f, 0x0936, 0x0e3a, 0x0f33, 0x0c39, 0x0d30,
    0x03a0, 0x02a9, 0x01a3, 0x00aa, 0x07a6, 0x06af, 0x05a5, 0x04ac,
    0x0bac, 0x0aa5, 0x09af, 0x08a6, 0x0faa, 0x0ea3, 0x0da9, 0x0ca0,
    0x0460, 0x0569, 0x0663, 0x076a, 0x0066, 0x016f, 0x0265, 0x036c,
    0x0c6c, 0x0d65, 0x0e6f, 0x0f66, 0x086a, 0x0963, 0x0a69, 0x0b60,
    0x05f0, 0x04f9, 0x07f3, 0x06fa, 0x01f6, 0x00ff, 0x03f5, 0x02fc,
    0x0dfc, 0x0cf5, 0x0fff, 0x0ef6, 0x09fa, 0x08f3, 0x0bf9, 0x0af0,
    0x0650, 0x0759, 0x0453, 0x055a, 0x0256, 0x035f, 0x0055, 0x015c,
    0x0e5c, 0x0f55, 0x0c5f, 0x0d56, 0x0a5a, 0x0b53, 0x0859, 0x0950,
    0x07c0, 0x06c9, 0x05c3, 0x04ca, 0x03c6, 0x02cf, 0x01c5, 0x00cc,
    0x0fcc, 0x0ec5, 0x0dcf, 0x0cc6, 0x0bca, 0x0ac3, 0x09c9, 0x08c0,
    0x08c0, 0x09c9, 0x0ac3, 0x0bca, 0x0cc6, 0x0dcf, 0x0ec5, 0x0fcc,
    0x00cc, 0x01c5, 0x02cf, 0x03c6, 0x04ca, 0x05c3, 0x06c9, 0x07c0,
    0x0950, 0x0859, 0x0b53, 0x0a5a, 0x0d56, 0x0c5f, 0x0f55, 0x0e5c,
    0x015c, 0x0055, 0x035f, 0x0256, 0x055a, 0x0453, 0x0759, 0x0650,
    0x0af0, 0x0bf9, 0x08f3, 0x09fa, 0x0ef6, 0x0fff, 0x0cf5, 0x0dfc,
    0x02fc, 0x03f5, 0x00ff, 0x01f6, 0x06fa, 0x07f3, 0x04f9, 0x05f0,
    0x0b60, 0x0a69, 0x0963, 0x086a, 0x0f66, 0x0e6f, 0x0d65, 0x0c6c,
    0x036c, 0x0265, 0x016f, 0x0066, 0x076a, 0x0663, 0x0569, 0x0460,
    0x0ca0, 0x0da9, 0x0ea3, 0x0faa, 0x08a6, 0x09af, 0x0aa5, 0x0bac,
    0x04ac, 0x05a5, 0x06af, 0x07a6, 0x00aa, 0x01a3, 0x02a9, 0x03a0,
    0x0d30, 0x0c39, 0x0f33, 0x0e3a, 0x0936, 0x083f, 0x0b35, 0x0a3c,
    0x053c, 0x0435, 0x073f, 0x0636, 0x013a, 0x0033, 0x0339, 0x0230,
    0x0e90, 0x0f99, 0x0c93, 0x0d9a, 0x0a96, 0x0b9f, 0x0895, 0x099c,
    0x069c, 0x0795, 0x049f, 0x0596, 0x029a, 0x0393, 0x0099, 0x0190,
    0x0f00, 0x0e09, 0x0d03, 0x0c0a, 0x0b06, 0x0a0f, 0x0905, 0x080c,
    0x070c, 0x0605, 0x050f, 0x0406, 0x030a, 0x0203, 0x0109, 0x0000,
};

const int8_t kMcTriTable[256][16] = {
    {-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 8, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 10, 2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 2, 0, 9, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 2, 3, 9, 10, 3, 8, 9, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 11, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 0, 9, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 1, 2, 8, 9, 2, 11, 8, -1, -1, -1, -1, -1, -1, -1},
    {1, 11, 3, 1, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 11, 8, 1, 10, 11, -1, -1, -1, -1, -1, -1, -1},
    {0, 11, 3, 0, 10, 11, 0, 9, 10, -1, -1, -1, -1, -1, -1, -1},
    {9, 11, 8, 9, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {4, 8, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 7, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 4, 9, 3, 7, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 7, 4, 1, 10, 2, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 2, 0, 9, 10, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 2, 3, 9, 10, 3, 4, 9, 3, 7, 4, -1, -1, -1, -1},
    {2, 11, 3, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 4, 0, 2, 7, 4, 2, 11, 7, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 0, 9, 1, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 1, 2, 4, 9, 2, 7, 4, 2, 11, 7, -1, -1, -1, -1},
    {1, 11, 3, 1, 10, 11, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {1, 4, 0, 1, 7, 4, 1, 11, 7, 1, 10, 11, -1, -1, -1, -1},
    {0, 11, 3, 0, 10, 11, 0, 9, 10, 4, 8, 7, -1, -1, -1, -1},
    {4, 11, 7, 4, 10, 11, 4, 9, 10, -1, -1, -1, -1, -1, -1, -1},
    {5, 9, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 5, 1, 0, 4, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 5, 1, 3, 4, 5, 3, 8, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 10, 2, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 2, 0, 5, 10, 0, 4, 5, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 2, 3, 5, 10, 3, 4, 5, 3, 8, 4, -1, -1, -1, -1},
    {2, 11, 3, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 11, 8, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 0, 5, 1, 0, 4, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 5, 1, 2, 4, 5, 2, 8, 4, 2, 11, 8, -1, -1, -1, -1},
    {1, 11, 3, 1, 10, 11, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 11, 8, 1, 10, 11, 5, 9, 4, -1, -1, -1, -1},
    {0, 11, 3, 0, 10, 11, 0, 5, 10, 0, 4, 5, -1, -1, -1, -1},
    {5, 8, 4, 5, 11, 8, 5, 10, 11, -1, -1, -1, -1, -1, -1, -1},
    {5, 8, 7, 5, 9, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 5, 9, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1},
    {0, 5, 1, 0, 7, 5, 0, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 5, 1, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, 5, 8, 7, 5, 9, 8, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 5, 9, 3, 7, 5, 1, 10, 2, -1, -1, -1, -1},
    {0, 10, 2, 0, 5, 10, 0, 7, 5, 0, 8, 7, -1, -1, -1, -1},
    {3, 10, 2, 3, 5, 10, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 5, 8, 7, 5, 9, 8, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 0, 2, 5, 9, 2, 7, 5, 2, 11, 7, -1, -1, -1, -1},
    {2, 11, 3, 0, 5, 1, 0, 7, 5, 0, 8, 7, -1, -1, -1, -1},
    {2, 5, 1, 2, 7, 5, 2, 11, 7, -1, -1, -1, -1, -1, -1, -1},
    {1, 11, 3, 1, 10, 11, 5, 8, 7, 5, 9, 8, -1, -1, -1, -1},
    {1, 9, 0, 1, 5, 9, 1, 7, 5, 1, 11, 7, 1, 10, 11, -1},
    {0, 11, 3, 0, 10, 11, 0, 5, 10, 0, 7, 5, 0, 8, 7, -1},
    {5, 11, 7, 5, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {6, 10, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 8, 9, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {1, 6, 2, 1, 5, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 6, 2, 1, 5, 6, -1, -1, -1, -1, -1, -1, -1},
    {0, 6, 2, 0, 5, 6, 0, 9, 5, -1, -1, -1, -1, -1, -1, -1},
    {3, 6, 2, 3, 5, 6, 3, 9, 5, 3, 8, 9, -1, -1, -1, -1},
    {2, 11, 3, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 11, 8, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 0, 9, 1, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 1, 2, 8, 9, 2, 11, 8, 6, 10, 5, -1, -1, -1, -1},
    {1, 11, 3, 1, 6, 11, 1, 5, 6, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 11, 8, 1, 6, 11, 1, 5, 6, -1, -1, -1, -1},
    {0, 11, 3, 0, 6, 11, 0, 5, 6, 0, 9, 5, -1, -1, -1, -1},
    {6, 9, 5, 6, 8, 9, 6, 11, 8, -1, -1, -1, -1, -1, -1, -1},
    {4, 8, 7, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 7, 4, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 4, 8, 7, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 4, 9, 3, 7, 4, 6, 10, 5, -1, -1, -1, -1},
    {1, 6, 2, 1, 5, 6, 4, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 7, 4, 1, 6, 2, 1, 5, 6, -1, -1, -1, -1},
    {0, 6, 2, 0, 5, 6, 0, 9, 5, 4, 8, 7, -1, -1, -1, -1},
    {3, 6, 2, 3, 5, 6, 3, 9, 5, 3, 4, 9, 3, 7, 4, -1},
    {2, 11, 3, 4, 8, 7, 6, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 4, 0, 2, 7, 4, 2, 11, 7, 6, 10, 5, -1, -1, -1, -1},
    {2, 11, 3, 0, 9, 1, 4, 8, 7, 6, 10, 5, -1, -1, -1, -1},
    {2, 9, 1, 2, 4, 9, 2, 7, 4, 2, 11, 7, 6, 10, 5, -1},
    {1, 11, 3, 1, 6, 11, 1, 5, 6, 4, 8, 7, -1, -1, -1, -1},
    {1, 4, 0, 1, 7, 4, 1, 11, 7, 1, 6, 11, 1, 5, 6, -1},
    {0, 11, 3, 0, 6, 11, 0, 5, 6, 0, 9, 5, 4, 8, 7, -1},
    {4, 11, 7, 4, 6, 11, 4, 5, 6, 4, 9, 5, -1, -1, -1, -1},
    {6, 9, 4, 6, 10, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 6, 9, 4, 6, 10, 9, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 1, 0, 6, 10, 0, 4, 6, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 1, 3, 6, 10, 3, 4, 6, 3, 8, 4, -1, -1, -1, -1},
    {1, 6, 2, 1, 4, 6, 1, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 6, 2, 1, 4, 6, 1, 9, 4, -1, -1, -1, -1},
    {0, 6, 2, 0, 4, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 6, 2, 3, 4, 6, 3, 8, 4, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 6, 9, 4, 6, 10, 9, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 11, 8, 6, 9, 4, 6, 10, 9, -1, -1, -1, -1},
    {2, 11, 3, 0, 10, 1, 0, 6, 10, 0, 4, 6, -1, -1, -1, -1},
    {2, 10, 1, 2, 6, 10, 2, 4, 6, 2, 8, 4, 2, 11, 8, -1},
    {1, 11, 3, 1, 6, 11, 1, 4, 6, 1, 9, 4, -1, -1, -1, -1},
    {1, 8, 0, 1, 11, 8, 1, 6, 11, 1, 4, 6, 1, 9, 4, -1},
    {0, 11, 3, 0, 6, 11, 0, 4, 6, -1, -1, -1, -1, -1, -1, -1},
    {6, 8, 4, 6, 11, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {6, 8, 7, 6, 9, 8, 6, 10, 9, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 10, 9, 3, 6, 10, 3, 7, 6, -1, -1, -1, -1},
    {0, 10, 1, 0, 6, 10, 0, 7, 6, 0, 8, 7, -1, -1, -1, -1},
    {3, 10, 1, 3, 6, 10, 3, 7, 6, -1, -1, -1, -1, -1, -1, -1},
    {1, 6, 2, 1, 7, 6, 1, 8, 7, 1, 9, 8, -1, -1, -1, -1},
    {3, 9, 0, 3, 1, 9, 3, 2, 1, 3, 6, 2, 3, 7, 6, -1},
    {0, 6, 2, 0, 7, 6, 0, 8, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 6, 2, 3, 7, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 11, 3, 6, 8, 7, 6, 9, 8, 6, 10, 9, -1, -1, -1, -1},
    {2, 9, 0, 2, 10, 9, 2, 6, 10, 2, 7, 6, 2, 11, 7, -1},
    {2, 11, 3, 0, 10, 1, 0, 6, 10, 0, 7, 6, 0, 8, 7, -1},
    {2, 10, 1, 2, 6, 10, 2, 7, 6, 2, 11, 7, -1, -1, -1, -1},
    {1, 11, 3, 1, 6, 11, 1, 7, 6, 1, 8, 7, 1, 9, 8, -1},
    {1, 9, 0, 6, 11, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 11, 3, 0, 6, 11, 0, 7, 6, 0, 8, 7, -1, -1, -1, -1},
    {6, 11, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {7, 11, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 8, 9, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 10, 2, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 2, 0, 9, 10, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 2, 3, 9, 10, 3, 8, 9, 7, 11, 6, -1, -1, -1, -1},
    {2, 7, 3, 2, 6, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 7, 8, 2, 6, 7, -1, -1, -1, -1, -1, -1, -1},
    {2, 7, 3, 2, 6, 7, 0, 9, 1, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 1, 2, 8, 9, 2, 7, 8, 2, 6, 7, -1, -1, -1, -1},
    {1, 7, 3, 1, 6, 7, 1, 10, 6, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 7, 8, 1, 6, 7, 1, 10, 6, -1, -1, -1, -1},
    {0, 7, 3, 0, 6, 7, 0, 10, 6, 0, 9, 10, -1, -1, -1, -1},
    {7, 10, 6, 7, 9, 10, 7, 8, 9, -1, -1, -1, -1, -1, -1, -1},
    {4, 11, 6, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 6, 4, 3, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 4, 11, 6, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 4, 9, 3, 6, 4, 3, 11, 6, -1, -1, -1, -1},
    {1, 10, 2, 4, 11, 6, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 6, 4, 3, 11, 6, 1, 10, 2, -1, -1, -1, -1},
    {0, 10, 2, 0, 9, 10, 4, 11, 6, 4, 8, 11, -1, -1, -1, -1},
    {3, 10, 2, 3, 9, 10, 3, 4, 9, 3, 6, 4, 3, 11, 6, -1},
    {2, 8, 3, 2, 4, 8, 2, 6, 4, -1, -1, -1, -1, -1, -1, -1},
    {2, 4, 0, 2, 6, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 4, 8, 2, 6, 4, 0, 9, 1, -1, -1, -1, -1},
    {2, 9, 1, 2, 4, 9, 2, 6, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 3, 1, 4, 8, 1, 6, 4, 1, 10, 6, -1, -1, -1, -1},
    {1, 4, 0, 1, 6, 4, 1, 10, 6, -1, -1, -1, -1, -1, -1, -1},
    {0, 8, 3, 0, 4, 8, 0, 6, 4, 0, 10, 6, 0, 9, 10, -1},
    {4, 10, 6, 4, 9, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {5, 9, 4, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 5, 9, 4, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {0, 5, 1, 0, 4, 5, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {3, 5, 1, 3, 4, 5, 3, 8, 4, 7, 11, 6, -1, -1, -1, -1},
    {1, 10, 2, 5, 9, 4, 7, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 10, 2, 5, 9, 4, 7, 11, 6, -1, -1, -1, -1},
    {0, 10, 2, 0, 5, 10, 0, 4, 5, 7, 11, 6, -1, -1, -1, -1},
    {3, 10, 2, 3, 5, 10, 3, 4, 5, 3, 8, 4, 7, 11, 6, -1},
    {2, 7, 3, 2, 6, 7, 5, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 7, 8, 2, 6, 7, 5, 9, 4, -1, -1, -1, -1},
    {2, 7, 3, 2, 6, 7, 0, 5, 1, 0, 4, 5, -1, -1, -1, -1},
    {2, 5, 1, 2, 4, 5, 2, 8, 4, 2, 7, 8, 2, 6, 7, -1},
    {1, 7, 3, 1, 6, 7, 1, 10, 6, 5, 9, 4, -1, -1, -1, -1},
    {1, 8, 0, 1, 7, 8, 1, 6, 7, 1, 10, 6, 5, 9, 4, -1},
    {0, 7, 3, 0, 6, 7, 0, 10, 6, 0, 5, 10, 0, 4, 5, -1},
    {5, 8, 4, 5, 7, 8, 5, 6, 7, 5, 10, 6, -1, -1, -1, -1},
    {5, 11, 6, 5, 8, 11, 5, 9, 8, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 5, 9, 3, 6, 5, 3, 11, 6, -1, -1, -1, -1},
    {0, 5, 1, 0, 6, 5, 0, 11, 6, 0, 8, 11, -1, -1, -1, -1},
    {3, 5, 1, 3, 6, 5, 3, 11, 6, -1, -1, -1, -1, -1, -1, -1},
    {1, 10, 2, 5, 11, 6, 5, 8, 11, 5, 9, 8, -1, -1, -1, -1},
    {3, 9, 0, 3, 5, 9, 3, 6, 5, 3, 11, 6, 1, 10, 2, -1},
    {0, 10, 2, 0, 5, 10, 0, 6, 5, 0, 11, 6, 0, 8, 11, -1},
    {3, 10, 2, 3, 5, 10, 3, 6, 5, 3, 11, 6, -1, -1, -1, -1},
    {2, 8, 3, 2, 9, 8, 2, 5, 9, 2, 6, 5, -1, -1, -1, -1},
    {2, 9, 0, 2, 5, 9, 2, 6, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 0, 8, 2, 1, 0, 2, 5, 1, 2, 6, 5, -1},
    {2, 5, 1, 2, 6, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 3, 1, 9, 8, 1, 5, 9, 1, 6, 5, 1, 10, 6, -1},
    {1, 9, 0, 1, 5, 9, 1, 6, 5, 1, 10, 6, -1, -1, -1, -1},
    {0, 8, 3, 5, 10, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {5, 10, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {7, 10, 5, 7, 11, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 7, 10, 5, 7, 11, 10, -1, -1, -1, -1, -1, -1, -1},
    {0, 9, 1, 7, 10, 5, 7, 11, 10, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 1, 3, 8, 9, 7, 10, 5, 7, 11, 10, -1, -1, -1, -1},
    {1, 11, 2, 1, 7, 11, 1, 5, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 1, 11, 2, 1, 7, 11, 1, 5, 7, -1, -1, -1, -1},
    {0, 11, 2, 0, 7, 11, 0, 5, 7, 0, 9, 5, -1, -1, -1, -1},
    {3, 11, 2, 3, 7, 11, 3, 5, 7, 3, 9, 5, 3, 8, 9, -1},
    {2, 7, 3, 2, 5, 7, 2, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 0, 2, 7, 8, 2, 5, 7, 2, 10, 5, -1, -1, -1, -1},
    {2, 7, 3, 2, 5, 7, 2, 10, 5, 0, 9, 1, -1, -1, -1, -1},
    {2, 9, 1, 2, 8, 9, 2, 7, 8, 2, 5, 7, 2, 10, 5, -1},
    {1, 7, 3, 1, 5, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 7, 8, 1, 5, 7, -1, -1, -1, -1, -1, -1, -1},
    {0, 7, 3, 0, 5, 7, 0, 9, 5, -1, -1, -1, -1, -1, -1, -1},
    {7, 9, 5, 7, 8, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {4, 10, 5, 4, 11, 10, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1},
    {3, 4, 0, 3, 5, 4, 3, 10, 5, 3, 11, 10, -1, -1, -1, -1},
    {0, 9, 1, 4, 10, 5, 4, 11, 10, 4, 8, 11, -1, -1, -1, -1},
    {3, 9, 1, 3, 4, 9, 3, 5, 4, 3, 10, 5, 3, 11, 10, -1},
    {1, 11, 2, 1, 8, 11, 1, 4, 8, 1, 5, 4, -1, -1, -1, -1},
    {3, 4, 0, 3, 5, 4, 3, 1, 5, 3, 2, 1, 3, 11, 2, -1},
    {0, 11, 2, 0, 8, 11, 0, 4, 8, 0, 5, 4, 0, 9, 5, -1},
    {3, 11, 2, 4, 9, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 4, 8, 2, 5, 4, 2, 10, 5, -1, -1, -1, -1},
    {2, 4, 0, 2, 5, 4, 2, 10, 5, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 4, 8, 2, 5, 4, 2, 10, 5, 0, 9, 1, -1},
    {2, 9, 1, 2, 4, 9, 2, 5, 4, 2, 10, 5, -1, -1, -1, -1},
    {1, 8, 3, 1, 4, 8, 1, 5, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 4, 0, 1, 5, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 8, 3, 0, 4, 8, 0, 5, 4, 0, 9, 5, -1, -1, -1, -1},
    {4, 9, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {7, 9, 4, 7, 10, 9, 7, 11, 10, -1, -1, -1, -1, -1, -1, -1},
    {3, 8, 0, 7, 9, 4, 7, 10, 9, 7, 11, 10, -1, -1, -1, -1},
    {0, 10, 1, 0, 11, 10, 0, 7, 11, 0, 4, 7, -1, -1, -1, -1},
    {3, 10, 1, 3, 11, 10, 3, 7, 11, 3, 4, 7, 3, 8, 4, -1},
    {1, 11, 2, 1, 7, 11, 1, 4, 7, 1, 9, 4, -1, -1, -1, -1},
    {3, 8, 0, 1, 11, 2, 1, 7, 11, 1, 4, 7, 1, 9, 4, -1},
    {0, 11, 2, 0, 7, 11, 0, 4, 7, -1, -1, -1, -1, -1, -1, -1},
    {3, 11, 2, 3, 7, 11, 3, 4, 7, 3, 8, 4, -1, -1, -1, -1},
    {2, 7, 3, 2, 4, 7, 2, 9, 4, 2, 10, 9, -1, -1, -1, -1},
    {2, 8, 0, 2, 7, 8, 2, 4, 7, 2, 9, 4, 2, 10, 9, -1},
    {2, 7, 3, 2, 4, 7, 2, 0, 4, 2, 1, 0, 2, 10, 1, -1},
    {2, 10, 1, 7, 8, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 7, 3, 1, 4, 7, 1, 9, 4, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 0, 1, 7, 8, 1, 4, 7, 1, 9, 4, -1, -1, -1, -1},
    {0, 7, 3, 0, 4, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {7, 8, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {8, 10, 9, 8, 11, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 10, 9, 3, 11, 10, -1, -1, -1, -1, -1, -1, -1},
    {0, 10, 1, 0, 11, 10, 0, 8, 11, -1, -1, -1, -1, -1, -1, -1},
    {3, 10, 1, 3, 11, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 11, 2, 1, 8, 11, 1, 9, 8, -1, -1, -1, -1, -1, -1, -1},
    {3, 9, 0, 3, 1, 9, 3, 2, 1, 3, 11, 2, -1, -1, -1, -1},
    {0, 11, 2, 0, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {3, 11, 2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 9, 8, 2, 10, 9, -1, -1, -1, -1, -1, -1, -1},
    {2, 9, 0, 2, 10, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {2, 8, 3, 2, 0, 8, 2, 1, 0, 2, 10, 1, -1, -1, -1, -1},
    {2, 10, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 8, 3, 1, 9, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {1, 9, 0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {0, 8, 3, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
    {-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1},
};

}  // namespace gom::detail
