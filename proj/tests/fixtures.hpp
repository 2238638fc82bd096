#pragma once

#include "finscheme/ring.hpp"

namespace fixtures {

using finscheme::Elem;
using finscheme::RawRing;

// Upper triangular 2x2 matrices over Z/2, encoded a*4 + b*2 + d for [[a,b],[0,d]].
inline RawRing upper_triangular() {
    auto enc = [](int a, int b, int d) { return static_cast<Elem>(a * 4 + b * 2 + d); };
    RawRing raw;
    raw.size = 8;
    raw.add.assign(8, std::vector<Elem>(8));
    raw.mul.assign(8, std::vector<Elem>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            const int a1 = x >> 2, b1 = (x >> 1) & 1, d1 = x & 1;
            const int a2 = y >> 2, b2 = (y >> 1) & 1, d2 = y & 1;
            raw.add[x][y] = enc(a1 ^ a2, b1 ^ b2, d1 ^ d2);
            raw.mul[x][y] = enc(a1 & a2, (a1 & b2) ^ (b1 & d2), d1 & d2);
        }
    raw.zero = 0;
    raw.one = enc(1, 0, 1);
    return raw;
}

}  // namespace fixtures
