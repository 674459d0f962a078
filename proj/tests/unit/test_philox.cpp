#include <array>
#include <cstdint>

#include <doctest.h>

#include "qosp/philox.hpp"

using namespace qosp;

// Known-answer vectors for Philox 4x64 with 10 rounds: the all-zero vector
// of the published reference test suite, plus blocks cross-checked against
// an independent reference implementation.
TEST_CASE("philox4x64-10 known answers") {
  using A4 = std::array<std::uint64_t, 4>;
  using A2 = std::array<std::uint64_t, 2>;

  CHECK(Philox4x64::block(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
           0x7e68b68aec7ba23bULL});

  CHECK(Philox4x64::block(A4{0, 0, 0, 0},
                          A2{0xffffffffffffffffULL, 0xffffffffffffffffULL}) ==
        A4{0x44b7493d1acfc229ULL, 0x6636af8e997921ddULL, 0x3f73e132b5b3780eULL,
           0x605644dde03b01b1ULL});

  CHECK(Philox4x64::block(A4{1, 0, 0, 0}, A2{0, 0}) ==
        A4{0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
           0x907d7a052fd5b4dcULL});

  CHECK(Philox4x64::block(A4{2, 0, 0, 0}, A2{0, 0}) ==
        A4{0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL,
           0xfc6ed66767a457bcULL});

  CHECK(Philox4x64::block(A4{2, 2, 3, 4}, A2{5, 6}) ==
        A4{0x92ab6a0e75619263ULL, 0xd8ff75bdc6bf8f60ULL, 0x450e124938725640ULL,
           0x94eb1a7cffd20cbbULL});

  CHECK(Philox4x64::block(A4{0x243f6a8885a308d4ULL, 0x13198a2e03707344ULL, 0xa4093822299f31d0ULL,
                             0x082efa98ec4e6c89ULL},
                          A2{0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL}) ==
        A4{0x4c8e672094922aa3ULL, 0x527061cd2884102aULL, 0xf4c265b2d783d553ULL,
           0x0556e76cb0298c8dULL});
}

TEST_CASE("u64_to_unit maps into [0, 1)") {
  CHECK(u64_to_unit(0) == 0.0);
  CHECK(u64_to_unit(0xffffffffffffffffULL) < 1.0);
  CHECK(u64_to_unit(0xffffffffffffffffULL) > 0.999999999);
  CHECK(u64_to_unit(1ULL << 63) == 0.5);
}
