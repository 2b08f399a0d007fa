#include <doctest.h>

TEST_SUITE("ofdm") {}
