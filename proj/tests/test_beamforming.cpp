#include <doctest.h>

TEST_SUITE("beamforming") {}
