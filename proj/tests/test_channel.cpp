#include <doctest.h>

TEST_SUITE("channel") {}
