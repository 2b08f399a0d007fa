#include <doctest.h>

TEST_SUITE("association") {}
