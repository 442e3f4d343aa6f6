// Copyright The ATEM solver authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "atem/big_real.hpp"

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  atem::PrecisionScope precision(atem::kDefaultPrecisionBits);
  return RUN_ALL_TESTS();
}
