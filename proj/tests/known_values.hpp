#pragma once

// Published reference values for the 3x+1 map used across the test suites:
// the integers n <= 1e9 whose restricted c statistic is positive, with the
// certificate (j, q) and the 3-decimal c value, and the j = 6 partition of
// {1,...,64} by odd count.

#include "syr/nat.hpp"

#include <vector>

namespace known {

struct CTableRow {
  syr::u64 n;
  syr::u64 j;
  syr::u64 q;
  double c;  // 3-decimal truncation
};

inline const std::vector<CTableRow>& c_table() {
  static const std::vector<CTableRow> rows = {
      {1, 3, 2, 0.154},
      {27, 45, 33, 0.472},
      {31, 42, 31, 0.408},
      {41, 44, 32, 0.265},
      {47, 41, 30, 0.195},
      {54, 46, 33, 0.132},
      {55, 46, 33, 0.127},
      {62, 43, 31, 0.058},
      {63, 43, 31, 0.053},
      {73, 48, 34, 0.001},
      {159487, 35, 32, 0.574},
      {212649, 37, 33, 0.195},
      {239231, 34, 31, 0.293},
      {358847, 33, 30, 0.008},
      {5095423, 29, 28, 0.091},
      {19638399, 199, 140, 0.034},
      {21916159, 40, 37, 0.045},
      {319804831, 91, 77, 0.980},
      {379027947, 96, 80, 0.774},
      {426406441, 93, 78, 0.773},
      {479707247, 90, 76, 0.776},
      {568541921, 95, 79, 0.575},
      {598957743, 103, 84, 0.418},
      {639609663, 92, 77, 0.571},
      {719560871, 89, 75, 0.571},
      {758055895, 97, 80, 0.386},
      {852812883, 94, 78, 0.375},
      {898436615, 102, 83, 0.226},
      {959414495, 91, 76, 0.368},
  };
  return rows;
}

// the partition of {1,...,64} for j = 6
inline const std::vector<std::vector<syr::u64>>& partition6() {
  static const std::vector<std::vector<syr::u64>> sets = {
      {64},
      {16, 20, 21, 32, 40, 42},
      {4, 5, 6, 8, 10, 12, 13, 24, 26, 34, 35, 48, 49, 52, 53},
      {1, 2, 3, 11, 17, 22, 23, 25, 28, 29, 36, 37, 38, 44, 45, 46, 50, 51, 56, 58},
      {7, 9, 14, 15, 18, 19, 30, 33, 43, 54, 55, 57, 59, 60, 61},
      {27, 31, 39, 41, 47, 62},
      {63},
  };
  return sets;
}

}  // namespace known
