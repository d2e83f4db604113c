#pragma once

#include <string>
#include <vector>

namespace detf::tables {

struct TableRow {
  int n;
  std::string a;
  std::string b;
  std::string type;  // "P", "DP", "CDP", "P=DP=CDP" or "-"
};

// Reference classes of regular dihedral ETF(2n, n) for even n <= 22, one row per class.
inline const std::vector<TableRow>& complete_table() {
  static const std::vector<TableRow> rows = {
      {2, "2", "0", "P"},
      {4, "8", "2", "P=DP=CDP"},
      {6, "24", "02", "P"},
      {8, "F7", "ED", "DP"},
      {8, "F7", "E9", "CDP"},
      {10, "3EF", "353", "P"},
      {12, "F77", "F4D", "P"},
      {12, "E8B", "F7B", "CDP"},
      {12, "E8B", "F79", "DP"},
      {14, "3953", "3EDF", "P"},
      {16, "F227", "FD65", "P"},
      {16, "F227", "FBAD", "-"},
      {16, "F227", "FA51", "-"},
      {20, "FB76F", "EE2D7", "DP"},
      {20, "FB76F", "EE297", "CDP"},
      {22, "3D9537", "3FD38D", "P"},
  };
  return rows;
}

inline const std::vector<TableRow>& partial_table() {
  static const std::vector<TableRow> rows = {
      {24, "D180C5", "F84D59", "DP"},
      {24, "C5F7D1", "533CF4", "-"},
      {24, "943614", "0B2211", "-"},
      {26, "3257D49", "1881C3B", "-"},
      {28, "8298CA0", "A5064C1", "DP"},
  };
  return rows;
}

inline std::vector<TableRow> rows_for(int n) {
  std::vector<TableRow> out;
  for (const auto& r : complete_table())
    if (r.n == n) out.push_back(r);
  return out;
}

}  // namespace detf::tables
