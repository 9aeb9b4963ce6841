//
// Project modof - Copyright 2026 The modof Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MODOF_TESTS_UNIT_TEST_UTIL_H_
#define MODOF_TESTS_UNIT_TEST_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "modof/chem/molecule.h"
#include "modof/chem/smiles.h"
#include "modof/util/rng.h"

namespace modof::testing {

inline std::vector<std::string> fixture_corpus() {
  std::ifstream in(std::string(MODOF_TEST_DATA) + "/fixture_corpus.smi");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#')
      out.push_back(line);
  return out;
}

inline std::vector<chem::Molecule> parse_all(
    const std::vector<std::string> &smiles) {
  std::vector<chem::Molecule> out;
  for (const auto &s: smiles)
    out.push_back(chem::parse_smiles(s));
  return out;
}

inline std::vector<int> random_permutation(int n, Rng &rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i)
    p[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path()
            / ("modof_" + tag + "_" + std::to_string(::getpid()) + "_"
               + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string &name) const {
    return (path_ / name).string();
  }

private:
  std::filesystem::path path_;
};

}  // namespace modof::testing

#endif  // MODOF_TESTS_UNIT_TEST_UTIL_H_
