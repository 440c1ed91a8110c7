#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kanfs {

struct Failure {
  std::string law;
  std::string detail;
};

// Outcome of a randomized or exhaustive law check. Failures are data,
// not exceptions: callers decide how to surface them.
struct CheckReport {
  std::string name;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }

  void fail(std::string law, std::string detail) {
    failures.push_back({std::move(law), std::move(detail)});
  }

  void merge(const CheckReport& other) {
    iterations += other.iterations;
    for (const auto& f : other.failures) failures.push_back(f);
  }
};

}  // namespace kanfs
