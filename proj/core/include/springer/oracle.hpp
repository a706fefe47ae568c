#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "springer/diagram.hpp"
#include "springer/flag.hpp"

namespace springer {

struct EnumerationTask {
  Shape lambda;
  Field field = Field::Fp(2);
  bool typeD = false;
  std::uint64_t max_count = 10'000'000;
  // 0: one per hardware thread
  unsigned threads = 0;
};

// Calls visit on every x-stable flag (isotropic ones for typeD). Flags are generated up to F_m
// and completed by perp in the isotropic case. Returns the number visited. Partitions run in
// parallel when threads != 1, so visit must be safe to call concurrently. CapExceeded.
std::uint64_t enumerate_stable_flags(const EnumerationTask& task, const std::function<void(const Flag&)>& visit);
std::vector<Flag> collect_stable_flags(const EnumerationTask& task);

struct DecompositionReport {
  std::uint64_t total_flags = 0;
  std::vector<std::string> components;        // serialized diagrams
  std::vector<std::uint64_t> per_component;
  std::uint64_t uncovered_count = 0;
  std::vector<Flag> uncovered;                // at most uncovered_keep of them
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> overlaps;
  // every component has a point outside each other component
  bool no_containment() const;
};

DecompositionReport decompose(const EnumerationTask& task, const std::vector<CupDiagram>& diagrams, std::size_t uncovered_keep = 16);
DecompositionReport decompose(const EnumerationTask& task, const std::vector<MarkedCupDiagram>& diagrams, std::size_t uncovered_keep = 16);

// number of F_q-points of the component
std::uint64_t count_component(const CupDiagram& a, const Field& f);
std::uint64_t count_component(const MarkedCupDiagram& adot, const Field& f);

}  // namespace springer
